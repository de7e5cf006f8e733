//! Unital composition algebras and the passage to and from vector product
//! algebras.
//!
//! `H(V) = k × V` carries the product
//! `(α, v)(β, w) = (αβ − ⟨v, w⟩, αw + βv + vw)` and the form
//! `⟨(α, v), (β, w)⟩ = αβ + ⟨v, w⟩`. Going back, the orthogonal complement
//! of the identity with `u × v = ½(uv − vu)` is a vector product algebra.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Value, VectorProductAlgebra, Violation};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::forms::{GramForm, Subspace};
use crate::linalg::{self, check_len, Matrix, Vector};
use crate::sample;

/// Identity checked on all basis quadruples, the polarized composition law
/// `⟨xy, x′y′⟩ + ⟨xy′, x′y⟩ = 2⟨x, x′⟩⟨y, y′⟩`.
pub const COMPOSITION_POLARIZED: &str = "polarized composition";
pub const COMPOSITION: &str = "N(xy) = N(x)N(y)";

/// An algebra with a two-sided identity basis vector and a non-degenerate
/// form. The structure constants need not be anti-symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitalCompositionAlgebra {
    gram: GramForm,
    structure: Vec<Vec<Vector>>,
    identity_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionReport {
    pub quadruples_ok: bool,
    pub basis_pairs_ok: bool,
    pub basis_sums_ok: bool,
    pub random_ok: bool,
    pub random_samples: usize,
    pub violations: Vec<Violation>,
}

impl CompositionReport {
    pub fn passed(&self) -> bool {
        self.quadruples_ok && self.basis_pairs_ok && self.basis_sums_ok && self.random_ok
    }
}

impl UnitalCompositionAlgebra {
    /// Validates shapes, non-degeneracy of the form and the unit law on the
    /// basis. The composition law itself is checked by `check_composition`.
    pub fn new(gram: GramForm, structure: Vec<Vec<Vector>>, identity_index: usize) -> Result<Self> {
        let n = gram.dim();
        if n == 0 {
            return Err(Error::NotComposition(
                "algebra must be non-zero".to_string(),
            ));
        }
        if identity_index >= n {
            return Err(Error::NotComposition(format!(
                "identity index {identity_index} out of range"
            )));
        }
        if structure.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: structure.len(),
            });
        }
        for row in &structure {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for v in row {
                check_len(v, n)?;
            }
        }
        if !gram.is_nondegenerate() {
            return Err(Error::NotComposition("form is degenerate".to_string()));
        }
        let a = UnitalCompositionAlgebra {
            gram,
            structure,
            identity_index,
        };
        for i in 0..n {
            let b = a.unit(i);
            if a.structure[identity_index][i] != b || a.structure[i][identity_index] != b {
                return Err(Error::NotComposition(format!(
                    "basis vector {identity_index} is not a two-sided identity (fails on {i})"
                )));
            }
        }
        Ok(a)
    }

    pub fn field(&self) -> FieldSpec {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn gram(&self) -> &GramForm {
        &self.gram
    }

    pub fn structure(&self) -> &[Vec<Vector>] {
        &self.structure
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    pub fn identity(&self) -> Vector {
        self.unit(self.identity_index)
    }

    pub fn unit(&self, i: usize) -> Vector {
        linalg::unit_vector(self.field(), self.dim(), i)
    }

    /// Copy with one structure constant replaced (no validation).
    pub fn with_structure_constant(&self, i: usize, j: usize, k: usize, value: Scalar) -> Self {
        let mut out = self.clone();
        out.structure[i][j][k] = value;
        out
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        check_len(x, self.dim())?;
        check_len(y, self.dim())?;
        let mut out = linalg::zero_vector(self.field(), self.dim());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    linalg::axpy(&mut out, &(xi * yj), &self.structure[i][j]);
                }
            }
        }
        Ok(out)
    }

    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.multiply(x, y)
            .expect("operands have algebra dimension")
    }

    fn norm(&self, x: &[Scalar]) -> Scalar {
        self.gram.norm(x).expect("operand has algebra dimension")
    }

    /// Decides `N(xy) = N(x)N(y)` through its polarization on all basis
    /// quadruples, and additionally tests the unpolarized law on basis
    /// pairs, sums `b_i + b_j`, and `samples` seeded random pairs.
    pub fn check_composition(&self, samples: usize, seed: u64) -> CompositionReport {
        let n = self.dim();
        let field = self.field();
        let mut violations = Vec::new();

        let gp: Vec<Vec<Vector>> = self
            .structure
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| self.gram.apply(v).expect("table shape validated"))
                    .collect()
            })
            .collect();
        let two = field.from_i64(2);
        let mut quadruples_ok = true;
        for x in 0..n {
            for x2 in 0..n {
                for y in 0..n {
                    for y2 in 0..n {
                        let lhs = &linalg::dot(field, &self.structure[x][y], &gp[x2][y2])
                            + &linalg::dot(field, &self.structure[x][y2], &gp[x2][y]);
                        let rhs = &two * &(self.gram.entry(x, x2) * self.gram.entry(y, y2));
                        if lhs != rhs {
                            quadruples_ok = false;
                            violations.push(Violation {
                                identity: COMPOSITION_POLARIZED.to_string(),
                                indices: vec![x, x2, y, y2],
                                lhs: Value::Scalar(lhs),
                                rhs: Value::Scalar(rhs),
                            });
                        }
                    }
                }
            }
        }

        let law = |x: &Vector, y: &Vector, indices: Vec<usize>, violations: &mut Vec<Violation>| {
            let lhs = self.norm(&self.mul(x, y));
            let rhs = &self.norm(x) * &self.norm(y);
            if lhs != rhs {
                violations.push(Violation {
                    identity: COMPOSITION.to_string(),
                    indices,
                    lhs: Value::Scalar(lhs),
                    rhs: Value::Scalar(rhs),
                });
                false
            } else {
                true
            }
        };

        let mut basis_pairs_ok = true;
        for i in 0..n {
            for j in 0..n {
                basis_pairs_ok &= law(&self.unit(i), &self.unit(j), vec![i, j], &mut violations);
            }
        }
        let mut basis_sums_ok = true;
        for i in 0..n {
            for j in i + 1..n {
                let s = linalg::add(&self.unit(i), &self.unit(j));
                for k in 0..n {
                    for l in k + 1..n {
                        let t = linalg::add(&self.unit(k), &self.unit(l));
                        basis_sums_ok &= law(&s, &t, vec![i, j, k, l], &mut violations);
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random_ok = true;
        for s in 0..samples {
            let x = sample::random_vector(field, n, &mut rng);
            let y = sample::random_vector(field, n, &mut rng);
            random_ok &= law(&x, &y, vec![s], &mut violations);
        }

        CompositionReport {
            quadruples_ok,
            basis_pairs_ok,
            basis_sums_ok,
            random_ok,
            random_samples: samples,
            violations,
        }
    }
}

/// `H(V)` with basis `(1, b_1, …, b_n)`.
pub fn hurwitz(v: &VectorProductAlgebra) -> Result<UnitalCompositionAlgebra> {
    let report = v.check_axioms();
    if !report.passed() {
        let first = report
            .violations
            .first()
            .map(ToString::to_string)
            .unwrap_or_default();
        return Err(Error::NotAnAlgebra(first));
    }
    let field = v.field();
    let n = v.dim() + 1;
    let gram = GramForm::identity(field, 1).orthogonal_sum(v.gram());
    let mut structure = vec![vec![linalg::zero_vector(field, n); n]; n];
    for k in 0..n {
        structure[0][k] = linalg::unit_vector(field, n, k);
        structure[k][0] = linalg::unit_vector(field, n, k);
    }
    for i in 1..n {
        for j in 1..n {
            let out = &mut structure[i][j];
            out[0] = -v.gram().entry(i - 1, j - 1);
            for (k, c) in v.basis_product(i - 1, j - 1).iter().enumerate() {
                out[k + 1] = c.clone();
            }
        }
    }
    UnitalCompositionAlgebra::new(gram, structure, 0)
}

/// The orthogonal complement of the identity with the product
/// `u × v = ½(uv − vu)`.
pub fn imaginary_vpa(a: &UnitalCompositionAlgebra) -> Result<VectorProductAlgebra> {
    let report = a.check_composition(0, 0);
    if !report.passed() {
        let first = report
            .violations
            .first()
            .map(ToString::to_string)
            .unwrap_or_default();
        return Err(Error::NotComposition(first));
    }
    let field = a.field();
    let one = a.identity();
    if a.norm(&one).is_zero() {
        return Err(Error::NotComposition("identity is isotropic".to_string()));
    }
    let span_one = Subspace::span(field, a.dim(), [one.clone()])?;
    let complement = a.gram().orthogonal_complement(&span_one)?;
    let basis = complement.basis();
    let m = basis.len();
    let coords = Matrix::from_columns(field, a.dim(), basis)?;
    let mut structure = vec![vec![linalg::zero_vector(field, m); m]; m];
    for i in 0..m {
        for j in 0..m {
            let uv = a.mul(&basis[i], &basis[j]);
            let vu = a.mul(&basis[j], &basis[i]);
            let c: Vector = linalg::sub(&uv, &vu).iter().map(Scalar::half).collect();
            if !a.gram().eval(&c, &one)?.is_zero() {
                return Err(Error::CommutatorEscapesComplement { i, j });
            }
            structure[i][j] = coords
                .solve(&c)?
                .ok_or(Error::CommutatorEscapesComplement { i, j })?;
        }
    }
    let gram = a.gram().restrict(&complement)?;
    VectorProductAlgebra::new(gram, structure)
}
