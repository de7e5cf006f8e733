//! Vector product algebras given by structure constants and a Gram form.
//!
//! The type accepts any anti-symmetric table. Whether the table satisfies
//! `⟨uv, w⟩ = ⟨u, vw⟩` and `⟨uv, uv⟩ = N(u)N(v) − ⟨u, v⟩²` is decided by
//! [`VectorProductAlgebra::check_axioms`], so failed candidates (such as the
//! 15-dimensional double) can be built and inspected.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::forms::{GramForm, Subspace};
use crate::linalg::{self, check_len, Vector};

/// One side of an identity that failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Scalar(Scalar),
    Vector(Vector),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Vector(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

/// A failed identity with the basis (or sample) indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: String,
    pub indices: Vec<usize>,
    pub lhs: Value,
    pub rhs: Value,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {:?}: {} != {}",
            self.identity, self.indices, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub antisymmetry_ok: bool,
    pub nondegenerate_ok: bool,
    pub d1_ok: bool,
    pub d2_ok: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry_ok && self.nondegenerate_ok && self.d1_ok && self.d2_ok
    }

    pub fn count(&self, identity: &str) -> usize {
        self.violations
            .iter()
            .filter(|v| v.identity == identity)
            .count()
    }
}

pub const ANTISYMMETRY: &str = "antisymmetry";
pub const NONDEGENERACY: &str = "nondegeneracy";
pub const D1: &str = "d1";
pub const D2: &str = "d2";

/// Identities every vector product algebra satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LemmaIdentity {
    /// `⟨u, uv⟩ = 0`
    OrthogonalToFactor,
    /// `⟨uv, uw⟩ = N(u)⟨v, w⟩ − ⟨u, v⟩⟨u, w⟩`
    ProductInnerProduct,
    /// `u(vu) = N(u)v − ⟨u, v⟩u`
    DoubleProduct,
    /// `u(vw) = −(uv)w` for pairwise orthogonal `u, v, w`
    OrthogonalRebracket,
    /// `u(vw) = (vu)w` for pairwise orthogonal `u, v, w`
    OrthogonalSwap,
}

impl LemmaIdentity {
    pub const ALL: [LemmaIdentity; 5] = [
        LemmaIdentity::OrthogonalToFactor,
        LemmaIdentity::ProductInnerProduct,
        LemmaIdentity::DoubleProduct,
        LemmaIdentity::OrthogonalRebracket,
        LemmaIdentity::OrthogonalSwap,
    ];

    pub fn label(self) -> &'static str {
        match self {
            LemmaIdentity::OrthogonalToFactor => "<u,uv> = 0",
            LemmaIdentity::ProductInnerProduct => "<uv,uw> = N(u)<v,w> - <u,v><u,w>",
            LemmaIdentity::DoubleProduct => "u(vu) = N(u)v - <u,v>u",
            LemmaIdentity::OrthogonalRebracket => "u(vw) = -(uv)w",
            LemmaIdentity::OrthogonalSwap => "u(vw) = (vu)w",
        }
    }

    fn needs_orthogonal(self) -> bool {
        matches!(
            self,
            LemmaIdentity::OrthogonalRebracket | LemmaIdentity::OrthogonalSwap
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaTally {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub tallies: Vec<(LemmaIdentity, LemmaTally)>,
    pub failures: Vec<Violation>,
    pub notes: Vec<String>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn tally(&self, id: LemmaIdentity) -> &LemmaTally {
        &self
            .tallies
            .iter()
            .find(|(i, _)| *i == id)
            .expect("every identity is tallied")
            .1
    }
}

/// Anti-symmetric bilinear product with structure constants
/// `structure[i][j][k]` = coefficient of `b_k` in `b_i b_j`, and a Gram form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorProductAlgebra {
    gram: GramForm,
    structure: Vec<Vec<Vector>>,
}

fn check_table(field: FieldSpec, dim: usize, structure: &[Vec<Vector>]) -> Result<()> {
    if structure.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: structure.len(),
        });
    }
    for row in structure {
        if row.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: row.len(),
            });
        }
        for v in row {
            check_len(v, dim)?;
            if let Some(s) = v.iter().find(|s| s.field() != field) {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: s.field().to_string(),
                });
            }
        }
    }
    Ok(())
}

impl VectorProductAlgebra {
    /// Validates shapes and anti-symmetry of the table.
    pub fn new(gram: GramForm, structure: Vec<Vec<Vector>>) -> Result<Self> {
        let a = Self::from_parts_unchecked(gram, structure)?;
        if let Some((i, j, k)) = a.antisymmetry_failures().into_iter().next() {
            return Err(Error::NotAntisymmetric { i, j, k });
        }
        Ok(a)
    }

    /// Validates shapes only; anti-symmetry is left to `check_axioms`.
    pub fn from_parts_unchecked(gram: GramForm, structure: Vec<Vec<Vector>>) -> Result<Self> {
        check_table(gram.field(), gram.dim(), &structure)?;
        Ok(VectorProductAlgebra { gram, structure })
    }

    /// The zero-dimensional algebra over `field`.
    pub fn trivial(field: FieldSpec) -> Self {
        VectorProductAlgebra {
            gram: GramForm::identity(field, 0),
            structure: Vec::new(),
        }
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

    /// `b_i b_j` in coordinates.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.structure[i][j]
    }

    /// Returns a copy with `structure[i][j][k]` replaced. Only that one entry
    /// changes, so the result may fail anti-symmetry.
    pub fn with_structure_constant(&self, i: usize, j: usize, k: usize, value: Scalar) -> Self {
        let mut out = self.clone();
        out.structure[i][j][k] = value;
        out
    }

    pub fn zero_vector(&self) -> Vector {
        linalg::zero_vector(self.field(), self.dim())
    }

    pub fn unit(&self, i: usize) -> Vector {
        linalg::unit_vector(self.field(), self.dim(), i)
    }

    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vector> {
        check_len(u, self.dim())?;
        check_len(v, self.dim())?;
        let mut out = self.zero_vector();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                linalg::axpy(&mut out, &(ui * vj), &self.structure[i][j]);
            }
        }
        Ok(out)
    }

    pub(crate) fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        self.multiply(u, v)
            .expect("operands have algebra dimension")
    }

    pub(crate) fn ip(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        self.gram
            .eval(u, v)
            .expect("operands have algebra dimension")
    }

    fn antisymmetry_failures(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if self.structure[i][j][k] != -&self.structure[j][i][k] {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Exhaustive check of the defining identities on basis tuples:
    /// anti-symmetry, non-degeneracy, `⟨b_i b_j, b_k⟩ = ⟨b_i, b_j b_k⟩`, and
    /// the full polarization of `⟨uv, uv⟩ = N(u)N(v) − ⟨u, v⟩²`,
    ///
    /// `⟨b_i b_j, b_x b_l⟩ + ⟨b_x b_j, b_i b_l⟩
    ///   = 2⟨b_i,b_x⟩⟨b_j,b_l⟩ − ⟨b_i,b_j⟩⟨b_x,b_l⟩ − ⟨b_i,b_l⟩⟨b_x,b_j⟩`,
    ///
    /// which in characteristic ≠ 2 is equivalent to the quadratic identity.
    /// Violations come out sorted by identity, then index tuple.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let field = self.field();
        let mut violations = Vec::new();

        let anti = self.antisymmetry_failures();
        for &(i, j, k) in &anti {
            violations.push(Violation {
                identity: ANTISYMMETRY.to_string(),
                indices: vec![i, j, k],
                lhs: Value::Scalar(self.structure[i][j][k].clone()),
                rhs: Value::Scalar(-&self.structure[j][i][k]),
            });
        }

        let disc = self.gram.discriminant();
        if disc.is_zero() {
            violations.push(Violation {
                identity: NONDEGENERACY.to_string(),
                indices: Vec::new(),
                lhs: Value::Scalar(disc),
                rhs: Value::Scalar(field.zero()),
            });
        }

        // G (b_i b_j), so ⟨b_i b_j, y⟩ = y · gp[i][j].
        let gp: Vec<Vec<Vector>> = self
            .structure
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| self.gram.apply(v).expect("table shape validated"))
                    .collect()
            })
            .collect();

        let mut d1_ok = true;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // ⟨b_i b_j, b_k⟩ vs ⟨b_i, b_j b_k⟩
                    let lhs = &gp[i][j][k];
                    let rhs = &gp[j][k][i];
                    if lhs != rhs {
                        d1_ok = false;
                        violations.push(Violation {
                            identity: D1.to_string(),
                            indices: vec![i, j, k],
                            lhs: Value::Scalar(lhs.clone()),
                            rhs: Value::Scalar(rhs.clone()),
                        });
                    }
                }
            }
        }

        let g = |a: usize, b: usize| self.gram.entry(a, b);
        let two = field.from_i64(2);
        let mut d2_ok = true;
        for i in 0..n {
            for x in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let lhs = &linalg::dot(field, &self.structure[i][j], &gp[x][l])
                            + &linalg::dot(field, &self.structure[x][j], &gp[i][l]);
                        let rhs = &(&(&two * &(g(i, x) * g(j, l))) - &(g(i, j) * g(x, l)))
                            - &(g(i, l) * g(x, j));
                        if lhs != rhs {
                            d2_ok = false;
                            violations.push(Violation {
                                identity: D2.to_string(),
                                indices: vec![i, x, j, l],
                                lhs: Value::Scalar(lhs),
                                rhs: Value::Scalar(rhs),
                            });
                        }
                    }
                }
            }
        }

        let rank = |id: &str| {
            [ANTISYMMETRY, NONDEGENERACY, D1, D2]
                .iter()
                .position(|s| *s == id)
        };
        violations.sort_by(|a, b| {
            rank(&a.identity)
                .cmp(&rank(&b.identity))
                .then_with(|| a.indices.cmp(&b.indices))
        });

        AxiomReport {
            antisymmetry_ok: anti.is_empty(),
            nondegenerate_ok: !self.gram.discriminant().is_zero(),
            d1_ok,
            d2_ok,
            violations,
        }
    }

    /// Evaluates the lemma identities on sample triples `(u, v, w)`. The two
    /// identities that need pairwise orthogonal arguments are skipped (and
    /// counted as such) on other samples.
    pub fn check_lemma_vm(&self, samples: &[(Vector, Vector, Vector)]) -> Result<LemmaReport> {
        let mut tallies: Vec<(LemmaIdentity, LemmaTally)> = LemmaIdentity::ALL
            .iter()
            .map(|&id| (id, LemmaTally::default()))
            .collect();
        let mut failures = Vec::new();
        let mut notes = Vec::new();

        for (idx, (u, v, w)) in samples.iter().enumerate() {
            check_len(u, self.dim())?;
            check_len(v, self.dim())?;
            check_len(w, self.dim())?;
            let orthogonal =
                self.ip(u, v).is_zero() && self.ip(u, w).is_zero() && self.ip(v, w).is_zero();
            if !orthogonal {
                notes.push(format!(
                    "sample {idx}: not pairwise orthogonal, rebracketing skipped"
                ));
            }
            let uv = self.mul(u, v);
            let nu = self.ip(u, u);
            for (id, tally) in tallies.iter_mut() {
                if id.needs_orthogonal() && !orthogonal {
                    tally.skipped += 1;
                    continue;
                }
                let (lhs, rhs) = match id {
                    LemmaIdentity::OrthogonalToFactor => (
                        Value::Scalar(self.ip(u, &uv)),
                        Value::Scalar(self.field().zero()),
                    ),
                    LemmaIdentity::ProductInnerProduct => {
                        let uw = self.mul(u, w);
                        let rhs = &(&nu * &self.ip(v, w)) - &(&self.ip(u, v) * &self.ip(u, w));
                        (Value::Scalar(self.ip(&uv, &uw)), Value::Scalar(rhs))
                    }
                    LemmaIdentity::DoubleProduct => {
                        let lhs = self.mul(u, &self.mul(v, u));
                        let rhs =
                            linalg::sub(&linalg::scale(&nu, v), &linalg::scale(&self.ip(u, v), u));
                        (Value::Vector(lhs), Value::Vector(rhs))
                    }
                    LemmaIdentity::OrthogonalRebracket => {
                        let lhs = self.mul(u, &self.mul(v, w));
                        let rhs = linalg::neg(&self.mul(&uv, w));
                        (Value::Vector(lhs), Value::Vector(rhs))
                    }
                    LemmaIdentity::OrthogonalSwap => {
                        let lhs = self.mul(u, &self.mul(v, w));
                        let rhs = self.mul(&self.mul(v, u), w);
                        (Value::Vector(lhs), Value::Vector(rhs))
                    }
                };
                if lhs == rhs {
                    tally.passed += 1;
                } else {
                    tally.failed += 1;
                    failures.push(Violation {
                        identity: id.label().to_string(),
                        indices: vec![idx],
                        lhs,
                        rhs,
                    });
                }
            }
        }
        Ok(LemmaReport {
            tallies,
            failures,
            notes,
        })
    }

    /// The subalgebra generated by `generators`.
    pub fn subalgebra_closure(&self, generators: &[Vector]) -> Result<Subspace> {
        let mut current = Subspace::span(self.field(), self.dim(), generators.iter().cloned())?;
        loop {
            let basis = current.basis().to_vec();
            let mut candidates = basis.clone();
            for x in &basis {
                for y in &basis {
                    candidates.push(self.mul(x, y));
                }
            }
            let next = Subspace::span(self.field(), self.dim(), candidates)?;
            if next.dim() == current.dim() {
                return Ok(current);
            }
            current = next;
        }
    }
}
