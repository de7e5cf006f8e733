//! Multiplicatively independent sets and the doubling construction.
//!
//! A finite set `E` is multiplicatively independent when each `e ∈ E` is
//! anisotropic and orthogonal to the subalgebra generated by `E ∖ {e}`. For
//! such a set the left-bracketed products `Π(A)`, `∅ ≠ A ⊆ E`, form an
//! orthogonal basis of the subalgebra `⟨E⟩`, and adjoining an anisotropic
//! `e ⊥ W` to a subalgebra `W` produces `W ⊥ ⟨e⟩ ⊥ We`. [`double`] realizes
//! that last step on structure constants.

use std::fmt;

use serde::Serialize;

use crate::algebra::VectorProductAlgebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::forms::{GramForm, Subspace};
use crate::linalg::{self, check_len, Vector};

/// Left-nested product `(((a_1 a_2) a_3) … ) a_n`.
pub fn pi_product(algebra: &VectorProductAlgebra, factors: &[Vector]) -> Result<Vector> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyList)?;
    check_len(first, algebra.dim())?;
    rest.iter()
        .try_fold(first.clone(), |acc, a| algebra.multiply(&acc, a))
}

/// Why a set is (not) multiplicatively independent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Independence {
    Independent,
    /// `E[index]` has norm zero.
    Isotropic {
        index: usize,
    },
    /// `E[index]` is not orthogonal to the subalgebra generated by the rest.
    NotOrthogonal {
        index: usize,
    },
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent)
    }
}

impl fmt::Display for Independence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Independence::Independent => write!(f, "independent"),
            Independence::Isotropic { index } => write!(f, "element {index} is isotropic"),
            Independence::NotOrthogonal { index } => write!(
                f,
                "element {index} is not orthogonal to the subalgebra generated by the others"
            ),
        }
    }
}

pub fn is_mult_independent(algebra: &VectorProductAlgebra, set: &[Vector]) -> Result<Independence> {
    for (index, e) in set.iter().enumerate() {
        check_len(e, algebra.dim())?;
        if algebra.ip(e, e).is_zero() {
            return Ok(Independence::Isotropic { index });
        }
    }
    for (index, e) in set.iter().enumerate() {
        let others: Vec<Vector> = set
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, v)| v.clone())
            .collect();
        let closure = algebra.subalgebra_closure(&others)?;
        if closure.basis().iter().any(|b| !algebra.ip(e, b).is_zero()) {
            return Ok(Independence::NotOrthogonal { index });
        }
    }
    Ok(Independence::Independent)
}

/// All products `Π(A)` over non-empty subsets `A` of `set`, in bitmask
/// order (bit `i` selects `set[i]`, factors in ascending index order).
pub fn subset_products(
    algebra: &VectorProductAlgebra,
    set: &[Vector],
) -> Result<Vec<(u32, Vector)>> {
    let m = set.len();
    (1u32..(1 << m))
        .map(|mask| {
            let factors: Vec<Vector> = (0..m)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| set[i].clone())
                .collect();
            pi_product(algebra, &factors).map(|p| (mask, p))
        })
        .collect()
}

/// A multiplicatively independent set together with its norms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativeBase {
    vectors: Vec<Vector>,
    norms: Vec<Scalar>,
}

impl MultiplicativeBase {
    /// Validates independence in `algebra`.
    pub fn new(algebra: &VectorProductAlgebra, vectors: Vec<Vector>) -> Result<Self> {
        let cert = is_mult_independent(algebra, &vectors)?;
        if !cert.is_independent() {
            return Err(Error::NotIndependent(cert.to_string()));
        }
        let norms = vectors.iter().map(|v| algebra.ip(v, v)).collect();
        Ok(MultiplicativeBase { vectors, norms })
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn norms(&self) -> &[Scalar] {
        &self.norms
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Whether the base generates all of `algebra`.
    pub fn spans(&self, algebra: &VectorProductAlgebra) -> Result<bool> {
        Ok(algebra.subalgebra_closure(&self.vectors)?.is_whole())
    }
}

/// Adjoins a new element `e` of norm `mu` orthogonal to `w`, returning the
/// `(2d + 1)`-dimensional algebra on `W ⊕ ke ⊕ We` with form
/// `G_W ⊥ (mu) ⊥ mu·G_W` and product
///
/// ```text
/// (a₁ + λ₁e + b₁e)(a₂ + λ₂e + b₂e) =
///     a₁a₂ + mu(b₂b₁ + λ₁b₂ − λ₂b₁)
///   + (⟨a₂,b₁⟩ − ⟨a₁,b₂⟩) e
///   + (λ₂a₁ − λ₁a₂ + a₂b₁ − a₁b₂) e
/// ```
///
/// The result satisfies the axioms when `w` has dimension 0, 1 or 3 and
/// fails them for dimension 7.
pub fn double(w: &VectorProductAlgebra, mu: &Scalar) -> Result<VectorProductAlgebra> {
    if mu.is_zero() {
        return Err(Error::ZeroMu);
    }
    if mu.field() != w.field() {
        return Err(Error::FieldMismatch {
            left: w.field().to_string(),
            right: mu.field().to_string(),
        });
    }
    if !w.gram().is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    let field = w.field();
    let d = w.dim();
    let n = 2 * d + 1;
    let gram = w
        .gram()
        .orthogonal_sum(&GramForm::diagonal(field, std::slice::from_ref(mu)))
        .orthogonal_sum(&w.gram().scaled(mu));

    let split = |i: usize| -> (Vector, Scalar, Vector) {
        let mut a = linalg::zero_vector(field, d);
        let mut lambda = field.zero();
        let mut b = linalg::zero_vector(field, d);
        match i {
            i if i < d => a[i] = field.one(),
            i if i == d => lambda = field.one(),
            i => b[i - d - 1] = field.one(),
        }
        (a, lambda, b)
    };

    let mut structure = vec![vec![linalg::zero_vector(field, n); n]; n];
    for (i, row) in structure.iter_mut().enumerate() {
        let (a1, l1, b1) = split(i);
        for (j, out) in row.iter_mut().enumerate() {
            let (a2, l2, b2) = split(j);
            let mut w_part = w.mul(&a1, &a2);
            let mut inner = w.mul(&b2, &b1);
            linalg::axpy(&mut inner, &l1, &b2);
            linalg::axpy(&mut inner, &(-&l2), &b1);
            linalg::axpy(&mut w_part, mu, &inner);

            let e_part = &w.ip(&a2, &b1) - &w.ip(&a1, &b2);

            let mut we_part = linalg::scale(&l2, &a1);
            linalg::axpy(&mut we_part, &(-&l1), &a2);
            let a2b1 = w.mul(&a2, &b1);
            let a1b2 = w.mul(&a1, &b2);
            we_part = linalg::add(&we_part, &linalg::sub(&a2b1, &a1b2));

            out.clear();
            out.extend(w_part);
            out.push(e_part);
            out.extend(we_part);
        }
    }
    VectorProductAlgebra::new(gram, structure)
}

/// Builds the standard algebra of dimension `2^m − 1` by doubling the zero
/// algebra once per norm, together with its base of adjoined elements.
///
/// Canonical basis order: `[basis(W), e, basis(W)·e]` at every step, so the
/// `k`-th basis vector is `Π(A)` for the subset `A` with bitmask `k + 1`.
pub fn construct_standard(
    field: FieldSpec,
    norms: &[Scalar],
) -> Result<(VectorProductAlgebra, MultiplicativeBase)> {
    if norms.len() > 3 {
        return Err(Error::TooManyNorms(norms.len()));
    }
    for (i, n) in norms.iter().enumerate() {
        if n.field() != field {
            return Err(Error::FieldMismatch {
                left: field.to_string(),
                right: n.field().to_string(),
            });
        }
        if n.is_zero() {
            return Err(Error::ZeroNorm(i));
        }
    }
    let mut algebra = VectorProductAlgebra::trivial(field);
    let mut base: Vec<Vector> = Vec::new();
    for mu in norms {
        let d = algebra.dim();
        algebra = double(&algebra, mu)?;
        for v in base.iter_mut() {
            v.resize(algebra.dim(), field.zero());
        }
        base.push(algebra.unit(d));
    }
    let base = MultiplicativeBase::new(&algebra, base)?;
    Ok((algebra, base))
}

/// Greedy multiplicative base: repeatedly adjoin the first anisotropic
/// vector of the orthogonal complement of the subalgebra built so far.
pub fn find_multiplicative_base(algebra: &VectorProductAlgebra) -> Result<MultiplicativeBase> {
    if ![0, 1, 3, 7].contains(&algebra.dim()) {
        return Err(Error::BadDimension(algebra.dim()));
    }
    let report = algebra.check_axioms();
    if !report.passed() {
        let first = report
            .violations
            .first()
            .map(ToString::to_string)
            .unwrap_or_default();
        return Err(Error::NotAnAlgebra(first));
    }
    let mut base: Vec<Vector> = Vec::new();
    let mut generated = Subspace::zero(algebra.field(), algebra.dim());
    while !generated.is_whole() {
        let complement = algebra.gram().orthogonal_complement(&generated)?;
        let e = algebra
            .gram()
            .find_anisotropic(&complement)
            .ok_or_else(|| {
                Error::NotAnAlgebra("orthogonal complement is totally isotropic".to_string())
            })?;
        base.push(e);
        generated = algebra.subalgebra_closure(&base)?;
    }
    MultiplicativeBase::new(algebra, base)
}
