//! Isomorphisms of vector product algebras.
//!
//! A map on a multiplicative base that preserves norms and lands on a
//! multiplicatively independent set extends uniquely to a morphism, by
//! sending `Π(A)` to `Π(σ(A))`. Building norm-matched bases of two algebras
//! in tandem therefore yields an isomorphism whenever the forms are
//! equivalent. The same machinery shows why nothing beyond dimension 7
//! exists: a fourth independent element forces a non-zero product to equal
//! its own negative.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Value, VectorProductAlgebra, Violation, D2};
use crate::doubling::{
    double, find_multiplicative_base, is_mult_independent, subset_products, Independence,
    MultiplicativeBase,
};
use crate::error::{Error, Result};
use crate::forms::{invariant_mismatch, Subspace};
use crate::linalg::{self, Matrix, Vector};

/// A linear map between vector product algebras, as a
/// `target.dim() × source.dim()` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<'a> {
    source: &'a VectorProductAlgebra,
    target: &'a VectorProductAlgebra,
    matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismCheck {
    pub orthogonal_ok: bool,
    pub multiplicative_ok: bool,
    pub violations: Vec<Violation>,
}

impl MorphismCheck {
    pub fn passed(&self) -> bool {
        self.orthogonal_ok && self.multiplicative_ok
    }
}

impl<'a> Morphism<'a> {
    /// Wraps a matrix without verifying it; see [`verify_morphism`].
    pub fn new(
        source: &'a VectorProductAlgebra,
        target: &'a VectorProductAlgebra,
        matrix: Matrix,
    ) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim() * source.dim(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        Ok(Morphism {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &'a VectorProductAlgebra {
        self.source
    }

    pub fn target(&self) -> &'a VectorProductAlgebra {
        self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[crate::Scalar]) -> Result<Vector> {
        self.matrix.mul_vec(v)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism<'a>) -> Result<Morphism<'a>> {
        if next.source != self.target {
            return Err(Error::VerificationFailed(
                "composed morphisms do not share an algebra".to_string(),
            ));
        }
        Morphism::new(self.source, next.target, next.matrix.mul(&self.matrix)?)
    }
}

/// Checks `Tᵀ G_target T = G_source` and `T(b_i b_j) = T(b_i) T(b_j)` on
/// all basis pairs.
pub fn verify_morphism(m: &Morphism<'_>) -> MorphismCheck {
    let mut violations = Vec::new();
    let pulled = m
        .target
        .gram()
        .transform(&m.matrix)
        .expect("shapes validated on construction");
    let n = m.source.dim();
    let mut orthogonal_ok = true;
    for i in 0..n {
        for j in 0..n {
            let lhs = pulled.entry(i, j);
            let rhs = m.source.gram().entry(i, j);
            if lhs != rhs {
                orthogonal_ok = false;
                violations.push(Violation {
                    identity: "orthogonality".to_string(),
                    indices: vec![i, j],
                    lhs: Value::Scalar(lhs.clone()),
                    rhs: Value::Scalar(rhs.clone()),
                });
            }
        }
    }
    let images: Vec<Vector> = (0..n).map(|i| m.matrix.column(i)).collect();
    let mut multiplicative_ok = true;
    for i in 0..n {
        for j in 0..n {
            let lhs = m
                .matrix
                .mul_vec(m.source.basis_product(i, j))
                .expect("shapes validated on construction");
            let rhs = m.target.mul(&images[i], &images[j]);
            if lhs != rhs {
                multiplicative_ok = false;
                violations.push(Violation {
                    identity: "multiplicativity".to_string(),
                    indices: vec![i, j],
                    lhs: Value::Vector(lhs),
                    rhs: Value::Vector(rhs),
                });
            }
        }
    }
    MorphismCheck {
        orthogonal_ok,
        multiplicative_ok,
        violations,
    }
}

/// The unique morphism sending `base[i]` to `images[i]`, obtained from
/// `Π(A) ↦ Π(σ(A))` on the orthogonal basis of subset products.
pub fn extend_base_morphism<'a>(
    source: &'a VectorProductAlgebra,
    base: &MultiplicativeBase,
    target: &'a VectorProductAlgebra,
    images: &[Vector],
) -> Result<Morphism<'a>> {
    if images.len() != base.len() {
        return Err(Error::DimensionMismatch {
            expected: base.len(),
            found: images.len(),
        });
    }
    for (index, (img, norm)) in images.iter().zip(base.norms()).enumerate() {
        if target.gram().norm(img)? != *norm {
            return Err(Error::NormMismatch { index });
        }
    }
    let cert = is_mult_independent(target, images)?;
    if !cert.is_independent() {
        return Err(Error::NotIndependent(format!("images: {cert}")));
    }
    let src_cols: Vec<Vector> = subset_products(source, base.vectors())?
        .into_iter()
        .map(|(_, v)| v)
        .collect();
    let dst_cols: Vec<Vector> = subset_products(target, images)?
        .into_iter()
        .map(|(_, v)| v)
        .collect();
    let field = source.field();
    let p_src = Matrix::from_columns(field, source.dim(), &src_cols)?;
    let p_dst = Matrix::from_columns(field, target.dim(), &dst_cols)?;
    let inv = p_src.inverse().ok_or_else(|| {
        Error::NotIndependent("base does not generate the source algebra".to_string())
    })?;
    let m = Morphism::new(source, target, p_dst.mul(&inv)?)?;
    let check = verify_morphism(&m);
    if !check.passed() {
        let first = check
            .violations
            .first()
            .map(ToString::to_string)
            .unwrap_or_default();
        return Err(Error::VerificationFailed(first));
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict<'a> {
    Isomorphic(Morphism<'a>),
    NotIsomorphic(String),
    Inconclusive(String),
}

fn require_algebra(v: &VectorProductAlgebra, name: &str) -> Result<()> {
    let report = v.check_axioms();
    if report.passed() {
        return Ok(());
    }
    let first = report
        .violations
        .first()
        .map(ToString::to_string)
        .unwrap_or_default();
    Err(Error::NotAnAlgebra(format!("{name}: {first}")))
}

/// Builds norm-matched multiplicative bases of `v` and `w` side by side and
/// extends the resulting bijection to an isomorphism.
///
/// Over F_p the verdict is exact. Over the rationals `NotIsomorphic` is only
/// returned when dimension, discriminant square class or signature differ;
/// a failed search for a matching norm within `height_bound` gives
/// `Inconclusive`.
pub fn build_isomorphism<'a>(
    v: &'a VectorProductAlgebra,
    w: &'a VectorProductAlgebra,
    height_bound: u64,
) -> Result<IsoVerdict<'a>> {
    if v.field() != w.field() {
        return Err(Error::FieldMismatch {
            left: v.field().to_string(),
            right: w.field().to_string(),
        });
    }
    if !v.gram().is_nondegenerate() || !w.gram().is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    // No isometry exists when the invariants differ, whatever the products.
    if let Some(reason) = invariant_mismatch(v.gram(), w.gram()) {
        return Ok(IsoVerdict::NotIsomorphic(reason));
    }
    require_algebra(v, "first algebra")?;
    require_algebra(w, "second algebra")?;
    let field = v.field();
    let mut e_set: Vec<Vector> = Vec::new();
    let mut f_set: Vec<Vector> = Vec::new();
    let mut gen_v = Subspace::zero(field, v.dim());
    let mut gen_w = Subspace::zero(field, w.dim());
    while !gen_v.is_whole() {
        let comp_v = v.gram().orthogonal_complement(&gen_v)?;
        let e = v.gram().find_anisotropic(&comp_v).ok_or_else(|| {
            Error::NotAnAlgebra("orthogonal complement is totally isotropic".to_string())
        })?;
        let target = v.ip(&e, &e);
        let comp_w = w.gram().orthogonal_complement(&gen_w)?;
        let Some(f) = w.gram().represent_value(&comp_w, &target, height_bound)? else {
            return Ok(IsoVerdict::Inconclusive(format!(
                "no element of norm {target} found in a {}-dimensional complement \
                 (height bound {height_bound})",
                comp_w.dim()
            )));
        };
        e_set.push(e);
        f_set.push(f);
        gen_v = v.subalgebra_closure(&e_set)?;
        gen_w = w.subalgebra_closure(&f_set)?;
    }
    let base = MultiplicativeBase::new(v, e_set)?;
    let m = extend_base_morphism(v, &base, w, &f_set)?;
    Ok(IsoVerdict::Isomorphic(m))
}

/// One rewriting step of `u(v(wz))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketingStep {
    pub expression: String,
    pub value: Vector,
    pub equals_direct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionAttempt {
    pub basis_index: usize,
    pub verdict: Independence,
}

/// Evidence that a 7-dimensional algebra admits no further doubling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub doubled_dim: usize,
    pub d2_violation_count: usize,
    pub first_d2_violation: Option<Violation>,
    /// `u(v(wz))` evaluated directly in the doubled candidate.
    pub direct: Vector,
    /// `u(v(wz)) = u((wv)z) = ((wv)u)z = −((vw)u)z`
    pub first_chain: Vec<BracketingStep>,
    /// `u(v(wz)) = (vu)(wz) = (w(vu))z = ((vw)u)z`
    pub second_chain: Vec<BracketingStep>,
    /// `((vw)u)z`; both chains end in `±` this value.
    pub pivot: Vector,
    pub pivot_norm: String,
    pub norm_product: String,
    pub complement_dim: usize,
    pub extensions: Vec<ExtensionAttempt>,
    pub demonstrated: bool,
}

/// Doubles a 7-dimensional algebra once more and records the failures: the
/// violated axiom, the two contradictory rewritings of `u(v(wz))` for a
/// base `u, v, w` and the new element `z`, and the fact that no basis
/// vector extends the base inside the original algebra.
pub fn obstruction_report(v: &VectorProductAlgebra) -> Result<ObstructionReport> {
    if v.dim() != 7 {
        return Err(Error::BadDimension(v.dim()));
    }
    require_algebra(v, "input")?;
    let field = v.field();
    let base = find_multiplicative_base(v)?;
    let d = double(v, &field.one())?;
    let report = d.check_axioms();
    let d2: Vec<&Violation> = report
        .violations
        .iter()
        .filter(|x| x.identity == D2)
        .collect();

    let embed = |x: &Vector| {
        let mut y = x.clone();
        y.resize(d.dim(), field.zero());
        y
    };
    let (u, vv, w) = (
        embed(&base.vectors()[0]),
        embed(&base.vectors()[1]),
        embed(&base.vectors()[2]),
    );
    let z = d.unit(v.dim());
    let m = |a: &Vector, b: &Vector| d.mul(a, b);

    let direct = m(&u, &m(&vv, &m(&w, &z)));
    let wv = m(&w, &vv);
    let vw = m(&vv, &w);
    let vu = m(&vv, &u);
    let pivot = m(&m(&vw, &u), &z);
    let step = |expression: &str, value: Vector| BracketingStep {
        expression: expression.to_string(),
        equals_direct: value == direct,
        value,
    };
    let first_chain = vec![
        step("u((wv)z)", m(&u, &m(&wv, &z))),
        step("((wv)u)z", m(&m(&wv, &u), &z)),
        step("-((vw)u)z", linalg::neg(&pivot)),
    ];
    let second_chain = vec![
        step("(vu)(wz)", m(&vu, &m(&w, &z))),
        step("(w(vu))z", m(&m(&w, &vu), &z)),
        step("((vw)u)z", pivot.clone()),
    ];
    let pivot_norm = d.ip(&pivot, &pivot);
    let norm_product = base.norms().iter().fold(field.one(), |acc, n| &acc * n);

    let generated = v.subalgebra_closure(base.vectors())?;
    let complement = v.gram().orthogonal_complement(&generated)?;
    let mut extensions = Vec::with_capacity(v.dim());
    for k in 0..v.dim() {
        let mut set = base.vectors().to_vec();
        set.push(v.unit(k));
        extensions.push(ExtensionAttempt {
            basis_index: k,
            verdict: is_mult_independent(v, &set)?,
        });
    }

    let demonstrated = !d2.is_empty()
        && !linalg::is_zero_vector(&pivot)
        && complement.dim() == 0
        && extensions.iter().all(|x| !x.verdict.is_independent());
    Ok(ObstructionReport {
        doubled_dim: d.dim(),
        d2_violation_count: d2.len(),
        first_d2_violation: d2.first().map(|x| (*x).clone()),
        direct,
        first_chain,
        second_chain,
        pivot,
        pivot_norm: pivot_norm.to_string(),
        norm_product: norm_product.to_string(),
        complement_dim: complement.dim(),
        extensions,
        demonstrated,
    })
}

fn fmt_vec(v: &[crate::Scalar]) -> String {
    Value::Vector(v.to_vec()).to_string()
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "doubled candidate: dimension {}", self.doubled_dim)?;
        writeln!(f, "d2 violations: {}", self.d2_violation_count)?;
        if let Some(v) = &self.first_d2_violation {
            writeln!(f, "first d2 violation: {v}")?;
        }
        writeln!(f, "u(v(wz)) = {}", fmt_vec(&self.direct))?;
        for (name, chain) in [("first", &self.first_chain), ("second", &self.second_chain)] {
            writeln!(f, "{name} rewriting:")?;
            for s in chain {
                let mark = if s.equals_direct { "=" } else { "!=" };
                writeln!(f, "  {mark} {} = {}", s.expression, fmt_vec(&s.value))?;
            }
        }
        writeln!(
            f,
            "((vw)u)z is non-zero with norm {} (product of base norms {}), yet the two \
             rewritings force it to equal its negative",
            self.pivot_norm, self.norm_product
        )?;
        writeln!(
            f,
            "complement of the generated subalgebra: dimension {}",
            self.complement_dim
        )?;
        for x in &self.extensions {
            writeln!(f, "  base + b_{}: {}", x.basis_index, x.verdict)?;
        }
        write!(
            f,
            "obstruction {}",
            if self.demonstrated {
                "demonstrated"
            } else {
                "NOT demonstrated"
            }
        )
    }
}
