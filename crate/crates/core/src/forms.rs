//! Symmetric bilinear forms given by Gram matrices.
//!
//! Besides evaluation this module diagonalizes forms, computes orthogonal
//! complements, finds vectors of prescribed norm and decides equivalence of
//! forms (completely over F_p, by invariants plus bounded witness search
//! over the rationals).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{self, check_len, Matrix, Vector};

/// Default height bound for rational witness searches.
pub const DEFAULT_HEIGHT_BOUND: u64 = 20;

/// Upper limit on candidate coordinate tuples tried by one rational
/// `represent_value` call.
const RATIONAL_SEARCH_BUDGET: usize = 250_000;

/// At most this many free coordinates are assigned during a rational search;
/// one more coordinate is solved for.
const RATIONAL_SEARCH_SUPPORT: usize = 3;

/// `½(N(u+v) − N(u) − N(v))`.
pub fn polarize(n_uv: &Scalar, n_u: &Scalar, n_v: &Scalar) -> Scalar {
    (&(n_uv - n_u) - n_v).half()
}

/// A subspace of `field^ambient`, stored as a list of independent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: (0..ambient)
                .map(|i| linalg::unit_vector(field, ambient, i))
                .collect(),
        }
    }

    /// Span of `vectors`. The basis keeps, in order, each vector that is not
    /// in the span of its predecessors.
    pub fn span<I>(field: FieldSpec, ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vector>,
    {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            check_len(&v, ambient)?;
            if !s.contains(&v)? {
                s.basis.push(v);
            }
        }
        Ok(s)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        check_len(v, self.ambient)?;
        if linalg::is_zero_vector(v) {
            return Ok(true);
        }
        if self.is_whole() {
            return Ok(true);
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        let m = Matrix::from_rows(self.field, rows)?;
        Ok(m.rank() == self.dim())
    }

    /// Whether both subspaces have the same span.
    pub fn same_span(&self, other: &Subspace) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        if self.dim() != other.dim() {
            return Ok(false);
        }
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Result of a form equivalence decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormEquivalence {
    /// Carries `T` with `Tᵀ G2 T = G1`.
    Equivalent(Matrix),
    NotEquivalent(String),
    Inconclusive(String),
}

/// A symmetric bilinear form on `field^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    matrix: Matrix,
}

impl GramForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        for i in 0..matrix.rows() {
            for j in i + 1..matrix.cols() {
                if matrix[(i, j)] != matrix[(j, i)] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(GramForm { matrix })
    }

    pub fn diagonal(field: FieldSpec, entries: &[Scalar]) -> Self {
        GramForm {
            matrix: Matrix::diagonal(field, entries),
        }
    }

    pub fn identity(field: FieldSpec, dim: usize) -> Self {
        GramForm {
            matrix: Matrix::identity(field, dim),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.matrix[(i, j)]
    }

    /// `uᵀ G v`.
    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Result<Scalar> {
        check_len(u, self.dim())?;
        check_len(v, self.dim())?;
        let mut acc = self.field().zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let row = linalg::dot(self.field(), self.matrix.row(i), v);
            acc = &acc + &(ui * &row);
        }
        Ok(acc)
    }

    /// The quadratic form `N(u) = ⟨u, u⟩`.
    pub fn norm(&self, u: &[Scalar]) -> Result<Scalar> {
        self.eval(u, u)
    }

    /// `G v`, so that `⟨u, v⟩ = u · (G v)`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vector> {
        self.matrix.mul_vec(v)
    }

    pub fn discriminant(&self) -> Scalar {
        self.matrix.determinant().expect("gram matrix is square")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.discriminant().is_zero()
    }

    /// `G ⊥ H` on the direct sum of the two spaces.
    pub fn orthogonal_sum(&self, other: &GramForm) -> GramForm {
        let n = self.dim() + other.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                m[(i, j)] = self.matrix[(i, j)].clone();
            }
        }
        let o = self.dim();
        for i in 0..other.dim() {
            for j in 0..other.dim() {
                m[(o + i, o + j)] = other.matrix[(i, j)].clone();
            }
        }
        GramForm { matrix: m }
    }

    pub fn scaled(&self, c: &Scalar) -> GramForm {
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] = c * &m[(i, j)];
            }
        }
        GramForm { matrix: m }
    }

    /// `Tᵀ G T`.
    pub fn transform(&self, t: &Matrix) -> Result<GramForm> {
        let m = t.transpose().mul(&self.matrix)?.mul(t)?;
        Ok(GramForm { matrix: m })
    }

    /// The form restricted to `u`, in the coordinates of `u`'s basis.
    pub fn restrict(&self, u: &Subspace) -> Result<GramForm> {
        let b = Matrix::from_columns(self.field(), self.dim(), u.basis())?;
        self.transform(&b)
    }

    /// Returns `(T, D)` with `Tᵀ G T = D` diagonal and `T` invertible.
    pub fn diagonalize(&self) -> (Matrix, GramForm) {
        let start = (0..self.dim())
            .map(|i| linalg::unit_vector(self.field(), self.dim(), i))
            .collect();
        let (vectors, diag) = self.orthogonal_basis(start);
        let t = Matrix::from_columns(self.field(), self.dim(), &vectors)
            .expect("vectors have ambient length");
        (t, GramForm::diagonal(self.field(), &diag))
    }

    /// Orthogonalizes the span of `basis` (assumed independent): returns
    /// pairwise orthogonal vectors spanning it and their norms.
    fn orthogonal_basis(&self, mut rest: Vec<Vector>) -> (Vec<Vector>, Vec<Scalar>) {
        let mut vectors = Vec::with_capacity(rest.len());
        let mut diag = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let Some((v, drop)) = self.anisotropic_in(&rest) else {
                // What remains is totally isotropic and orthogonal to the rest.
                for w in rest.drain(..) {
                    vectors.push(w);
                    diag.push(self.field().zero());
                }
                break;
            };
            let nv = self.norm(&v).expect("ambient length");
            let inv = nv.inv().expect("anisotropic");
            rest.remove(drop);
            for w in rest.iter_mut() {
                let c = &self.eval(w, &v).expect("ambient length") * &inv;
                if !c.is_zero() {
                    linalg::axpy(w, &(-&c), &v);
                }
            }
            vectors.push(v);
            diag.push(nv);
        }
        (vectors, diag)
    }

    /// First anisotropic vector in scan order: each `w_i`, then `w_i + w_j`
    /// for `i < j`. Also returns the index of a vector it may replace.
    fn anisotropic_in(&self, ws: &[Vector]) -> Option<(Vector, usize)> {
        for (i, w) in ws.iter().enumerate() {
            if !self.norm(w).expect("ambient length").is_zero() {
                return Some((w.clone(), i));
            }
        }
        for i in 0..ws.len() {
            for j in i + 1..ws.len() {
                if !self.eval(&ws[i], &ws[j]).expect("ambient length").is_zero() {
                    return Some((linalg::add(&ws[i], &ws[j]), i));
                }
            }
        }
        None
    }

    /// An anisotropic vector of `u`, chosen deterministically.
    pub fn find_anisotropic(&self, u: &Subspace) -> Option<Vector> {
        self.anisotropic_in(u.basis()).map(|(v, _)| v)
    }

    /// `U^⊥` with respect to this form, which must be non-degenerate.
    pub fn orthogonal_complement(&self, u: &Subspace) -> Result<Subspace> {
        if u.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.ambient_dim(),
            });
        }
        if !self.is_nondegenerate() {
            return Err(Error::DegenerateForm);
        }
        let rows = u
            .basis()
            .iter()
            .map(|b| self.apply(b))
            .collect::<Result<Vec<_>>>()?;
        let m = if rows.is_empty() {
            Matrix::zeros(self.field(), 0, self.dim())
        } else {
            Matrix::from_rows(self.field(), rows)?
        };
        Ok(Subspace {
            field: self.field(),
            ambient: self.dim(),
            basis: m.null_space(),
        })
    }

    /// Counts of positive, negative and zero entries after diagonalization.
    /// Only meaningful over the rationals.
    pub fn signature(&self) -> Option<(usize, usize, usize)> {
        if self.field() != FieldSpec::Rationals {
            return None;
        }
        let (_, d) = self.diagonalize();
        let mut sig = (0, 0, 0);
        for i in 0..d.dim() {
            match d.entry(i, i).signum() {
                Some(1) => sig.0 += 1,
                Some(-1) => sig.1 += 1,
                _ => sig.2 += 1,
            }
        }
        Some(sig)
    }

    /// A vector `v ∈ u` with `N(v) = t`, or `None`.
    ///
    /// Over F_p the answer is exact. Over the rationals `None` only means no
    /// vector was found with coordinates of height at most `height_bound`
    /// in a diagonal basis of `u`.
    pub fn represent_value(
        &self,
        u: &Subspace,
        t: &Scalar,
        height_bound: u64,
    ) -> Result<Option<Vector>> {
        if t.is_zero() {
            return Err(Error::ZeroTarget);
        }
        if u.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.ambient_dim(),
            });
        }
        if u.dim() == 0 {
            return Ok(None);
        }
        let (ws, alphas) = self.orthogonal_basis(u.basis().to_vec());
        if alphas.iter().any(Scalar::is_zero) {
            return Err(Error::DegenerateForm);
        }
        let coords = match self.field() {
            FieldSpec::Prime(_) => represent_diagonal_fp(&alphas, t),
            FieldSpec::Rationals => represent_diagonal_q(&alphas, t, height_bound),
        };
        Ok(coords.map(|x| {
            let mut v = linalg::zero_vector(self.field(), self.dim());
            for (c, w) in x.iter().zip(&ws) {
                linalg::axpy(&mut v, c, w);
            }
            v
        }))
    }
}

/// Solves `Σ α_i x_i² = t` over F_p using the first two coordinates.
fn represent_diagonal_fp(alphas: &[Scalar], t: &Scalar) -> Option<Vec<Scalar>> {
    let field = t.field();
    let mut x = vec![field.zero(); alphas.len()];
    if alphas.len() == 1 {
        x[0] = t.checked_div(&alphas[0]).ok()?.sqrt()?;
        return Some(x);
    }
    let inv1 = alphas[1].inv().ok()?;
    for a in field.elements()? {
        let rem = &(t - &(&alphas[0] * &(&a * &a))) * &inv1;
        if let Some(b) = rem.sqrt() {
            x[0] = a;
            x[1] = b;
            return Some(x);
        }
    }
    None
}

/// Positive rationals `a/b` in lowest terms with `max(a, b) <= h`, grouped
/// by that height.
fn rationals_up_to(h: u64) -> Vec<(u64, BigRational)> {
    let mut out = Vec::new();
    for height in 1..=h {
        for other in 1..=height {
            if other.gcd(&height) != 1 {
                continue;
            }
            out.push((
                height,
                BigRational::new(BigInt::from(height), BigInt::from(other)),
            ));
            if other != height {
                out.push((
                    height,
                    BigRational::new(BigInt::from(other), BigInt::from(height)),
                ));
            }
        }
    }
    out
}

/// Bounded search for `Σ α_i x_i² = t` over the rationals: assign up to
/// three free coordinates, solve one more for a rational square root.
fn represent_diagonal_q(alphas: &[Scalar], t: &Scalar, height_bound: u64) -> Option<Vec<Scalar>> {
    let field = FieldSpec::Rationals;
    let r = alphas.len();
    let values = rationals_up_to(height_bound.max(1));
    let mut budget = RATIONAL_SEARCH_BUDGET;
    let try_solve = |solved: usize, assigned: &[(usize, &BigRational)]| -> Option<Vec<Scalar>> {
        let mut rem = t.clone();
        for &(i, q) in assigned {
            let x = field.from_rational(q).ok()?;
            rem = &rem - &(&alphas[i] * &(&x * &x));
        }
        let y = rem.checked_div(&alphas[solved]).ok()?.sqrt()?;
        let mut out = vec![field.zero(); r];
        for &(i, q) in assigned {
            out[i] = field.from_rational(q).ok()?;
        }
        out[solved] = y;
        Some(out)
    };
    for solved in 0..r {
        if let Some(x) = try_solve(solved, &[]) {
            return Some(x);
        }
    }
    for h in 1..=height_bound.max(1) {
        let level: Vec<&(u64, BigRational)> = values.iter().filter(|(ht, _)| *ht <= h).collect();
        for k in 1..=RATIONAL_SEARCH_SUPPORT.min(r.saturating_sub(1)) {
            for solved in 0..r {
                let others: Vec<usize> = (0..r).filter(|&i| i != solved).collect();
                for support in combinations(&others, k) {
                    let mut idx = vec![0usize; k];
                    loop {
                        let chosen: Vec<&(u64, BigRational)> =
                            idx.iter().map(|&i| level[i]).collect();
                        if chosen.iter().any(|(ht, _)| *ht == h) {
                            let assigned: Vec<(usize, &BigRational)> = support
                                .iter()
                                .zip(&chosen)
                                .map(|(&i, (_, q))| (i, q))
                                .collect();
                            if let Some(x) = try_solve(solved, &assigned) {
                                return Some(x);
                            }
                            budget -= 1;
                            if budget == 0 {
                                return None;
                            }
                        }
                        if !advance(&mut idx, level.len()) {
                            break;
                        }
                    }
                }
            }
        }
    }
    None
}

/// Odometer increment; false once every index has wrapped.
fn advance(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (pos, &first) in items.iter().enumerate() {
        for mut tail in combinations(&items[pos + 1..], k - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Compares the equivalence invariants of two non-degenerate forms over the
/// same field: dimension, discriminant square class and, over the
/// rationals, the signature. Over F_p these are complete.
pub fn invariant_mismatch(g1: &GramForm, g2: &GramForm) -> Option<String> {
    if g1.dim() != g2.dim() {
        return Some(format!("dimensions differ ({} vs {})", g1.dim(), g2.dim()));
    }
    let (d1, d2) = (g1.discriminant(), g2.discriminant());
    if !(&d1 * &d2).is_square() {
        return Some(format!(
            "discriminants {d1} and {d2} lie in different square classes"
        ));
    }
    if let (Some(s1), Some(s2)) = (g1.signature(), g2.signature()) {
        if s1 != s2 {
            return Some(format!(
                "signatures differ ({}+ {}- vs {}+ {}-)",
                s1.0, s1.1, s2.0, s2.1
            ));
        }
    }
    None
}

/// Decides whether `g1` and `g2` are equivalent, returning `T` with
/// `Tᵀ g2 T = g1` when they are.
pub fn equivalent_forms(
    g1: &GramForm,
    g2: &GramForm,
    height_bound: u64,
) -> Result<FormEquivalence> {
    if g1.field() != g2.field() {
        return Err(Error::FieldMismatch {
            left: g1.field().to_string(),
            right: g2.field().to_string(),
        });
    }
    if !g1.is_nondegenerate() || !g2.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    let field = g1.field();
    if g1.dim() != g2.dim() {
        return Ok(FormEquivalence::NotEquivalent(format!(
            "dimensions differ ({} vs {})",
            g1.dim(),
            g2.dim()
        )));
    }
    if g1 == g2 {
        return Ok(FormEquivalence::Equivalent(Matrix::identity(
            field,
            g1.dim(),
        )));
    }
    if let Some(reason) = invariant_mismatch(g1, g2) {
        return Ok(FormEquivalence::NotEquivalent(reason));
    }
    let (t1, diag1) = g1.diagonalize();
    let mut images: Vec<Vector> = Vec::with_capacity(g1.dim());
    for i in 0..g1.dim() {
        let target = diag1.entry(i, i);
        let used = Subspace::span(field, g2.dim(), images.iter().cloned())?;
        let complement = g2.orthogonal_complement(&used)?;
        match g2.represent_value(&complement, target, height_bound)? {
            Some(f) => images.push(f),
            None => {
                return Ok(FormEquivalence::Inconclusive(format!(
                    "no vector of norm {target} found in a {}-dimensional complement",
                    complement.dim()
                )))
            }
        }
    }
    let f = Matrix::from_columns(field, g2.dim(), &images)?;
    let t = f.mul(&t1.inverse().expect("diagonalizing transform is invertible"))?;
    if g2.transform(&t)? != *g1 {
        return Ok(FormEquivalence::Inconclusive(
            "constructed witness failed verification".to_string(),
        ));
    }
    Ok(FormEquivalence::Equivalent(t))
}

/// Exhaustive search over all matrices `T` for `Tᵀ g2 T = g1`. Test oracle,
/// restricted to F_p with `p <= 5` and dimension at most 3.
pub fn brute_force_isometry(g1: &GramForm, g2: &GramForm) -> Result<Option<Matrix>> {
    let p = g1.field().characteristic();
    let n = g1.dim().max(g2.dim());
    if g1.field() != g2.field() {
        return Err(Error::FieldMismatch {
            left: g1.field().to_string(),
            right: g2.field().to_string(),
        });
    }
    if p == 0 || p > 5 || n > 3 {
        return Err(Error::OracleTooLarge { p, dim: n });
    }
    if g1.dim() != g2.dim() {
        return Ok(None);
    }
    let res = |m: &Matrix| -> Vec<u64> {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].as_residue().expect("prime field"))
            .collect()
    };
    let a = res(g1.matrix());
    let b = res(g2.matrix());
    if a == b {
        return Ok(Some(Matrix::identity(g1.field(), n)));
    }
    let mut t = vec![0u64; n * n];
    loop {
        let mut ok = true;
        'check: for i in 0..n {
            for j in 0..n {
                let mut s = 0u64;
                for k in 0..n {
                    for l in 0..n {
                        s += t[k * n + i] * b[k * n + l] * t[l * n + j];
                    }
                }
                if s % p != a[i * n + j] {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            let rows = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| g1.field().from_i64(t[i * n + j] as i64))
                        .collect()
                })
                .collect();
            return Ok(Some(Matrix::from_rows(g1.field(), rows)?));
        }
        let mut pos = 0;
        loop {
            if pos == t.len() {
                return Ok(None);
            }
            t[pos] += 1;
            if t[pos] < p {
                break;
            }
            t[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        FieldSpec::Rationals.from_i64(n)
    }

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn diag(field: FieldSpec, xs: &[i64]) -> GramForm {
        GramForm::diagonal(
            field,
            &xs.iter().map(|&x| field.from_i64(x)).collect::<Vec<_>>(),
        )
    }

    fn vq(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn eval_examples() {
        let g = GramForm::identity(FieldSpec::Rationals, 3);
        assert_eq!(g.eval(&vq(&[1, 0, 0]), &vq(&[0, 1, 0])).unwrap(), q(0));
        assert_eq!(g.norm(&vq(&[1, 2, 0])).unwrap(), q(5));
        assert_eq!(g.eval(&vq(&[0, 0, 0]), &vq(&[4, 5, 6])).unwrap(), q(0));
        assert!(matches!(
            g.eval(&vq(&[1]), &vq(&[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn polarize_examples() {
        assert_eq!(polarize(&q(5), &q(1), &q(4)), q(0));
        assert_eq!(polarize(&q(4), &q(1), &q(1)), q(1));
        let f7 = fp(7);
        assert_eq!(
            polarize(&f7.from_i64(3), &f7.from_i64(1), &f7.from_i64(1)),
            f7.from_i64(4)
        );
    }

    #[test]
    fn nondegeneracy() {
        assert!(diag(FieldSpec::Rationals, &[1, 1, 1]).is_nondegenerate());
        assert!(!diag(FieldSpec::Rationals, &[1, 0, 1]).is_nondegenerate());
        assert!(GramForm::identity(FieldSpec::Rationals, 0).is_nondegenerate());
    }

    #[test]
    fn asymmetric_matrix_rejected() {
        let m = Matrix::from_rows(FieldSpec::Rationals, vec![vq(&[1, 2]), vq(&[3, 1])]).unwrap();
        assert_eq!(
            GramForm::new(m),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        );
    }

    #[test]
    fn diagonalize_already_diagonal() {
        for field in [FieldSpec::Rationals, fp(5)] {
            let g = diag(field, &[1, 1, 1]);
            let (t, d) = g.diagonalize();
            assert_eq!(t, Matrix::identity(field, 3));
            assert_eq!(d, g);
        }
    }

    #[test]
    fn diagonalize_hyperbolic_plane() {
        let f = FieldSpec::Rationals;
        let g =
            GramForm::new(Matrix::from_rows(f, vec![vq(&[0, 1]), vq(&[1, 0])]).unwrap()).unwrap();
        let (t, d) = g.diagonalize();
        assert_eq!(t.column(0), vq(&[1, 1]));
        assert_eq!(*d.entry(0, 0), q(2));
        assert_eq!(*d.entry(1, 1), f.fraction(-1, 2).unwrap());
        assert_eq!(g.transform(&t).unwrap(), d);
    }

    #[test]
    fn diagonalize_degenerate_gives_zero_entries() {
        let f = FieldSpec::Rationals;
        let m = Matrix::from_rows(f, vec![vq(&[1, 1]), vq(&[1, 1])]).unwrap();
        let g = GramForm::new(m).unwrap();
        let (t, d) = g.diagonalize();
        assert_eq!(*d.entry(1, 1), q(0));
        assert!(!t.determinant().unwrap().is_zero());
        assert_eq!(g.transform(&t).unwrap(), d);
    }

    #[test]
    fn complement_examples() {
        let f = FieldSpec::Rationals;
        let g = GramForm::identity(f, 3);
        let e1 = Subspace::span(f, 3, [vq(&[1, 0, 0])]).unwrap();
        let c = g.orthogonal_complement(&e1).unwrap();
        let expected = Subspace::span(f, 3, [vq(&[0, 1, 0]), vq(&[0, 0, 1])]).unwrap();
        assert!(c.same_span(&expected).unwrap());

        let c = g.orthogonal_complement(&Subspace::whole(f, 3)).unwrap();
        assert_eq!(c.dim(), 0);

        let u = Subspace::span(f, 3, [vq(&[1, 1, 0])]).unwrap();
        let c = g.orthogonal_complement(&u).unwrap();
        let expected = Subspace::span(f, 3, [vq(&[1, -1, 0]), vq(&[0, 0, 1])]).unwrap();
        assert!(c.same_span(&expected).unwrap());

        assert_eq!(
            diag(f, &[1, 0, 1]).orthogonal_complement(&u),
            Err(Error::DegenerateForm)
        );
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(diag(FieldSpec::Rationals, &[1, 1, 1]).discriminant(), q(1));
        assert_eq!(diag(fp(7), &[2, 2, 2]).discriminant(), fp(7).one());
        assert_eq!(
            GramForm::identity(FieldSpec::Rationals, 0).discriminant(),
            q(1)
        );
    }

    #[test]
    fn represent_value_examples() {
        let f7 = fp(7);
        let g = diag(f7, &[1, 1]);
        let v = g
            .represent_value(&Subspace::whole(f7, 2), &f7.from_i64(3), 0)
            .unwrap()
            .unwrap();
        assert_eq!(v, vec![f7.from_i64(1), f7.from_i64(3)]);

        let g = GramForm::identity(FieldSpec::Rationals, 3);
        let v = g
            .represent_value(&Subspace::whole(FieldSpec::Rationals, 3), &q(1), 20)
            .unwrap();
        assert_eq!(v, Some(vq(&[1, 0, 0])));

        let g = diag(f7, &[1]);
        assert_eq!(
            g.represent_value(&Subspace::whole(f7, 1), &f7.from_i64(3), 0)
                .unwrap(),
            None
        );
        assert_eq!(
            g.represent_value(&Subspace::whole(f7, 1), &f7.zero(), 0),
            Err(Error::ZeroTarget)
        );
    }

    #[test]
    fn rational_search_needs_three_squares() {
        // 7 = 4 + 1 + 1 + 1 needs four squares of integers, but rationally
        // 7 is not a sum of three squares either; 6 = 4 + 1 + 1 works.
        let f = FieldSpec::Rationals;
        let g = GramForm::identity(f, 4);
        let v = g
            .represent_value(&Subspace::whole(f, 4), &q(7), 5)
            .unwrap()
            .unwrap();
        assert_eq!(g.norm(&v).unwrap(), q(7));
        let g3 = GramForm::identity(f, 3);
        let v = g3
            .represent_value(&Subspace::whole(f, 3), &q(6), 5)
            .unwrap()
            .unwrap();
        assert_eq!(g3.norm(&v).unwrap(), q(6));
    }

    #[test]
    fn equivalence_examples() {
        let f7 = fp(7);
        match equivalent_forms(&diag(f7, &[1, 1, 1]), &diag(f7, &[2, 2, 2]), 0).unwrap() {
            FormEquivalence::Equivalent(t) => {
                assert_eq!(
                    diag(f7, &[2, 2, 2]).transform(&t).unwrap(),
                    diag(f7, &[1, 1, 1])
                );
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            equivalent_forms(&diag(f7, &[1]), &diag(f7, &[3]), 0).unwrap(),
            FormEquivalence::NotEquivalent(_)
        ));
        let g = diag(FieldSpec::Rationals, &[1, 2, 3]);
        assert_eq!(
            equivalent_forms(&g, &g, 20).unwrap(),
            FormEquivalence::Equivalent(Matrix::identity(FieldSpec::Rationals, 3))
        );
    }

    #[test]
    fn rational_equivalence_uses_invariants_and_search() {
        let f = FieldSpec::Rationals;
        // disc 1 vs 8
        assert!(matches!(
            equivalent_forms(&diag(f, &[1, 1, 1]), &diag(f, &[2, 2, 2]), 20).unwrap(),
            FormEquivalence::NotEquivalent(_)
        ));
        // same disc, different signature
        assert!(matches!(
            equivalent_forms(&diag(f, &[1, 1]), &diag(f, &[-1, -1]), 20).unwrap(),
            FormEquivalence::NotEquivalent(_)
        ));
        // <1,1> ~ <2,2>: (1,1) and (1,-1) have norm 2.
        let g1 = diag(f, &[2, 2]);
        let g2 = diag(f, &[1, 1]);
        match equivalent_forms(&g1, &g2, 20).unwrap() {
            FormEquivalence::Equivalent(t) => assert_eq!(g2.transform(&t).unwrap(), g1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn brute_force_examples() {
        let f3 = fp(3);
        assert_eq!(
            brute_force_isometry(&diag(f3, &[1, 1]), &diag(f3, &[1, 1])).unwrap(),
            Some(Matrix::identity(f3, 2))
        );
        assert_eq!(
            brute_force_isometry(&diag(f3, &[1]), &diag(f3, &[2])).unwrap(),
            None
        );
        let t = brute_force_isometry(&diag(f3, &[1, 1, 1]), &diag(f3, &[2, 2, 2]))
            .unwrap()
            .is_some();
        // disc 1 vs 8 = 2 mod 3, a non-square: no isometry.
        assert!(!t);
        assert!(matches!(
            brute_force_isometry(&diag(fp(7), &[1]), &diag(fp(7), &[1])),
            Err(Error::OracleTooLarge { .. })
        ));
    }
}
