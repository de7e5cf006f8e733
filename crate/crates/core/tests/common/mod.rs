#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use vecprod::doubling::{construct_standard, MultiplicativeBase};
use vecprod::linalg::{self, Vector};
use vecprod::sample::random_vector;
use vecprod::{FieldSpec, Scalar, VectorProductAlgebra};

pub fn f7() -> FieldSpec {
    FieldSpec::prime(7).unwrap()
}

pub fn scalars(field: FieldSpec, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

pub fn standard(field: FieldSpec, norms: &[i64]) -> (VectorProductAlgebra, MultiplicativeBase) {
    construct_standard(field, &scalars(field, norms)).unwrap()
}

/// Norm lists of every admissible length: all ones and a non-trivial choice.
pub fn norm_lists(field: FieldSpec) -> Vec<Vec<i64>> {
    let varied: &[i64] = match field {
        FieldSpec::Rationals => &[-1, 2, -3],
        FieldSpec::Prime(_) => &[2, 3, 5],
    };
    let mut out = Vec::new();
    for m in 0..=3 {
        out.push(vec![1; m]);
        if m > 0 {
            out.push(varied[..m].to_vec());
        }
    }
    out
}

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub fn read_golden(name: &str) -> String {
    std::fs::read_to_string(golden(name)).unwrap()
}

fn anisotropic<R: Rng>(a: &VectorProductAlgebra, rng: &mut R) -> Vector {
    loop {
        let v = random_vector(a.field(), a.dim(), rng);
        if !a.gram().norm(&v).unwrap().is_zero() {
            return v;
        }
    }
}

/// Removes from `v` its components along the pairwise orthogonal,
/// anisotropic vectors `along`.
fn project_out(a: &VectorProductAlgebra, v: &Vector, along: &[Vector]) -> Vector {
    let mut out = v.clone();
    for u in along {
        let c = a
            .gram()
            .eval(&out, u)
            .unwrap()
            .checked_div(&a.gram().norm(u).unwrap())
            .unwrap();
        linalg::axpy(&mut out, &(-&c), u);
    }
    out
}

/// A random triple of pairwise orthogonal vectors. Falls back to zero
/// vectors once the dimension is exhausted.
pub fn orthogonal_triple<R: Rng>(
    a: &VectorProductAlgebra,
    rng: &mut R,
) -> (Vector, Vector, Vector) {
    let mut chosen: Vec<Vector> = Vec::new();
    while chosen.len() < 3 {
        if chosen.len() >= a.dim() {
            chosen.push(a.zero_vector());
            continue;
        }
        let anisotropic_part: Vec<Vector> = chosen
            .iter()
            .filter(|v| !linalg::is_zero_vector(v))
            .cloned()
            .collect();
        let candidate = project_out(a, &anisotropic(a, rng), &anisotropic_part);
        if !a.gram().norm(&candidate).unwrap().is_zero() {
            chosen.push(candidate);
        }
    }
    let w = chosen.pop().unwrap();
    let v = chosen.pop().unwrap();
    let u = chosen.pop().unwrap();
    (u, v, w)
}

pub fn random_triple<R: Rng>(a: &VectorProductAlgebra, rng: &mut R) -> (Vector, Vector, Vector) {
    (
        random_vector(a.field(), a.dim(), rng),
        random_vector(a.field(), a.dim(), rng),
        random_vector(a.field(), a.dim(), rng),
    )
}
