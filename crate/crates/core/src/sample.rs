//! Seeded random field elements for smoke tests and sampled identity checks.

use rand::Rng;

use crate::field::{FieldSpec, Scalar};
use crate::linalg::Vector;

/// Small-height rationals `a/b` with `|a| <= 5`, `1 <= b <= 3`, or a
/// uniform residue over F_p.
pub fn random_scalar<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R) -> Scalar {
    match field {
        FieldSpec::Rationals => {
            let num = rng.random_range(-5i64..=5);
            let den = rng.random_range(1i64..=3);
            field.fraction(num, den).expect("denominator is non-zero")
        }
        FieldSpec::Prime(p) => field.from_i64(rng.random_range(0..p.get()) as i64),
    }
}

pub fn random_vector<R: Rng + ?Sized>(field: FieldSpec, dim: usize, rng: &mut R) -> Vector {
    (0..dim).map(|_| random_scalar(field, rng)).collect()
}
