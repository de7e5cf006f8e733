//! Exact ground fields: the rationals and prime fields of odd characteristic.
//!
//! Every [`Scalar`] remembers the field it lives in. Mixing fields is an
//! error in the checked API and a panic in the operator overloads, which are
//! meant for algorithm code that has already established a common field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest accepted prime modulus. Residues are multiplied in `u128`, the
/// bound only keeps trial division fast.
pub const MAX_PRIME: u64 = 1 << 32;

/// A validated odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharTwoRejected);
        }
        if p >= MAX_PRIME {
            return Err(Error::InvalidField(format!("modulus {p} exceeds 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(PrimeModulus),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        PrimeModulus::new(p).map(FieldSpec::Prime)
    }

    /// The characteristic (0 for the rationals).
    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p.get(),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar(Repr::Rational(BigRational::from_integer(n.into()))),
            FieldSpec::Prime(p) => {
                let m = p.get() as i128;
                let r = (n as i128).rem_euclid(m) as u64;
                Scalar(Repr::Residue {
                    value: r,
                    modulus: p,
                })
            }
        }
    }

    /// `num / den` in this field. Fails when `den` vanishes in the field.
    pub fn fraction(self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Embeds an exact rational. Over F_p the denominator must be a unit.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(Scalar(Repr::Rational(q.clone()))),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(p.get());
                let reduce = |x: &BigInt| x.mod_floor(&m).to_u64().expect("residue fits u64");
                let num = Scalar::residue(reduce(q.numer()), p);
                let den = Scalar::residue(reduce(q.denom()), p);
                num.checked_div(&den)
            }
        }
    }

    /// Parses a scalar. Accepts `a` or `a/b` over the rationals (reduced on
    /// input) and any decimal integer over F_p (reduced mod p).
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let bad = |reason: &str| Error::BadScalar {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let s = text.trim();
        match self {
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (s, None),
                };
                let num: BigInt = num.parse().map_err(|_| bad("invalid integer"))?;
                let den: BigInt = match den {
                    Some(d) => d.parse().map_err(|_| bad("invalid denominator"))?,
                    None => BigInt::one(),
                };
                if !den.is_positive() {
                    return Err(bad("denominator must be positive"));
                }
                Ok(Scalar(Repr::Rational(BigRational::new(num, den))))
            }
            FieldSpec::Prime(p) => {
                if s.contains('/') {
                    return Err(bad("fractions are not accepted over a prime field"));
                }
                let n: BigInt = s.parse().map_err(|_| bad("invalid integer"))?;
                let r = n.mod_floor(&BigInt::from(p.get()));
                Ok(Scalar::residue(r.to_u64().expect("residue fits u64"), p))
            }
        }
    }

    /// Parses a scalar that must already be in canonical text form.
    pub fn parse_canonical(self, text: &str) -> Result<Scalar> {
        let s = self.parse(text)?;
        if s.to_string() != text {
            return Err(Error::BadScalar {
                text: text.to_string(),
                reason: "not in canonical form".to_string(),
            });
        }
        Ok(s)
    }

    /// All field elements, for prime fields only.
    pub fn elements(self) -> Option<impl Iterator<Item = Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..p.get()).map(move |v| Scalar::residue(v, p))),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{}", p.get()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, modulus: PrimeModulus },
}

/// An exact element of a [`FieldSpec`], always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

/// Binary field operations, plus negation (which ignores the second operand).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

/// Applies `op` to `a` and `b` with full error reporting.
pub fn field_op(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar> {
    match op {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Sub => a.checked_sub(b),
        FieldOp::Mul => a.checked_mul(b),
        FieldOp::Div => a.checked_div(b),
        FieldOp::Neg => {
            a.same_field(b)?;
            Ok(-a)
        }
    }
}

impl Scalar {
    fn residue(value: u64, modulus: PrimeModulus) -> Scalar {
        Scalar(Repr::Residue { value, modulus })
    }

    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Rational(_) => FieldSpec::Rationals,
            Repr::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            Repr::Residue { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(*value),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field().to_string(),
                right: other.field().to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a + b)),
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => {
                let p = modulus.get();
                Scalar::residue(((*a as u128 + *b as u128) % p as u128) as u64, *modulus)
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self + &(-other))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a * b)),
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => {
                let p = modulus.get();
                Scalar::residue(((*a as u128 * *b as u128) % p as u128) as u64, *modulus)
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        let inv = other.inv()?;
        Ok(self * &inv)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(q.recip())),
            Repr::Residue { modulus, .. } => self.pow(modulus.get() - 2),
        })
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Half of `self`; exists because the characteristic is never 2.
    pub fn half(&self) -> Scalar {
        let two = self.field().from_i64(2);
        self.checked_div(&two).expect("characteristic is not 2")
    }

    /// A square root when `self` is a square in its field.
    ///
    /// Over F_p the smaller of the two roots is returned; over the rationals
    /// the non-negative root.
    pub fn sqrt(&self) -> Option<Scalar> {
        match &self.0 {
            Repr::Rational(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = exact_isqrt(q.numer())?;
                let d = exact_isqrt(q.denom())?;
                Some(Scalar(Repr::Rational(BigRational::new(n, d))))
            }
            Repr::Residue { value, modulus } => {
                let r = sqrt_mod(*value, modulus.get())?;
                let p = modulus.get();
                Some(Scalar::residue(r.min((p - r) % p), *modulus))
            }
        }
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Sign of a rational scalar: -1, 0 or 1. `None` over a prime field.
    pub fn signum(&self) -> Option<i8> {
        self.as_rational().map(|q| {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        })
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Tonelli-Shanks for odd primes.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulm(t2, t2);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

// Operator overloads panic on field mismatch or division by zero; they are
// intended for code that works inside a single, known field.

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(-q)),
            Repr::Residue { value, modulus } => {
                Scalar::residue((modulus.get() - value) % modulus.get(), *modulus)
            }
        }
    }
}

macro_rules! forward_owned {
    ($($Trait:ident :: $method:ident),*) => {$(
        impl $Trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
