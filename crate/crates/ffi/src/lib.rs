//! C ABI over the `vecprod` library.
//!
//! Algebras are passed around as opaque `VpAlgebra` handles owned by the
//! caller and released with `vp_free`. Every fallible call returns a
//! `VpStatus`; on failure `vp_last_error` describes what went wrong on the
//! calling thread. Strings returned through `char **` must be released with
//! `vp_string_free`. Scalars cross the boundary as text ("3", "-1/2", or a
//! residue), vectors as comma-separated scalars and matrices as JSON.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vecprod::classify::{build_isomorphism, IsoVerdict};
use vecprod::doubling::construct_standard;
use vecprod::hurwitz::{hurwitz, imaginary_vpa};
use vecprod::io::{emit_algebra, parse_algebra, Algebra};
use vecprod::{Error, FieldSpec, Scalar};

/// Random pairs sampled by `vp_check` for unital algebras.
const CHECK_SAMPLES: usize = 1000;

/// Opaque algebra handle.
pub struct VpAlgebra(Algebra);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed field, scalar, vector or document.
    Parse = 3,
    /// Well-formed input the operation cannot accept (wrong kind, bad
    /// dimension, too many norms, degenerate form).
    InvalidArgument = 4,
    /// Input does not satisfy the algebra axioms.
    NotAnAlgebra = 5,
    NotIsomorphic = 6,
    Inconclusive = 7,
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> VpStatus {
    match e {
        Error::BadScalar { .. }
        | Error::InvalidField(_)
        | Error::CharTwoRejected
        | Error::Schema { .. }
        | Error::Shape { .. }
        | Error::NotSymmetric { .. }
        | Error::NotAntisymmetric { .. } => VpStatus::Parse,
        Error::NotAnAlgebra(_) | Error::NotComposition(_) => VpStatus::NotAnAlgebra,
        _ => VpStatus::InvalidArgument,
    }
}

struct Failure(VpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> VpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            VpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            VpStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(VpStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(VpStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const VpAlgebra, name: &str) -> Result<&'a Algebra, Failure> {
    p.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| Failure(VpStatus::NullPointer, format!("{name} is null")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure(VpStatus::NullPointer, format!("{name} is null")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("output has no NUL bytes").into_raw()
}

fn parse_field(text: &str) -> Result<FieldSpec, Failure> {
    if text == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let p = text
        .strip_prefix("Fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| {
            Failure(
                VpStatus::Parse,
                format!("field must be Q or Fp:<p>, got {text:?}"),
            )
        })?;
    if p == 2 {
        return Err(Error::CharTwoRejected.into());
    }
    Ok(FieldSpec::prime(p)?)
}

fn parse_csv(field: FieldSpec, text: &str) -> Result<Vec<Scalar>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(text
        .split(',')
        .map(|s| field.parse(s.trim()))
        .collect::<Result<_, _>>()?)
}

fn boxed(a: Algebra) -> *mut VpAlgebra {
    Box::into_raw(Box::new(VpAlgebra(a)))
}

/// Message for the last failed call on this thread, or "" after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn vp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds the standard algebra from up to three comma-separated norms over
/// `field` ("Q" or "Fp:<p>").
#[no_mangle]
pub unsafe extern "C" fn vp_construct(
    field: *const c_char,
    norms_csv: *const c_char,
    out: *mut *mut VpAlgebra,
) -> VpStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let field = parse_field(text(field, "field")?)?;
        let norms = parse_csv(field, text(norms_csv, "norms_csv")?)?;
        let (v, _) = construct_standard(field, &norms)?;
        *out = boxed(v.into());
        Ok(())
    })
}

/// Parses an algebra document.
#[no_mangle]
pub unsafe extern "C" fn vp_from_json(json: *const c_char, out: *mut *mut VpAlgebra) -> VpStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = boxed(parse_algebra(text(json, "json")?)?);
        Ok(())
    })
}

/// Canonical document text; release with `vp_string_free`.
#[no_mangle]
pub unsafe extern "C" fn vp_to_json(algebra: *const VpAlgebra, out: *mut *mut c_char) -> VpStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = into_c_string(emit_algebra(handle(algebra, "algebra")?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn vp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Dimension of the algebra, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn vp_dim(algebra: *const VpAlgebra) -> usize {
    algebra.as_ref().map_or(0, |h| h.0.dim())
}

#[no_mangle]
pub unsafe extern "C" fn vp_is_unital(algebra: *const VpAlgebra) -> bool {
    matches!(algebra.as_ref(), Some(VpAlgebra(Algebra::Unital(_))))
}

/// Runs the axiom check (vector product algebras) or the composition check
/// with 1000 seeded random pairs (unital algebras).
#[no_mangle]
pub unsafe extern "C" fn vp_check(algebra: *const VpAlgebra, passed: *mut bool) -> VpStatus {
    guard(|| {
        let passed = out_ptr(passed, "passed")?;
        *passed = match handle(algebra, "algebra")? {
            Algebra::Vector(v) => v.check_axioms().passed(),
            Algebra::Unital(u) => u.check_composition(CHECK_SAMPLES, 0).passed(),
        };
        Ok(())
    })
}

/// Product of two comma-separated coordinate vectors, returned the same way.
#[no_mangle]
pub unsafe extern "C" fn vp_multiply(
    algebra: *const VpAlgebra,
    u_csv: *const c_char,
    v_csv: *const c_char,
    out: *mut *mut c_char,
) -> VpStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let a = handle(algebra, "algebra")?;
        let u = parse_csv(a.field(), text(u_csv, "u_csv")?)?;
        let v = parse_csv(a.field(), text(v_csv, "v_csv")?)?;
        let w = a.multiply(&u, &v)?;
        let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
        *out = into_c_string(parts.join(","));
        Ok(())
    })
}

/// Unital composition algebra of a vector product algebra.
#[no_mangle]
pub unsafe extern "C" fn vp_hurwitz(
    algebra: *const VpAlgebra,
    out: *mut *mut VpAlgebra,
) -> VpStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        match handle(algebra, "algebra")? {
            Algebra::Vector(v) => {
                *out = boxed(hurwitz(v)?.into());
                Ok(())
            }
            Algebra::Unital(_) => Err(Failure(
                VpStatus::InvalidArgument,
                "expected a vector product algebra".to_string(),
            )),
        }
    })
}

/// Vector product algebra on the orthogonal complement of the identity.
#[no_mangle]
pub unsafe extern "C" fn vp_imaginary(
    algebra: *const VpAlgebra,
    out: *mut *mut VpAlgebra,
) -> VpStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        match handle(algebra, "algebra")? {
            Algebra::Unital(u) => {
                *out = boxed(imaginary_vpa(u)?.into());
                Ok(())
            }
            Algebra::Vector(_) => Err(Failure(
                VpStatus::InvalidArgument,
                "expected a unital composition algebra".to_string(),
            )),
        }
    })
}

/// Searches for an isomorphism `a -> b`. On `VP_STATUS_OK`, `matrix_json`
/// receives the matrix as a JSON array of rows of scalar strings.
/// `VP_STATUS_NOT_ISOMORPHIC` and `VP_STATUS_INCONCLUSIVE` leave it null and
/// put the reason in `vp_last_error`.
#[no_mangle]
pub unsafe extern "C" fn vp_isomorphism(
    a: *const VpAlgebra,
    b: *const VpAlgebra,
    height_bound: u64,
    matrix_json: *mut *mut c_char,
) -> VpStatus {
    guard(|| {
        let out = out_ptr(matrix_json, "matrix_json")?;
        *out = ptr::null_mut();
        let (Algebra::Vector(va), Algebra::Vector(vb)) = (handle(a, "a")?, handle(b, "b")?) else {
            return Err(Failure(
                VpStatus::InvalidArgument,
                "isomorphism search needs two vector product algebras".to_string(),
            ));
        };
        match build_isomorphism(va, vb, height_bound)? {
            IsoVerdict::Isomorphic(m) => {
                let rows: Vec<Vec<String>> = m
                    .matrix()
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect();
                *out = into_c_string(json_rows(&rows));
                Ok(())
            }
            IsoVerdict::NotIsomorphic(r) => Err(Failure(VpStatus::NotIsomorphic, r)),
            IsoVerdict::Inconclusive(r) => Err(Failure(VpStatus::Inconclusive, r)),
        }
    })
}

fn json_rows(rows: &[Vec<String>]) -> String {
    let quoted: Vec<String> = rows
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|c| format!("\"{c}\"")).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", quoted.join(","))
}

#[no_mangle]
pub unsafe extern "C" fn vp_free(algebra: *mut VpAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}
