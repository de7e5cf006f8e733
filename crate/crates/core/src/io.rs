//! JSON interchange for algebras.
//!
//! One schema (`"vpa-1"`) covers both kinds; a document with
//! `identity_index` encodes a unital composition algebra. Scalars are always
//! strings in canonical text form, and [`emit_algebra`] writes a fixed
//! layout so that documents compare byte for byte.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::VectorProductAlgebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::forms::GramForm;
use crate::hurwitz::UnitalCompositionAlgebra;
use crate::linalg::{Matrix, Vector};

pub const SCHEMA: &str = "vpa-1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    Vector(VectorProductAlgebra),
    Unital(UnitalCompositionAlgebra),
}

impl Algebra {
    pub fn field(&self) -> FieldSpec {
        self.gram().field()
    }

    pub fn dim(&self) -> usize {
        self.gram().dim()
    }

    pub fn gram(&self) -> &GramForm {
        match self {
            Algebra::Vector(a) => a.gram(),
            Algebra::Unital(a) => a.gram(),
        }
    }

    pub fn structure(&self) -> &[Vec<Vector>] {
        match self {
            Algebra::Vector(a) => a.structure(),
            Algebra::Unital(a) => a.structure(),
        }
    }

    pub fn identity_index(&self) -> Option<usize> {
        match self {
            Algebra::Vector(_) => None,
            Algebra::Unital(a) => Some(a.identity_index()),
        }
    }

    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vector> {
        match self {
            Algebra::Vector(a) => a.multiply(u, v),
            Algebra::Unital(a) => a.multiply(u, v),
        }
    }
}

impl From<VectorProductAlgebra> for Algebra {
    fn from(a: VectorProductAlgebra) -> Self {
        Algebra::Vector(a)
    }
}

impl From<UnitalCompositionAlgebra> for Algebra {
    fn from(a: UnitalCompositionAlgebra) -> Self {
        Algebra::Unital(a)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    schema: String,
    field: RawField,
    dim: usize,
    gram: Vec<Vec<String>>,
    structure: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    identity_index: Option<usize>,
}

#[derive(Deserialize, Serialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum RawField {
    Q,
    Fp { p: u64 },
}

fn schema_err(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn check_shape(path: &str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Shape {
            path: path.to_string(),
            expected,
            found,
        })
    }
}

fn scalar_at(field: FieldSpec, text: &str, path: &str) -> Result<Scalar> {
    field.parse_canonical(text).map_err(|e| match e {
        Error::BadScalar { text, reason } => Error::BadScalar {
            text,
            reason: format!("{reason} (at {path})"),
        },
        other => other,
    })
}

fn parse_field(raw: &RawField) -> Result<FieldSpec> {
    match *raw {
        RawField::Q => Ok(FieldSpec::Rationals),
        RawField::Fp { p: 2 } => Err(Error::CharTwoRejected),
        RawField::Fp { p } => FieldSpec::prime(p).map_err(|e| schema_err("field.p", e.to_string())),
    }
}

/// Parses and validates an algebra document: schema tag, field, shapes,
/// canonical scalars and symmetry of the Gram matrix. Anti-symmetry of the
/// table is required only for documents without `identity_index`; unital
/// documents must instead have a two-sided identity at that index.
pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        schema_err(path, e.into_inner().to_string())
    })?;
    if raw.schema != SCHEMA {
        return Err(schema_err(
            "schema",
            format!("expected {SCHEMA:?}, found {:?}", raw.schema),
        ));
    }
    let field = parse_field(&raw.field)?;
    let n = raw.dim;

    check_shape("gram", n, raw.gram.len())?;
    let mut gram = Vec::with_capacity(n);
    for (i, row) in raw.gram.iter().enumerate() {
        check_shape(&format!("gram[{i}]"), n, row.len())?;
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, t)| scalar_at(field, t, &format!("gram[{i}][{j}]")))
            .collect::<Result<Vector>>()?;
        gram.push(parsed);
    }
    for i in 0..n {
        for j in i + 1..n {
            if gram[i][j] != gram[j][i] {
                return Err(schema_err(
                    format!("gram[{i}][{j}]"),
                    format!(
                        "Gram matrix is not symmetric: {} here but {} at gram[{j}][{i}]",
                        gram[i][j], gram[j][i]
                    ),
                ));
            }
        }
    }
    let gram = GramForm::new(Matrix::from_rows(field, gram)?)?;

    check_shape("structure", n, raw.structure.len())?;
    let mut structure = Vec::with_capacity(n);
    for (i, row) in raw.structure.iter().enumerate() {
        check_shape(&format!("structure[{i}]"), n, row.len())?;
        let mut out_row = Vec::with_capacity(n);
        for (j, v) in row.iter().enumerate() {
            check_shape(&format!("structure[{i}][{j}]"), n, v.len())?;
            let parsed = v
                .iter()
                .enumerate()
                .map(|(k, t)| scalar_at(field, t, &format!("structure[{i}][{j}][{k}]")))
                .collect::<Result<Vector>>()?;
            out_row.push(parsed);
        }
        structure.push(out_row);
    }

    match raw.identity_index {
        Some(idx) => {
            if idx >= n {
                return Err(schema_err(
                    "identity_index",
                    format!("index {idx} out of range for dimension {n}"),
                ));
            }
            Ok(Algebra::Unital(UnitalCompositionAlgebra::new(
                gram, structure, idx,
            )?))
        }
        None => VectorProductAlgebra::new(gram, structure)
            .map(Algebra::Vector)
            .map_err(|e| match e {
                Error::NotAntisymmetric { i, j, k } => schema_err(
                    format!("structure[{i}][{j}][{k}]"),
                    format!("table is not anti-symmetric (compare structure[{j}][{i}][{k}])"),
                ),
                other => other,
            }),
    }
}

fn string_row(v: &[Scalar]) -> String {
    let texts: Vec<String> = v.iter().map(ToString::to_string).collect();
    serde_json::to_string(&texts).expect("strings serialize")
}

/// Canonical text of a document: fixed key order, one matrix row per line,
/// two-space indentation and a trailing newline.
pub fn emit_algebra(algebra: &Algebra) -> String {
    let field = match algebra.field() {
        FieldSpec::Rationals => RawField::Q,
        FieldSpec::Prime(p) => RawField::Fp { p: p.get() },
    };
    let n = algebra.dim();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"schema\": \"{SCHEMA}\",");
    let field_json = serde_json::to_string(&field).expect("field serializes");
    let _ = writeln!(out, "  \"field\": {field_json},");
    let _ = writeln!(out, "  \"dim\": {n},");
    if n == 0 {
        out.push_str("  \"gram\": [],\n");
        out.push_str("  \"structure\": []");
    } else {
        out.push_str("  \"gram\": [\n");
        for i in 0..n {
            let row: Vector = (0..n).map(|j| algebra.gram().entry(i, j).clone()).collect();
            let sep = if i + 1 < n { "," } else { "" };
            let _ = writeln!(out, "    {}{sep}", string_row(&row));
        }
        out.push_str("  ],\n");
        out.push_str("  \"structure\": [\n");
        for (i, row) in algebra.structure().iter().enumerate() {
            out.push_str("    [\n");
            for (j, v) in row.iter().enumerate() {
                let sep = if j + 1 < n { "," } else { "" };
                let _ = writeln!(out, "      {}{sep}", string_row(v));
            }
            let sep = if i + 1 < n { "," } else { "" };
            let _ = writeln!(out, "    ]{sep}");
        }
        out.push_str("  ]");
    }
    match algebra.identity_index() {
        Some(idx) => {
            let _ = write!(out, ",\n  \"identity_index\": {idx}\n}}\n");
        }
        None => out.push_str("\n}\n"),
    }
    out
}
