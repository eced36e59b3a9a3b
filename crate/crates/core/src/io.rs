//! The `homotopelab/1` JSON file format for algebras, tensors and matrices,
//! and the one-line report records printed by the CLI.
//!
//! Scalars are written as strings (`"3"`, `"-2/5"`, or a residue); readers
//! also accept bare JSON integers. Indices are zero-based. Unit metadata read
//! from a file is verified before it is attached.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::Trilinear;

pub const FORMAT: &str = "homotopelab/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    fn parse(&self, field: FieldSpec) -> Result<Scalar> {
        match self {
            ScalarText::Int(n) => Ok(field.from_i64(*n)),
            ScalarText::Text(s) => field.parse_scalar(s),
        }
    }
}

fn text(s: &Scalar) -> ScalarText {
    ScalarText::Text(s.to_string())
}

#[derive(Debug, Serialize, Deserialize)]
struct AlgebraFile {
    format: String,
    kind: String,
    field: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<Vec<ScalarText>>,
    constants: Vec<(usize, usize, usize, ScalarText)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TensorFile {
    format: String,
    kind: String,
    field: String,
    dims: [usize; 3],
    entries: Vec<(usize, usize, usize, ScalarText)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixFile {
    format: String,
    kind: String,
    field: String,
    rows: Vec<Vec<ScalarText>>,
}

fn check_header(format: &str, kind: &str, expected: &str) -> Result<()> {
    if format != FORMAT {
        return Err(Error::Format(format!("unsupported format {format:?}, expected {FORMAT:?}")));
    }
    if kind != expected {
        return Err(Error::Format(format!("expected a {expected} file, found {kind:?}")));
    }
    Ok(())
}

fn parse_json<T: for<'de> Deserialize<'de>>(input: &str) -> Result<T> {
    serde_json::from_str(input).map_err(|e| Error::Format(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// The `kind` field of a `homotopelab/1` document.
pub fn file_kind(input: &str) -> Result<String> {
    let v: Value = parse_json(input)?;
    match (v.get("format").and_then(Value::as_str), v.get("kind").and_then(Value::as_str)) {
        (Some(FORMAT), Some(kind)) => Ok(kind.to_string()),
        (Some(other), _) if other != FORMAT => Err(Error::Format(format!("unsupported format {other:?}"))),
        _ => Err(Error::Format("missing format or kind".into())),
    }
}

/// Canonical form: constants sorted lexicographically by index.
pub fn algebra_to_json(a: &Algebra) -> String {
    let file = AlgebraFile {
        format: FORMAT.into(),
        kind: "algebra".into(),
        field: a.field().to_string(),
        dim: a.dim(),
        labels: a.labels().map(|l| l.to_vec()),
        unit: a.unit().map(|u| u.iter().map(text).collect()),
        constants: a.structure().entries().map(|(&(i, j, k), c)| (i, j, k, text(c))).collect(),
    };
    to_json(&file)
}

pub fn algebra_from_json(input: &str) -> Result<Algebra> {
    let file: AlgebraFile = parse_json(input)?;
    check_header(&file.format, &file.kind, "algebra")?;
    let field: FieldSpec = file.field.parse()?;
    let d = file.dim;
    let entries = file
        .constants
        .iter()
        .map(|(i, j, k, c)| Ok(((*i, *j, *k), c.parse(field)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut a = Algebra::from_structure(Trilinear::from_entries(field, [d, d, d], entries)?)?;
    if let Some(unit) = &file.unit {
        a = a.with_unit(unit.iter().map(|c| c.parse(field)).collect::<Result<_>>()?)?;
    }
    if let Some(labels) = file.labels {
        a = a.with_labels(labels)?;
    }
    Ok(a)
}

pub fn tensor_to_json(t: &Trilinear) -> String {
    let file = TensorFile {
        format: FORMAT.into(),
        kind: "tensor".into(),
        field: t.field().to_string(),
        dims: t.dims(),
        entries: t.entries().map(|(&(i, j, k), c)| (i, j, k, text(c))).collect(),
    };
    to_json(&file)
}

pub fn tensor_from_json(input: &str) -> Result<Trilinear> {
    let file: TensorFile = parse_json(input)?;
    check_header(&file.format, &file.kind, "tensor")?;
    let field: FieldSpec = file.field.parse()?;
    let entries = file
        .entries
        .iter()
        .map(|(i, j, k, c)| Ok(((*i, *j, *k), c.parse(field)?)))
        .collect::<Result<Vec<_>>>()?;
    Trilinear::from_entries(field, file.dims, entries)
}

pub fn matrix_to_json(m: &Matrix) -> String {
    let file = MatrixFile {
        format: FORMAT.into(),
        kind: "matrix".into(),
        field: m.field().to_string(),
        rows: m.to_rows().iter().map(|r| r.iter().map(text).collect()).collect(),
    };
    to_json(&file)
}

pub fn matrix_from_json(input: &str) -> Result<Matrix> {
    let file: MatrixFile = parse_json(input)?;
    check_header(&file.format, &file.kind, "matrix")?;
    let field: FieldSpec = file.field.parse()?;
    let rows = file
        .rows
        .iter()
        .map(|r| r.iter().map(|c| c.parse(field)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}

/// Parses comma-separated coordinates such as `1,0,-1/2`.
pub fn parse_coords(field: FieldSpec, text: &str) -> Result<Element> {
    text.split(',').map(|s| field.parse_scalar(s.trim())).collect()
}

/// Parses an inline matrix: rows separated by `;`, entries by `,`.
pub fn parse_matrix(field: FieldSpec, text: &str) -> Result<Matrix> {
    let rows = text.split(';').map(|r| parse_coords(field, r)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}

pub fn coords_to_string(v: &[Scalar]) -> String {
    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
}

/// One line of machine-readable output.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub name: String,
    pub params: Value,
    pub field: Option<String>,
    pub result: Value,
    pub elapsed_ms: u128,
    pub seed: Option<u64>,
}

impl Report {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

pub fn scalars_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.to_string())).collect())
}
