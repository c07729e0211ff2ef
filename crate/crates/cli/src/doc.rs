//! The JSON input document: parsing with unknown-field handling, dimension
//! and Hermiticity validation, and the shared matrix encoding (nested
//! row-major arrays of `[re, im]` pairs).

use num_complex::Complex64;
use serde_json::{Map, Value};

use conelab_core::choi::{KrausFamily, MapRepr};
use conelab_core::linalg::{BipartiteOperator, ComplexMatrix};

use crate::Failure;

/// A parsed input document.
pub enum InputObject {
    Map(MapRepr),
    Operator(BipartiteOperator),
}

impl InputObject {
    pub fn kind(&self) -> &'static str {
        match self {
            InputObject::Map(_) => "map",
            InputObject::Operator(_) => "operator",
        }
    }
}

/// Parses and validates a document.  Unknown fields are an error under
/// `strict`, otherwise they are collected as warnings.
pub fn parse_input(text: &str, strict: bool) -> Result<(InputObject, Vec<String>), Failure> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Failure::usage(format!("input is not valid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Failure::usage("input document must be a JSON object"))?;

    let mut warnings = Vec::new();
    check_fields(
        obj,
        &[
            "kind", "repr", "matrix", "kraus", "dim_in", "dim_out", "dim_a", "dim_b", "meta",
        ],
        strict,
        &mut warnings,
    )?;

    let kind = require_str(obj, "kind")?;
    let object = match kind {
        "map" => parse_map(obj)?,
        "operator" => parse_operator(obj)?,
        other => {
            return Err(Failure::usage(format!(
                "kind must be \"map\" or \"operator\", got \"{other}\""
            )))
        }
    };
    Ok((object, warnings))
}

fn parse_map(obj: &Map<String, Value>) -> Result<InputObject, Failure> {
    for forbidden in ["dim_a", "dim_b"] {
        if obj.contains_key(forbidden) {
            return Err(Failure::usage(format!(
                "{forbidden} belongs to operator documents; map documents use dim_in/dim_out"
            )));
        }
    }
    let dim_in = require_dim(obj, "dim_in")?;
    let dim_out = require_dim(obj, "dim_out")?;
    let repr = require_str(obj, "repr")?;
    let t = match repr {
        "choi" => {
            let d = dim_in * dim_out;
            let m = require_matrix(obj, "matrix", d, d)?;
            let choi = BipartiteOperator::new(dim_in, dim_out, m)
                .map_err(|e| Failure::from_core(&e))?;
            MapRepr::new(dim_in, dim_out, choi).map_err(|e| Failure::from_core(&e))?
        }
        "kraus" => {
            let list = obj
                .get("kraus")
                .ok_or_else(|| Failure::usage("repr \"kraus\" needs a \"kraus\" field"))?
                .as_array()
                .ok_or_else(|| Failure::usage("\"kraus\" must be an array of matrices"))?;
            if list.is_empty() {
                return Err(Failure::usage("\"kraus\" must contain at least one matrix"));
            }
            let ops = list
                .iter()
                .enumerate()
                .map(|(i, v)| parse_matrix(v, dim_out, dim_in, &format!("kraus[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let family = KrausFamily::new(dim_in, dim_out, ops)
                .map_err(|e| Failure::from_core(&e))?;
            MapRepr::from_kraus(&family)
        }
        "dense" => {
            return Err(Failure::usage(
                "repr \"dense\" is for operator documents; map documents use \"choi\" or \"kraus\"",
            ))
        }
        other => {
            return Err(Failure::usage(format!(
                "repr must be \"choi\" or \"kraus\" for maps, got \"{other}\""
            )))
        }
    };
    Ok(InputObject::Map(t))
}

fn parse_operator(obj: &Map<String, Value>) -> Result<InputObject, Failure> {
    for forbidden in ["dim_in", "dim_out", "kraus"] {
        if obj.contains_key(forbidden) {
            return Err(Failure::usage(format!(
                "{forbidden} belongs to map documents; operator documents use dim_a/dim_b and a dense matrix"
            )));
        }
    }
    let dim_a = require_dim(obj, "dim_a")?;
    let dim_b = require_dim(obj, "dim_b")?;
    let repr = require_str(obj, "repr")?;
    if repr != "dense" {
        return Err(Failure::usage(format!(
            "repr must be \"dense\" for operators, got \"{repr}\""
        )));
    }
    let d = dim_a * dim_b;
    let m = require_matrix(obj, "matrix", d, d)?;
    let x = BipartiteOperator::new(dim_a, dim_b, m).map_err(|e| Failure::from_core(&e))?;
    Ok(InputObject::Operator(x))
}

fn check_fields(
    obj: &Map<String, Value>,
    known: &[&str],
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<(), Failure> {
    for key in obj.keys() {
        if !known.contains(&key.as_str()) {
            if strict {
                return Err(Failure::usage(format!("unknown field \"{key}\"")));
            }
            warnings.push(format!("ignoring unknown field \"{key}\""));
        }
    }
    Ok(())
}

fn require_str<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str, Failure> {
    obj.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| Failure::usage(format!("missing or non-string field \"{key}\"")))
}

fn require_dim(obj: &Map<String, Value>, key: &str) -> Result<usize, Failure> {
    let v = obj
        .get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| Failure::usage(format!("missing or non-integer field \"{key}\"")))?;
    if v == 0 || v > 64 {
        return Err(Failure::usage(format!("{key} must lie in 1..=64, got {v}")));
    }
    Ok(v as usize)
}

fn require_matrix(
    obj: &Map<String, Value>,
    key: &str,
    rows: usize,
    cols: usize,
) -> Result<ComplexMatrix, Failure> {
    let v = obj
        .get(key)
        .ok_or_else(|| Failure::usage(format!("missing field \"{key}\"")))?;
    parse_matrix(v, rows, cols, key)
}

/// Parses one matrix: `rows` arrays of `cols` entries, each `[re, im]`.
pub fn parse_matrix(
    value: &Value,
    rows: usize,
    cols: usize,
    context: &str,
) -> Result<ComplexMatrix, Failure> {
    let outer = value
        .as_array()
        .ok_or_else(|| Failure::usage(format!("{context}: expected an array of rows")))?;
    if outer.len() != rows {
        return Err(Failure::usage(format!(
            "{context}: expected {rows} rows, got {}",
            outer.len()
        )));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (r, row) in outer.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Failure::usage(format!("{context}: row {r} is not an array")))?;
        if row.len() != cols {
            return Err(Failure::usage(format!(
                "{context}: row {r} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (c, entry) in row.iter().enumerate() {
            data.push(parse_complex(entry, &format!("{context}[{r}][{c}]"))?);
        }
    }
    Ok(ComplexMatrix::from_fn(rows, cols, |r, c| data[r * cols + c]))
}

fn parse_complex(value: &Value, context: &str) -> Result<Complex64, Failure> {
    let pair = value
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Failure::usage(format!("{context}: expected a [re, im] pair")))?;
    let mut parts = [0.0f64; 2];
    for (slot, v) in parts.iter_mut().zip(pair) {
        *slot = v
            .as_f64()
            .ok_or_else(|| Failure::usage(format!("{context}: non-numeric component")))?;
        if !slot.is_finite() {
            return Err(Failure::usage(format!("{context}: non-finite component")));
        }
    }
    Ok(Complex64::new(parts[0], parts[1]))
}

/// Encodes a matrix in the document format.
pub fn matrix_to_value(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    (0..m.cols())
                        .map(|c| complex_to_value(m[(r, c)]))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn vector_to_value(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|z| complex_to_value(*z)).collect())
}

fn complex_to_value(z: Complex64) -> Value {
    Value::Array(vec![
        Value::from(z.re),
        Value::from(z.im),
    ])
}
