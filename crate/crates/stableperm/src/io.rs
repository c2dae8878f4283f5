//! Matrix files (JSON and CSV) and polynomial text files.
//!
//! A JSON matrix is either dense, `{"entries": [[1, "1/2"], ["x1 + y2", 0]]}`,
//! where each entry is an integer or a string in the polynomial grammar, or a
//! Ferrers shape, `{"rows": 3, "heights": [0, 1, 3]}`. A CSV matrix has one
//! row per line, no header, and entries in the same string form.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use stableperm_core::{
    FerrersMatrix, Matrix, MonotoneColumnMatrix, Polynomial, Rational, RationalMatrix, SymbolicMatrix,
};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Field { field: field.into(), message: message.into() }
}

/// A parsed matrix file.
#[derive(Clone, Debug, PartialEq)]
pub enum MatrixInput {
    Dense(SymbolicMatrix),
    Ferrers(FerrersMatrix),
}

impl MatrixInput {
    /// The 0/1 or polynomial entries as a dense matrix.
    pub fn to_symbolic(&self) -> SymbolicMatrix {
        match self {
            MatrixInput::Dense(m) => m.clone(),
            MatrixInput::Ferrers(f) => f.to_matrix().map(|c| Polynomial::constant(c.clone())),
        }
    }

    /// `None` when some entry is not a constant.
    pub fn to_rational(&self) -> Option<RationalMatrix> {
        match self {
            MatrixInput::Dense(m) => {
                let rows: Option<Vec<Vec<Rational>>> =
                    m.to_rows().iter().map(|r| r.iter().map(Polynomial::as_constant).collect()).collect();
                Matrix::from_rows(rows?).ok()
            }
            MatrixInput::Ferrers(f) => Some(f.to_matrix()),
        }
    }

    pub fn to_monotone(&self) -> Result<MonotoneColumnMatrix, InputError> {
        let m = self.to_rational().ok_or_else(|| field_error("entries", "expected numeric entries"))?;
        MonotoneColumnMatrix::new(m).map_err(|e| field_error("entries", e.to_string()))
    }

    pub fn to_ferrers(&self) -> Result<FerrersMatrix, InputError> {
        match self {
            MatrixInput::Ferrers(f) => Ok(f.clone()),
            MatrixInput::Dense(_) => {
                let m = self.to_rational().ok_or_else(|| field_error("entries", "expected 0/1 entries"))?;
                FerrersMatrix::from_matrix(&m).map_err(|e| field_error("entries", e.to_string()))
            }
        }
    }
}

fn parse_entry(v: &Value, field: &str) -> Result<Polynomial, InputError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Polynomial::from_int(i)),
            None => Err(field_error(field, "non-integer number; write rationals as strings such as \"1/3\"")),
        },
        Value::String(s) => s.parse().map_err(|e| field_error(field, format!("{e}"))),
        _ => Err(field_error(field, "expected an integer or a polynomial string")),
    }
}

fn parse_usize(v: &Value, field: &str) -> Result<usize, InputError> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| field_error(field, "expected a nonnegative integer"))
}

pub fn parse_matrix_json(text: &str) -> Result<MatrixInput, InputError> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v.as_object().ok_or_else(|| field_error("<root>", "expected an object"))?;
    if let Some(heights) = obj.get("heights") {
        let hs = heights.as_array().ok_or_else(|| field_error("heights", "expected an array"))?;
        let heights: Vec<usize> =
            hs.iter().enumerate().map(|(j, h)| parse_usize(h, &format!("heights[{j}]"))).collect::<Result<_, _>>()?;
        let rows = match obj.get("rows") {
            Some(r) => parse_usize(r, "rows")?,
            None => heights.len(),
        };
        let cols = heights.len();
        return FerrersMatrix::from_heights(rows, cols, heights)
            .map(MatrixInput::Ferrers)
            .map_err(|e| field_error("heights", e.to_string()));
    }
    let entries = obj.get("entries").ok_or_else(|| field_error("entries", "missing (or give \"heights\")"))?;
    let rows = entries.as_array().ok_or_else(|| field_error("entries", "expected an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let cells = row.as_array().ok_or_else(|| field_error(format!("entries[{i}]"), "expected an array"))?;
        let parsed = cells
            .iter()
            .enumerate()
            .map(|(j, c)| parse_entry(c, &format!("entries[{i}][{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(parsed);
    }
    Matrix::from_rows(out).map(MatrixInput::Dense).map_err(|e| field_error("entries", e.to_string()))
}

pub fn parse_matrix_csv(text: &str) -> Result<MatrixInput, InputError> {
    let mut reader =
        csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .enumerate()
            .map(|(j, s)| {
                s.parse::<Polynomial>()
                    .map_err(|e| field_error(format!("row {} column {}", i + 1, j + 1), e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Matrix::from_rows(rows).map(MatrixInput::Dense).map_err(|e| field_error("rows", e.to_string()))
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })
}

/// Reads a matrix, choosing CSV for a `.csv` extension and JSON otherwise.
pub fn read_matrix(path: &Path) -> Result<MatrixInput, InputError> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        parse_matrix_csv(&text)
    } else {
        parse_matrix_json(&text)
    }
}

pub fn read_polynomial(path: &Path) -> Result<Polynomial, InputError> {
    read(path)?.trim().parse().map_err(|e| field_error("polynomial", format!("{e}")))
}

pub fn read_json(path: &Path) -> Result<Value, InputError> {
    Ok(serde_json::from_str(&read(path)?)?)
}

/// Dense JSON form with every entry written as a polynomial string.
pub fn matrix_to_json(m: &SymbolicMatrix) -> Value {
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
    json!({ "entries": rows })
}

pub fn ferrers_to_json(f: &FerrersMatrix) -> Value {
    json!({ "rows": f.rows(), "heights": f.heights() })
}

/// A rational from a JSON integer or string.
pub fn rational_field(v: &Value, field: &str) -> Result<Rational, InputError> {
    parse_entry(v, field)?.as_constant().ok_or_else(|| field_error(field, "expected a rational constant"))
}

pub fn rational_list(v: &Value, field: &str) -> Result<Vec<Rational>, InputError> {
    let items = v.as_array().ok_or_else(|| field_error(field, "expected an array"))?;
    items.iter().enumerate().map(|(i, x)| rational_field(x, &format!("{field}[{i}]"))).collect()
}

pub fn f64_field(v: &Value, field: &str) -> Result<f64, InputError> {
    v.as_f64().ok_or_else(|| field_error(field, "expected a number"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use stableperm_core::{rat, ratio};

    #[test]
    fn dense_json() {
        let m = parse_matrix_json(r#"{"entries": [[1, "1/2"], ["x1 + y2", 0]]}"#).unwrap();
        let s = m.to_symbolic();
        assert_eq!(s.get(0, 1), &Polynomial::constant(ratio(1, 2)));
        assert_eq!(s.get(1, 0).to_string(), "x1 + y2");
        assert!(m.to_rational().is_none());
        let n = parse_matrix_json(r#"{"entries": [[3, 2], [1, -4]]}"#).unwrap();
        assert_eq!(n.to_rational().unwrap().get(1, 1), &rat(-4));
        assert!(n.to_monotone().is_ok());
    }

    #[test]
    fn ferrers_json() {
        let m = parse_matrix_json(r#"{"rows": 3, "heights": [0, 1, 3]}"#).unwrap();
        assert_eq!(m.to_ferrers().unwrap().to_string(), "011/001/001");
        let dense = parse_matrix_json(r#"{"entries": [[0, 1], [0, 0]]}"#).unwrap();
        assert_eq!(dense.to_ferrers().unwrap().heights(), &[0, 1]);
        assert_eq!(ferrers_to_json(&m.to_ferrers().unwrap())["heights"], json!([0, 1, 3]));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = parse_matrix_json(r#"{"entries": [[1, 2], [3, "x1 +"]]}"#).unwrap_err();
        assert!(err.to_string().starts_with("entries[1][1]:"), "{err}");
        let err = parse_matrix_json(r#"{"entries": [[1, 2.5]]}"#).unwrap_err();
        assert!(err.to_string().starts_with("entries[0][1]:"), "{err}");
        let err = parse_matrix_json(r#"{"heights": [0, -1]}"#).unwrap_err();
        assert!(err.to_string().starts_with("heights[1]:"), "{err}");
        let err = parse_matrix_json(r#"{"entries": [[1, 2], [3]]}"#).unwrap_err();
        assert!(err.to_string().starts_with("entries:"), "{err}");
        let err = parse_matrix_json(r#"{"rows": 2, "heights": [2, 1]}"#).unwrap_err();
        assert!(err.to_string().starts_with("heights:"), "{err}");
        let err = parse_matrix_json("[1]").unwrap_err();
        assert!(err.to_string().starts_with("<root>:"), "{err}");
    }

    #[test]
    fn csv_matrices() {
        let m = parse_matrix_csv("1, 1/2\n 0 ,-3\n").unwrap();
        assert_eq!(m.to_rational().unwrap().get(1, 1), &rat(-3));
        let err = parse_matrix_csv("1,2\n3,q\n").unwrap_err();
        assert!(err.to_string().starts_with("row 2 column 2:"), "{err}");
    }

    #[test]
    fn json_round_trip() {
        let m = parse_matrix_json(r#"{"entries": [["z1 + 1/3", 2]]}"#).unwrap().to_symbolic();
        let back = parse_matrix_json(&matrix_to_json(&m).to_string()).unwrap().to_symbolic();
        assert_eq!(back, m);
    }
}
