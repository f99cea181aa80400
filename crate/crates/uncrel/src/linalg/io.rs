//! File formats for matrices and vectors.
//!
//! CSV files carry complex entries written as `re` or `re±imj` (for example
//! `0.5-0.5j`); a matrix is one row per line, a vector one entry per line.
//! The JSON forms are `{"rows":m,"cols":n,"entries":[[re,im],…]}` in
//! row-major order and `{"dim":n,"entries":[[re,im],…]}`. Every reader
//! rejects NaN and infinite values.

use std::path::Path;

use num_complex::Complex64;
use thiserror::Error;

use super::{ComplexMatrix, ComplexVector, LinalgError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("failed to read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("failed to write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse complex value {0:?}")]
    BadComplex(String),
    #[error("non-finite value {0:?} rejected")]
    NonFinite(String),
    #[error("line {line}: expected {expected} fields, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("empty input")]
    Empty,
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("unsupported file extension for {0}; expected .csv or .json")]
    UnknownFormat(String),
}

/// Formats a complex number as `re` when the imaginary part is zero and as
/// `re±imj` otherwise.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}j", z.re, -z.im)
    } else {
        format!("{}+{}j", z.re, z.im)
    }
}

/// Parses `re`, `re±imj`, or a pure imaginary `imj` token.
pub fn parse_complex(text: &str) -> Result<Complex64, IoError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(IoError::BadComplex(text.to_string()));
    }
    let finite = |v: f64| -> Result<f64, IoError> {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(IoError::NonFinite(text.to_string()))
        }
    };
    let parse_part = |s: &str| -> Result<f64, IoError> {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| IoError::BadComplex(text.to_string()))?;
        finite(v)
    };
    if let Some(body) = t.strip_suffix(['j', 'J']) {
        // Split before the sign of the imaginary part, skipping exponent
        // signs and a leading sign.
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let ch = bytes[i];
            if (ch == b'+' || ch == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        match split {
            Some(i) => Ok(Complex64::new(
                parse_part(&body[..i])?,
                parse_part(&body[i..])?,
            )),
            None => Ok(Complex64::new(0.0, parse_part(body)?)),
        }
    } else {
        Ok(Complex64::new(parse_part(t)?, 0.0))
    }
}

pub fn matrix_to_csv(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format_complex(m.get(i, j))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_from_csv(text: &str) -> Result<ComplexMatrix, IoError> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let entries = line
            .split(',')
            .map(parse_complex)
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if entries.len() != first.len() {
                return Err(IoError::RaggedRow {
                    line: lineno + 1,
                    expected: first.len(),
                    found: entries.len(),
                });
            }
        }
        rows.push(entries);
    }
    if rows.is_empty() {
        return Err(IoError::Empty);
    }
    let cols = rows[0].len();
    let data = rows.into_iter().flatten().collect::<Vec<_>>();
    Ok(ComplexMatrix::new(data.len() / cols, cols, data)?)
}

pub fn vector_to_csv(v: &ComplexVector) -> String {
    let mut out = String::new();
    for i in 0..v.dim() {
        out.push_str(&format_complex(v.get(i)));
        out.push('\n');
    }
    out
}

pub fn vector_from_csv(text: &str) -> Result<ComplexVector, IoError> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.is_empty() {
        return Err(IoError::Empty);
    }
    let entries = if lines.len() == 1 && lines[0].contains(',') {
        lines[0]
            .split(',')
            .map(parse_complex)
            .collect::<Result<Vec<_>, _>>()?
    } else {
        lines
            .iter()
            .map(|l| parse_complex(l))
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok(ComplexVector::new(entries)?)
}

fn read_to_string(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_string(path: &Path, contents: &str) -> Result<(), IoError> {
    std::fs::write(path, contents).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

/// Reads a matrix from a `.csv` or `.json` file, dispatching on extension.
pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, IoError> {
    let text = read_to_string(path)?;
    match extension(path) {
        Some("json") => Ok(serde_json::from_str(&text)?),
        Some("csv") => matrix_from_csv(&text),
        _ => Err(IoError::UnknownFormat(path.display().to_string())),
    }
}

/// Reads a vector from a `.csv` or `.json` file, dispatching on extension.
pub fn read_vector(path: &Path) -> Result<ComplexVector, IoError> {
    let text = read_to_string(path)?;
    match extension(path) {
        Some("json") => Ok(serde_json::from_str(&text)?),
        Some("csv") => vector_from_csv(&text),
        _ => Err(IoError::UnknownFormat(path.display().to_string())),
    }
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<(), IoError> {
    match extension(path) {
        Some("json") => write_string(path, &serde_json::to_string_pretty(m)?),
        Some("csv") => write_string(path, &matrix_to_csv(m)),
        _ => Err(IoError::UnknownFormat(path.display().to_string())),
    }
}

pub fn write_vector(path: &Path, v: &ComplexVector) -> Result<(), IoError> {
    match extension(path) {
        Some("json") => write_string(path, &serde_json::to_string_pretty(v)?),
        Some("csv") => write_string(path, &vector_to_csv(v)),
        _ => Err(IoError::UnknownFormat(path.display().to_string())),
    }
}

fn extension(path: &Path) -> Option<&str> {
    path.extension().and_then(|e| e.to_str())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_forms() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(
            parse_complex("0.5-0.5j").unwrap(),
            Complex64::new(0.5, -0.5)
        );
        assert_eq!(parse_complex("-1+2j").unwrap(), Complex64::new(-1.0, 2.0));
        assert_eq!(
            parse_complex("1e-3-2e-4j").unwrap(),
            Complex64::new(1e-3, -2e-4)
        );
        assert_eq!(parse_complex("3j").unwrap(), Complex64::new(0.0, 3.0));
    }

    #[test]
    fn rejects_non_finite_and_garbage() {
        assert!(parse_complex("inf").is_err());
        assert!(parse_complex("NaN").is_err());
        assert!(parse_complex("nan+1j").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn csv_matrix_round_trip() {
        let m = ComplexMatrix::from_fn(3, 2, |i, j| {
            Complex64::new(i as f64 - 0.5, if j == 0 { 0.0 } else { -(i as f64) })
        });
        let text = matrix_to_csv(&m);
        let back = matrix_from_csv(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn csv_vector_round_trip() {
        let v = ComplexVector::from_entries(vec![
            Complex64::new(1.5, 0.0),
            Complex64::new(-2.0, 3.25),
        ]);
        let back = vector_from_csv(&vector_to_csv(&v)).unwrap();
        assert_eq!(v, back);
        // A single comma-separated line also parses as a vector.
        let row = vector_from_csv("1,2,-3j").unwrap();
        assert_eq!(row.dim(), 3);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(matches!(
            matrix_from_csv("1,2\n3"),
            Err(IoError::RaggedRow { .. })
        ));
    }

    #[test]
    fn json_vector_rejects_bad_dim() {
        let bad = r#"{"dim":3,"entries":[[1.0,0.0]]}"#;
        assert!(serde_json::from_str::<ComplexVector>(bad).is_err());
    }
}
