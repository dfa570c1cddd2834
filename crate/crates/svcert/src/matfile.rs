//! Plain-text matrix files: the first non-comment line is `m n`, followed by
//! m lines of n whitespace-separated entries. An entry is a decimal real `a`
//! or a complex pair `(a,b)` with no interior spaces. Lines starting with `#`
//! are comments. Parsing is locale-independent (dot decimal separator).

use std::fmt::Write as _;
use std::path::Path;

use core_linalg::{Complex64, Matrix};

use crate::error::CliError;

pub fn parse_matrix_file(path: &Path) -> Result<Matrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_matrix_str(&text).map_err(|e| e.with_path(path))
}

pub fn parse_matrix_str(text: &str) -> Result<Matrix, CliError> {
    let mut content_lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = content_lines.next().ok_or_else(|| CliError::Parse {
        path: None,
        line: 1,
        column: 1,
        message: "empty matrix file".into(),
    })?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(CliError::Parse {
            path: None,
            line: header_line,
            column: 1,
            message: format!("header must be `m n`, got {header:?}"),
        });
    }
    let parse_dim = |tok: &str, col: usize| {
        tok.parse::<usize>().ok().filter(|&d| d > 0).ok_or_else(|| CliError::Parse {
            path: None,
            line: header_line,
            column: col,
            message: format!("bad dimension {tok:?}"),
        })
    };
    let m = parse_dim(dims[0], 1)?;
    let n = parse_dim(dims[1], 2)?;

    let mut data = Vec::with_capacity(m * n);
    let mut rows_seen = 0usize;
    for (line_no, line) in content_lines {
        if rows_seen == m {
            return Err(CliError::Parse {
                path: None,
                line: line_no,
                column: 1,
                message: format!("expected {m} rows, found extra data"),
            });
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n {
            return Err(CliError::Parse {
                path: None,
                line: line_no,
                column: tokens.len().min(n) + 1,
                message: format!("expected {n} entries, found {}", tokens.len()),
            });
        }
        for (col, tok) in tokens.iter().enumerate() {
            let value = parse_entry(tok).ok_or_else(|| CliError::Parse {
                path: None,
                line: line_no,
                column: col + 1,
                message: format!("malformed entry {tok:?}"),
            })?;
            data.push(value);
        }
        rows_seen += 1;
    }
    if rows_seen != m {
        return Err(CliError::Parse {
            path: None,
            line: 0,
            column: 1,
            message: format!("expected {m} rows, found {rows_seen}"),
        });
    }
    Matrix::new(m, n, data).map_err(|e| CliError::Parse {
        path: None,
        line: 0,
        column: 1,
        message: e.to_string(),
    })
}

fn parse_entry(tok: &str) -> Option<Complex64> {
    if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let (re, im) = inner.split_once(',')?;
        return Some(Complex64::new(re.parse().ok()?, im.parse().ok()?));
    }
    tok.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0))
}

/// Writes a matrix in the same format with 17 significant digits. Real-valued
/// entries are written as plain reals.
pub fn matrix_to_string(m: &Matrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    for i in 0..m.rows() {
        let mut sep = "";
        for j in 0..m.cols() {
            let z = m[(i, j)];
            if z.im == 0.0 {
                let _ = write!(out, "{sep}{:.16e}", z.re);
            } else {
                let _ = write!(out, "{sep}({:.16e},{:.16e})", z.re, z.im);
            }
            sep = " ";
        }
        out.push('\n');
    }
    out
}
