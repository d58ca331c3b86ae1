//! Reference-front file format: one point per line, whitespace-separated
//! objective values, `#` starts a comment, blank lines ignored.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Parses front text; `source_name` labels errors (usually the file name).
pub fn parse_front<R: Real>(text: &str, source_name: &str) -> Result<Vec<Vec<R>>> {
    let mut points: Vec<Vec<R>> = Vec::new();
    let mut n_obj: Option<usize> = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let mut row: Vec<R> = Vec::new();
        for tok in line.split_whitespace() {
            let v: R = tok.parse().map_err(|_| {
                Error::parse(source_name, line_no, format!("cannot parse '{tok}' as a number"))
            })?;
            if !v.is_finite() {
                return Err(Error::parse(
                    source_name,
                    line_no,
                    format!("front value '{tok}' is not finite"),
                ));
            }
            row.push(v);
        }
        match n_obj {
            None => n_obj = Some(row.len()),
            Some(m) if m != row.len() => {
                return Err(Error::parse(
                    source_name,
                    line_no,
                    format!("row has {} columns, expected {m}", row.len()),
                ));
            }
            _ => {}
        }
        points.push(row);
    }
    if points.is_empty() {
        return Err(Error::Format(format!(
            "{source_name}: reference front contains no points"
        )));
    }
    Ok(points)
}

/// Loads a reference front from a file.
pub fn load_reference_front<R: Real>(path: impl AsRef<Path>) -> Result<Vec<Vec<R>>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_front(&text, &path.display().to_string())
}
