//! File input/output: single-column numeric CSV ingestion and deterministic
//! text formatting for the emitted artifacts.

use std::fmt::Write as _;
use std::path::Path;

use crate::CmdError;

/// Format with 17 significant digits, enough for an exact f64 round trip.
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Read a single-column numeric CSV. UTF-8, decimal point, one value per
/// line; an optional non-numeric first line is treated as a header. Any
/// other non-numeric row is a line-numbered error.
pub fn read_numeric_column(path: &Path) -> Result<Vec<f64>, CmdError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CmdError::Data(format!("cannot read {}: {e}", path.display())))?;
    let mut values = Vec::new();
    let mut saw_content = false;
    for (idx, line) in raw.lines().enumerate() {
        let line = if idx == 0 { line.trim_start_matches('\u{feff}') } else { line };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        match trimmed.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                saw_content = true;
                values.push(v);
            }
            Ok(v) => {
                return Err(CmdError::Data(format!(
                    "{}:{}: non-finite value {v}",
                    path.display(),
                    idx + 1
                )));
            }
            Err(_) if idx == 0 && !saw_content => {
                // Header line.
                saw_content = true;
            }
            Err(_) => {
                return Err(CmdError::Data(format!(
                    "{}:{}: cannot parse '{trimmed}' as a number",
                    path.display(),
                    idx + 1
                )));
            }
        }
    }
    if !saw_content {
        return Err(CmdError::Data(format!("{}: empty file", path.display())));
    }
    Ok(values)
}

/// Render rows of named columns as CSV with 17-significant-digit cells.
pub fn csv_table(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            let _ = write!(out, "{}", fmt_g17(*v));
            first = false;
        }
        out.push('\n');
    }
    out
}

/// Write a file, creating parent directories.
pub fn write_output(dir: &Path, name: &str, contents: &str) -> Result<(), CmdError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CmdError::Data(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| CmdError::Data(format!("cannot write {}: {e}", path.display())))
}
