//! Plain-text density matrix files.
//!
//! ```text
//! 2
//! 0.5,0 0,0
//! 0,0 0.5,0
//! ```
//!
//! Line 1 holds the dimension `n`; each of the next `n` lines holds `n`
//! whitespace-separated entries written `re,im`. Blank lines and lines
//! starting with `#` are skipped.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use qfdiv::linalg::ComplexMatrix;
use qfdiv::states::DensityMatrix;

use crate::error::{CliError, Result};

pub fn parse_state_file(path: &Path) -> Result<DensityMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_state_str(&text, &path.display().to_string())
}

/// Parses state text; `origin` names the source in error messages.
pub fn parse_state_str(text: &str, origin: &str) -> Result<DensityMatrix> {
    let perr = |line: usize, msg: String| CliError::Parse {
        path: origin.to_string(),
        line,
        msg,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (dim_line, dim_text) = lines.next().ok_or_else(|| perr(1, "missing dimension line".into()))?;
    let n: usize = dim_text
        .parse()
        .map_err(|_| perr(dim_line, format!("invalid dimension `{dim_text}`")))?;
    if n == 0 {
        return Err(perr(dim_line, "dimension must be positive".into()));
    }

    let mut entries = Vec::with_capacity(n * n);
    let mut last_line = dim_line;
    for row in 0..n {
        let (lineno, text) = lines
            .next()
            .ok_or_else(|| perr(last_line + 1, format!("expected {n} rows, found {row}")))?;
        last_line = lineno;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != n {
            return Err(perr(
                lineno,
                format!("expected {n} entries, found {}", fields.len()),
            ));
        }
        for field in fields {
            entries.push(parse_entry(field).map_err(|msg| perr(lineno, msg))?);
        }
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(perr(lineno, "unexpected trailing content".into()));
    }

    let mat = ComplexMatrix::from_rows(n, entries).map_err(|e| perr(dim_line, e.to_string()))?;
    DensityMatrix::new(mat).map_err(|source| CliError::Invariant {
        path: origin.to_string(),
        source,
    })
}

fn parse_entry(field: &str) -> std::result::Result<Complex64, String> {
    let (re, im) = field
        .split_once(',')
        .ok_or_else(|| format!("entry `{field}` is not of the form re,im"))?;
    let re: f64 = re.parse().map_err(|_| format!("invalid real part `{re}`"))?;
    let im: f64 = im.parse().map_err(|_| format!("invalid imaginary part `{im}`"))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(format!("non-finite entry `{field}`"));
    }
    Ok(Complex64::new(re, im))
}

/// Serializes with shortest round-trip float formatting, so parsing is bit-exact.
pub fn format_state(state: &DensityMatrix) -> String {
    let m = state.matrix();
    let n = m.dim();
    let mut out = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n)
            .map(|j| {
                let z = m[(i, j)];
                format!("{:?},{:?}", z.re, z.im)
            })
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn write_state_file(path: &Path, state: &DensityMatrix) -> Result<()> {
    std::fs::write(path, format_state(state)).map_err(|e| CliError::io(path, e))
}
