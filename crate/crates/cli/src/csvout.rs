//! Deterministic CSV emission. Values carry nine significant digits; every
//! artifact starts with one `#` metadata line embedding the scenario
//! fingerprint and seed, so identical runs produce identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::spectrum::SpectrumResult;
use crate::sweep::SweepResult;

#[derive(Debug, Error)]
#[error("cannot write {path}: {source}")]
pub struct WriteError {
    pub path: String,
    pub source: std::io::Error,
}

/// Nine significant digits, scientific notation.
pub fn format_value(x: f64) -> String {
    format!("{x:.8e}")
}

/// Renders a sweep as CSV text: one metadata comment, one header row, one
/// data row per axis value.
pub fn render_csv(result: &SweepResult) -> String {
    let mut out = String::new();
    let meta = &result.metadata;
    let _ = write!(
        out,
        "# scenario={:016x} seed={} tool={}",
        meta.scenario_hash, meta.seed, meta.tool_version
    );
    if let Some(alpha) = meta.closed_form_alpha {
        let _ = write!(out, " closed_form_alpha={}", format_value(alpha));
    }
    out.push('\n');
    out.push_str(&result.axis_name);
    for scheme in &result.schemes {
        let _ = write!(out, ",{scheme}");
    }
    out.push('\n');
    for (value, row) in result.axis_values.iter().zip(result.rates.iter()) {
        out.push_str(&format_value(*value));
        for rate in row {
            out.push(',');
            out.push_str(&format_value(*rate));
        }
        out.push('\n');
    }
    out
}

/// Renders a spectrum as a row-major matrix CSV with axis header comments.
pub fn render_spectrum_csv(result: &SpectrumResult) -> String {
    let mut out = String::new();
    let meta = &result.metadata;
    let _ = writeln!(
        out,
        "# scenario={:016x} seed={} tool={} beam={}",
        meta.scenario_hash, meta.seed, meta.tool_version, result.which
    );
    let _ = writeln!(
        out,
        "# rows: r_m from {} to {} ({} steps)",
        format_value(*result.r_values_m.first().unwrap()),
        format_value(*result.r_values_m.last().unwrap()),
        result.r_values_m.len()
    );
    let _ = writeln!(
        out,
        "# cols: theta_rad from {} to {} ({} steps)",
        format_value(*result.theta_values_rad.first().unwrap()),
        format_value(*result.theta_values_rad.last().unwrap()),
        result.theta_values_rad.len()
    );
    for row in &result.values {
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            out.push_str(&format_value(*v));
            first = false;
        }
        out.push('\n');
    }
    out
}

fn write_file(path: &Path, content: &str) -> Result<(), WriteError> {
    std::fs::write(path, content).map_err(|source| WriteError {
        path: path.display().to_string(),
        source,
    })
}

/// Writes a sweep CSV; the byte output is a pure function of the result.
pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<(), WriteError> {
    write_file(path, &render_csv(result))
}

/// Writes a spectrum matrix CSV.
pub fn emit_spectrum_csv(result: &SpectrumResult, path: &Path) -> Result<(), WriteError> {
    write_file(path, &render_spectrum_csv(result))
}
