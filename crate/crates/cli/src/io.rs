//! Dataset file format: comma-delimited decimal reals, an optional header
//! row of component names, and an optional first column of row ids (both
//! detected by non-numeric content).

use alphacomp::{Composition, CompositionDataset, Error};

/// CLI failure with its process exit code: 1 usage/parse, 2 domain
/// violation, 3 numerical failure.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::SingularCovariance { .. } | Error::OracleNonConvergence { .. } => {
                let mut msg = err.to_string();
                if matches!(err, Error::SingularCovariance { .. }) {
                    msg.push_str("; the sample is too small relative to its dimension");
                }
                CliError::numeric(msg)
            }
            _ => CliError::domain(err.to_string()),
        }
    }
}

fn is_numeric(field: &str) -> bool {
    field.trim().parse::<f64>().is_ok()
}

/// Parse a dataset file. Rows whose sum deviates from 1 by more than 1e-6
/// are re-closed with a warning naming the worst row; deviation beyond 10%
/// is an error (a proportion/percent mix-up, not rounding).
pub fn read_dataset(path: &str) -> Result<CompositionDataset, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))?;
    parse_dataset(&text, path)
}

pub fn parse_dataset(text: &str, origin: &str) -> Result<CompositionDataset, CliError> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.is_empty() {
        return Err(CliError::usage(format!("{origin}: empty file")));
    }
    let table: Vec<Vec<&str>> = lines
        .iter()
        .map(|l| l.split(',').map(str::trim).collect())
        .collect();
    let width = table[0].len();
    for (i, row) in table.iter().enumerate() {
        if row.len() != width {
            return Err(CliError::usage(format!(
                "{origin}: line {} has {} fields, expected {width}",
                i + 1,
                row.len()
            )));
        }
    }

    // a header row is one with non-numeric content beyond the first column
    let has_header = table[0][1..].iter().any(|f| !is_numeric(f));
    let body = if has_header { &table[1..] } else { &table[..] };
    if body.is_empty() {
        return Err(CliError::usage(format!("{origin}: no data rows")));
    }
    let has_ids = body.iter().any(|row| !is_numeric(row[0]));
    let first_value_col = usize::from(has_ids);
    let ncols = width - first_value_col;
    if ncols < 2 {
        return Err(CliError::usage(format!(
            "{origin}: need at least 2 numeric columns, found {ncols}"
        )));
    }

    let component_names: Vec<String> = if has_header {
        table[0][first_value_col..]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=ncols).map(|i| format!("c{i}")).collect()
    };

    let mut rows = Vec::with_capacity(body.len());
    let mut row_ids = Vec::with_capacity(body.len());
    let mut worst: Option<(String, f64)> = None;
    for (r, fields) in body.iter().enumerate() {
        let id = if has_ids {
            fields[0].to_string()
        } else {
            format!("r{}", r + 1)
        };
        let mut values = Vec::with_capacity(ncols);
        for (c, field) in fields[first_value_col..].iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| {
                CliError::usage(format!(
                    "{origin}: row {id}, column {}: {field:?} is not a number",
                    c + 1
                ))
            })?;
            if v < 0.0 {
                return Err(CliError::domain(format!(
                    "{origin}: row {id}, component {}: negative value {v}",
                    component_names[c]
                )));
            }
            values.push(v);
        }
        let sum: f64 = values.iter().sum();
        let deviation = (sum - 1.0).abs();
        if deviation > 0.1 {
            return Err(CliError::domain(format!(
                "{origin}: row {id} sums to {sum:.6}, more than 10% from 1; \
                 are these proportions?"
            )));
        }
        if deviation > 1e-6 && worst.as_ref().is_none_or(|(_, d)| deviation > *d) {
            worst = Some((id.clone(), deviation));
        }
        let comp = Composition::closure(&values).map_err(|e| {
            CliError::domain(format!("{origin}: row {id}: {e}"))
        })?;
        rows.push(comp);
        row_ids.push(id);
    }
    if let Some((id, dev)) = worst {
        eprintln!(
            "warning: {origin}: some rows re-closed (worst: row {id}, deviation {dev:.2e})"
        );
    }
    CompositionDataset::new(rows, component_names, row_ids)
        .map_err(|e| CliError::usage(format!("{origin}: {e}")))
}

/// Format with `sig` significant digits (trailing zeros kept, matching the
/// fixed-width style of printed tables).
pub fn format_sig(v: f64, sig: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - magnitude).clamp(0, 17) as usize;
    format!("{v:.decimals$}")
}

/// Serialize a labelled matrix as CSV text.
pub fn matrix_csv(
    header: &[String],
    row_ids: &[String],
    values: &[Vec<f64>],
    sig: usize,
) -> String {
    let mut out = String::new();
    out.push_str("id");
    for name in header {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (id, row) in row_ids.iter().zip(values) {
        out.push_str(id);
        for v in row {
            out.push(',');
            out.push_str(&format_sig(*v, sig));
        }
        out.push('\n');
    }
    out
}
