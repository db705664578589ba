//! CSV and JSON rendering. Exact values stay `p/q` strings.

use crate::commands::{Report, Rows};
use crate::config::Format;
use crate::CliError;

pub fn render(report: &Report, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).map_err(|e| CliError::Parse(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => csv_bytes(&report.rows),
    }
}

/// Floats carry 15 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.14e}")
}

fn csv_bytes(rows: &Rows) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Parse(e.to_string());
    match rows {
        Rows::Checks(rows) => {
            w.write_record(["check", "subject", "lhs", "relation", "bound", "pass"]).map_err(io)?;
            for r in rows {
                w.write_record([&r.check, &r.subject, &r.lhs, &r.relation, &r.bound, &r.pass.to_string()]).map_err(io)?;
            }
        }
        Rows::Concentration(rows) => {
            w.write_record([
                "group", "chain", "n_steps", "epsilon", "ell_sq", "tail", "azuma", "chebyshev", "pass", "function",
            ])
            .map_err(io)?;
            for r in rows {
                w.write_record([
                    r.group.clone(),
                    r.chain.clone(),
                    r.n_steps.to_string(),
                    r.epsilon.clone(),
                    r.ell_sq.clone(),
                    r.tail.clone(),
                    fmt_float(r.azuma),
                    r.chebyshev.clone(),
                    r.pass.to_string(),
                    r.function.clone(),
                ])
                .map_err(io)?;
            }
        }
    }
    w.flush().map_err(|e| CliError::Parse(e.to_string()))?;
    w.into_inner().map_err(|e| CliError::Parse(e.to_string()))
}
