//! Rendering of coefficient tables and diagnostics blocks, in plain text
//! and JSON.
//!
//! Tables follow the usual journal layout: one column per dataset, one row
//! pair per coefficient (estimate with significance stars above the
//! standard error in parentheses), and a final R^2 row. Estimates are
//! printed to 4 decimals; JSON carries full round-trip precision.

use residlm_core::{correlation, vif_report, OlsFit, RegressionData, SignificanceLevel, VifReport};
use serde_json::{json, Value};

use crate::error::{CliError, Result};

/// One table cell: a coefficient estimate with its inference.
#[derive(Debug, Clone)]
pub struct TableCell {
    pub estimate: f64,
    pub stderr: f64,
    pub p_value: f64,
}

impl TableCell {
    pub fn stars(&self) -> &'static str {
        SignificanceLevel::from_p_value(self.p_value).stars()
    }
}

/// A labelled coefficient row across all datasets.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub label: String,
    pub cells: Vec<TableCell>,
}

/// A rendered-ready coefficient table: one column per dataset.
#[derive(Debug, Clone)]
pub struct ReportTable {
    pub column_headers: Vec<String>,
    pub rows: Vec<TableRow>,
    pub r2_row: Vec<f64>,
}

impl ReportTable {
    /// Builds the table from one fit per dataset. All fits must share the
    /// same coefficient names.
    pub fn from_fits(column_headers: Vec<String>, fits: &[&OlsFit]) -> Result<Self> {
        assert_eq!(column_headers.len(), fits.len());
        let names = &fits[0].coefficient_names;
        for fit in fits {
            if &fit.coefficient_names != names {
                return Err(CliError::Data(
                    "datasets have differing coefficient layouts and cannot share a table"
                        .to_string(),
                ));
            }
        }
        let rows = names
            .iter()
            .enumerate()
            .map(|(k, name)| TableRow {
                label: name.clone(),
                cells: fits
                    .iter()
                    .map(|fit| TableCell {
                        estimate: fit.coefficients[k],
                        stderr: fit.standard_errors[k],
                        p_value: fit.p_values[k],
                    })
                    .collect(),
            })
            .collect();
        Ok(Self {
            column_headers,
            rows,
            r2_row: fits.iter().map(|fit| fit.r_squared).collect(),
        })
    }

    /// Plain-text rendering at 4 decimals.
    pub fn render(&self) -> String {
        let label_width = self
            .rows
            .iter()
            .map(|r| r.label.len())
            .chain(std::iter::once("R^2".len()))
            .max()
            .unwrap_or(3);

        let estimate_text =
            |c: &TableCell| format!("{:.4}{}", c.estimate, c.stars());
        let stderr_text = |c: &TableCell| format!("({:.4})", c.stderr);

        let mut widths: Vec<usize> = self.column_headers.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (j, cell) in row.cells.iter().enumerate() {
                widths[j] = widths[j]
                    .max(estimate_text(cell).len())
                    .max(stderr_text(cell).len());
            }
        }
        for (j, r2) in self.r2_row.iter().enumerate() {
            widths[j] = widths[j].max(format!("{r2:.4}").len());
        }

        let mut out = String::new();
        let pad = |s: &str, w: usize| format!("{s:<w$}");
        out.push_str(&pad("", label_width));
        for (h, w) in self.column_headers.iter().zip(&widths) {
            out.push_str("   ");
            out.push_str(&pad(h, *w));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&pad(&row.label, label_width));
            for (cell, w) in row.cells.iter().zip(&widths) {
                out.push_str("   ");
                out.push_str(&pad(&estimate_text(cell), *w));
            }
            out.push('\n');
            out.push_str(&pad("", label_width));
            for (cell, w) in row.cells.iter().zip(&widths) {
                out.push_str("   ");
                out.push_str(&pad(&stderr_text(cell), *w));
            }
            out.push('\n');
        }
        out.push_str(&pad("R^2", label_width));
        for (r2, w) in self.r2_row.iter().zip(&widths) {
            out.push_str("   ");
            out.push_str(&pad(&format!("{r2:.4}"), *w));
        }
        out.push('\n');
        out
    }
}

/// Full-precision JSON of a fit's estimates: name -> estimate, stderr, t, p.
pub fn estimates_json(fit: &OlsFit) -> Value {
    let mut map = serde_json::Map::new();
    for (k, name) in fit.coefficient_names.iter().enumerate() {
        map.insert(
            name.clone(),
            json!({
                "estimate": fit.coefficients[k],
                "stderr": fit.standard_errors[k],
                "t": fit.t_stats[k],
                "p": fit.p_values[k],
            }),
        );
    }
    Value::Object(map)
}

/// Collinearity diagnostics of a design: pairwise correlations always,
/// VIFs when at least two regressors are present.
#[derive(Debug, Clone)]
pub struct Diagnostics {
    pub vif: Option<VifReport>,
    pub correlations: Vec<(String, String, f64)>,
}

pub fn compute_diagnostics(data: &RegressionData) -> Result<Diagnostics> {
    let names = data.column_names();
    let mut correlations = Vec::new();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            let r = correlation(data.column(names[i])?, data.column(names[j])?)?;
            correlations.push((names[i].to_string(), names[j].to_string(), r));
        }
    }
    let vif = if names.len() >= 2 {
        Some(vif_report(data)?)
    } else {
        None
    };
    Ok(Diagnostics { vif, correlations })
}

impl Diagnostics {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (a, b, r) in &self.correlations {
            out.push_str(&format!("  corr({a}, {b}) = {r:.4}\n"));
        }
        if let Some(report) = &self.vif {
            let width = report
                .entries
                .iter()
                .map(|e| e.column_name.len())
                .max()
                .unwrap_or(0);
            for entry in &report.entries {
                let mut flags = String::new();
                if entry.exceeds_strict {
                    flags.push_str("  [> 4]");
                }
                if entry.exceeds_loose {
                    flags.push_str("  [> 10]");
                }
                let padding = " ".repeat(width - entry.column_name.len());
                out.push_str(&format!(
                    "  VIF({}){padding} = {:.2}  (R^2_aux = {:.4}){}\n",
                    entry.column_name, entry.vif, entry.r2_aux, flags
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let vif = match &self.vif {
            Some(report) => {
                let mut map = serde_json::Map::new();
                for e in &report.entries {
                    map.insert(
                        e.column_name.clone(),
                        json!({
                            "r2_aux": e.r2_aux,
                            "vif": e.vif,
                            "exceeds_4": e.exceeds_strict,
                            "exceeds_10": e.exceeds_loose,
                        }),
                    );
                }
                Value::Object(map)
            }
            None => Value::Object(serde_json::Map::new()),
        };
        let correlations: Vec<Value> = self
            .correlations
            .iter()
            .map(|(a, b, r)| json!({ "a": a, "b": b, "r": r }))
            .collect();
        json!({ "vif": vif, "correlations": correlations })
    }
}
