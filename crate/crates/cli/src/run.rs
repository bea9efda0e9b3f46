//! Mode dispatch: ingest or generate data, run the requested computation,
//! and assemble both text and JSON renderings from the same numbers.

use std::path::Path;

use residlm_core::nelson_siegel::{DEFAULT_MATURITY_GRID_MONTHS, MEDIUM_TERM_COLUMN};
use residlm_core::{fit_ols, fwl_coefficient, ns_design, residualize, RegressionData};
use serde_json::{json, Value};

use crate::config::{Mode, OutputFormat, RunConfig};
use crate::csv_io::{ingest_input, ingest_yield_input};
use crate::error::Result;
use crate::report::{compute_diagnostics, estimates_json, ReportTable};
use crate::synth::synthetic_yields;

/// The assembled output of one invocation.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub text: String,
    pub json: Value,
}

impl RunReport {
    /// The string to print for the configured format.
    pub fn rendered(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.text.clone(),
            OutputFormat::Json => {
                serde_json::to_string_pretty(&self.json).expect("report serializes")
            }
        }
    }
}

/// Validates the configuration and executes the requested mode.
pub fn run(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    match config.mode {
        Mode::Fit => run_fit(config),
        Mode::Residualize => run_residualize(config),
        Mode::Fwl => run_fwl(config),
        Mode::Vif => run_vif(config),
        Mode::NsDemo => run_ns_demo(config),
    }
}

/// Wraps per-dataset JSON objects into the fixed top-level schema: a single
/// dataset is flattened, several are listed under "datasets".
fn finalize_json(mode: Mode, mut per_dataset: Vec<(String, Value)>) -> Value {
    if per_dataset.len() == 1 {
        let (_, mut obj) = per_dataset.pop().unwrap();
        obj["mode"] = json!(mode.as_str());
        obj
    } else {
        let datasets: Vec<Value> = per_dataset
            .into_iter()
            .map(|(label, mut obj)| {
                obj["label"] = json!(label);
                obj
            })
            .collect();
        json!({ "mode": mode.as_str(), "datasets": datasets })
    }
}

fn input_datasets(config: &RunConfig) -> Result<Vec<(String, RegressionData)>> {
    // validate() has already guaranteed the path is present for the modes
    // that call this.
    let path = config.input_path.as_deref().expect("input path present");
    ingest_input(path)
}

fn run_fit(config: &RunConfig) -> Result<RunReport> {
    let datasets = input_datasets(config)?;
    let mut fits = Vec::new();
    for (_, data) in &datasets {
        fits.push(fit_ols(data)?);
    }

    let labels: Vec<String> = datasets.iter().map(|(l, _)| l.clone()).collect();
    let table = ReportTable::from_fits(labels.clone(), &fits.iter().collect::<Vec<_>>())?;

    let mut text = String::from("least-squares fit:\n");
    text.push_str(&table.render());
    let mut per_dataset = Vec::new();
    for ((label, data), fit) in datasets.iter().zip(&fits) {
        let diagnostics = compute_diagnostics(data)?;
        let block = diagnostics.render();
        if !block.is_empty() {
            text.push_str(&format!("\ndiagnostics [{label}]:\n{block}"));
        }
        per_dataset.push((
            label.clone(),
            json!({
                "estimates": estimates_json(fit),
                "r2": fit.r_squared,
                "diagnostics": diagnostics.to_json(),
            }),
        ));
    }

    Ok(RunReport {
        text,
        json: finalize_json(Mode::Fit, per_dataset),
    })
}

fn run_residualize(config: &RunConfig) -> Result<RunReport> {
    let target = config.target_column.as_deref().expect("validated");
    let datasets = input_datasets(config)?;

    let mut models = Vec::new();
    for (_, data) in &datasets {
        models.push(residualize(data, target)?);
    }

    let labels: Vec<String> = datasets.iter().map(|(l, _)| l.clone()).collect();
    let fits: Vec<&residlm_core::OlsFit> = models.iter().map(|m| &m.fit).collect();
    let table = ReportTable::from_fits(labels.clone(), &fits)?;

    let mut text = format!("residualized fit (target: {target}):\n");
    text.push_str(&table.render());

    let mut per_dataset = Vec::new();
    for (label, model) in labels.iter().zip(&models) {
        text.push_str(&render_auxiliary_block(label, model));
        let diagnostics = compute_diagnostics(&model.transformed_data)?;
        let block = diagnostics.render();
        if !block.is_empty() {
            text.push_str(&format!("diagnostics [{label}] (residualized design):\n{block}"));
        }
        per_dataset.push((label.clone(), residualized_json(model, &diagnostics)));
    }
    text.push_str(&interpretation_note(&models[0]));

    Ok(RunReport {
        text,
        json: finalize_json(Mode::Residualize, per_dataset),
    })
}

fn render_auxiliary_block(label: &str, model: &residlm_core::ResidualizedModel) -> String {
    let aux = &model.auxiliary;
    let mut parts = vec![format!("intercept = {:.4}", aux.alpha_hat[0])];
    for (name, alpha) in aux.predictor_columns.iter().zip(&aux.alpha_hat[1..]) {
        parts.push(format!("{name} = {alpha:.4}"));
    }
    format!(
        "\nauxiliary regression [{label}]: {} on {}\n  alpha: {}  (R^2_aux = {:.4})\n",
        aux.target_column,
        aux.predictor_columns.join(", "),
        parts.join(", "),
        aux.r2_aux
    )
}

fn interpretation_note(model: &residlm_core::ResidualizedModel) -> String {
    let aux = &model.auxiliary;
    format!(
        "\nnote: {} holds the part of {} not explained by {}; its coefficient and\nstandard error equal the original ones, and the fit quality is unchanged.\n",
        model.residualized_column(),
        aux.target_column,
        aux.predictor_columns.join(", ")
    )
}

fn auxiliary_json(aux: &residlm_core::AuxiliaryFit) -> Value {
    let mut alpha = serde_json::Map::new();
    alpha.insert("intercept".to_string(), json!(aux.alpha_hat[0]));
    for (name, a) in aux.predictor_columns.iter().zip(&aux.alpha_hat[1..]) {
        alpha.insert(name.clone(), json!(a));
    }
    json!({ "alpha": alpha, "r2_aux": aux.r2_aux })
}

fn residualized_json(
    model: &residlm_core::ResidualizedModel,
    diagnostics: &crate::report::Diagnostics,
) -> Value {
    json!({
        "target": model.auxiliary.target_column,
        "estimates": estimates_json(&model.fit),
        "r2": model.fit.r_squared,
        "auxiliary": auxiliary_json(&model.auxiliary),
        "original_estimates": estimates_json(&model.original_fit),
        "diagnostics": diagnostics.to_json(),
    })
}

fn run_fwl(config: &RunConfig) -> Result<RunReport> {
    let target = config.target_column.as_deref().expect("validated");
    let datasets = input_datasets(config)?;

    let mut text = String::new();
    let mut per_dataset = Vec::new();
    for (label, data) in &datasets {
        let full_fit = fit_ols(data)?;
        let fwl = fwl_coefficient(data, target)?;
        let se_direct = full_fit.standard_error(target)?;
        let se_partial = fwl.gamma_standard_error();

        text.push_str(&format!(
            "partial regression [{label}]: response on {target}, controls: {}\n",
            if fwl.control_columns.is_empty() {
                "(none)".to_string()
            } else {
                fwl.control_columns.join(", ")
            }
        ));
        let lines = [
            (
                "gamma (slope of residuals on residuals)".to_string(),
                fwl.gamma_hat,
            ),
            ("gamma intercept".to_string(), fwl.gamma_intercept()),
            (
                format!("SE(gamma), {} dof", fwl.gamma_fit.dof),
                se_partial,
            ),
            (
                "direct coefficient (full fit)".to_string(),
                full_fit.coefficient(target)?,
            ),
            (format!("SE(direct), {} dof", full_fit.dof), se_direct),
        ];
        let width = lines.iter().map(|(l, _)| l.len()).max().unwrap();
        for (l, v) in &lines {
            text.push_str(&format!("  {l:<width$} = {v:.4}\n"));
        }
        if !fwl.control_columns.is_empty() {
            text.push_str(
                "  the two standard errors differ because the residual fit ignores the\n  degrees of freedom spent on the controls.\n",
            );
        }
        text.push('\n');

        let diagnostics = compute_diagnostics(data)?;
        let mut estimates = serde_json::Map::new();
        estimates.insert(
            target.to_string(),
            json!({
                "estimate": fwl.gamma_hat,
                "stderr": se_partial,
                "t": fwl.gamma_fit.t_stats[1],
                "p": fwl.gamma_fit.p_values[1],
            }),
        );
        per_dataset.push((
            label.clone(),
            json!({
                "target": target,
                "estimates": Value::Object(estimates),
                "r2": fwl.gamma_fit.r_squared,
                "fwl": {
                    "gamma_intercept": fwl.gamma_intercept(),
                    "se_partial": se_partial,
                    "se_direct": se_direct,
                    "dof_partial": fwl.gamma_fit.dof,
                    "dof_direct": full_fit.dof,
                    "direct_estimate": full_fit.coefficient(target)?,
                },
                "diagnostics": diagnostics.to_json(),
            }),
        ));
    }

    Ok(RunReport {
        text,
        json: finalize_json(Mode::Fwl, per_dataset),
    })
}

fn run_vif(config: &RunConfig) -> Result<RunReport> {
    let datasets = input_datasets(config)?;
    let mut text = String::new();
    let mut per_dataset = Vec::new();
    for (label, data) in &datasets {
        let diagnostics = compute_diagnostics(data)?;
        text.push_str(&format!("diagnostics [{label}]:\n{}", diagnostics.render()));
        per_dataset.push((
            label.clone(),
            json!({
                "estimates": {},
                "r2": Value::Null,
                "diagnostics": diagnostics.to_json(),
            }),
        ));
    }
    Ok(RunReport {
        text,
        json: finalize_json(Mode::Vif, per_dataset),
    })
}

fn run_ns_demo(config: &RunConfig) -> Result<RunReport> {
    let lambda = config.lambda;
    let target = config
        .target_column
        .clone()
        .unwrap_or_else(|| MEDIUM_TERM_COLUMN.to_string());

    // User-supplied (maturity, yield) files, or one synthetic panel on the
    // standard grid.
    let panels: Vec<(String, Vec<f64>, Vec<f64>)> = match config.input_path.as_deref() {
        Some(path) => ingest_yield_input(Path::new(path))?,
        None => {
            let grid = DEFAULT_MATURITY_GRID_MONTHS.to_vec();
            let yields =
                synthetic_yields(&grid, lambda, config.beta, config.noise_sd, config.seed)?;
            vec![("synthetic".to_string(), grid, yields)]
        }
    };

    let mut header = format!("term-structure demo: lambda = {lambda}");
    if config.input_path.is_none() {
        header.push_str(&format!(
            ", synthetic yields (beta = {}, {}, {}; noise sd = {}; seed = {})",
            config.beta[0], config.beta[1], config.beta[2], config.noise_sd, config.seed
        ));
    }
    header.push('\n');

    let mut datasets = Vec::new();
    for (label, maturities, yields) in &panels {
        datasets.push((label.clone(), ns_design(maturities, lambda, yields)?));
    }

    let mut text = header;
    let mut fits = Vec::new();
    let mut diagnostics_blocks = Vec::new();
    for (label, data) in &datasets {
        let diagnostics = compute_diagnostics(data)?;
        text.push_str(&format!("\ndiagnostics [{label}]:\n{}", diagnostics.render()));
        diagnostics_blocks.push(diagnostics);
        fits.push(fit_ols(data)?);
    }

    let labels: Vec<String> = datasets.iter().map(|(l, _)| l.clone()).collect();
    let fit_table = ReportTable::from_fits(labels.clone(), &fits.iter().collect::<Vec<_>>())?;
    text.push_str("\nleast-squares fit:\n");
    text.push_str(&fit_table.render());

    let mut models = Vec::new();
    for (_, data) in &datasets {
        models.push(residualize(data, &target)?);
    }
    let resid_fits: Vec<&residlm_core::OlsFit> = models.iter().map(|m| &m.fit).collect();
    let resid_table = ReportTable::from_fits(labels.clone(), &resid_fits)?;
    text.push_str(&format!("\nresidualized fit (target: {target}):\n"));
    text.push_str(&resid_table.render());
    for (label, model) in labels.iter().zip(&models) {
        text.push_str(&render_auxiliary_block(label, model));
    }
    text.push_str(&interpretation_note(&models[0]));

    let mut per_dataset: Vec<(String, Value)> = Vec::new();
    for (((label, fit), model), diagnostics) in labels
        .iter()
        .zip(&fits)
        .zip(&models)
        .zip(&diagnostics_blocks)
    {
        let resid_diag = compute_diagnostics(&model.transformed_data)?;
        per_dataset.push((
            label.clone(),
            json!({
                "lambda": lambda,
                "estimates": estimates_json(fit),
                "r2": fit.r_squared,
                "diagnostics": diagnostics.to_json(),
                "residualized": residualized_json(model, &resid_diag),
            }),
        ));
    }

    Ok(RunReport {
        text,
        json: finalize_json(Mode::NsDemo, per_dataset),
    })
}
