use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use residlm::{run, Mode, OutputFormat, RunConfig};

/// Least-squares regression with collinearity diagnostics, residual
/// substitution, and partial regression.
#[derive(Parser, Debug)]
#[command(name = "residlm", version, about)]
struct Args {
    /// What to compute.
    #[arg(long, value_enum)]
    mode: ModeArg,

    /// CSV input: a file (header row; response column first) or a
    /// directory of CSV files rendered side by side. In ns-demo mode the
    /// files hold (maturity, yield) pairs instead.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Per-month decay of the term-structure loadings (ns-demo mode).
    #[arg(long, default_value_t = 0.01)]
    lambda: f64,

    /// Column to residualize (residualize mode) or partial out (fwl mode);
    /// defaults to the medium-term loading in ns-demo mode.
    #[arg(long)]
    target: Option<String>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,

    /// Seed for synthetic yield noise (ns-demo mode).
    #[arg(long)]
    seed: Option<u64>,

    /// Generating coefficients for synthetic yields, e.g. "8,-1.5,15"
    /// (ns-demo mode).
    #[arg(long, value_parser = parse_beta)]
    beta: Option<Beta>,

    /// Standard deviation of synthetic yield noise (ns-demo mode).
    #[arg(long, default_value_t = 0.0)]
    noise_sd: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Fit,
    Residualize,
    Fwl,
    Vif,
    #[value(name = "ns-demo")]
    NsDemo,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Fit => Mode::Fit,
            ModeArg::Residualize => Mode::Residualize,
            ModeArg::Fwl => Mode::Fwl,
            ModeArg::Vif => Mode::Vif,
            ModeArg::NsDemo => Mode::NsDemo,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

#[derive(Clone, Debug)]
struct Beta([f64; 3]);

fn parse_beta(s: &str) -> Result<Beta, String> {
    let parts: Vec<&str> = s.split(',').map(|p| p.trim()).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated reals, got `{s}`"));
    }
    let mut beta = [0.0f64; 3];
    for (slot, part) in beta.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| format!("`{part}` is not a real number"))?;
        if !slot.is_finite() {
            return Err(format!("`{part}` is not finite"));
        }
    }
    Ok(Beta(beta))
}

fn main() -> ExitCode {
    let args = Args::parse();

    let mut config = RunConfig::new(args.mode.into());
    config.input_path = args.input;
    config.lambda = args.lambda;
    config.target_column = args.target;
    config.output_format = match args.format {
        FormatArg::Table => OutputFormat::Table,
        FormatArg::Json => OutputFormat::Json,
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(Beta(beta)) = args.beta {
        config.beta = beta;
    }
    config.noise_sd = args.noise_sd;

    match run(&config) {
        Ok(report) => {
            print!("{}", report.rendered(config.output_format));
            if config.output_format == OutputFormat::Json {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
