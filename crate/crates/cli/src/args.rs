use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hardy_core::control::{Criterion, Mode};
use hardy_core::io::Format;

#[derive(Debug, Parser)]
#[command(
    name = "hardy",
    version,
    about = "Simulate, optimize and analyze two-photon Hardy-contextuality experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate the protocol with Poisson-counted acquisitions (default mode: counted).
    Simulate(RunArgs),
    /// Report the best setting for the chosen criterion (default grid: 0..45° by 0.1°).
    Optimize(RunArgs),
    /// Evaluate every grid point and report the whole sweep (default mode: exact).
    Sweep(RunArgs),
    /// Reduce raw-count CSV files to visibilities, probabilities and contrasts.
    Analyze(AnalyzeArgs),
    /// Run the acceptance suite and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Source setting(s) in degrees, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub phi_s: Option<Vec<f64>>,
    /// Named grid of source settings.
    #[arg(long, value_enum)]
    pub grid: Option<GridAlias>,
    /// Noiseless source.
    #[arg(long, conflicts_with = "noise_from")]
    pub ideal: bool,
    /// Calibrate the noise model from measured visibilities at maximal entanglement.
    #[arg(long, value_name = "C_HV,C_PM", value_parser = parse_pair)]
    pub noise_from: Option<(f64, f64)>,
    /// White-noise fraction w.
    #[arg(long, value_name = "W", allow_negative_numbers = true)]
    pub white_noise: Option<f64>,
    /// HV-coherence loss d.
    #[arg(long, value_name = "D", allow_negative_numbers = true)]
    pub dephasing: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Mean pairs per context (and per probe setting).
    #[arg(long, allow_negative_numbers = true)]
    pub budget: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub criterion: Option<CriterionArg>,
    /// Spacing of the three probe rotations, degrees.
    #[arg(long, value_name = "DEG", allow_negative_numbers = true)]
    pub probe_step: Option<f64>,
    /// Report path; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// JSON run configuration (a report's `meta` block is accepted).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Basis-count CSV; the bundled fixture if neither file is given.
    #[arg(long)]
    pub basis: Option<PathBuf>,
    /// Context-count CSV; the bundled fixture if neither file is given.
    #[arg(long)]
    pub contexts: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    /// Column subset for CSV output.
    #[arg(long, value_enum, default_value = "full")]
    pub view: ViewArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only these criteria (1-8), comma separated.
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<u8>>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GridAlias {
    /// The nine reference settings 0..45°.
    Table2,
    /// 0..45° in 0.1° steps.
    Fine,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exact,
    Counted,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Counted => Mode::Counted,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CriterionArg {
    #[value(name = "min-P11", alias = "min-p11")]
    MinP11,
    #[value(name = "max-K", alias = "max-k")]
    MaxK,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::MinP11 => Criterion::MinP11,
            CriterionArg::MaxK => Criterion::MaxK,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ViewArg {
    Full,
    Visibilities,
    Suppression,
    Contrast,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected C_HV,C_PM, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}
