mod args;
mod config;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use hardy_core::control::{sweep_phi_s, Mode, ProtocolReport};
use hardy_core::io::{
    analyze, emit_report, parse_basis_counts, parse_context_counts, AnalysisView, Dataset, Format,
    Report, ReportMeta, FIXTURE_BASIS_COUNTS, FIXTURE_CONTEXT_COUNTS,
};
use hardy_core::verify::{run_acceptance, run_criterion, CRITERIA};
use hardy_core::Angle;

use args::{AnalyzeArgs, Cli, Command, RunArgs, VerifyArgs, ViewArg};
use config::RunConfig;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Acceptance(Vec<u8>),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::Acceptance(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Acceptance(ids) => write!(f, "acceptance failed for criteria {ids:?}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => cmd_run(&a, Mode::Counted, Kind::Sweep),
        Command::Sweep(a) => cmd_run(&a, Mode::Exact, Kind::Sweep),
        Command::Optimize(a) => cmd_run(&a, Mode::Exact, Kind::Optimize),
        Command::Analyze(a) => cmd_analyze(&a),
        Command::Verify(a) => cmd_verify(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hardy: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Sweep,
    Optimize,
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn cmd_run(args: &RunArgs, default_mode: Mode, kind: Kind) -> Result<(), CliError> {
    let default_grid = match kind {
        Kind::Sweep => hardy_core::control::table2_grid(),
        Kind::Optimize => (0..=450).map(|i| Angle::from_degrees(i as f64 / 10.0)).collect(),
    };
    let cfg = RunConfig::resolve(args, default_mode, default_grid)?;
    let report = sweep_phi_s(&cfg.grid, &cfg.source, &cfg.settings())
        .map_err(|e| CliError::Config(e.to_string()))?;
    let report = match kind {
        Kind::Sweep => report,
        Kind::Optimize => best_only(report),
    };
    let config_json = serde_json::to_value(&cfg).expect("config serializes");
    let meta = ReportMeta::new(Some(cfg.seed), config_json);
    let bytes = emit_report(&Report::Protocol(&report), cfg.format, &meta);
    if kind == Kind::Optimize {
        if let Some(best) = report.best_row() {
            eprintln!(
                "best phi_S = {} (phi_M = {:.3}°, K = {:.4} ± {:.4})",
                best.phi_s,
                best.phi_m_opt.degrees(),
                best.k.value,
                best.k.stderr
            );
        }
    }
    write_output(cfg.out.as_deref(), &bytes)
}

fn best_only(mut report: ProtocolReport) -> ProtocolReport {
    let best = report.best_phi_s;
    report.rows.retain(|r| r.phi_s == best);
    report
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let bundled = args.basis.is_none() && args.contexts.is_none();
    let parse_err = |path: &str, e: hardy_core::Error| CliError::Io(format!("{path}: {e}"));
    let basis = match (&args.basis, bundled) {
        (Some(p), _) => parse_basis_counts(&read_file(p)?)
            .map_err(|e| parse_err(&p.display().to_string(), e))?,
        (None, true) => parse_basis_counts(FIXTURE_BASIS_COUNTS).expect("fixture parses"),
        (None, false) => vec![],
    };
    let contexts = match (&args.contexts, bundled) {
        (Some(p), _) => parse_context_counts(&read_file(p)?)
            .map_err(|e| parse_err(&p.display().to_string(), e))?,
        (None, true) => parse_context_counts(FIXTURE_CONTEXT_COUNTS).expect("fixture parses"),
        (None, false) => vec![],
    };
    let report = analyze(&Dataset { basis, contexts }).map_err(|e| CliError::Config(e.to_string()))?;
    let format: Format = args.format.into();
    let bytes = match (format, args.view) {
        (Format::Csv, view) => {
            let view = match view {
                ViewArg::Full => AnalysisView::Full,
                ViewArg::Visibilities => AnalysisView::Visibilities,
                ViewArg::Suppression => AnalysisView::Suppression,
                ViewArg::Contrast => AnalysisView::Contrast,
            };
            report.table(view).to_csv().into_bytes()
        }
        (Format::Json, _) => {
            let config = serde_json::json!({
                "basis": args.basis.as_ref().map(|p| p.display().to_string()),
                "contexts": args.contexts.as_ref().map(|p| p.display().to_string()),
                "bundled_fixtures": bundled,
            });
            emit_report(&Report::Analysis(&report), format, &ReportMeta::new(None, config))
        }
    };
    write_output(args.out.as_deref(), &bytes)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let results = match &args.only {
        None => run_acceptance(),
        Some(ids) => ids
            .iter()
            .map(|&id| {
                run_criterion(id).ok_or_else(|| {
                    CliError::Config(format!("no criterion {id}; valid: 1-{}", CRITERIA.len()))
                })
            })
            .collect::<Result<_, _>>()?,
    };
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{}/{} criteria passed", results.len() - failed.len(), results.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Acceptance(failed))
    }
}
