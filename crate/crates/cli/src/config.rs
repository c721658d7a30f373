//! Run configuration: assembled from an optional JSON file and flags, validated
//! before any computation, and echoed verbatim into report `meta`.

use std::path::PathBuf;

use hardy_core::control::{table2_grid, Criterion, Mode, SweepSettings};
use hardy_core::io::Format;
use hardy_core::source::{calibrated_source, SourceConfig};
use hardy_core::Angle;
use serde::{Deserialize, Serialize};

use crate::args::{GridAlias, RunArgs};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Noise parameters; the angle is replaced per grid point.
    pub source: SourceConfig,
    #[serde(rename = "grid_deg")]
    pub grid: Vec<Angle>,
    pub mode: Mode,
    pub budget: f64,
    pub seed: u64,
    pub criterion: Criterion,
    #[serde(rename = "probe_step_deg")]
    pub probe_step: Angle,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub format: Format,
}

/// A config file is either a bare [`RunConfig`] or a report `meta` block wrapping one.
#[derive(Deserialize)]
#[serde(untagged)]
enum ConfigFile {
    Meta { config: Box<RunConfig> },
    Bare(Box<RunConfig>),
}

impl RunConfig {
    fn defaults(mode: Mode) -> Self {
        let s = SweepSettings::default();
        RunConfig {
            source: SourceConfig::ideal(Angle::ZERO),
            grid: table2_grid(),
            mode,
            budget: s.budget,
            seed: s.seed,
            criterion: s.criterion,
            probe_step: s.probe_step,
            out: None,
            format: Format::Json,
        }
    }

    /// Defaults, then the config file, then explicit flags.
    pub fn resolve(args: &RunArgs, default_mode: Mode, default_grid: Vec<Angle>) -> Result<Self, CliError> {
        let mut cfg = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                match serde_json::from_str::<ConfigFile>(&text)
                    .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
                {
                    ConfigFile::Meta { config } | ConfigFile::Bare(config) => *config,
                }
            }
            None => RunConfig {
                grid: default_grid,
                ..RunConfig::defaults(default_mode)
            },
        };

        match (&args.phi_s, args.grid) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config("--phi-s and --grid are exclusive".into()))
            }
            (Some(list), None) => cfg.grid = list.iter().map(|&d| Angle::from_degrees(d)).collect(),
            (None, Some(GridAlias::Table2)) => cfg.grid = table2_grid(),
            (None, Some(GridAlias::Fine)) => {
                cfg.grid = (0..=450).map(|i| Angle::from_degrees(i as f64 / 10.0)).collect()
            }
            (None, None) => {}
        }

        if args.ideal {
            cfg.source = SourceConfig::ideal(Angle::ZERO);
        }
        if let Some((c_hv, c_pm)) = args.noise_from {
            cfg.source = calibrated_source(Angle::ZERO, c_hv, c_pm)
                .map_err(|e| CliError::Config(format!("--noise-from: {e}")))?;
        }
        if let Some(w) = args.white_noise {
            cfg.source.white_noise_w = w;
        }
        if let Some(d) = args.dephasing {
            cfg.source.hv_dephasing_d = d;
        }
        if let Some(m) = args.mode {
            cfg.mode = m.into();
        }
        if let Some(b) = args.budget {
            cfg.budget = b;
        }
        if let Some(s) = args.seed {
            cfg.seed = s;
        }
        if let Some(c) = args.criterion {
            cfg.criterion = c.into();
        }
        if let Some(step) = args.probe_step {
            cfg.probe_step = Angle::from_degrees(step);
        }
        if let Some(out) = &args.out {
            cfg.out = Some(out.clone());
        }
        if let Some(f) = args.format {
            cfg.format = f.into();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        self.source
            .validate()
            .map_err(|e| CliError::Config(format!("source: {e}")))?;
        if self.grid.is_empty() {
            return bad("grid is empty".into());
        }
        if let Some(a) = self.grid.iter().find(|a| !a.is_finite()) {
            return bad(format!("grid angle {a} is not finite"));
        }
        if !(self.budget.is_finite() && self.budget > 0.0) {
            return bad(format!("budget must be positive, got {}", self.budget));
        }
        if !(self.probe_step.is_finite() && self.probe_step.degrees() > 0.0) {
            return bad(format!("probe step must be positive, got {}", self.probe_step));
        }
        Ok(())
    }

    pub fn settings(&self) -> SweepSettings {
        SweepSettings {
            mode: self.mode,
            budget: self.budget,
            seed: self.seed,
            criterion: self.criterion,
            probe_step: self.probe_step,
            ..SweepSettings::default()
        }
    }
}
