use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("frame mismatch: {left} vs {right}")]
    FrameMismatch { left: String, right: String },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("parameter `{name}` = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("visibility undefined: total count is zero")]
    UndefinedVisibility,

    #[error("contrast undefined: probability sum is zero")]
    UndefinedContrast,

    #[error("probability undefined: context total is zero")]
    ZeroTotal,

    #[error("unsupported noise regime: C_PM = {c_pm} exceeds C_HV = {c_hv}")]
    UnsupportedRegime { c_hv: f64, c_pm: f64 },

    #[error("degenerate state: no sign change of P(0,0) - P(0,1) for phi_M in (0, 90) deg")]
    DegenerateState,

    #[error("fitted count lines are parallel (slope difference {slope_diff:e} counts/deg)")]
    NoIntersection { slope_diff: f64 },

    #[error("empty grid")]
    EmptyGrid,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: u64,
        column: usize,
        message: String,
    },
}
