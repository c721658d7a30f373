//! Figures of merit on exact probabilities and on counted data.
//!
//! Count-based quantities carry first-order Poisson error propagation.
//! Probabilities are normalized within their own context (each context is a
//! separate acquisition), so their errors are multinomial within a context and
//! independent across contexts.

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::optics::{
    context_probabilities_unchecked, MeasurementContext, Outcome, Sides,
};
use crate::qstate::DensityMatrix2Q;

/// A probability with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityEstimate {
    pub value: f64,
    pub stderr: f64,
}

impl ProbabilityEstimate {
    pub fn exact(value: f64) -> Self {
        ProbabilityEstimate { value, stderr: 0.0 }
    }

    /// Multinomial error expected for `value` from `total` counted pairs.
    pub fn predicted(value: f64, total: f64) -> Self {
        let stderr = if total > 0.0 {
            (value * (1.0 - value) / total).max(0.0).sqrt()
        } else {
            0.0
        };
        ProbabilityEstimate { value, stderr }
    }
}

/// A signed derived quantity (visibility, witness, contrast) with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate { value, stderr: 0.0 }
    }

    /// Magnitude, as reported for two-photon visibilities.
    pub fn abs(self) -> Estimate {
        Estimate {
            value: self.value.abs(),
            stderr: self.stderr,
        }
    }
}

/// Coincidence counts for one context.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContextCounts {
    pub sides: Sides,
    /// Rotation the context was measured at, when known.
    pub phi_m: Option<Angle>,
    /// Indexed like [`Sides::outcome_pairs`].
    pub n: [u64; 4],
    pub duration_s: f64,
}

impl ContextCounts {
    pub fn new(sides: Sides, n: [u64; 4]) -> Self {
        ContextCounts {
            sides,
            phi_m: None,
            n,
            duration_s: 10.0,
        }
    }

    pub fn measured(ctx: MeasurementContext, n: [u64; 4], duration_s: f64) -> Self {
        ContextCounts {
            sides: ctx.sides,
            phi_m: Some(ctx.phi_m),
            n,
            duration_s,
        }
    }

    pub fn total(&self) -> u64 {
        self.n.iter().sum()
    }

    pub fn get(&self, x: Outcome, y: Outcome) -> Option<u64> {
        self.sides.slot(x, y).map(|i| self.n[i])
    }
}

/// `n(x,y) / total` for the context, with multinomial standard error.
///
/// Panics if `(x, y)` is not an outcome of the counted context.
pub fn probability_estimate(
    counts: &ContextCounts,
    x: Outcome,
    y: Outcome,
) -> Result<ProbabilityEstimate> {
    let slot = counts
        .sides
        .slot(x, y)
        .unwrap_or_else(|| panic!("outcome ({x},{y}) not in context {}", counts.sides));
    let total = counts.total();
    if total == 0 {
        return Err(Error::ZeroTotal);
    }
    let p = counts.n[slot] as f64 / total as f64;
    Ok(ProbabilityEstimate::predicted(p, total as f64))
}

fn poisson_variance(grad: &[f64], n: &[f64]) -> f64 {
    grad.iter().zip(n).map(|(g, n)| g * g * n).sum()
}

fn poisson_covariance(g1: &[f64], g2: &[f64], n: &[f64]) -> f64 {
    g1.iter().zip(g2).zip(n).map(|((a, b), n)| a * b * n).sum()
}

/// Signed two-photon correlation `(n++ + n-- - n+- - n-+)/total`.
///
/// The magnitude is the visibility; keep the sign until reporting.
pub fn visibility(n_pp: u64, n_mm: u64, n_pm: u64, n_mp: u64) -> Result<Estimate> {
    let same = (n_pp + n_mm) as f64;
    let opposite = (n_pm + n_mp) as f64;
    let total = same + opposite;
    if total == 0.0 {
        return Err(Error::UndefinedVisibility);
    }
    Ok(Estimate {
        value: (same - opposite) / total,
        stderr: (4.0 * same * opposite / total.powi(3)).sqrt(),
    })
}

/// `(n_h - n_v)/(n_h + n_v)` for one photon.
pub fn local_visibility(n_h: u64, n_v: u64) -> Result<Estimate> {
    let (h, v) = (n_h as f64, n_v as f64);
    let total = h + v;
    if total == 0.0 {
        return Err(Error::UndefinedVisibility);
    }
    Ok(Estimate {
        value: (h - v) / total,
        stderr: (4.0 * h * v / total.powi(3)).sqrt(),
    })
}

pub fn witness(c_hv: f64, c_pm: f64) -> f64 {
    c_hv + c_pm - 1.0
}

pub fn purity_length(v_hv: f64, w_e: f64) -> f64 {
    v_hv.hypot(w_e)
}

/// Contrast `K = (P(a,a) - S)/(P(a,a) + S)`, `S = P(0,a) + P(a,0) + P(1,1)`.
pub fn contrast_k(
    p_aa: ProbabilityEstimate,
    p_0a: ProbabilityEstimate,
    p_a0: ProbabilityEstimate,
    p_11: ProbabilityEstimate,
) -> Result<Estimate> {
    let suppressed = p_0a.value + p_a0.value + p_11.value;
    let total = p_aa.value + suppressed;
    if !(total > 0.0) {
        return Err(Error::UndefinedContrast);
    }
    let value = (p_aa.value - suppressed) / total;
    let d_aa = 2.0 * suppressed / (total * total);
    let d_s = -2.0 * p_aa.value / (total * total);
    let var = (d_aa * p_aa.stderr).powi(2)
        + d_s * d_s * (p_0a.stderr.powi(2) + p_a0.stderr.powi(2) + p_11.stderr.powi(2));
    Ok(Estimate {
        value,
        stderr: var.sqrt(),
    })
}

/// `P(a,a) - [P(0,a) + P(a,0) + P(1,1)]`; positive means non-contextual logic fails.
pub fn inequality_margin(
    p_aa: ProbabilityEstimate,
    p_0a: ProbabilityEstimate,
    p_a0: ProbabilityEstimate,
    p_11: ProbabilityEstimate,
) -> Estimate {
    let errs = [p_aa, p_0a, p_a0, p_11].map(|p| p.stderr * p.stderr);
    Estimate {
        value: p_aa.value - (p_0a.value + p_a0.value + p_11.value),
        stderr: errs.iter().sum::<f64>().sqrt(),
    }
}

/// Lowest probability obtainable with HV correlation `c_hv`: `(1 - c_hv)/4`.
pub fn error_floor(c_hv: f64) -> f64 {
    (1.0 - c_hv) / 4.0
}

/// The eight single-basis coincidence counts of a source characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisCounts {
    pub hh: u64,
    pub hv: u64,
    pub vh: u64,
    pub vv: u64,
    pub pp: u64,
    pub pm: u64,
    pub mp: u64,
    pub mm: u64,
}

/// Source figures of merit from counted data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VisibilityRecord {
    /// Signed HV correlation (positive for `|HH>, |VV>` pairs).
    pub c_hv: Estimate,
    /// Signed PM anti-correlation (positive for `|HH> - |VV>` coherence).
    pub c_pm: Estimate,
    /// Local HV visibility averaged over the two photons.
    pub v_hv: Estimate,
    pub w_e: Estimate,
    pub purity_length: Estimate,
}

impl VisibilityRecord {
    pub fn from_counts(c: &BasisCounts) -> Result<Self> {
        let c_hv = visibility(c.hh, c.vv, c.hv, c.vh)?;
        let pm = visibility(c.pp, c.mm, c.pm, c.mp)?;
        let c_pm = Estimate {
            value: -pm.value,
            stderr: pm.stderr,
        };

        // photon-averaged local visibility reduces to (hh - vv)/N
        let n_hv = [c.hh, c.hv, c.vh, c.vv].map(|x| x as f64);
        let total: f64 = n_hv.iter().sum();
        if total == 0.0 {
            return Err(Error::UndefinedVisibility);
        }
        let v = (n_hv[0] - n_hv[3]) / total;
        let g_v = [(1.0 - v), -v, -v, (-1.0 - v)].map(|g| g / total);
        let g_c = [
            1.0 - c_hv.value,
            -1.0 - c_hv.value,
            -1.0 - c_hv.value,
            1.0 - c_hv.value,
        ]
        .map(|g| g / total);
        let v_hv = Estimate {
            value: v,
            stderr: poisson_variance(&g_v, &n_hv).sqrt(),
        };

        let w = witness(c_hv.value, c_pm.value);
        let w_e = Estimate {
            value: w,
            stderr: c_hv.stderr.hypot(c_pm.stderr),
        };

        // V_HV and W_E share the HV counts through C_HV
        let len = purity_length(v, w);
        let cov_vw = poisson_covariance(&g_v, &g_c, &n_hv);
        let len_var = if len > 0.0 {
            (v * v * v_hv.stderr.powi(2) + w * w * w_e.stderr.powi(2) + 2.0 * v * w * cov_vw)
                / (len * len)
        } else {
            0.0
        };
        Ok(VisibilityRecord {
            c_hv,
            c_pm,
            v_hv,
            w_e,
            purity_length: Estimate {
                value: len,
                stderr: len_var.max(0.0).sqrt(),
            },
        })
    }
}

/// Exact source figures of merit of a density matrix (HV and PM measured at `phi_M = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelVisibilities {
    pub c_hv: f64,
    pub c_pm: f64,
    pub v_hv: f64,
}

impl ModelVisibilities {
    pub fn witness(&self) -> f64 {
        witness(self.c_hv, self.c_pm)
    }

    pub fn purity_length(&self) -> f64 {
        purity_length(self.v_hv, self.witness())
    }
}

/// Evaluate `C_HV`, `C_PM` (anti-correlation sign) and `V_HV` from Born-rule probabilities.
pub fn model_visibilities(rho: &DensityMatrix2Q) -> ModelVisibilities {
    let zero = Angle::ZERO;
    // at phi_M = 0: {0,1} = {H,V} and {a,b} = {M,P}
    let hv = context_probabilities_unchecked(rho, MeasurementContext::new(Sides::FF, zero)).p;
    let ww = context_probabilities_unchecked(rho, MeasurementContext::new(Sides::WW, zero)).p;
    let c_hv = hv[0] + hv[3] - hv[1] - hv[2];
    let c_pm = ww[1] + ww[2] - ww[0] - ww[3];
    let v1 = (hv[0] + hv[1]) - (hv[2] + hv[3]);
    let v2 = (hv[0] + hv[2]) - (hv[1] + hv[3]);
    ModelVisibilities {
        c_hv,
        c_pm,
        v_hv: 0.5 * (v1 + v2),
    }
}
