//! Adaptive input-state control.
//!
//! For a fixed entanglement setting `phi_S`, the shared rotation `phi_M` is
//! tuned until the interfering components balance, `P(0,0) = P(0,1)`
//! (and, by photon-exchange symmetry, `P(0,0) = P(1,0)`). That suppresses
//! `P(0,a)` and `P(a,0)`; the remaining suppressed outcome `P(1,1)` is then
//! minimized by sweeping `phi_S`.
//!
//! Two balance finders are provided: an exact bracketed root on the model and
//! the three-setting linear-fit procedure that works from counts alone.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::metrics::{
    contrast_k, inequality_margin, probability_estimate, ContextCounts, Estimate,
    ProbabilityEstimate,
};
use crate::optics::{context_probabilities_unchecked, MeasurementContext, Outcome, Sides};
use crate::qstate::DensityMatrix2Q;
use crate::roots::bracketed_root;
use crate::sim::{poisson_count, sample_context, setting_seed, stream_rng};
use crate::source::{noisy_state, SourceConfig};
use crate::stats::fit_line;

/// `phi_S` settings of the reference nine-point sweep.
pub const TABLE2_GRID: [f64; 9] = [0.0, 10.0, 17.5, 20.0, 22.5, 25.0, 27.5, 35.0, 45.0];

/// Residual `|P(0,0) - P(0,1)|` accepted by the exact balance.
pub const BALANCE_TOL: f64 = 1e-12;
/// Fitted slopes closer than this (counts/deg) are treated as parallel.
pub const PARALLEL_SLOPE_TOL: f64 = 1e-9;
/// Scan resolution used to bracket the balance root.
const SCAN_STEP_DEG: f64 = 0.5;

pub fn table2_grid() -> Vec<Angle> {
    TABLE2_GRID.iter().map(|&d| Angle::from_degrees(d)).collect()
}

fn ff_probs(rho: &DensityMatrix2Q, phi_m: f64) -> [f64; 4] {
    context_probabilities_unchecked(
        rho,
        MeasurementContext::new(Sides::FF, Angle::from_degrees(phi_m)),
    )
    .p
}

/// Exact balanced rotation of the model state on the branch continuous with 45° at `phi_S = 0`.
pub fn balance_phi_m_exact(cfg: &SourceConfig) -> Result<Angle> {
    let rho = noisy_state(cfg)?;
    balance_phi_m_for_state(&rho)
}

/// Smallest root of `P(0,0) - P(0,1)` in `[0°, 90°]`.
///
/// Every product state has one there: its second-photon factor changes sign
/// every 90°.
pub fn balance_phi_m_for_state(rho: &DensityMatrix2Q) -> Result<Angle> {
    let f = |phi: f64| {
        let p = ff_probs(rho, phi);
        p[0] - p[1]
    };
    let mut x0 = 0.0;
    let mut f0 = f(x0);
    let mut largest = f0.abs();
    while x0 < 90.0 {
        let x1 = (x0 + SCAN_STEP_DEG).min(90.0);
        let f1 = f(x1);
        largest = largest.max(f1.abs());
        if f0.signum() != f1.signum() || f0 == 0.0 || f1 == 0.0 {
            if largest < BALANCE_TOL {
                break;
            }
            let root = bracketed_root(f, x0, x1, BALANCE_TOL, 200)
                .ok_or(Error::DegenerateState)?;
            return Ok(Angle::from_degrees(root.x));
        }
        x0 = x1;
        f0 = f1;
    }
    Err(Error::DegenerateState)
}

/// Noiseless balanced rotation in closed form: the positive root
/// `t = tan(phi_M)` of `sin(phi_S) t^2 + (cos + sin) t - cos = 0`.
pub fn ideal_balance_closed_form(phi_s: Angle) -> Angle {
    let (s, c) = phi_s.radians().sin_cos();
    let b = c + s;
    let t = 2.0 * c / (b + (b * b + 4.0 * s * c).sqrt());
    Angle::from_radians(t.atan())
}

/// Source angle whose state is locally equivalent to the ideal paradox state:
/// `cos^2(phi_S)` equals the larger Schmidt coefficient `(3 + sqrt5)/6`.
pub fn ideal_phi_s_star() -> Angle {
    let l1 = (3.0 + 5f64.sqrt()) / 6.0;
    Angle::from_radians(l1.sqrt().acos())
}

/// Counts recorded at one probe rotation, equal durations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub phi_m: Angle,
    pub n_00: u64,
    pub n_01: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbedBalance {
    pub phi_m: Angle,
    pub probes: Vec<ProbeResult>,
    /// Slope and intercept (counts, counts/deg) of the `n_00` line.
    pub line_00: (f64, f64),
    pub line_01: (f64, f64),
    /// Intersection lies further than three steps from the guess.
    pub extrapolated: bool,
}

/// Three-setting balance: probe at `guess - step`, `guess`, `guess + step`,
/// fit a line to each of `n_00` and `n_01`, and intersect them.
pub fn balance_phi_m_probed<P>(mut probe: P, guess: Angle, step: Angle) -> Result<ProbedBalance>
where
    P: FnMut(Angle) -> ProbeResult,
{
    if !(step.degrees() > 0.0 && step.is_finite()) {
        return Err(Error::OutOfRange {
            name: "step",
            value: step.degrees(),
            range: "(0, inf) deg",
        });
    }
    let probes: Vec<ProbeResult> = [guess - step, guess, guess + step]
        .into_iter()
        .map(&mut probe)
        .collect();
    let pts00: Vec<_> = probes
        .iter()
        .map(|p| (p.phi_m.degrees(), p.n_00 as f64))
        .collect();
    let pts01: Vec<_> = probes
        .iter()
        .map(|p| (p.phi_m.degrees(), p.n_01 as f64))
        .collect();
    let l00 = fit_line(&pts00).expect("three distinct probe angles");
    let l01 = fit_line(&pts01).expect("three distinct probe angles");
    let slope_diff = l00.slope - l01.slope;
    if slope_diff.abs() < PARALLEL_SLOPE_TOL {
        return Err(Error::NoIntersection { slope_diff });
    }
    let x = (l01.intercept - l00.intercept) / slope_diff;
    let extrapolated = (x - guess.degrees()).abs() > 3.0 * step.degrees();
    Ok(ProbedBalance {
        phi_m: Angle::from_degrees(x),
        probes,
        line_00: (l00.slope, l00.intercept),
        line_01: (l01.slope, l01.intercept),
        extrapolated,
    })
}

/// Probe returning the expected (noise-free) counts of the model.
pub fn expected_probe(rho: &DensityMatrix2Q, mean_total: f64) -> impl Fn(Angle) -> ProbeResult + '_ {
    move |phi_m| {
        let p = ff_probs(rho, phi_m.degrees());
        ProbeResult {
            phi_m,
            n_00: (mean_total * p[0]).round() as u64,
            n_01: (mean_total * p[1]).round() as u64,
        }
    }
}

/// Probe with Poisson counts; probe `k` draws from stream `(seed, k)`.
pub fn poisson_probe(
    rho: &DensityMatrix2Q,
    mean_total: f64,
    seed: u64,
) -> impl FnMut(Angle) -> ProbeResult + '_ {
    let mut k = 0u64;
    move |phi_m| {
        let p = ff_probs(rho, phi_m.degrees());
        let mut rng = stream_rng(seed, k);
        k += 1;
        ProbeResult {
            phi_m,
            n_00: poisson_count(mean_total * p[0], &mut rng),
            n_01: poisson_count(mean_total * p[1], &mut rng),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact root and exact probabilities; errors are those predicted at the budget.
    Exact,
    /// Three-point probes and Poisson-sampled contexts.
    Counted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Criterion {
    #[serde(rename = "min-P11")]
    MinP11,
    #[serde(rename = "max-K")]
    MaxK,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSettings {
    pub mode: Mode,
    /// Mean pairs per context (and per probe setting).
    pub budget: f64,
    pub seed: u64,
    pub criterion: Criterion,
    #[serde(rename = "probe_step_deg")]
    pub probe_step: Angle,
    pub duration_s: f64,
}

impl Default for SweepSettings {
    fn default() -> Self {
        SweepSettings {
            mode: Mode::Exact,
            budget: 11_400.0,
            seed: 0,
            criterion: Criterion::MaxK,
            probe_step: Angle::from_degrees(3.0),
            duration_s: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "phi_s_deg")]
    pub phi_s: Angle,
    #[serde(rename = "phi_m_opt_deg")]
    pub phi_m_opt: Angle,
    pub p_00: ProbabilityEstimate,
    pub p_0a: ProbabilityEstimate,
    pub p_a0: ProbabilityEstimate,
    pub p_11: ProbabilityEstimate,
    pub p_aa: ProbabilityEstimate,
    pub k: Estimate,
    pub margin: Estimate,
    /// Counted contexts in `(F,F), (F,W), (W,F), (W,W)` order; counted mode only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counts: Option<[ContextCounts; 4]>,
}

impl SweepRow {
    /// Suppressed sum `P(0,a) + P(a,0) + P(1,1)`.
    pub fn suppressed(&self) -> f64 {
        self.p_0a.value + self.p_a0.value + self.p_11.value
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolReport {
    pub rows: Vec<SweepRow>,
    #[serde(rename = "best_phi_s_deg")]
    pub best_phi_s: Angle,
    pub criterion: Criterion,
    pub mode: Mode,
}

impl ProtocolReport {
    pub fn best_row(&self) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.phi_s == self.best_phi_s)
    }
}

fn select_best(rows: &[SweepRow], criterion: Criterion) -> Angle {
    let key = |r: &SweepRow| match criterion {
        Criterion::MaxK => -r.k.value,
        Criterion::MinP11 => r.p_11.value,
    };
    rows.iter()
        .min_by(|a, b| key(a).total_cmp(&key(b)))
        .map(|r| r.phi_s)
        .expect("non-empty rows")
}

fn row_from_estimates(
    phi_s: Angle,
    phi_m: Angle,
    p: [ProbabilityEstimate; 5],
    counts: Option<[ContextCounts; 4]>,
) -> Result<SweepRow> {
    let [p_00, p_0a, p_a0, p_11, p_aa] = p;
    Ok(SweepRow {
        phi_s,
        phi_m_opt: phi_m,
        p_00,
        p_0a,
        p_a0,
        p_11,
        p_aa,
        k: contrast_k(p_aa, p_0a, p_a0, p_11)?,
        margin: inequality_margin(p_aa, p_0a, p_a0, p_11),
        counts,
    })
}

/// Suppression-relevant estimates from four counted contexts in fixture order.
pub fn estimates_from_counts(counts: &[ContextCounts; 4]) -> Result<[ProbabilityEstimate; 5]> {
    use Outcome::{Zero, One, A};
    Ok([
        probability_estimate(&counts[0], Zero, Zero)?,
        probability_estimate(&counts[1], Zero, A)?,
        probability_estimate(&counts[2], A, Zero)?,
        probability_estimate(&counts[0], One, One)?,
        probability_estimate(&counts[3], A, A)?,
    ])
}

fn exact_row(cfg: &SourceConfig, settings: &SweepSettings) -> Result<SweepRow> {
    let rho = noisy_state(cfg)?;
    let phi_m = balance_phi_m_for_state(&rho)?;
    let probs = MeasurementContext::all_four(phi_m).map(|c| context_probabilities_unchecked(&rho, c));
    let pick = |i: usize, x: Outcome, y: Outcome| {
        let v = probs[i].get(x, y).expect("outcome in context");
        ProbabilityEstimate::predicted(v, settings.budget)
    };
    use Outcome::{Zero, One, A};
    let p = [
        pick(0, Zero, Zero),
        pick(1, Zero, A),
        pick(2, A, Zero),
        pick(0, One, One),
        pick(3, A, A),
    ];
    row_from_estimates(cfg.phi_s, phi_m, p, None)
}

fn counted_row(cfg: &SourceConfig, settings: &SweepSettings) -> Result<SweepRow> {
    let rho = noisy_state(cfg)?;
    let seed = setting_seed(settings.seed, cfg.phi_s);
    let guess = ideal_balance_closed_form(cfg.phi_s);
    let balance = balance_phi_m_probed(
        poisson_probe(&rho, settings.budget, seed),
        guess,
        settings.probe_step,
    )?;
    let phi_m = balance.phi_m;
    let mut out = Vec::with_capacity(4);
    for (i, ctx) in MeasurementContext::all_four(phi_m).iter().enumerate() {
        let probs = context_probabilities_unchecked(&rho, *ctx);
        // streams 0..3 belong to the probes
        let mut rng = stream_rng(seed, 16 + i as u64);
        out.push(sample_context(&probs, settings.budget, settings.duration_s, &mut rng));
    }
    let counts: [ContextCounts; 4] = out.try_into().expect("four contexts");
    let p = estimates_from_counts(&counts)?;
    row_from_estimates(cfg.phi_s, phi_m, p, Some(counts))
}

/// Run the balance and the four-context evaluation at every grid point.
pub fn sweep_phi_s(
    grid: &[Angle],
    template: &SourceConfig,
    settings: &SweepSettings,
) -> Result<ProtocolReport> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    template.validate()?;
    if !(settings.budget > 0.0 && settings.budget.is_finite()) {
        return Err(Error::OutOfRange {
            name: "budget",
            value: settings.budget,
            range: "(0, inf)",
        });
    }
    let rows = grid
        .par_iter()
        .map(|&phi_s| {
            let cfg = template.with_phi_s(phi_s);
            match settings.mode {
                Mode::Exact => exact_row(&cfg, settings),
                Mode::Counted => counted_row(&cfg, settings),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let best_phi_s = select_best(&rows, settings.criterion);
    Ok(ProtocolReport {
        rows,
        best_phi_s,
        criterion: settings.criterion,
        mode: settings.mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::calibrated_source;
    use crate::stats::{mean, std_dev};

    fn deg(x: f64) -> Angle {
        Angle::from_degrees(x)
    }

    /// Independent oracle: solve the amplitude balance
    /// `cos(phi_S) cos^2 - sin(phi_S) sin^2 = (cos(phi_S) + sin(phi_S)) sin cos`
    /// by dense bisection on `phi_M`.
    fn amplitude_balance_oracle(phi_s: f64) -> f64 {
        let (s, c) = phi_s.to_radians().sin_cos();
        let g = |m: f64| {
            let (sm, cm) = m.to_radians().sin_cos();
            c * cm * cm - s * sm * sm - (c + s) * sm * cm
        };
        let (mut lo, mut hi) = (0.0, 60.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(lo).signum() == g(mid).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn exact_balance_examples() {
        let at = |x: f64| balance_phi_m_exact(&SourceConfig::ideal(deg(x))).unwrap().degrees();
        assert!((at(0.0) - 45.0).abs() < 1e-9);
        assert!((at(45.0) - 22.5).abs() < 1e-9);
        assert!((at(22.5) - 31.0).abs() < 0.05);
        for phi_s in TABLE2_GRID {
            let oracle = amplitude_balance_oracle(phi_s);
            assert!((at(phi_s) - oracle).abs() < 1e-8, "{phi_s}");
            assert!((ideal_balance_closed_form(deg(phi_s)).degrees() - oracle).abs() < 1e-10);
        }
    }

    #[test]
    fn exact_balance_degenerate_state() {
        let cfg = SourceConfig {
            phi_s: deg(20.0),
            white_noise_w: 1.0,
            hv_dephasing_d: 0.0,
        };
        assert_eq!(balance_phi_m_exact(&cfg), Err(Error::DegenerateState));
    }

    #[test]
    fn balance_and_suppression_properties() {
        for i in 0..=90 {
            let phi_s = deg(i as f64 * 0.5);
            let rho = noisy_state(&SourceConfig::ideal(phi_s)).unwrap();
            let phi_m = balance_phi_m_for_state(&rho).unwrap();
            let ff = context_probabilities_unchecked(&rho, MeasurementContext::new(Sides::FF, phi_m));
            assert!((ff.p[0] - ff.p[1]).abs() < 1e-10);
            assert!((ff.p[0] - ff.p[2]).abs() < 1e-10);
            let fw = context_probabilities_unchecked(&rho, MeasurementContext::new(Sides::FW, phi_m));
            let wf = context_probabilities_unchecked(&rho, MeasurementContext::new(Sides::WF, phi_m));
            assert!(fw.get(Outcome::Zero, Outcome::A).unwrap() < 1e-12);
            assert!(wf.get(Outcome::A, Outcome::Zero).unwrap() < 1e-12);
        }
    }

    #[test]
    fn balanced_angle_decreases_monotonically() {
        let mut last = f64::INFINITY;
        for i in 0..=450 {
            let phi_m = balance_phi_m_exact(&SourceConfig::ideal(deg(i as f64 * 0.1)))
                .unwrap()
                .degrees();
            assert!(phi_m < last, "not decreasing at {}", i as f64 * 0.1);
            last = phi_m;
        }
    }

    #[test]
    fn ideal_optimum_gives_unit_contrast() {
        let star = ideal_phi_s_star();
        assert!((star.degrees() - 20.905).abs() < 1e-3);
        let (l1, _) = crate::qstate::schmidt_coefficients(&crate::source::ideal_state(star));
        let (h1, _) = crate::qstate::schmidt_coefficients(&crate::optics::hardy_target_state(deg(0.0)));
        assert!((l1 - h1).abs() < 1e-10);
        let report = sweep_phi_s(&[star], &SourceConfig::ideal(deg(0.0)), &SweepSettings::default())
            .unwrap();
        let row = &report.rows[0];
        assert!((row.k.value - 1.0).abs() < 1e-9);
        assert!((row.p_aa.value - 1.0 / 12.0).abs() < 1e-9);
        assert!(row.suppressed() < 3e-12);
    }

    #[test]
    fn product_state_contrast_is_minus_one() {
        let report =
            sweep_phi_s(&[deg(0.0)], &SourceConfig::ideal(deg(0.0)), &SweepSettings::default())
                .unwrap();
        let row = &report.rows[0];
        assert!((row.phi_m_opt.degrees() - 45.0).abs() < 1e-9);
        assert!(row.p_aa.value < 1e-20);
        assert_eq!(row.k.value, -1.0);
    }

    #[test]
    fn probed_balance_on_expected_counts() {
        let exact = balance_phi_m_exact(&SourceConfig::ideal(deg(22.5))).unwrap();
        let rho = noisy_state(&SourceConfig::ideal(deg(22.5))).unwrap();
        let b = balance_phi_m_probed(expected_probe(&rho, 1e6), deg(31.0), deg(3.0)).unwrap();
        assert!((b.phi_m - exact).degrees().abs() < 0.3);
        assert!(!b.extrapolated);
        assert_eq!(b.probes.len(), 3);
    }

    #[test]
    fn probed_balance_symmetric_data_returns_guess() {
        // lines cross exactly at the shared middle point
        let probe = |phi: Angle| {
            let x = phi.degrees() - 30.0;
            ProbeResult {
                phi_m: phi,
                n_00: (1000.0 - 50.0 * x) as u64,
                n_01: (1000.0 + 50.0 * x) as u64,
            }
        };
        let b = balance_phi_m_probed(probe, deg(30.0), deg(2.0)).unwrap();
        assert!((b.phi_m.degrees() - 30.0).abs() < 1e-12);
    }

    #[test]
    fn probed_balance_errors_and_warning() {
        let flat = |phi: Angle| ProbeResult {
            phi_m: phi,
            n_00: 100,
            n_01: 200,
        };
        assert!(matches!(
            balance_phi_m_probed(flat, deg(30.0), deg(3.0)),
            Err(Error::NoIntersection { .. })
        ));
        assert!(balance_phi_m_probed(flat, deg(30.0), deg(0.0)).is_err());
        let far = |phi: Angle| {
            let x = phi.degrees();
            ProbeResult {
                phi_m: phi,
                n_00: (1000.0 + x) as u64,
                n_01: (1060.0 - x) as u64,
            }
        };
        let b = balance_phi_m_probed(far, deg(0.0), deg(1.0)).unwrap();
        assert!((b.phi_m.degrees() - 30.0).abs() < 1e-9);
        assert!(b.extrapolated);
    }

    #[test]
    fn probed_balance_with_poisson_noise() {
        let cfg = SourceConfig::ideal(deg(22.5));
        let exact = balance_phi_m_exact(&cfg).unwrap().degrees();
        let rho = noisy_state(&cfg).unwrap();
        let found: Vec<f64> = (0..100)
            .map(|seed| {
                balance_phi_m_probed(poisson_probe(&rho, 1e4, seed), deg(31.0), deg(3.0))
                    .unwrap()
                    .phi_m
                    .degrees()
            })
            .collect();
        let m = mean(&found);
        assert!((m - exact).abs() < 0.5, "mean {m}, spread {}", std_dev(&found));
        assert!(std_dev(&found) < 1.0);
    }

    #[test]
    fn noiseless_sweep_over_reference_grid() {
        let report =
            sweep_phi_s(&table2_grid(), &SourceConfig::ideal(deg(0.0)), &SweepSettings::default())
                .unwrap();
        assert_eq!(report.rows.len(), 9);
        for r in &report.rows {
            assert!(r.p_0a.value <= 1e-12 && r.p_a0.value <= 1e-12);
            let recomputed = (r.p_aa.value - r.suppressed()) / (r.p_aa.value + r.suppressed());
            assert!((r.k.value - recomputed).abs() < 1e-12);
        }
        // max-K on the coarse grid lands next to the ideal optimum
        assert_eq!(report.best_phi_s, deg(20.0));
        let star = ideal_phi_s_star().degrees();
        let fine: Vec<Angle> = (150..=260).map(|i| deg(i as f64 * 0.1)).collect();
        let settings = SweepSettings {
            criterion: Criterion::MinP11,
            ..SweepSettings::default()
        };
        let fine_report = sweep_phi_s(&fine, &SourceConfig::ideal(deg(0.0)), &settings).unwrap();
        assert!((fine_report.best_phi_s.degrees() - star).abs() <= 0.1);
    }

    #[test]
    fn noisy_sweep_plateau() {
        let cfg = calibrated_source(deg(0.0), 0.968, 0.935).unwrap();
        let report = sweep_phi_s(&table2_grid(), &cfg, &SweepSettings::default()).unwrap();
        let best = report.best_phi_s.degrees();
        assert!((20.0..=27.5).contains(&best), "{best}");
    }

    #[test]
    fn counted_sweep_is_deterministic() {
        let cfg = calibrated_source(deg(0.0), 0.968, 0.935).unwrap();
        let settings = SweepSettings {
            mode: Mode::Counted,
            seed: 7,
            ..SweepSettings::default()
        };
        let a = sweep_phi_s(&table2_grid(), &cfg, &settings).unwrap();
        let b = sweep_phi_s(&table2_grid(), &cfg, &settings).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        // a row does not depend on which other settings are swept
        let single = sweep_phi_s(&[deg(22.5)], &cfg, &settings).unwrap();
        assert_eq!(single.rows[0], a.rows[4]);
        let other = sweep_phi_s(&table2_grid(), &cfg, &SweepSettings { seed: 8, ..settings }).unwrap();
        assert_ne!(other.rows[4], a.rows[4]);
        for r in &a.rows {
            let c = r.counts.as_ref().unwrap();
            assert!(c.iter().all(|cc| cc.total() > 9000));
        }
    }

    #[test]
    fn sweep_rejects_bad_input() {
        let cfg = SourceConfig::ideal(deg(0.0));
        assert_eq!(
            sweep_phi_s(&[], &cfg, &SweepSettings::default()),
            Err(Error::EmptyGrid)
        );
        let bad = SweepSettings {
            budget: 0.0,
            ..SweepSettings::default()
        };
        assert!(sweep_phi_s(&[deg(1.0)], &cfg, &bad).is_err());
    }
}
