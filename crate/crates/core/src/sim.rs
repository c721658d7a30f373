//! Poisson coincidence-count simulation.
//!
//! Each context draws from its own random stream, derived from the plan seed
//! and the context index, so that contexts can be sampled in any order or in
//! parallel with identical results.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::metrics::ContextCounts;
use crate::optics::{context_probabilities, ContextProbabilities, MeasurementContext};
use crate::qstate::DensityMatrix2Q;

pub type StreamRng = ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcquisitionPlan {
    pub contexts: Vec<MeasurementContext>,
    pub mean_pairs_per_context: f64,
    pub duration_s: f64,
    pub seed: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Counter-based key: `hash(seed, index)`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ splitmix64(index.wrapping_add(0x5851_f42d_4c95_7f2d)))
}

/// Random stream for one (seed, index) pair.
pub fn stream_rng(seed: u64, index: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, index))
}

/// Seed for everything simulated at one source setting.
pub fn setting_seed(seed: u64, phi_s: Angle) -> u64 {
    derive_seed(seed, phi_s.degrees().to_bits())
}

/// Poisson count with mean `mean` (`0` for a vanishing mean).
pub fn poisson_count(mean: f64, rng: &mut StreamRng) -> u64 {
    if !(mean > 0.0) {
        return 0;
    }
    let dist = Poisson::new(mean).expect("positive finite mean");
    dist.sample(rng) as u64
}

/// Four independent Poisson counts with means `mean_total * p_i`.
pub fn sample_context(
    probs: &ContextProbabilities,
    mean_total: f64,
    duration_s: f64,
    rng: &mut StreamRng,
) -> ContextCounts {
    let n = probs.p.map(|p| poisson_count(mean_total * p, rng));
    ContextCounts::measured(probs.context, n, duration_s)
}

pub fn run_plan(plan: &AcquisitionPlan, state: &DensityMatrix2Q) -> Result<Vec<ContextCounts>> {
    if !(plan.mean_pairs_per_context > 0.0 && plan.mean_pairs_per_context.is_finite()) {
        return Err(Error::OutOfRange {
            name: "mean_pairs_per_context",
            value: plan.mean_pairs_per_context,
            range: "(0, inf)",
        });
    }
    let probs = plan
        .contexts
        .iter()
        .map(|&ctx| context_probabilities(state, ctx))
        .collect::<Result<Vec<_>>>()?;
    Ok(probs
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let mut rng = stream_rng(plan.seed, i as u64);
            sample_context(p, plan.mean_pairs_per_context, plan.duration_s, &mut rng)
        })
        .collect())
}
