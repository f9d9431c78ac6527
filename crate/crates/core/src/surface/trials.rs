//! Monte Carlo logical-error-rate estimation, the d = 3 exhaustive oracle,
//! the union bound, and threshold estimation from curve crossings.
//!
//! Statistics are plain `f64`: they summarize Bernoulli counts, so scalar
//! genericity would buy nothing.

use super::decode::{decode_mwpm, is_logical_failure, sample_errors, syndrome_of, ErrorChain, Syndrome};
use super::lattice::SurfaceLattice;
use crate::error::{Error, Result};
use crate::seed::{child_rng, derive_seed};
use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq)]
pub struct TrialStats {
    pub d: usize,
    pub epsilon: f64,
    pub trials: usize,
    pub failures: usize,
    pub p_logical: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

/// Wilson score interval at 95% (z = 1.959964); well-behaved at 0 failures.
pub fn wilson_interval(failures: usize, trials: usize) -> (f64, f64) {
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = (z / denom) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // Clamp to [0, 1] and force containment of p against rounding at 0 or n.
    (
        (center - half).max(0.0).min(p),
        (center + half).min(1.0).max(p),
    )
}

fn run_one_trial(lat: &SurfaceLattice, eps: f64, seed: u64, trial: u64) -> Result<bool> {
    let mut rng = child_rng(seed, trial);
    let chain = sample_errors(lat, eps, &mut rng)?;
    let syn = syndrome_of(lat, &chain);
    let correction = decode_mwpm(lat, &syn);
    let residual = chain.xor(&correction);
    is_logical_failure(lat, &residual)
}

/// Sample → syndrome → decode → failure check, `trials` times. Trials run in
/// parallel; each owns the RNG derived from (seed, trial), so the outcome is
/// bit-identical regardless of worker count.
pub fn run_trials(lat: &SurfaceLattice, eps: f64, trials: usize, seed: u64) -> Result<TrialStats> {
    if trials < 1 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    let failures = (0..trials as u64)
        .into_par_iter()
        .map(|t| run_one_trial(lat, eps, seed, t).map(usize::from))
        .try_reduce(|| 0usize, |a, b| Ok(a + b))?;
    let p_logical = failures as f64 / trials as f64;
    let (ci_low, ci_high) = wilson_interval(failures, trials);
    Ok(TrialStats {
        d: lat.d(),
        epsilon: eps,
        trials,
        failures,
        p_logical,
        ci_low,
        ci_high,
        seed,
    })
}

/// Exact logical-failure probability for d = 3 by enumerating all 2¹³ error
/// patterns, with the same decoder and tie-breaking as [`run_trials`].
pub fn exhaustive_logical_rate(lat: &SurfaceLattice, eps: f64) -> Result<f64> {
    if lat.d() != 3 {
        return Err(Error::InvalidDistance(lat.d()));
    }
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidArgument(format!(
            "error probability {eps} outside [0, 1]"
        )));
    }
    let n = lat.n_edges();
    // Cache corrections per syndrome: far fewer syndromes than patterns.
    let mut cache: std::collections::HashMap<Vec<usize>, ErrorChain> =
        std::collections::HashMap::new();
    let mut rate = 0.0f64;
    for pattern in 0..1usize << n {
        let chain = ErrorChain {
            flipped: (0..n).map(|e| pattern >> e & 1 == 1).collect(),
        };
        let syn = syndrome_of(lat, &chain);
        let correction = cache
            .entry(syn.anyons.clone())
            .or_insert_with(|| decode_mwpm(lat, &Syndrome { anyons: syn.anyons.clone() }))
            .clone();
        let residual = chain.xor(&correction);
        if is_logical_failure(lat, &residual)? {
            let w = chain.weight() as i32;
            rate += eps.powi(w) * (1.0 - eps).powi(n as i32 - w);
        }
    }
    Ok(rate)
}

/// The paper's union bound: d Σ_{ℓ=d}^{n} (36ε)^{ℓ/2}. Meaningful only for
/// ε < 1/36; computed regardless.
pub fn union_bound(d: usize, eps: f64) -> f64 {
    let n = d * d + (d - 1) * (d - 1);
    let base = (36.0 * eps).sqrt();
    let mut sum = 0.0f64;
    for l in d..=n {
        sum += base.powi(l as i32);
    }
    d as f64 * sum
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairCrossing {
    pub d_low: usize,
    pub d_high: usize,
    pub epsilon: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdEstimate {
    /// Mean of the per-pair crossings.
    pub epsilon0: f64,
    /// Half the spread (max − min)/2 across pairs; 0 with a single pair.
    pub uncertainty: f64,
    pub crossings: Vec<PairCrossing>,
    /// The underlying Monte Carlo curves, row per (d, ε) point.
    pub curves: Vec<TrialStats>,
}

fn logit(p: f64, trials: usize) -> f64 {
    // Clamp away from {0, 1} so empty/full cells stay finite.
    let floor = 0.5 / trials as f64;
    let p = p.clamp(floor, 1.0 - floor);
    (p / (1.0 - p)).ln()
}

/// Locate the accuracy threshold: for each adjacent distance pair, find where
/// the p_logical(ε) curves cross by linear interpolation of the log-odds
/// difference across the ε grid.
pub fn threshold_estimate(
    ds: &[usize],
    eps_grid: &[f64],
    trials_per_point: usize,
    seed: u64,
) -> Result<ThresholdEstimate> {
    if ds.len() < 2 {
        return Err(Error::InvalidArgument("need at least two distances".into()));
    }
    if eps_grid.len() < 4 {
        return Err(Error::InvalidArgument(
            "need at least four grid points spanning the crossing".into(),
        ));
    }
    let mut curves: Vec<TrialStats> = Vec::with_capacity(ds.len() * eps_grid.len());
    for (di, &d) in ds.iter().enumerate() {
        let lat = SurfaceLattice::build(d)?;
        for (ei, &eps) in eps_grid.iter().enumerate() {
            let point_seed = derive_seed(seed, (di * eps_grid.len() + ei) as u64);
            curves.push(run_trials(&lat, eps, trials_per_point, point_seed)?);
        }
    }
    let mut crossings = Vec::new();
    for pair in ds.windows(2) {
        let (d1, d2) = (pair[0], pair[1]);
        let row = |d: usize| -> &[TrialStats] {
            let di = ds.iter().position(|&x| x == d).unwrap();
            &curves[di * eps_grid.len()..(di + 1) * eps_grid.len()]
        };
        let diff: Vec<f64> = row(d1)
            .iter()
            .zip(row(d2))
            .map(|(a, b)| {
                logit(b.p_logical, trials_per_point) - logit(a.p_logical, trials_per_point)
            })
            .collect();
        // Below threshold the larger code is better (diff < 0); the crossing
        // is the first sign change.
        for i in 0..diff.len() - 1 {
            if diff[i] < 0.0 && diff[i + 1] >= 0.0 {
                let frac = -diff[i] / (diff[i + 1] - diff[i]);
                crossings.push(PairCrossing {
                    d_low: d1,
                    d_high: d2,
                    epsilon: eps_grid[i] + frac * (eps_grid[i + 1] - eps_grid[i]),
                });
                break;
            }
        }
    }
    if crossings.is_empty() {
        return Err(Error::NoCrossing);
    }
    let mean = crossings.iter().map(|c| c.epsilon).sum::<f64>() / crossings.len() as f64;
    let max = crossings.iter().map(|c| c.epsilon).fold(f64::MIN, f64::max);
    let min = crossings.iter().map(|c| c.epsilon).fold(f64::MAX, f64::min);
    Ok(ThresholdEstimate {
        epsilon0: mean,
        uncertainty: (max - min) / 2.0,
        crossings,
        curves,
    })
}
