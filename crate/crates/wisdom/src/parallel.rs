//! Rayon versions of the embarrassingly parallel loops in `wisdom-core`.
//!
//! Results are collected in index order and reduced sequentially, so each
//! function returns exactly what its sequential counterpart returns.

use rayon::prelude::*;
use wisdom_core::region::{classify_point, simplex_lattice, RegionMap};
use wisdom_core::stochastics::{EstimateModel, McReport, MIN_MC_TRIALS};
use wisdom_core::{
    baseline_variance, collective_variance, optimal_allocation, Allocation, Error, VarianceProfile,
};

/// Parallel [`wisdom_core::stochastics::mc_collective_variance`].
pub fn mc_collective_variance(
    x: &Allocation,
    model: &EstimateModel,
    n_trials: usize,
) -> wisdom_core::Result<McReport> {
    if x.len() != model.len() {
        return Err(Error::DimensionMismatch {
            expected: model.len(),
            actual: x.len(),
        });
    }
    if n_trials < MIN_MC_TRIALS {
        return Err(Error::TooFewTrials {
            min: MIN_MC_TRIALS,
            actual: n_trials,
        });
    }
    let estimates: Vec<f64> = (0..n_trials as u64)
        .into_par_iter()
        .map(|t| model.collective_estimate(x, t))
        .collect();
    let analytic = collective_variance(x, &model.sigma2)?;
    Ok(McReport::from_estimates(&estimates, analytic, model.mu))
}

/// Parallel [`wisdom_core::region::region_map`].
pub fn region_map(s: &VarianceProfile, resolution: usize) -> wisdom_core::Result<RegionMap> {
    let points = simplex_lattice(s.len(), resolution)?
        .into_par_iter()
        .map(|k| classify_point(k, resolution, s))
        .collect::<wisdom_core::Result<Vec<_>>>()?;
    let (optimum, optimal_variance) = optimal_allocation(s);
    Ok(RegionMap {
        sigma2: s.clone(),
        resolution,
        baseline: baseline_variance(s),
        points,
        optimum,
        optimal_variance,
    })
}
