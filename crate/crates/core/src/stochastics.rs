//! Random initial estimates and Monte Carlo checks of the variance law.
//!
//! Draws come from a keyed generator: ChaCha8 seeded with the model seed,
//! stream = trial index, and individual `i` reading words `[4i, 4i + 4)`.
//! Any trial (or any single draw) can be regenerated independently, so
//! parallel evaluation reproduces the sequential result bit for bit.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::error::{Error, Result};
use crate::profile::{check_dim, Allocation, VarianceProfile, DEFAULT_TOL};
use crate::sampling::unit_f64;
use crate::wisdom::{classify_membership, collective_variance, optimal_allocation, Membership};

/// Fewest trials accepted by [`mc_collective_variance`].
pub const MIN_MC_TRIALS: usize = 1000;

/// Width of the Monte Carlo acceptance gate, in standard errors.
pub const GATE_SIGMAS: f64 = 4.0;

/// Shape of the estimate noise. Only the mean and variance enter the
/// variance law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distribution {
    Gaussian,
    /// Symmetric uniform on `μ ± √(3σ²)`.
    UniformMatched,
}

/// Initial estimates `y_i(0) = μ + ξ_i` with independent zero-mean noise of
/// variance `σ²_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateModel {
    pub mu: f64,
    pub sigma2: VarianceProfile,
    pub distribution: Distribution,
    pub seed: u64,
}

impl EstimateModel {
    pub fn new(mu: f64, sigma2: VarianceProfile, distribution: Distribution, seed: u64) -> Self {
        Self {
            mu,
            sigma2,
            distribution,
            seed,
        }
    }

    pub fn len(&self) -> usize {
        self.sigma2.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn trial_rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }

    /// Reads one draw for individual `i` from the current position, which
    /// must be word `4i`. Always consumes exactly four words.
    fn next_draw(&self, rng: &mut ChaCha8Rng, i: usize) -> f64 {
        let u1 = unit_f64(rng);
        let u2 = unit_f64(rng);
        let v = self.sigma2[i];
        let noise = match self.distribution {
            Distribution::Gaussian => {
                let radius = libm::sqrt(-2.0 * libm::log(1.0 - u1));
                radius * libm::cos(core::f64::consts::TAU * u2) * libm::sqrt(v)
            }
            Distribution::UniformMatched => libm::sqrt(3.0 * v) * (2.0 * u1 - 1.0),
        };
        self.mu + noise
    }

    /// `y_i(0)` in trial `trial`.
    pub fn draw(&self, trial: u64, i: usize) -> f64 {
        let mut rng = self.trial_rng(trial);
        rng.set_word_pos(4 * i as u128);
        self.next_draw(&mut rng, i)
    }

    /// All initial estimates of one trial.
    pub fn draw_trial(&self, trial: u64) -> Vec<f64> {
        let mut rng = self.trial_rng(trial);
        (0..self.len()).map(|i| self.next_draw(&mut rng, i)).collect()
    }

    /// `Σ x_i y_i(0)` in trial `trial`, the limit of the collective estimate.
    pub fn collective_estimate(&self, x: &Allocation, trial: u64) -> f64 {
        let mut rng = self.trial_rng(trial);
        x.weights()
            .iter()
            .enumerate()
            .map(|(i, w)| w * self.next_draw(&mut rng, i))
            .sum()
    }
}

/// `n_trials` rows of initial estimates, one per trial.
pub fn sample_initials(model: &EstimateModel, n_trials: usize) -> Vec<Vec<f64>> {
    (0..n_trials as u64).map(|t| model.draw_trial(t)).collect()
}

/// Monte Carlo estimate of the collective variance against its analytic
/// value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McReport {
    pub trials: usize,
    pub mu: f64,
    pub empirical_mean: f64,
    pub empirical_variance: f64,
    pub analytic_variance: f64,
    pub stderr_of_mean: f64,
    /// From the fourth central moment:
    /// `Var(s²) ≈ (m₄ - s⁴ (m - 3)/(m - 1)) / m`.
    pub stderr_of_variance: f64,
}

impl McReport {
    /// Summary of collective estimates `estimates` (at least two).
    pub fn from_estimates(estimates: &[f64], analytic_variance: f64, mu: f64) -> Self {
        let m = estimates.len();
        assert!(m >= 2, "at least two trials are needed");
        let mf = m as f64;
        let mean = estimates.iter().sum::<f64>() / mf;
        let (mut m2, mut m4) = (0.0, 0.0);
        for e in estimates {
            let d2 = (e - mean) * (e - mean);
            m2 += d2;
            m4 += d2 * d2;
        }
        let variance = m2 / (mf - 1.0);
        let m4 = m4 / mf;
        let var_of_var = ((m4 - variance * variance * (mf - 3.0) / (mf - 1.0)) / mf).max(0.0);
        Self {
            trials: m,
            mu,
            empirical_mean: mean,
            empirical_variance: variance,
            analytic_variance,
            stderr_of_mean: libm::sqrt(variance / mf),
            stderr_of_variance: libm::sqrt(var_of_var),
        }
    }

    /// `(empirical - analytic) / stderr` for the variance.
    pub fn variance_z(&self) -> f64 {
        (self.empirical_variance - self.analytic_variance) / self.stderr_of_variance
    }

    /// `(mean - μ) / stderr` for the mean.
    pub fn mean_z(&self) -> f64 {
        (self.empirical_mean - self.mu) / self.stderr_of_mean
    }

    pub fn variance_within_gate(&self) -> bool {
        self.variance_z().abs() <= GATE_SIGMAS
    }

    pub fn mean_within_gate(&self) -> bool {
        self.mean_z().abs() <= GATE_SIGMAS
    }

    pub fn passes(&self) -> bool {
        self.variance_within_gate() && self.mean_within_gate()
    }
}

/// Empirical variance of `Σ x_i y_i(0)` over trials `0..n_trials`.
pub fn mc_collective_variance(x: &Allocation, model: &EstimateModel, n_trials: usize) -> Result<McReport> {
    check_dim(model.len(), x.len())?;
    if n_trials < MIN_MC_TRIALS {
        return Err(Error::TooFewTrials {
            min: MIN_MC_TRIALS,
            actual: n_trials,
        });
    }
    let estimates: Vec<f64> = (0..n_trials as u64)
        .map(|t| model.collective_estimate(x, t))
        .collect();
    let analytic = collective_variance(x, &model.sigma2)?;
    Ok(McReport::from_estimates(&estimates, analytic, model.mu))
}

/// How the truth-convergence experiment assigns social power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AllocationRule {
    Uniform,
    /// `x ∝ 1/σ²`.
    Optimal,
    /// `x ∝ σ^{-2λ}` for `λ ∈ (0, 1]`: social power falls with variance but
    /// never faster than accuracy, which is gap-consistent.
    GapConsistent {
        lambda: f64,
    },
}

impl AllocationRule {
    pub fn allocate(&self, s: &VarianceProfile) -> Allocation {
        match *self {
            Self::Uniform => Allocation::uniform(s.len()).expect("n >= 2"),
            Self::Optimal => optimal_allocation(s).0,
            Self::GapConsistent { lambda } => {
                Allocation::normalized(s.values().iter().map(|v| libm::pow(*v, -lambda)).collect())
                    .expect("positive weights")
            }
        }
    }
}

/// Variance profiles bounded by `β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarianceFamily {
    /// Every variance equals `β`.
    Constant,
    /// Independent `σ²_i = β (1 - u_i)`, `u_i` uniform on `[0, 1)`, drawn
    /// from ChaCha8 keyed by `seed` with stream `n`.
    Random { seed: u64 },
}

impl VarianceFamily {
    pub fn profile(&self, beta: f64, n: usize) -> Result<VarianceProfile> {
        match *self {
            Self::Constant => VarianceProfile::uniform(n, beta),
            Self::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(n as u64);
                VarianceProfile::new((0..n).map(|_| beta * (1.0 - unit_f64(&mut rng))).collect())
            }
        }
    }
}

/// Setup of the growing-crowd experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthExperiment {
    pub beta: f64,
    pub n_grid: Vec<usize>,
    pub family: VarianceFamily,
    pub rule: AllocationRule,
    pub distribution: Distribution,
    pub trials: usize,
    /// Threshold of the exceedance probability `P(|y_col - μ| > ε)`.
    pub epsilon: f64,
    pub mu: f64,
    pub seed: u64,
}

impl TruthExperiment {
    pub fn new(beta: f64, n_grid: Vec<usize>, family: VarianceFamily, rule: AllocationRule) -> Self {
        Self {
            beta,
            n_grid,
            family,
            rule,
            distribution: Distribution::Gaussian,
            trials: 10_000,
            epsilon: 0.1,
            mu: 0.0,
            seed: 0,
        }
    }
}

/// One group size of the experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruthRow {
    pub n: usize,
    pub analytic_variance: f64,
    /// `β / n`, the bound on the baseline variance.
    pub bound: f64,
    pub membership: Membership,
    pub median_abs_error: f64,
    pub q90_abs_error: f64,
    pub q99_abs_error: f64,
    pub exceedance: f64,
}

fn nearest_rank(sorted: &[f64], q: f64) -> f64 {
    let k = libm::ceil(q * sorted.len() as f64) as usize;
    sorted[k.clamp(1, sorted.len()) - 1]
}

/// For each `n`, the analytic collective variance of the rule's allocation
/// and the distribution of `|y_col - μ|` over trials.
///
/// Fails with the offending `n` when a variance exceeds `β` or when a
/// non-uniform rule does not improve the wisdom.
pub fn truth_convergence_experiment(exp: &TruthExperiment) -> Result<Vec<TruthRow>> {
    if exp.trials < 2 {
        return Err(Error::TooFewTrials {
            min: 2,
            actual: exp.trials,
        });
    }
    let mut rows = Vec::with_capacity(exp.n_grid.len());
    for &n in &exp.n_grid {
        let s = exp.family.profile(exp.beta, n)?;
        if let Some(&value) = s.values().iter().find(|&&v| v > exp.beta) {
            return Err(Error::VarianceAboveBound {
                value,
                beta: exp.beta,
            });
        }
        let x = exp.rule.allocate(&s);
        let membership = classify_membership(&x, &s, DEFAULT_TOL)?;
        if exp.rule != AllocationRule::Uniform && membership != Membership::Improves {
            return Err(Error::RuleDoesNotImprove { n });
        }
        let model = EstimateModel::new(
            exp.mu,
            s.clone(),
            exp.distribution,
            exp.seed.wrapping_add(n as u64),
        );
        let mut errors: Vec<f64> = (0..exp.trials as u64)
            .map(|t| (model.collective_estimate(&x, t) - exp.mu).abs())
            .collect();
        errors.sort_by(f64::total_cmp);
        let exceed = errors.iter().filter(|&&e| e > exp.epsilon).count();
        rows.push(TruthRow {
            n,
            analytic_variance: collective_variance(&x, &s)?,
            bound: exp.beta / n as f64,
            membership,
            median_abs_error: nearest_rank(&errors, 0.5),
            q90_abs_error: nearest_rank(&errors, 0.9),
            q99_abs_error: nearest_rank(&errors, 0.99),
            exceedance: exceed as f64 / exp.trials as f64,
        });
    }
    Ok(rows)
}
