//! Collective variance, the improvement test and consistency grades.
//!
//! After a weighted-average influence process with social power allocation
//! `x`, the final collective estimate is `Σ x_i y_i(0)`. Its variance is the
//! quadratic form `E(x) = Σ x_i² σ_i²`. Without influence the collective
//! estimate is the plain average, whose variance is `E(1/n) = Σ σ_i² / n²`.

use crate::error::Result;
use crate::profile::{check_dim, check_tol, Allocation, VarianceProfile, DEFAULT_TOL};

/// How an allocation compares to the uniform (no-influence) baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    Improves,
    Undermines,
    /// Within tolerance of the baseline.
    Neutral,
}

/// Alignment between social power and accuracy, from weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Consistency {
    NotOrdering,
    Ordering,
    Gap,
    Maximal,
}

impl Membership {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Improves => "Improves",
            Self::Undermines => "Undermines",
            Self::Neutral => "Neutral",
        }
    }
}

impl Consistency {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::NotOrdering => "NotOrdering",
            Self::Ordering => "Ordering",
            Self::Gap => "Gap",
            Self::Maximal => "Maximal",
        }
    }
}

/// Full classification of one allocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionVerdict {
    pub membership: Membership,
    pub collective_variance: f64,
    pub baseline_variance: f64,
    pub consistency: Consistency,
}

/// `Σ z_i² σ_i²`.
pub fn collective_variance(z: &Allocation, s: &VarianceProfile) -> Result<f64> {
    check_dim(s.len(), z.len())?;
    Ok(quadratic_form(z.weights(), s.values()))
}

pub(crate) fn quadratic_form(z: &[f64], s: &[f64]) -> f64 {
    z.iter().zip(s).map(|(w, v)| w * w * v).sum()
}

/// Variance of the plain average of the initial estimates, `Σ σ_i² / n²`.
pub fn baseline_variance(s: &VarianceProfile) -> f64 {
    let n = s.len() as f64;
    s.sum() / (n * n)
}

pub(crate) fn membership_of(value: f64, baseline: f64, tol: f64) -> Membership {
    if value < baseline - tol {
        Membership::Improves
    } else if value > baseline + tol {
        Membership::Undermines
    } else {
        Membership::Neutral
    }
}

pub fn classify_membership(x: &Allocation, s: &VarianceProfile, tol: f64) -> Result<Membership> {
    check_tol(tol)?;
    let e = collective_variance(x, s)?;
    Ok(membership_of(e, baseline_variance(s), tol))
}

/// Strongest consistency grade satisfied by `x`.
///
/// Inequalities are compared with `DEFAULT_TOL` slack; see
/// [`classify_consistency_with_tol`] to widen it.
pub fn classify_consistency(x: &Allocation, s: &VarianceProfile) -> Result<Consistency> {
    classify_consistency_with_tol(x, s, DEFAULT_TOL)
}

/// Consistency grade with an explicit absolute slack `tol`.
///
/// * Ordering: `x_i <= x_j` whenever `σ_i² >= σ_j²`, and `x` is the uniform
///   point only if the variances are uniform.
/// * Gap: ordering plus `x_i σ_i² >= x_j σ_j²` whenever `σ_i² >= σ_j²`.
/// * Maximal: `x` interior and `x_i σ_i² = x_j σ_j²` for all pairs, which is
///   the ratio condition `x_i / x_j = σ_j² / σ_i²`.
pub fn classify_consistency_with_tol(x: &Allocation, s: &VarianceProfile, tol: f64) -> Result<Consistency> {
    check_dim(s.len(), x.len())?;
    check_tol(tol)?;
    let xs = x.weights();
    let vs = s.values();
    let n = xs.len();

    if x.is_uniform(tol) && !s.is_uniform() {
        return Ok(Consistency::NotOrdering);
    }
    let mut gap = true;
    for i in 0..n {
        for j in 0..n {
            if i == j || vs[i] < vs[j] {
                continue;
            }
            if xs[i] > xs[j] + tol {
                return Ok(Consistency::NotOrdering);
            }
            if xs[i] * vs[i] < xs[j] * vs[j] - tol {
                gap = false;
            }
        }
    }
    if !gap {
        return Ok(Consistency::Ordering);
    }
    let weighted: alloc::vec::Vec<f64> = xs.iter().zip(vs).map(|(w, v)| w * v).collect();
    let hi = weighted.iter().copied().fold(f64::MIN, f64::max);
    let lo = weighted.iter().copied().fold(f64::MAX, f64::min);
    if x.is_interior() && hi - lo <= tol * hi.max(1.0) {
        Ok(Consistency::Maximal)
    } else {
        Ok(Consistency::Gap)
    }
}

/// The variance-minimising allocation `x*_i ∝ 1/σ_i²` and its variance
/// `E* = 1 / Σ (1/σ_i²)`.
pub fn optimal_allocation(s: &VarianceProfile) -> (Allocation, f64) {
    let precision: f64 = s.values().iter().map(|v| 1.0 / v).sum();
    let weights = s.values().iter().map(|v| (1.0 / v) / precision).collect();
    let x = Allocation::new(weights).expect("inverse-variance weights lie on the simplex");
    (x, 1.0 / precision)
}

/// Whether gap-consistency certifies that `x` improves the wisdom. Requires
/// non-uniform variances.
pub fn gap_improvement_check(x: &Allocation, s: &VarianceProfile) -> Result<bool> {
    let grade = classify_consistency(x, s)?;
    Ok(!s.is_uniform() && grade >= Consistency::Gap)
}

/// Membership and consistency in one call.
pub fn classify(x: &Allocation, s: &VarianceProfile, tol: f64) -> Result<RegionVerdict> {
    check_tol(tol)?;
    let collective_variance = collective_variance(x, s)?;
    let baseline_variance = baseline_variance(s);
    Ok(RegionVerdict {
        membership: membership_of(collective_variance, baseline_variance, tol),
        collective_variance,
        baseline_variance,
        consistency: classify_consistency_with_tol(x, s, tol)?,
    })
}
