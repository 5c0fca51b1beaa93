//! Variance profiles and social-power allocations.

use alloc::vec::Vec;
use core::ops::Index;

use crate::error::{Error, Result};
use crate::orderings::PermutationOrdering;

/// Absolute tolerance for strict inequalities and the uniform-point test.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Tolerance on the sum of an allocation.
pub const SUM_TOL: f64 = 1e-12;

/// Per-individual variances of the initial estimates.
///
/// Accuracy is the reciprocal of variance. Every entry is finite and strictly
/// positive and the group has at least two members.
#[derive(Debug, Clone, PartialEq)]
pub struct VarianceProfile {
    values: Vec<f64>,
}

impl VarianceProfile {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::GroupTooSmall(values.len()));
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::InvalidVariance { index, value });
        }
        Ok(Self { values })
    }

    /// `n` copies of `value`.
    pub fn uniform(n: usize, value: f64) -> Result<Self> {
        Self::new(alloc::vec![value; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::MIN, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::MAX, f64::min)
    }

    /// Whether all variances are equal, i.e. the profile lies in the span of
    /// the all-ones vector. Compared exactly: inputs are literals.
    pub fn is_uniform(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    pub fn is_ascending(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// Ordering that sorts the profile ascending, ties broken by index.
    pub fn ascending_order(&self) -> PermutationOrdering {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]));
        PermutationOrdering::from_zero_based(idx).expect("sorted indices form a permutation")
    }

    /// The relabelled profile `(σ²_{τ_1}, ..., σ²_{τ_n})`.
    pub fn relabel(&self, tau: &PermutationOrdering) -> Result<Self> {
        check_dim(self.len(), tau.len())?;
        Ok(Self {
            values: tau.apply(&self.values),
        })
    }

    /// Ascending copy together with the ordering that produced it.
    pub fn sorted_ascending(&self) -> (Self, PermutationOrdering) {
        let order = self.ascending_order();
        let sorted = Self {
            values: order.apply(&self.values),
        };
        (sorted, order)
    }
}

impl Index<usize> for VarianceProfile {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// A point of the probability simplex: the weight of each individual's
/// initial estimate in the final collective estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation {
    weights: Vec<f64>,
}

impl Allocation {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::GroupTooSmall(weights.len()));
        }
        if let Some((index, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w >= 0.0))
        {
            return Err(Error::NegativeWeight { index, value });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::NotNormalized(sum));
        }
        Ok(Self { weights })
    }

    /// Scales nonnegative weights onto the simplex.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w >= 0.0))
        {
            return Err(Error::NegativeWeight { index, value });
        }
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0) {
            return Err(Error::NotNormalized(sum));
        }
        Self::new(weights.into_iter().map(|w| w / sum).collect())
    }

    /// The barycentre `1_n / n`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::GroupTooSmall(n));
        }
        Ok(Self {
            weights: alloc::vec![1.0 / n as f64; n],
        })
    }

    /// All power to individual `i`.
    pub fn vertex(n: usize, i: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::GroupTooSmall(n));
        }
        if i >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: i + 1,
            });
        }
        let mut weights = alloc::vec![0.0; n];
        weights[i] = 1.0;
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_interior(&self) -> bool {
        self.weights.iter().all(|&w| w > 0.0)
    }

    /// Whether every entry is within `tol` of `1/n`.
    pub fn is_uniform(&self, tol: f64) -> bool {
        let target = 1.0 / self.len() as f64;
        self.weights.iter().all(|&w| (w - target).abs() <= tol)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.weights
    }
}

impl Index<usize> for Allocation {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.weights[i]
    }
}

pub(crate) fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}
