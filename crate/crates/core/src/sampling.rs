//! Random points of the simplex and of its cells.

use alloc::vec::Vec;

use rand_core::RngCore;

use crate::orderings::PermutationOrdering;
use crate::profile::{Allocation, VarianceProfile};

/// Uniform double in `[0, 1)` from the top 53 bits of one `u64`.
pub fn unit_f64<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform point of the simplex (flat Dirichlet) from normalised
/// exponential spacings.
pub fn sample_simplex<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> Allocation {
    let e: Vec<f64> = (0..n).map(|_| -libm::log(1.0 - unit_f64(rng))).collect();
    Allocation::normalized(e).expect("exponential draws are positive")
}

/// Uniform point of the cell `Δ^τ`: a uniform simplex point sorted
/// descending and placed along `τ`.
pub fn sample_hypertriangle<R: RngCore + ?Sized>(rng: &mut R, tau: &PermutationOrdering) -> Allocation {
    let n = tau.len();
    let mut w = sample_simplex(rng, n).into_inner();
    w.sort_by(|a, b| b.total_cmp(a));
    let mut z = alloc::vec![0.0; n];
    for (k, &t) in tau.as_slice().iter().enumerate() {
        z[t] = w[k];
    }
    Allocation::new(z).expect("permuted simplex point")
}

/// Random allocation with ratios `1 <= z_i / z_{i+1} <= σ²_{i+1} / σ²_i`
/// along the ascending-variance ordering, each ratio drawn uniformly from its
/// interval. For non-uniform variances the result is gap-consistent almost
/// surely.
pub fn sample_gap_consistent<R: RngCore + ?Sized>(rng: &mut R, s: &VarianceProfile) -> Allocation {
    let (sorted, order) = s.sorted_ascending();
    let v = sorted.values();
    let n = v.len();
    let mut z = alloc::vec![1.0; n];
    for i in (0..n - 1).rev() {
        let hi = v[i + 1] / v[i];
        let ratio = 1.0 + (hi - 1.0) * unit_f64(rng);
        z[i] = ratio * z[i + 1];
    }
    let mut w = alloc::vec![0.0; n];
    for (k, &t) in order.as_slice().iter().enumerate() {
        w[t] = z[k];
    }
    Allocation::normalized(w).expect("positive weights")
}
