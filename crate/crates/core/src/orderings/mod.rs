//! Orderings of social power and the hypertriangles they name.
//!
//! The `n!` hyperplanes-separated cells of the simplex are indexed by
//! permutations `τ`: the cell `Δ^τ` holds every non-uniform allocation with
//! `z_{τ_1} >= z_{τ_2} >= ... >= z_{τ_n}`. A whole cell improves the wisdom
//! exactly when the prefix condition
//!
//! ```text
//! (1/i²) Σ_{r<=i} σ²_{τ_r} < (1/n²) Σ_j σ²_j     for every i in 1..n-1
//! ```
//!
//! holds. [`mpg`] finds every such `τ` without visiting all `n!` of them in
//! favourable cases, and [`enumerate_improving_orderings`] is the brute-force
//! reference it is checked against.

mod exact;
mod heap;
mod mpg;

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{FromPrimitive, Num};

use crate::error::{Error, Result};
use crate::profile::{check_dim, Allocation, VarianceProfile, DEFAULT_TOL};

pub use exact::{parse_decimal, ExactProfile};
pub use heap::{heap_permutations, next_lexicographic};
pub use mpg::{mpg, MpgState};

/// Largest group size the brute-force enumeration accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 9;

/// Arithmetic the ordering conditions can be evaluated in: `f64`, or exact
/// rationals via [`ExactProfile`].
pub trait Scalar: Clone + PartialOrd + Num + FromPrimitive {}

impl<T: Clone + PartialOrd + Num + FromPrimitive> Scalar for T {}

pub(crate) fn int<T: Scalar>(k: usize) -> T {
    T::from_usize(k).expect("small integers are representable")
}

pub(crate) fn total<T: Scalar>(values: &[T]) -> T {
    values.iter().cloned().fold(T::zero(), |a, b| a + b)
}

/// First prefix length `i` (1-based) at which the prefix condition fails for
/// `τ`, if any. The comparison `n² Σ_{r<=i} σ²_{τ_r} < i² Σ σ²` is the
/// condition with denominators cleared.
pub(crate) fn first_violation<T: Scalar>(values: &[T], tau: &[usize]) -> Option<usize> {
    let n = values.len();
    let sum = total(values);
    let n2: T = int(n * n);
    let mut acc = T::zero();
    for i in 1..n {
        acc = acc + values[tau[i - 1]].clone();
        if !(n2.clone() * acc.clone() < int::<T>(i * i) * sum.clone()) {
            return Some(i);
        }
    }
    None
}

/// A permutation of the individuals, stored 0-based.
///
/// Displayed and parsed 1-based. `reversed` is the ordering written
/// `τ^{-1} = (τ_n, ..., τ_1)`: the cell with the opposite ranking.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermutationOrdering {
    tau: Vec<usize>,
}

impl PermutationOrdering {
    pub fn from_zero_based(tau: Vec<usize>) -> Result<Self> {
        let n = tau.len();
        let mut seen = vec![false; n];
        for &t in &tau {
            if t >= n || seen[t] {
                return Err(Error::InvalidPermutation(tau.iter().map(|t| t + 1).collect()));
            }
            seen[t] = true;
        }
        Ok(Self { tau })
    }

    pub fn from_one_based(tau: &[usize]) -> Result<Self> {
        if tau.contains(&0) {
            return Err(Error::InvalidPermutation(tau.to_vec()));
        }
        Self::from_zero_based(tau.iter().map(|t| t - 1).collect())
            .map_err(|_| Error::InvalidPermutation(tau.to_vec()))
    }

    pub fn identity(n: usize) -> Self {
        Self {
            tau: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.tau
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.tau.iter().map(|t| t + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.tau.iter().enumerate().all(|(i, &t)| i == t)
    }

    pub fn reversed(&self) -> Self {
        let mut tau = self.tau.clone();
        tau.reverse();
        Self { tau }
    }

    /// `(v_{τ_1}, ..., v_{τ_n})`.
    pub fn apply<T: Clone>(&self, v: &[T]) -> Vec<T> {
        self.tau.iter().map(|&t| v[t].clone()).collect()
    }

    /// Position pairs `(p, q)` with `p < q` and `τ_p > τ_q`.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                if self.tau[p] > self.tau[q] {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Maps an ordering of the positions `0..n` through `self`, i.e. the
    /// ordering `(self[σ_1], ..., self[σ_n])`. Used to translate orderings of
    /// a relabelled profile back to the original labels.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        check_dim(self.len(), inner.len())?;
        Ok(Self {
            tau: inner.tau.iter().map(|&i| self.tau[i]).collect(),
        })
    }
}

impl fmt::Display for PermutationOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, t) in self.tau.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", t + 1)?;
        }
        f.write_str(")")
    }
}

/// The hypertriangle an allocation falls in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HypertriangleCell {
    Ordering(PermutationOrdering),
    /// The barycentre, which belongs to no cell.
    Degenerate,
}

/// Cell of `x`: indices sorted by descending weight, ties by ascending index.
pub fn hypertriangle_of(x: &Allocation) -> HypertriangleCell {
    if x.is_uniform(DEFAULT_TOL) {
        return HypertriangleCell::Degenerate;
    }
    let w = x.weights();
    let mut idx: Vec<usize> = (0..w.len()).collect();
    idx.sort_by(|&a, &b| w[b].total_cmp(&w[a]));
    HypertriangleCell::Ordering(PermutationOrdering { tau: idx })
}

/// Whether `x` lies in `Δ^τ` (non-strict ordering, barycentre excluded).
pub fn in_hypertriangle(x: &Allocation, tau: &PermutationOrdering) -> Result<bool> {
    check_dim(x.len(), tau.len())?;
    if x.is_uniform(DEFAULT_TOL) {
        return Ok(false);
    }
    let z = tau.apply(x.weights());
    Ok(z.windows(2).all(|w| w[0] >= w[1]))
}

/// Whether ordering-consistency alone guarantees improvement for an ascending
/// profile: the prefix condition for the identity ordering.
pub fn ordering_sufficiency(s: &VarianceProfile) -> Result<bool> {
    ensure_ascending(s.values())?;
    Ok(first_violation(s.values(), PermutationOrdering::identity(s.len()).as_slice()).is_none())
}

/// Whether every allocation of `Δ^τ` improves the wisdom.
pub fn permutation_condition(s: &VarianceProfile, tau: &PermutationOrdering) -> Result<bool> {
    check_dim(s.len(), tau.len())?;
    Ok(first_violation(s.values(), tau.as_slice()).is_none())
}

/// When the prefix condition fails for `τ` at length `j`, the point
/// `(1/j)(e_{τ_1} + ... + e_{τ_j})` of `Δ^τ`'s closure does not improve the
/// wisdom. Returns that point, or `None` when the condition holds.
pub fn condition_witness(s: &VarianceProfile, tau: &PermutationOrdering) -> Result<Option<Allocation>> {
    check_dim(s.len(), tau.len())?;
    Ok(first_violation(s.values(), tau.as_slice()).map(|j| vertex_limit_point(tau, j)))
}

/// `(1/j) Σ_{r<=j} e_{τ_r}`, a vertex of the closure of `Δ^τ`.
pub fn vertex_limit_point(tau: &PermutationOrdering, j: usize) -> Allocation {
    assert!(j >= 1 && j <= tau.len(), "vertex index out of range");
    let mut w = vec![0.0; tau.len()];
    for &t in &tau.as_slice()[..j] {
        w[t] = 1.0 / j as f64;
    }
    Allocation::new(w).expect("vertex of the simplex")
}

/// Barycentric weights of `z` over the vertices of `Δ^τ`:
/// `q_i = i (z_{τ_i} - z_{τ_{i+1}})` with `z_{τ_{n+1}} = 0`, so that
/// `z = Σ q_i vertex_limit_point(τ, i)`.
pub fn hypertriangle_weights(z: &Allocation, tau: &PermutationOrdering) -> Result<Vec<f64>> {
    check_dim(z.len(), tau.len())?;
    let sorted = tau.apply(z.weights());
    let n = sorted.len();
    Ok((0..n)
        .map(|i| {
            let next = if i + 1 < n { sorted[i + 1] } else { 0.0 };
            (i + 1) as f64 * (sorted[i] - next)
        })
        .collect())
}

fn ensure_ascending<T: PartialOrd>(values: &[T]) -> Result<()> {
    match values.windows(2).position(|w| !(w[0] <= w[1])) {
        Some(i) => Err(Error::NotAscending(i + 1)),
        None => Ok(()),
    }
}

pub(crate) fn enumerate_in<T: Scalar>(values: &[T], cap: usize) -> Result<Vec<PermutationOrdering>> {
    let n = values.len();
    if n > cap {
        return Err(Error::EnumerationCapExceeded { n, cap });
    }
    let mut tau: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        if first_violation(values, &tau).is_none() {
            out.push(PermutationOrdering { tau: tau.clone() });
        }
        if !next_lexicographic(&mut tau) {
            break;
        }
    }
    Ok(out)
}

/// Every ordering whose whole cell improves the wisdom, found by checking all
/// `n!` permutations. The profile need not be sorted. Output is sorted
/// lexicographically.
pub fn enumerate_improving_orderings(s: &VarianceProfile, cap: usize) -> Result<Vec<PermutationOrdering>> {
    enumerate_in(s.values(), cap)
}

/// All orderings reachable from `τ` by repeatedly swapping an inversion
/// (any pair of positions `p < q` with `τ_p > τ_q`), including `τ` itself.
/// Sorted lexicographically.
pub fn downward_closure(tau: &PermutationOrdering) -> Vec<PermutationOrdering> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(tau.clone());
    queue.push_back(tau.clone());
    while let Some(cur) = queue.pop_front() {
        for (p, q) in cur.inversions() {
            let mut next = cur.clone();
            next.tau.swap(p, q);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// Select-crowd test: all power on the first `m` individuals of `τ`, in
/// descending order, each of whom satisfies
/// `σ²_{τ_j} < ((2j - 1)/n²) Σ σ²`. When true the allocation improves the
/// wisdom.
pub fn select_crowd_check(
    x: &Allocation,
    s: &VarianceProfile,
    tau: &PermutationOrdering,
    m: usize,
) -> Result<bool> {
    let n = s.len();
    check_dim(n, x.len())?;
    check_dim(n, tau.len())?;
    if m == 0 || m >= n {
        return Err(Error::InvalidCrowdSize { m, n });
    }
    let z = tau.apply(x.weights());
    let descending = z.windows(2).all(|w| w[0] >= w[1]);
    if !descending || !(z[m - 1] > 0.0) || z[m] != 0.0 {
        return Ok(false);
    }
    let sum = s.sum();
    let n2 = (n * n) as f64;
    Ok((1..=m).all(|j| n2 * s[tau.as_slice()[j - 1]] < (2 * j - 1) as f64 * sum))
}

/// Whether `x` gives weakly less power to every strictly more accurate
/// individual (and is not the barycentre): `x` lies in the reverse of an
/// ascending-variance cell, so it undermines the wisdom.
///
/// With tied variances any ascending ordering of the tie is accepted.
pub fn reverse_ordering_undermines(x: &Allocation, s: &VarianceProfile) -> Result<bool> {
    check_dim(s.len(), x.len())?;
    if x.is_uniform(DEFAULT_TOL) {
        return Ok(false);
    }
    let n = s.len();
    for i in 0..n {
        for j in 0..n {
            if s[i] < s[j] && x[i] > x[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// What the improving/undermining duality says about `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReversalDuality {
    /// Every allocation of `Δ^τ` improves, so every allocation of the
    /// reversed cell undermines.
    ThereforeReverseUndermines {
        improving: PermutationOrdering,
        undermining: PermutationOrdering,
    },
    /// The prefix condition fails for `τ`; the converse of the duality does
    /// not hold, so nothing follows.
    NoConclusion,
}

pub fn reversal_duality(s: &VarianceProfile, tau: &PermutationOrdering) -> Result<ReversalDuality> {
    if permutation_condition(s, tau)? {
        Ok(ReversalDuality::ThereforeReverseUndermines {
            improving: tau.clone(),
            undermining: tau.reversed(),
        })
    } else {
        Ok(ReversalDuality::NoConclusion)
    }
}
