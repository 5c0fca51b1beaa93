//! Modified permutation generation.
//!
//! For an ascending profile, individual `i` can only appear before the block
//! boundary at `i` when `σ²_i` is small relative to the running thresholds
//! `u_j = (j²/n²) s_n - s_{j-1}`. Positions where `σ²_i >= u_{i-1}` start a
//! new segment, and no improving ordering moves an individual across a
//! segment boundary. Permuting within segments and filtering with the prefix
//! condition therefore yields every improving ordering.

use alloc::vec::Vec;

use super::{ensure_ascending, first_violation, heap_permutations, int, total, PermutationOrdering, Scalar};
use crate::error::{Error, Result};
use crate::profile::VarianceProfile;

/// Intermediate quantities of the generation procedure, 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct MpgState<T = f64> {
    values: Vec<T>,
    /// `prefix_sums[i] = σ²_1 + ... + σ²_{i+1}`.
    prefix_sums: Vec<T>,
    /// `thresholds[j] = u_j` for `j = 0..n` (1-based `j`), with `u_0 = σ²_1`.
    thresholds: Vec<T>,
    /// `f[i]` for 1-based individual `i + 1`: the largest `j < i + 1` with
    /// `σ²_{i+1} >= u_j`.
    f: Vec<usize>,
    /// 0-based start of each segment; the first is always 0.
    heads: Vec<usize>,
}

impl<T: Scalar> MpgState<T> {
    /// Prefix sums, thresholds, `f` indices and segment heads for an
    /// ascending profile.
    pub fn from_values(values: Vec<T>) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::GroupTooSmall(n));
        }
        ensure_ascending(&values)?;

        let mut prefix_sums = Vec::with_capacity(n);
        let mut acc = T::zero();
        for v in &values {
            acc = acc + v.clone();
            prefix_sums.push(acc.clone());
        }
        let s_n = total(&values);
        let n2: T = int(n * n);

        // s_{j-1} with s_0 = 0, 1-based j.
        let s_before = |j: usize| -> T {
            if j >= 2 {
                prefix_sums[j - 2].clone()
            } else {
                T::zero()
            }
        };

        let mut thresholds = Vec::with_capacity(n + 1);
        thresholds.push(values[0].clone());
        for j in 1..=n {
            thresholds.push(int::<T>(j * j) * s_n.clone() / n2.clone() - s_before(j));
        }

        // σ²_i >= u_j, compared as n² (σ²_i + s_{j-1}) >= j² s_n.
        let reaches = |i: usize, j: usize| -> bool {
            if j == 0 {
                values[i - 1] >= values[0]
            } else {
                n2.clone() * (values[i - 1].clone() + s_before(j)) >= int::<T>(j * j) * s_n.clone()
            }
        };

        let mut f = Vec::with_capacity(n);
        for i in 1..=n {
            let fi = (0..i)
                .rev()
                .find(|&j| reaches(i, j))
                .expect("u_0 is the smallest variance");
            f.push(fi);
        }

        let heads = (1..=n).filter(|&i| f[i - 1] == i - 1).map(|i| i - 1).collect();

        Ok(Self {
            values,
            prefix_sums,
            thresholds,
            f,
            heads,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn prefix_sums(&self) -> &[T] {
        &self.prefix_sums
    }

    /// `u_0, u_1, ..., u_n`.
    pub fn thresholds(&self) -> &[T] {
        &self.thresholds
    }

    /// `f_1, ..., f_n`.
    pub fn f_indices(&self) -> &[usize] {
        &self.f
    }

    /// 0-based segment starts `h_1 - 1, ..., h_d - 1`.
    pub fn segment_heads(&self) -> &[usize] {
        &self.heads
    }

    pub fn segment_count(&self) -> usize {
        self.heads.len()
    }

    /// Half-open index ranges of the segments.
    pub fn segments(&self) -> Vec<core::ops::Range<usize>> {
        let n = self.len();
        self.heads
            .iter()
            .enumerate()
            .map(|(k, &h)| h..self.heads.get(k + 1).copied().unwrap_or(n))
            .collect()
    }

    /// Number of concatenated candidates, `Π (segment length)!`, or `None`
    /// if it overflows `u128`.
    pub fn candidate_count(&self) -> Option<u128> {
        self.segments().into_iter().try_fold(1u128, |acc, r| {
            (1..=r.len() as u128).try_fold(acc, |a, k| a.checked_mul(k))
        })
    }

    /// Every concatenation of per-segment permutations.
    pub fn candidates(&self) -> Vec<PermutationOrdering> {
        let per_segment: Vec<Vec<Vec<usize>>> = self
            .segments()
            .into_iter()
            .map(|r| heap_permutations(&r.collect::<Vec<_>>()))
            .collect();
        let mut out = Vec::new();
        let mut pick = alloc::vec![0usize; per_segment.len()];
        loop {
            let tau: Vec<usize> = per_segment
                .iter()
                .zip(&pick)
                .flat_map(|(perms, &k)| perms[k].iter().copied())
                .collect();
            out.push(PermutationOrdering { tau });
            // Odometer over segment choices, last segment fastest.
            let mut k = per_segment.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                pick[k] += 1;
                if pick[k] < per_segment[k].len() {
                    break;
                }
                pick[k] = 0;
            }
        }
    }

    /// Candidates that satisfy the prefix condition, sorted
    /// lexicographically.
    pub fn improving_orderings(&self) -> Vec<PermutationOrdering> {
        let mut out: Vec<_> = self
            .candidates()
            .into_iter()
            .filter(|tau| first_violation(&self.values, tau.as_slice()).is_none())
            .collect();
        out.sort();
        out
    }
}

impl MpgState<f64> {
    pub fn new(s: &VarianceProfile) -> Result<Self> {
        Self::from_values(s.values().to_vec())
    }
}

/// Every ordering whose whole cell improves the wisdom, for an ascending
/// profile. Sorted lexicographically.
pub fn mpg(s: &VarianceProfile) -> Result<Vec<PermutationOrdering>> {
    Ok(MpgState::new(s)?.improving_orderings())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orderings::enumerate_improving_orderings;
    use alloc::vec;

    fn profile(v: &[f64]) -> VarianceProfile {
        VarianceProfile::new(v.to_vec()).unwrap()
    }

    fn perm(v: &[usize]) -> PermutationOrdering {
        PermutationOrdering::from_one_based(v).unwrap()
    }

    #[test]
    fn hand_trace_of_small_instance() {
        let state = MpgState::new(&profile(&[1.0, 2.0, 16.0])).unwrap();
        assert_eq!(state.prefix_sums(), &[1.0, 3.0, 19.0]);
        let u = state.thresholds();
        assert_eq!(u[0], 1.0);
        assert!((u[1] - 19.0 / 9.0).abs() < 1e-12);
        assert!((u[2] - (4.0 * 19.0 / 9.0 - 1.0)).abs() < 1e-12);
        assert!((u[3] - 16.0).abs() < 1e-12);
        assert_eq!(state.f_indices(), &[0, 0, 2]);
        assert_eq!(state.segment_heads(), &[0, 2]);
        assert_eq!(state.segments(), vec![0..2, 2..3]);
        assert_eq!(state.candidate_count(), Some(2));
        assert_eq!(
            state.improving_orderings(),
            vec![perm(&[1, 2, 3]), perm(&[2, 1, 3])]
        );
    }

    #[test]
    fn examples() {
        assert!(mpg(&profile(&[1.0, 2.0, 3.0])).unwrap().is_empty());
        assert_eq!(mpg(&profile(&[1.0, 4.0, 9.0])).unwrap(), vec![perm(&[1, 2, 3])]);
        assert_eq!(mpg(&profile(&[2.0, 1.0, 16.0])), Err(Error::NotAscending(1)));
    }

    #[test]
    fn every_head_gives_one_candidate() {
        let state = MpgState::new(&profile(&[1.0, 2.0, 3.0, 4.0, 5.0])).unwrap();
        assert_eq!(state.f_indices(), &[0, 1, 2, 3, 4]);
        assert_eq!(state.segment_count(), 5);
        assert_eq!(state.candidate_count(), Some(1));
    }

    #[test]
    fn single_segment_gives_all_candidates() {
        let s = profile(&[1.0, 2.0, 2.0, 5.0, 50.0, 100.0]);
        let state = MpgState::new(&s).unwrap();
        assert_eq!(state.segment_heads(), &[0]);
        assert_eq!(state.candidate_count(), Some(720));
        assert_eq!(state.candidates().len(), 720);
        assert_eq!(
            state.improving_orderings(),
            enumerate_improving_orderings(&s, 9).unwrap()
        );
    }

    #[test]
    fn uniform_profile_has_no_improving_ordering() {
        let s = VarianceProfile::uniform(4, 1.0).unwrap();
        assert!(mpg(&s).unwrap().is_empty());
    }
}
