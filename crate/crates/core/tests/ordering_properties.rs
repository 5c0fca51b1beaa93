mod common;

use std::collections::BTreeSet;

use common::{ascending_profile, config, integer_profile, profile, rng};
use proptest::prelude::*;
use wisdom_core::orderings::{
    condition_witness, downward_closure, enumerate_improving_orderings, hypertriangle_weights, mpg,
    permutation_condition, vertex_limit_point, ExactProfile, MpgState, PermutationOrdering,
};
use wisdom_core::sampling::sample_hypertriangle;
use wisdom_core::{classify_membership, Membership, VarianceProfile, DEFAULT_TOL};

fn random_ordering(n: usize) -> impl Strategy<Value = PermutationOrdering> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| PermutationOrdering::from_zero_based(v).unwrap())
}

fn membership(z: &wisdom_core::Allocation, s: &VarianceProfile) -> Membership {
    classify_membership(z, s, DEFAULT_TOL).unwrap()
}

proptest! {
    #![proptest_config(config(1000, 21))]

    #[test]
    fn mpg_matches_oracle_on_integers(s in integer_profile(2..=7, 60)) {
        prop_assert_eq!(mpg(&s).unwrap(), enumerate_improving_orderings(&s, 9).unwrap());
    }

    #[test]
    fn mpg_matches_oracle_on_reals(s in ascending_profile(2..=7)) {
        prop_assert_eq!(mpg(&s).unwrap(), enumerate_improving_orderings(&s, 9).unwrap());
    }
}

proptest! {
    #![proptest_config(config(300, 22))]

    #[test]
    fn mpg_matches_oracle_in_exact_arithmetic(
        digits in proptest::collection::vec(1u32..2000, 2..=6),
    ) {
        let mut digits = digits;
        digits.sort_unstable();
        let texts: Vec<String> = digits.iter().map(|d| format!("{}.{:02}", d / 100, d % 100)).collect();
        let e = ExactProfile::from_decimals(&texts).unwrap();
        prop_assert_eq!(e.mpg().unwrap(), e.enumerate_improving_orderings(9).unwrap());
    }

    #[test]
    fn candidates_respect_segments(s in ascending_profile(2..=7)) {
        let state = MpgState::new(&s).unwrap();
        let candidates = state.candidates();
        prop_assert_eq!(Some(candidates.len() as u128), state.candidate_count());
        let distinct: BTreeSet<_> = candidates.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), candidates.len());
        for seg in state.segments() {
            for tau in &candidates {
                let mut block: Vec<usize> = tau.as_slice()[seg.clone()].to_vec();
                block.sort_unstable();
                prop_assert_eq!(block, seg.clone().collect::<Vec<_>>());
            }
        }
    }
}

proptest! {
    #![proptest_config(config(40, 23))]

    #[test]
    fn cell_condition_decides_the_whole_cell(
        (s, tau) in (3usize..=6).prop_flat_map(|n| (profile(n), random_ordering(n))),
        seed in any::<u64>(),
    ) {
        if permutation_condition(&s, &tau).unwrap() {
            let mut r = rng(seed);
            for _ in 0..10_000 {
                let z = sample_hypertriangle(&mut r, &tau);
                prop_assert_eq!(membership(&z, &s), Membership::Improves);
            }
            prop_assert!(condition_witness(&s, &tau).unwrap().is_none());
        } else {
            let w = condition_witness(&s, &tau).unwrap().unwrap();
            prop_assert_ne!(membership(&w, &s), Membership::Improves);
        }
    }

    #[test]
    fn improving_cells_are_downward_closed(s in ascending_profile(3..=6)) {
        for tau in mpg(&s).unwrap() {
            for lower in downward_closure(&tau) {
                prop_assert!(permutation_condition(&s, &lower).unwrap());
            }
        }
    }

    #[test]
    fn reversed_ascending_cell_undermines(s in profile(2..=6), seed in any::<u64>()) {
        prop_assume!(!s.is_uniform());
        let reversed = s.ascending_order().reversed();
        let mut r = rng(seed);
        for _ in 0..10_000 {
            let z = sample_hypertriangle(&mut r, &reversed);
            prop_assert_eq!(membership(&z, &s), Membership::Undermines);
        }
    }

    #[test]
    fn reversal_of_improving_cell_undermines(s in ascending_profile(3..=6), seed in any::<u64>()) {
        let mut r = rng(seed);
        for tau in mpg(&s).unwrap() {
            let reversed = tau.reversed();
            for _ in 0..2_000 {
                let z = sample_hypertriangle(&mut r, &reversed);
                prop_assert_eq!(membership(&z, &s), Membership::Undermines);
            }
        }
    }

    #[test]
    fn cell_points_decompose_over_vertices(
        tau in (2usize..=7).prop_flat_map(random_ordering),
        seed in any::<u64>(),
    ) {
        let n = tau.len();
        let mut r = rng(seed);
        for _ in 0..200 {
            let z = sample_hypertriangle(&mut r, &tau);
            let q = hypertriangle_weights(&z, &tau).unwrap();
            prop_assert!(q.iter().all(|&v| v >= -1e-15));
            prop_assert!((q.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
            let mut rebuilt = vec![0.0; n];
            for (j, qj) in q.iter().enumerate() {
                let v = vertex_limit_point(&tau, j + 1);
                for (acc, w) in rebuilt.iter_mut().zip(v.weights()) {
                    *acc += qj * w;
                }
            }
            for (a, b) in rebuilt.iter().zip(z.weights()) {
                prop_assert!((a - b).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn candidate_count_regimes() {
    // Every position starts a segment: a single candidate.
    for n in 2..=8 {
        let s = VarianceProfile::new((1..=n).map(|v| v as f64).collect()).unwrap();
        let state = MpgState::new(&s).unwrap();
        assert_eq!(state.f_indices(), (0..n).collect::<Vec<_>>().as_slice());
        assert_eq!(state.candidate_count(), Some(1));
    }
    // Only the first position starts a segment: all n! candidates.
    let s = VarianceProfile::new(vec![1.0, 2.0, 2.0, 5.0, 50.0, 100.0]).unwrap();
    let state = MpgState::new(&s).unwrap();
    assert_eq!(state.segment_heads(), &[0]);
    assert_eq!(state.candidate_count(), Some(720));
}
