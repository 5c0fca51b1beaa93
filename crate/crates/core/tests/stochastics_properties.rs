mod common;

use common::{config, profile, rng};
use proptest::prelude::*;
use wisdom_core::sampling::sample_simplex;
use wisdom_core::stochastics::{mc_collective_variance, Distribution, EstimateModel, GATE_SIGMAS};
use wisdom_core::{optimal_allocation, Allocation};

fn family(k: u8) -> Distribution {
    if k.is_multiple_of(2) {
        Distribution::Gaussian
    } else {
        Distribution::UniformMatched
    }
}

proptest! {
    #![proptest_config(config(24, 41))]

    #[test]
    fn variance_law_and_unbiasedness(s in profile(2..7), seed in any::<u64>(), k in 0u8..2, mu in -10.0f64..10.0) {
        let x = sample_simplex(&mut rng(seed), s.len());
        let model = EstimateModel::new(mu, s, family(k), seed);
        let r = mc_collective_variance(&x, &model, 100_000).unwrap();
        prop_assert!(r.variance_within_gate(), "{:?}", r);
        prop_assert!(r.mean_within_gate(), "{:?}", r);
    }

    #[test]
    fn optimum_is_never_noisier_than_plain_averaging(s in profile(2..7), seed in any::<u64>(), k in 0u8..2) {
        prop_assume!(!s.is_uniform());
        let model = EstimateModel::new(0.0, s.clone(), family(k), seed);
        let best = mc_collective_variance(&optimal_allocation(&s).0, &model, 20_000).unwrap();
        let flat = mc_collective_variance(&Allocation::uniform(s.len()).unwrap(), &model, 20_000).unwrap();
        let noise = best.stderr_of_variance.hypot(flat.stderr_of_variance);
        prop_assert!(best.empirical_variance <= flat.empirical_variance + GATE_SIGMAS * noise);
    }
}

#[test]
fn parallel_and_sequential_draws_agree() {
    let s = wisdom_core::VarianceProfile::new(vec![1.0, 4.0, 9.0]).unwrap();
    let model = EstimateModel::new(1.0, s, Distribution::Gaussian, 99);
    let x = Allocation::new(vec![0.5, 0.3, 0.2]).unwrap();
    let forward: Vec<f64> = (0..500).map(|t| model.collective_estimate(&x, t)).collect();
    let backward: Vec<f64> = (0..500).rev().map(|t| model.collective_estimate(&x, t)).collect();
    assert!(forward.iter().eq(backward.iter().rev()));
}
