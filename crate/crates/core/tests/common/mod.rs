#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use wisdom_core::VarianceProfile;

/// Fixed-seed runner so statistical gates are reproducible.
pub fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Variances spread over several orders of magnitude.
pub fn profile(n: impl Into<proptest::collection::SizeRange>) -> impl Strategy<Value = VarianceProfile> {
    proptest::collection::vec(-2.0f64..3.0, n)
        .prop_map(|e| VarianceProfile::new(e.into_iter().map(|v| 10f64.powf(v)).collect()).unwrap())
}

pub fn ascending_profile(
    n: impl Into<proptest::collection::SizeRange>,
) -> impl Strategy<Value = VarianceProfile> {
    profile(n).prop_map(|s| s.sorted_ascending().0)
}

pub fn integer_profile(
    n: std::ops::RangeInclusive<usize>,
    max: u32,
) -> impl Strategy<Value = VarianceProfile> {
    proptest::collection::vec(1..=max, n).prop_map(|mut v| {
        v.sort_unstable();
        VarianceProfile::new(v.into_iter().map(f64::from).collect()).unwrap()
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
