mod common;

use common::{config, profile, rng};
use proptest::prelude::*;
use wisdom_core::sampling::{sample_gap_consistent, sample_simplex};
use wisdom_core::{
    baseline_variance, classify_consistency, classify_membership, collective_variance, optimal_allocation,
    Allocation, Consistency, Membership, VarianceProfile, DEFAULT_TOL,
};

fn ordering_holds(x: &Allocation, s: &VarianceProfile) -> bool {
    let n = s.len();
    (0..n).all(|i| (0..n).all(|j| s[i] < s[j] || x[i] <= x[j] + DEFAULT_TOL))
}

fn gap_holds(x: &Allocation, s: &VarianceProfile) -> bool {
    let n = s.len();
    (0..n).all(|i| (0..n).all(|j| s[i] < s[j] || x[i] * s[i] >= x[j] * s[j] - DEFAULT_TOL))
}

proptest! {
    #![proptest_config(config(2000, 11))]

    #[test]
    fn convexity_identity(s in profile(2..8), seed in any::<u64>(), lambda in 0.01f64..0.99) {
        let mut r = rng(seed);
        let z = sample_simplex(&mut r, s.len());
        let w = sample_simplex(&mut r, s.len());
        let mix = Allocation::new(
            z.weights().iter().zip(w.weights()).map(|(a, b)| lambda * a + (1.0 - lambda) * b).collect(),
        ).unwrap();
        let chord = lambda * collective_variance(&z, &s).unwrap()
            + (1.0 - lambda) * collective_variance(&w, &s).unwrap();
        let lhs = chord - collective_variance(&mix, &s).unwrap();
        let rhs = lambda * (1.0 - lambda)
            * z.weights().iter().zip(w.weights()).zip(s.values())
                .map(|((a, b), v)| (a - b) * (a - b) * v).sum::<f64>();
        // Rounding in the three quadratic forms leaves an absolute floor of a
        // few ulps of the chord value.
        let floor = 16.0 * f64::EPSILON * chord;
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs + floor, "{lhs} vs {rhs}");
    }
}

proptest! {
    #![proptest_config(config(200, 12))]

    #[test]
    fn uniform_variances_never_improve(n in 2usize..8, v in 0.01f64..100.0, seed in any::<u64>()) {
        let s = VarianceProfile::uniform(n, v).unwrap();
        let mut r = rng(seed);
        for _ in 0..200 {
            let z = sample_simplex(&mut r, n);
            prop_assert_ne!(classify_membership(&z, &s, DEFAULT_TOL).unwrap(), Membership::Improves);
        }
        let (xstar, _) = optimal_allocation(&s);
        prop_assert!(xstar.is_uniform(1e-15));
    }

    #[test]
    fn optimum_beats_baseline_and_every_sample(s in profile(2..8), seed in any::<u64>()) {
        prop_assume!(!s.is_uniform());
        let (xstar, estar) = optimal_allocation(&s);
        prop_assert!(estar < baseline_variance(&s));
        prop_assert!((collective_variance(&xstar, &s).unwrap() - estar).abs() <= 1e-12 * estar.max(1.0));
        let mut r = rng(seed);
        for _ in 0..1000 {
            let z = sample_simplex(&mut r, s.len());
            prop_assert!(estar <= collective_variance(&z, &s).unwrap());
        }
        prop_assert_eq!(classify_consistency(&xstar, &s).unwrap(), Consistency::Maximal);
    }

    #[test]
    fn gap_consistency_improves(s in profile(2..8), seed in any::<u64>()) {
        prop_assume!(!s.is_uniform());
        let mut r = rng(seed);
        for k in 0..400 {
            let z = if k % 2 == 0 { sample_gap_consistent(&mut r, &s) } else { sample_simplex(&mut r, s.len()) };
            if classify_consistency(&z, &s).unwrap() >= Consistency::Gap {
                prop_assert_eq!(classify_membership(&z, &s, DEFAULT_TOL).unwrap(), Membership::Improves);
            }
        }
    }

    #[test]
    fn grades_are_nested(s in profile(2..6), seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut candidates = vec![optimal_allocation(&s).0];
        for _ in 0..200 {
            candidates.push(sample_simplex(&mut r, s.len()));
            candidates.push(sample_gap_consistent(&mut r, &s));
        }
        for z in &candidates {
            let grade = classify_consistency(z, &s).unwrap();
            if grade >= Consistency::Ordering {
                prop_assert!(ordering_holds(z, &s));
            }
            if grade >= Consistency::Gap {
                prop_assert!(gap_holds(z, &s));
            }
        }
    }
}
