//! Randomized invariants of the estimand and planning machinery.
//!
//! Each property runs over 1000 generated weighted-sample pairs (values
//! on a coarse grid so ties actually occur).

use proptest::prelude::*;

use wmw_design::estimands::{estimands_by_integrals, estimands_by_ranks, Estimands};
use wmw_design::planning::{
    allocation_interval, check_mirror_symmetry, minimize_t, sample_size_at_t, Allocation,
    PlanInput,
};
use wmw_design::synthetic::WeightedSample;

fn unit_group() -> impl Strategy<Value = Vec<f64>> {
    // integer-valued observations on 0..=9 so ties are common
    prop::collection::vec((0u8..10).prop_map(f64::from), 1..12)
}

fn weighted_sample() -> impl Strategy<Value = WeightedSample> {
    prop::collection::vec(((0u8..12).prop_map(f64::from), 0.05f64..5.0), 1..10)
        .prop_map(|pairs| {
            let (values, weights) = pairs.into_iter().unzip();
            WeightedSample::new(values, weights).expect("positive weights")
        })
}

fn plan_input() -> impl Strategy<Value = PlanInput> {
    (0.005f64..0.2, 0.55f64..0.99).prop_map(|(alpha, power)| {
        PlanInput::new(alpha, power, Allocation::Optimal).expect("valid rates")
    })
}

fn estimands(f1: &WeightedSample, f2: &WeightedSample) -> Estimands {
    estimands_by_integrals(f1, f2).expect("nonempty samples")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rank_and_integral_paths_agree(g1 in unit_group(), g2 in unit_group()) {
        let by_ranks = estimands_by_ranks(&g1, &g2).unwrap();
        let by_ints = estimands(
            &WeightedSample::from_values(&g1).unwrap(),
            &WeightedSample::from_values(&g2).unwrap(),
        );
        prop_assert!((by_ranks.p_star - by_ints.p_star).abs() < 1e-12);
        prop_assert!((by_ranks.sigma2_null - by_ints.sigma2_null).abs() < 1e-12);
        prop_assert!((by_ranks.sigma2_1 - by_ints.sigma2_1).abs() < 1e-12);
        prop_assert!((by_ranks.sigma2_2 - by_ints.sigma2_2).abs() < 1e-12);
    }

    #[test]
    fn group_swap_complements_effect(f1 in weighted_sample(), f2 in weighted_sample()) {
        let e12 = estimands(&f1, &f2);
        let e21 = estimands(&f2, &f1);
        prop_assert!((e12.p_star + e21.p_star - 1.0).abs() < 1e-12);
        // the variance components swap roles, sigma*^2 is symmetric
        prop_assert!((e12.sigma2_1 - e21.sigma2_2).abs() < 1e-12);
        prop_assert!((e12.sigma2_2 - e21.sigma2_1).abs() < 1e-12);
        prop_assert!((e12.sigma2_null - e21.sigma2_null).abs() < 1e-12);
    }

    #[test]
    fn weight_scaling_is_invariant(
        f1 in weighted_sample(),
        f2 in weighted_sample(),
        c in 1e-3f64..1e3,
    ) {
        // scale both groups so the pooled mixing proportion is unchanged
        let scale = |f: &WeightedSample| WeightedSample::new(
            f.values().to_vec(),
            f.weights().iter().map(|w| w * c).collect(),
        ).unwrap();
        let a = estimands(&f1, &f2);
        let b = estimands(&scale(&f1), &scale(&f2));
        prop_assert!((a.p_star - b.p_star).abs() < 1e-12);
        prop_assert!((a.sigma2_null - b.sigma2_null).abs() < 1e-12);
        prop_assert!((a.sigma2_1 - b.sigma2_1).abs() < 1e-12);
        prop_assert!((a.sigma2_2 - b.sigma2_2).abs() < 1e-12);
    }

    #[test]
    fn replication_is_invariant(g1 in unit_group(), g2 in unit_group(), k in 2usize..5) {
        let rep = |g: &[f64]| -> Vec<f64> {
            std::iter::repeat(g).take(k).flatten().copied().collect()
        };
        let a = estimands_by_ranks(&g1, &g2).unwrap();
        let b = estimands_by_ranks(&rep(&g1), &rep(&g2)).unwrap();
        prop_assert!((a.p_star - b.p_star).abs() < 1e-12);
        prop_assert!((a.sigma2_null - b.sigma2_null).abs() < 1e-12);
        prop_assert!((a.sigma2_1 - b.sigma2_1).abs() < 1e-12);
        prop_assert!((a.sigma2_2 - b.sigma2_2).abs() < 1e-12);
    }

    #[test]
    fn variances_stay_in_range(f1 in weighted_sample(), f2 in weighted_sample()) {
        let e = estimands(&f1, &f2);
        prop_assert!(e.p_star >= 0.0 && e.p_star <= 1.0);
        for v in [e.sigma2_null, e.sigma2_1, e.sigma2_2] {
            prop_assert!((0.0..=0.25 + 1e-12).contains(&v), "variance {v} out of range");
        }
    }

    #[test]
    fn optimum_is_bracketed_and_minimal(
        f1 in weighted_sample(),
        f2 in weighted_sample(),
        input in plan_input(),
        t_probe in 0.05f64..0.95,
    ) {
        let e = estimands(&f1, &f2);
        prop_assume!((e.p_star - 0.5).abs() > 0.02);
        prop_assume!(e.sigma2_1 > 0.0 || e.sigma2_2 > 0.0);
        let m = minimize_t(&e, &input).unwrap();
        let iv = allocation_interval(&e, &input).unwrap();
        prop_assert!(iv.lower <= iv.upper + 1e-12);
        prop_assert!(m.t0 >= iv.lower - 1e-5 && m.t0 <= iv.upper + 1e-5,
            "t0 = {} outside [{}, {}]", m.t0, iv.lower, iv.upper);
        let n_half = sample_size_at_t(&e, &input, 0.5).unwrap();
        let n_probe = sample_size_at_t(&e, &input, t_probe).unwrap();
        prop_assert!(m.n_raw <= n_half + 1e-9 * n_half);
        prop_assert!(m.n_raw <= n_probe + 1e-9 * n_probe);
        // side of 1/2 follows the variance ordering
        if e.sigma2_1 < e.sigma2_2 {
            prop_assert!(m.t0 <= 0.5 + 1e-6);
        } else if e.sigma2_1 > e.sigma2_2 {
            prop_assert!(m.t0 >= 0.5 - 1e-6);
        }
    }

    #[test]
    fn group_swap_mirrors_optimum(
        f1 in weighted_sample(),
        f2 in weighted_sample(),
        input in plan_input(),
    ) {
        let e12 = estimands(&f1, &f2);
        prop_assume!((e12.p_star - 0.5).abs() > 0.02);
        prop_assume!(e12.sigma2_1 > 0.0 || e12.sigma2_2 > 0.0);
        let e21 = estimands(&f2, &f1);
        let m12 = minimize_t(&e12, &input).unwrap();
        let m21 = minimize_t(&e21, &input).unwrap();
        prop_assert!((m12.t0 + m21.t0 - 1.0).abs() < 1e-5,
            "t0 = {} vs swapped {}", m12.t0, m21.t0);
        prop_assert!((m12.n_raw - m21.n_raw).abs() < 1e-8 * m12.n_raw);
    }

    #[test]
    fn optimum_matches_grid_search(
        f1 in weighted_sample(),
        f2 in weighted_sample(),
        input in plan_input(),
    ) {
        let e = estimands(&f1, &f2);
        prop_assume!((e.p_star - 0.5).abs() > 0.02);
        prop_assume!(e.sigma2_1 > 0.0 || e.sigma2_2 > 0.0);
        let m = minimize_t(&e, &input).unwrap();
        let mut best_t = 0.5;
        let mut best_n = f64::INFINITY;
        for k in 1..10_000 {
            let t = k as f64 * 1e-4;
            let n = sample_size_at_t(&e, &input, t).unwrap();
            if n < best_n {
                best_n = n;
                best_t = t;
            }
        }
        prop_assert!((m.t0 - best_t).abs() <= 1e-3,
            "t0 = {} vs grid {}", m.t0, best_t);
        prop_assert!(m.n_raw <= best_n + 1e-9 * best_n);
    }

    #[test]
    fn mirror_pairs_are_balanced(
        f1 in weighted_sample(),
        a in -4.0f64..16.0,
        input in plan_input(),
    ) {
        let f2 = WeightedSample::new(
            f1.values().iter().map(|v| 2.0 * a - v).collect(),
            f1.weights().to_vec(),
        ).unwrap();
        let found = check_mirror_symmetry(&f1, &f2, 1e-9)
            .expect("constructed mirror pair must be recognized");
        prop_assert!((found - a).abs() < 1e-9);
        let e = estimands(&f1, &f2);
        // both tangent expressions of the balanced-design condition
        let lhs = e.sigma2_2 + e.p_star * e.p_star;
        let rhs = 2.0 * e.p_star - 1.0 + e.sigma2_1 + (1.0 - e.p_star) * (1.0 - e.p_star);
        prop_assert!((lhs - rhs).abs() < 1e-12);
        // disjoint-support mirrors have no interior optimum to check
        if (e.p_star - 0.5).abs() > 0.02 && (e.sigma2_1 > 0.0 || e.sigma2_2 > 0.0) {
            let m = minimize_t(&e, &input).unwrap();
            prop_assert!((m.t0 - 0.5).abs() <= 1e-6, "t0 = {}", m.t0);
        }
    }

    #[test]
    fn balanced_condition_tracks_variance_gap(
        f1 in weighted_sample(),
        f2 in weighted_sample(),
    ) {
        let e = estimands(&f1, &f2);
        let lhs = e.sigma2_2 + e.p_star * e.p_star;
        let rhs = 2.0 * e.p_star - 1.0 + e.sigma2_1 + (1.0 - e.p_star) * (1.0 - e.p_star);
        prop_assert!(((lhs - rhs) - (e.sigma2_2 - e.sigma2_1)).abs() < 1e-12);
    }
}
