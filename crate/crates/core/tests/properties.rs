use proptest::prelude::*;
use stabgrowth::fp::PrimeField;
use stabgrowth::geometry::{cmp_phase, g_t, Charge, Gaussian};
use stabgrowth::growth::{estimate_growth_rate, GrowthSeries};
use stabgrowth::hn::{hn_filtration, hn_polygon_oracle, is_semistable, mass, CentralCharge, StabilityCondition};
use stabgrowth::quiver::{DimVector, Quiver};
use stabgrowth::rep::{quotient, random_rep, restriction, subrep_enumerate, Representation, DEFAULT_CAP};
use stabgrowth::twist::{twist_k_matrix, word_upper_profile, GradedClass, TwistWord};

fn charge() -> impl Strategy<Value = Gaussian> {
    (-3i64..=3, 1i64..=3, 0i64..=3, 1i64..=3)
        .prop_map(|(a, b, c, d)| Gaussian::from_fractions((a, b), (c, d)))
        .prop_filter("in bH", Gaussian::in_upper_half)
}

fn a3_case() -> impl Strategy<Value = (Representation, StabilityCondition)> {
    (prop::collection::vec(0usize..=2, 3), any::<u64>(), prop::collection::vec(charge(), 3))
        .prop_filter("nonzero", |(d, _, _)| d.iter().sum::<usize>() > 0)
        .prop_map(|(d, seed, z)| {
            let q = Quiver::linear(3);
            let rep = random_rep(&q, PrimeField::F2, &DimVector(d), seed, DEFAULT_CAP).unwrap();
            let sigma = StabilityCondition::new(&q, CentralCharge::new(z).unwrap()).unwrap();
            (rep, sigma)
        })
}

fn word() -> impl Strategy<Value = TwistWord> {
    prop::collection::vec(prop_oneof![Just("T1"), Just("T2"), Just("T1'"), Just("T2'"), Just("S[1]")], 0..5)
        .prop_map(|toks| toks.join(" ").parse().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hn_factors_are_semistable_with_decreasing_phase((rep, sigma) in a3_case()) {
        let h = hn_filtration(&sigma, &rep, DEFAULT_CAP).unwrap();
        prop_assert!(h.phases.windows(2).all(|w| w[1].0 < w[0].0));
        for f in &h.factors {
            prop_assert!(is_semistable(&sigma, f, DEFAULT_CAP).unwrap());
        }
        let total = h.charges.iter().fold(Gaussian::zero(), |a, b| &a + b);
        prop_assert_eq!(total, sigma.charge_of(rep.dims()));
        for w in h.charges.windows(2) {
            prop_assert_eq!(cmp_phase(&w[0], &w[1]), std::cmp::Ordering::Greater);
        }
    }

    #[test]
    fn polygon_vertices_are_hn_steps((rep, sigma) in a3_case()) {
        prop_assert!(hn_polygon_oracle(&sigma, &rep, DEFAULT_CAP).unwrap().agreement);
    }

    #[test]
    fn mass_is_subadditive_on_extensions((rep, sigma) in a3_case(), t in -1.5f64..1.5) {
        let me = mass(&sigma, &rep, t, DEFAULT_CAP).unwrap();
        for s in subrep_enumerate(&rep, DEFAULT_CAP).unwrap().iter().step_by(3) {
            let a = restriction(&rep, s).unwrap();
            let c = quotient(&rep, s).unwrap();
            let ma = mass(&sigma, &a, t, DEFAULT_CAP).unwrap();
            let mc = mass(&sigma, &c, t, DEFAULT_CAP).unwrap();
            prop_assert!(me <= ma + mc + 1e-9, "{} > {} + {}", me, ma, mc);
        }
    }

    #[test]
    fn g_t_is_subadditive(a in -5.0f64..5.0, b in 1e-6f64..5.0, c in -5.0f64..5.0, d in 1e-6f64..5.0, t in -3.0f64..3.0) {
        let z1 = Charge::new(a, b).unwrap();
        let z2 = Charge::new(c, d).unwrap();
        let sum = Charge::new(a + c, b + d).unwrap();
        prop_assert!(g_t(&sum, t) <= g_t(&z1, t) + g_t(&z2, t) + 1e-12);
    }

    #[test]
    fn word_k_classes_follow_the_matrix(w in word()) {
        let q = Quiver::kronecker(2);
        let m = twist_k_matrix(&q, 3, &w).unwrap();
        for j in 0..2 {
            let image = word_upper_profile(&q, 3, &w, &GradedClass::simple(2, j)).unwrap();
            prop_assert!(image.is_nonnegative());
            let column: Vec<i64> = (0..2).map(|i| m.get(i, j)).collect();
            prop_assert_eq!(image.k_class_i64().unwrap(), column);
        }
    }

    #[test]
    fn exponential_series_recover_their_rate(rate in -2.0f64..2.0, c in 0.1f64..10.0, n in 8u64..120) {
        let samples: Vec<(u64, f64)> = (0..=n).map(|k| (k, c.ln() + rate * k as f64)).collect();
        let est = estimate_growth_rate(&GrowthSeries::from_log_values("exp", samples).unwrap()).unwrap();
        prop_assert!((est.slope_regression - rate).abs() < 1e-9);
        prop_assert!((est.slope_increment - rate).abs() < 1e-9);
    }
}
