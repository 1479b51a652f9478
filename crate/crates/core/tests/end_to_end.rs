use std::f64::consts::PI;

use num_bigint::BigInt;
use stabgrowth::fp::PrimeField;
use stabgrowth::geometry::{cmp_phase, Gaussian};
use stabgrowth::growth::{estimate_growth_rate, spectral_bound_report, twist_mass_series, upper_profile_series};
use stabgrowth::hn::{hn_filtration, hn_polygon_oracle, mass, CentralCharge, StabilityCondition};
use stabgrowth::intmat::IntMatrix;
use stabgrowth::laurent::LaurentPoly;
use stabgrowth::quiver::{DimVector, GradedHomTable, Quiver};
use stabgrowth::rep::{subrep_enumerate, universal_extension, DEFAULT_CAP};
use stabgrowth::spectral::{char_poly, spectral_radius};
use stabgrowth::twist::{poincare_closed_form, twist_k_matrix, twist_power_profile, TwistWord};

fn a2_sigma() -> StabilityCondition {
    StabilityCondition::new(&Quiver::linear(2), CentralCharge::from_ints(&[(0, 1), (-1, 1)]).unwrap()).unwrap()
}

#[test]
fn a2_extension_filtration_and_mass() {
    let a2 = Quiver::linear(2);
    let m = universal_extension(&a2, PrimeField::F2, 0, 1).unwrap();
    let sigma = a2_sigma();
    let h = hn_filtration(&sigma, &m, DEFAULT_CAP).unwrap();
    assert_eq!(h.factor_dims(), vec![DimVector(vec![0, 1]), DimVector(vec![1, 0])]);
    let phases: Vec<f64> = h.phases.iter().map(|p| p.0).collect();
    assert_eq!(phases, vec![0.75, 0.5]);

    // The top factor must beat every proper nonzero subobject in phase.
    let top = &h.charges[0];
    for s in subrep_enumerate(&m, DEFAULT_CAP).unwrap() {
        let z = sigma.charge_of(&s.dim_vector());
        if !z.is_zero() {
            assert_ne!(cmp_phase(&z, top), std::cmp::Ordering::Greater);
        }
    }

    // sqrt(2) e^{3t/4} + e^{t/2}
    for t in [-1.0f64, 0.0, 1.0] {
        let want = 2f64.sqrt() * (0.75 * t).exp() + (0.5 * t).exp();
        assert!((mass(&sigma, &m, t, DEFAULT_CAP).unwrap() - want).abs() < 1e-12);
    }
    let oracle = hn_polygon_oracle(&sigma, &m, DEFAULT_CAP).unwrap();
    assert!(oracle.agreement);
    assert_eq!(
        oracle.polygon.vertices(),
        &[Gaussian::zero(), Gaussian::from_ints(-1, 1), Gaussian::from_ints(-1, 2)]
    );
}

#[test]
fn kronecker_word_matrix_matches_reflections() {
    // For N = 3 the Euler form is antisymmetric; twist i acts by x -> x - chi(e_i, x) e_i.
    let q = 3i64;
    let chi = [[0i64, -q], [q, 0]];
    let reflection = |i: usize| {
        let mut rows = vec![vec![1i64, 0], vec![0, 1]];
        for j in 0..2 {
            rows[i][j] -= chi[i][j];
        }
        IntMatrix::from_rows(rows)
    };
    let (r1, r2) = (reflection(0), reflection(1));
    let mut product = vec![vec![0i64; 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            product[a][b] = (0..2).map(|c| r1.get(a, c) * r2.get(c, b)).sum();
        }
    }
    let word: TwistWord = "T1 T2".parse().unwrap();
    let m = twist_k_matrix(&Quiver::kronecker(3), 3, &word).unwrap();
    assert_eq!(m.rows(), product.as_slice());
    assert_eq!(m.rows(), &[vec![-8, 3], vec![-3, 1]]);

    let cp = char_poly(&m).unwrap();
    assert_eq!(cp, vec![BigInt::from(1), BigInt::from(7), BigInt::from(1)]);
    let largest = (7.0 + 45f64.sqrt()) / 2.0;
    assert!((spectral_radius(&m, 8).unwrap().value - largest).abs() < 1e-10);
}

#[test]
fn kronecker_twist_profiles_count_arrows() {
    let k3 = Quiver::kronecker(3);
    let table = GradedHomTable::new(&k3, 3).unwrap();
    assert_eq!(table.hom(0, 1, 1), 3);
    assert_eq!(table.hom(1, 0, 2), 3);
    for k in 0..12u32 {
        let prof = twist_power_profile(&k3, PrimeField::F2, 3, 0, k, 1).unwrap();
        // P at u = 1 is 1 + 3k.
        assert_eq!(prof.poincare.eval_at_one(), BigInt::from(1 + 3 * k as i64));
        assert_eq!(prof.poincare, poincare_closed_form(&k3, 3, 0, k, 1).unwrap());
    }
    assert_eq!(poincare_closed_form(&k3, 3, 0, 4, 0).unwrap(), LaurentPoly::monomial(1, 8));
}

#[test]
fn growth_rates_on_examples() {
    let sigma = a2_sigma();
    let slopes: Vec<f64> = [-1.0, 0.0, 1.0]
        .iter()
        .map(|&t| {
            let s = twist_mass_series(&sigma, PrimeField::F2, 3, 0, t, 200, DEFAULT_CAP).unwrap();
            estimate_growth_rate(&s).unwrap().slope_regression
        })
        .collect();
    for (s, h) in slopes.iter().zip([2.0, 0.0, 0.0]) {
        assert!((s - h).abs() < 0.05, "{s} vs {h}");
    }

    let word: TwistWord = "T1 T2".parse().unwrap();
    let k3 = Quiver::kronecker(3);
    let r = spectral_bound_report(&k3, 3, &word, 80).unwrap();
    assert!((r.lower_log_rho - 1.924847).abs() < 1e-6);
    assert!(r.consistent && r.exact.is_none());
    let upper = upper_profile_series(&k3, 3, &word, 0.0, 80).unwrap();
    assert_eq!(upper.len(), 81);
}

#[test]
fn phase_helpers_match_arguments() {
    for (re, im) in [(1, 1), (-1, 1), (0, 1), (-1, 0), (3, 1)] {
        let z = stabgrowth::geometry::ExactCharge::from_ints(re, im).unwrap();
        let want = (im as f64).atan2(re as f64) / PI;
        assert!((z.phase().0 - want).abs() < 1e-15);
    }
}
