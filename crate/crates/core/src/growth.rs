//! Growth-rate estimation for mass sequences, entropy bounds and the
//! two-sided estimates of the complexity function.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::hn::{log_mass_of_complex, mass_of_complex, semisimple_mass, CentralCharge, CohomologyProfile, StabilityCondition};
use crate::laurent::log_sum_exp;
use crate::quiver::{check_cy_dim, DimVector, Quiver};
use crate::spectral::{spectral_radius_or_bound, SpectralMethod, DEFAULT_EXACT_CAP};
use crate::twist::{twist_k_matrix, twist_power_profile, word_upper_profile, GradedClass, TwistWord};

/// Minimum number of samples accepted by [`estimate_growth_rate`].
pub const MIN_SAMPLES: usize = 8;
/// Default tolerance for pairwise slope gaps across charges.
pub const DEFORMATION_TOLERANCE: f64 = 0.02;

/// A positive sequence `a_n`, stored as `(n, log a_n)` so huge masses stay finite.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthSeries {
    label: String,
    samples: Vec<(u64, f64)>,
}

impl GrowthSeries {
    pub fn new(label: impl Into<String>, values: &[(u64, f64)]) -> Result<Self> {
        for (k, &(_, v)) in values.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::NonPositiveSample(k));
            }
        }
        Self::from_log_values(label, values.iter().map(|&(n, v)| (n, v.ln())).collect())
    }

    pub fn from_log_values(label: impl Into<String>, samples: Vec<(u64, f64)>) -> Result<Self> {
        for (k, &(_, l)) in samples.iter().enumerate() {
            if !l.is_finite() {
                return Err(Error::NonPositiveSample(k));
            }
        }
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::NonIncreasingIndex);
        }
        Ok(Self { label: label.into(), samples })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn log_values(&self) -> &[(u64, f64)] {
        &self.samples
    }

    pub fn values(&self) -> Vec<(u64, f64)> {
        self.samples.iter().map(|&(n, l)| (n, l.exp())).collect()
    }

    /// `n,value,log_value` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value,log_value\n");
        for &(n, l) in &self.samples {
            out.push_str(&format!("{n},{:e},{l}\n", l.exp()));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthEstimate {
    /// Least-squares slope of `log a_n` against `n` over the tail.
    pub slope_regression: f64,
    /// Mean per-step increment of `log a_n` over the tail.
    pub slope_increment: f64,
    pub gap: f64,
    pub residual_variance: f64,
    pub tail_start: u64,
    pub tail_len: usize,
}

impl GrowthEstimate {
    pub fn max_slope(&self) -> f64 {
        self.slope_regression.max(self.slope_increment)
    }
}

/// Estimates `lim (1/n) log a_n` from the last half of the samples.
pub fn estimate_growth_rate(series: &GrowthSeries) -> Result<GrowthEstimate> {
    let s = &series.samples;
    if s.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples { needed: MIN_SAMPLES, got: s.len() });
    }
    let tail = &s[s.len() / 2..];
    let len = tail.len() as f64;
    let mean_x = tail.iter().map(|&(n, _)| n as f64).sum::<f64>() / len;
    let mean_y = tail.iter().map(|&(_, l)| l).sum::<f64>() / len;
    let sxx: f64 = tail.iter().map(|&(n, _)| (n as f64 - mean_x).powi(2)).sum();
    let sxy: f64 = tail.iter().map(|&(n, l)| (n as f64 - mean_x) * (l - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual_variance = tail
        .iter()
        .map(|&(n, l)| (l - intercept - slope * n as f64).powi(2))
        .sum::<f64>()
        / len;
    let (first, last) = (tail[0], tail[tail.len() - 1]);
    let increment = (last.1 - first.1) / (last.0 - first.0) as f64;
    Ok(GrowthEstimate {
        slope_regression: slope,
        slope_increment: increment,
        gap: (slope - increment).abs(),
        residual_variance,
        tail_start: first.0,
        tail_len: tail.len(),
    })
}

/// `log m_{sigma,t}(Phi_i^{kn} G [sn])` for `n = 0..=n_max`.
#[allow(clippy::too_many_arguments)]
pub fn twist_power_mass_series(
    sigma: &StabilityCondition,
    field: PrimeField,
    cy_dim: i64,
    i: usize,
    k: u32,
    shift: i64,
    t: f64,
    n_max: u64,
    cap: usize,
) -> Result<GrowthSeries> {
    let quiver = sigma.quiver();
    let mut samples = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let mut logs = Vec::with_capacity(quiver.vertex_count());
        for j in 0..quiver.vertex_count() {
            let power = (k as u64 * n) as u32;
            let prof = twist_power_profile(quiver, field, cy_dim, i, power, j)?;
            if let Some(l) = log_mass_of_complex(sigma, &prof.profile, t, cap)? {
                logs.push(l);
            }
        }
        samples.push((n, log_sum_exp(&logs) + (shift as f64) * (n as f64) * t));
    }
    GrowthSeries::from_log_values(format!("mass of (T{}^{k} S[{shift}])^n G at t={t}", i + 1), samples)
}

/// `m_{sigma,t}(Phi_i^n G)` for `n = 0..=n_max`, as logs.
pub fn twist_mass_series(
    sigma: &StabilityCondition,
    field: PrimeField,
    cy_dim: i64,
    i: usize,
    t: f64,
    n_max: u64,
    cap: usize,
) -> Result<GrowthSeries> {
    sigma.quiver().check_vertex(i)?;
    twist_power_mass_series(sigma, field, cy_dim, i, 1, 0, t, n_max, cap)
}

/// `h_t(Phi_i) = max(0, (1 - N) t)`.
pub fn entropy_twist_power(quiver: &Quiver, cy_dim: i64, t: f64) -> Result<f64> {
    let n = check_cy_dim(cy_dim)? as f64;
    if !quiver.is_connected() || (quiver.vertex_count() == 1 && quiver.arrows().is_empty()) {
        return Err(Error::TrivialOrDisconnectedQuiver);
    }
    Ok(0f64.max((1.0 - n) * t))
}

/// Entropy at `t` of a word `Phi_i^k [s]`, a pure shift, or `None` otherwise.
pub fn exact_word_entropy(quiver: &Quiver, cy_dim: i64, word: &TwistWord, t: f64) -> Result<Option<f64>> {
    if let Some(s) = word.as_pure_shift() {
        return Ok(Some(s as f64 * t));
    }
    match word.as_twist_power() {
        Some((_, k, s)) => match entropy_twist_power(quiver, cy_dim, t) {
            Ok(h) => Ok(Some(k as f64 * h + s as f64 * t)),
            Err(Error::TrivialOrDisconnectedQuiver) => Ok(None),
            Err(e) => Err(e),
        },
        None => Ok(None),
    }
}

/// `log P_t` of the no-cancellation bound for `word^n G`, `n = 0..=n_max`.
pub fn upper_profile_series(quiver: &Quiver, cy_dim: i64, word: &TwistWord, t: f64, n_max: u64) -> Result<GrowthSeries> {
    let mut class = GradedClass::generator(quiver.vertex_count());
    let mut samples = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        if n > 0 {
            class = word_upper_profile(quiver, cy_dim, word, &class)?;
        }
        let l = class.poincare().log_evaluate(t).ok_or(Error::ZeroObject)?;
        samples.push((n, l));
    }
    GrowthSeries::from_log_values(format!("upper bound for ({word})^n G at t={t}"), samples)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyReport {
    pub lower_log_rho: f64,
    pub spectral_method: SpectralMethod,
    pub exact: Option<f64>,
    pub upper_bound: f64,
    pub upper_estimate: GrowthEstimate,
    /// `lower <= exact <= upper` within the sandwich tolerance.
    pub consistent: bool,
}

/// Sandwich tolerance used by [`spectral_bound_report`].
pub const SANDWICH_TOLERANCE: f64 = 0.05;

/// `log rho([F]) <= h_0(F) <= ` growth of the no-cancellation bound, at `t = 0`.
pub fn spectral_bound_report(quiver: &Quiver, cy_dim: i64, word: &TwistWord, n_max: u64) -> Result<EntropyReport> {
    let m = twist_k_matrix(quiver, cy_dim, word)?;
    let rho = spectral_radius_or_bound(&m, DEFAULT_EXACT_CAP)?;
    let lower = rho.log_value();
    let upper_estimate = estimate_growth_rate(&upper_profile_series(quiver, cy_dim, word, 0.0, n_max)?)?;
    let upper = upper_estimate.max_slope();
    let exact = exact_word_entropy(quiver, cy_dim, word, 0.0)?;
    let mut consistent = lower <= upper + SANDWICH_TOLERANCE;
    if let Some(h) = exact {
        consistent &= lower <= h + 1e-9 && h <= upper + SANDWICH_TOLERANCE;
    }
    Ok(EntropyReport {
        lower_log_rho: lower,
        spectral_method: rho.method,
        exact,
        upper_bound: upper,
        upper_estimate,
        consistent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeltaBounds {
    pub lower: f64,
    pub upper: f64,
}

/// `m_{sigma,t}(E) / m_{sigma,t}(G) <= delta_t(G, E) <= P_t(E)`.
pub fn delta_bounds(sigma: &StabilityCondition, profile: &CohomologyProfile, t: f64, cap: usize) -> Result<DeltaBounds> {
    if profile.is_zero() {
        return Err(Error::ZeroObject);
    }
    let n = sigma.quiver().vertex_count();
    let m_g = semisimple_mass(sigma, &DimVector(vec![1; n]), t);
    let lower = mass_of_complex(sigma, profile, t, cap)? / m_g;
    let upper = profile.poincare().evaluate(t);
    Ok(DeltaBounds { lower, upper })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeformationReport {
    pub estimates: Vec<GrowthEstimate>,
    pub max_gap: f64,
    pub passed: bool,
}

/// Mass-growth slopes of `Phi_i` for several charges; passes when all pairwise gaps are below `tol`.
#[allow(clippy::too_many_arguments)]
pub fn deformation_invariance_check(
    quiver: &Quiver,
    field: PrimeField,
    cy_dim: i64,
    i: usize,
    t: f64,
    charges: &[CentralCharge],
    n_max: u64,
    tol: f64,
    cap: usize,
) -> Result<DeformationReport> {
    if charges.is_empty() {
        return Err(Error::TooFewCharges(1));
    }
    let estimates = charges
        .iter()
        .map(|c| {
            let sigma = StabilityCondition::new(quiver, c.clone())?;
            estimate_growth_rate(&twist_mass_series(&sigma, field, cy_dim, i, t, n_max, cap)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let slopes: Vec<f64> = estimates.iter().map(|e| e.slope_regression).collect();
    let max = slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = slopes.iter().copied().fold(f64::INFINITY, f64::min);
    let max_gap = max - min;
    Ok(DeformationReport { estimates, max_gap, passed: max_gap < tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hn::{mass, CohomologyModule};
    use crate::rep::{universal_extension, Representation};

    const F2: PrimeField = PrimeField::F2;

    fn a2() -> Quiver {
        Quiver::linear(2)
    }

    fn sigma_a2() -> StabilityCondition {
        StabilityCondition::new(&a2(), CentralCharge::from_ints(&[(0, 1), (-1, 1)]).unwrap()).unwrap()
    }

    #[test]
    fn estimator_examples() {
        let exp: Vec<(u64, f64)> = (0..=200).map(|n| (n, (0.5 * n as f64).exp())).collect();
        let e = estimate_growth_rate(&GrowthSeries::new("exp", &exp).unwrap()).unwrap();
        assert!((e.slope_regression - 0.5).abs() < 1e-9);
        assert!((e.slope_increment - 0.5).abs() < 1e-9);
        let lin: Vec<(u64, f64)> = (0..=200).map(|n| (n, n as f64 + 2.0)).collect();
        let e = estimate_growth_rate(&GrowthSeries::new("lin", &lin).unwrap()).unwrap();
        assert!(e.slope_regression.abs() < 0.03 && e.slope_increment.abs() < 0.03);
        assert_eq!(e.tail_len, 101);
    }

    #[test]
    fn estimator_errors() {
        let few: Vec<(u64, f64)> = (0..5).map(|n| (n, 1.0)).collect();
        assert_eq!(
            estimate_growth_rate(&GrowthSeries::new("few", &few).unwrap()),
            Err(Error::TooFewSamples { needed: 8, got: 5 })
        );
        assert_eq!(GrowthSeries::new("neg", &[(0, 1.0), (1, 0.0)]), Err(Error::NonPositiveSample(1)));
        assert_eq!(GrowthSeries::new("order", &[(1, 1.0), (1, 2.0)]), Err(Error::NonIncreasingIndex));
    }

    #[test]
    fn csv_format() {
        let s = GrowthSeries::new("x", &[(0, 1.0), (1, 2.0)]).unwrap();
        let csv = s.to_csv();
        assert!(csv.starts_with("n,value,log_value\n0,1e0,0\n1,2e0,"));
    }

    #[test]
    fn series_examples() {
        let flat = StabilityCondition::standard(&a2());
        let s = twist_mass_series(&flat, F2, 3, 0, 0.0, 20, 8).unwrap();
        for (n, v) in s.values() {
            assert!((v - (n as f64 + 2.0)).abs() < 1e-9);
        }
        let e = estimate_growth_rate(&twist_mass_series(&flat, F2, 3, 0, 0.0, 200, 8).unwrap()).unwrap();
        assert!(e.slope_regression.abs() < (202f64).ln() / 200.0);
        let s = twist_mass_series(&sigma_a2(), F2, 3, 0, 0.0, 8, 8).unwrap();
        let v1 = s.values()[1].1;
        assert!((v1 - (2f64.sqrt() + 2.0)).abs() < 1e-12);
        let m_g = s.values()[0].1;
        assert!((m_g - (1.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn entropy_examples() {
        let q = a2();
        assert_eq!(entropy_twist_power(&q, 3, -1.0).unwrap(), 2.0);
        assert_eq!(entropy_twist_power(&q, 4, 0.0).unwrap(), 0.0);
        assert_eq!(entropy_twist_power(&q, 5, 2.0).unwrap(), 0.0);
        assert_eq!(entropy_twist_power(&Quiver::linear(1), 3, 1.0), Err(Error::TrivialOrDisconnectedQuiver));
        let disconnected = Quiver::from_arrows(3, &[(0, 1)]).unwrap();
        assert_eq!(entropy_twist_power(&disconnected, 3, 1.0), Err(Error::TrivialOrDisconnectedQuiver));
        assert!(entropy_twist_power(&q, 2, 1.0).is_err());
    }

    #[test]
    fn spectral_reports() {
        let r = spectral_bound_report(&a2(), 3, &"T1".parse().unwrap(), 60).unwrap();
        assert!(r.lower_log_rho.abs() < 1e-9);
        assert_eq!(r.exact, Some(0.0));
        assert!(r.upper_bound >= -1e-9 && r.consistent);
        let r = spectral_bound_report(&Quiver::kronecker(3), 3, &"T1 T2".parse().unwrap(), 60).unwrap();
        assert!((r.lower_log_rho - 1.924847).abs() < 1e-6);
        assert_eq!(r.exact, None);
        assert!(r.consistent);
        let r = spectral_bound_report(&a2(), 3, &"S[1]".parse().unwrap(), 20).unwrap();
        assert!(r.lower_log_rho.abs() < 1e-12);
        assert_eq!(r.exact, Some(0.0));
    }

    #[test]
    fn delta_examples() {
        let flat = StabilityCondition::standard(&a2());
        let m = CohomologyProfile::single(CohomologyModule::Rep(universal_extension(&a2(), F2, 0, 1).unwrap()), 0);
        let d = delta_bounds(&flat, &m, 0.0, 8).unwrap();
        assert!((d.lower - 1.0).abs() < 1e-12 && (d.upper - 2.0).abs() < 1e-12);
        let g = CohomologyProfile::single(CohomologyModule::Semisimple(DimVector(vec![1, 1])), 0);
        let d = delta_bounds(&sigma_a2(), &g, 0.0, 8).unwrap();
        assert!((d.lower - 1.0).abs() < 1e-12 && (d.upper - 2.0).abs() < 1e-12);
        let s = CohomologyProfile::single(CohomologyModule::Rep(Representation::simple(&a2(), F2, 0).unwrap()), 0);
        let d = delta_bounds(&flat, &s, 0.0, 8).unwrap();
        assert!((d.lower - 0.5).abs() < 1e-12 && (d.upper - 1.0).abs() < 1e-12);
        let zero = CohomologyProfile::single(CohomologyModule::Semisimple(DimVector(vec![0, 0])), 0);
        assert_eq!(delta_bounds(&flat, &zero, 0.0, 8), Err(Error::ZeroObject));
        let e = universal_extension(&a2(), F2, 0, 1).unwrap();
        assert!(mass(&flat, &e, 0.0, 8).unwrap() > 0.0);
    }

    #[test]
    fn deformation_examples() {
        let charges: Vec<CentralCharge> = [[(0, 1), (0, 1)], [(0, 1), (-1, 1)], [(0, 2), (-3, 1)]]
            .iter()
            .map(|z| CentralCharge::from_ints(z).unwrap())
            .collect();
        for t in [-1.0, 0.0] {
            let r = deformation_invariance_check(&a2(), F2, 3, 0, t, &charges, 200, DEFORMATION_TOLERANCE, 8).unwrap();
            assert!(r.passed, "t={t} gap={}", r.max_gap);
            let target = if t < 0.0 { 2.0 } else { 0.0 };
            for e in &r.estimates {
                assert!((e.slope_regression - target).abs() < 0.05);
            }
        }
        let single = deformation_invariance_check(&a2(), F2, 3, 0, 1.0, &charges[..1], 50, 0.02, 8).unwrap();
        assert!(single.passed);
    }
}
