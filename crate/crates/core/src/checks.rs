//! Invariant suites over seeded samples and the test corpus.
//!
//! Every suite returns a deterministic [`SuiteReport`]: no timings, no
//! hash-ordered data, and counterexamples in discovery order.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::{random_gaussian_charge, seeded_corpus, CorpusEntry, CorpusSpec};
use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::geometry::{gt_triangle_defect, left_hull, mass_from_factors, slope_defect_function, Charge, Gaussian};
use crate::growth::{
    deformation_invariance_check, delta_bounds, entropy_twist_power, estimate_growth_rate, spectral_bound_report,
    twist_mass_series, upper_profile_series, DEFORMATION_TOLERANCE, SANDWICH_TOLERANCE,
};
use crate::hn::{
    hn_filtration, hn_polygon_oracle, is_semistable, mass, support_constant_sample, CentralCharge, CohomologyModule,
    CohomologyProfile, HnFiltration, StabilityCondition,
};
use crate::intmat::IntMatrix;
use crate::quiver::{DimVector, Quiver};
use crate::rep::{quotient, random_rep, restriction, subrep_enumerate, universal_extension, Representation, DEFAULT_CAP};
use crate::spectral::spectral_radius;
use crate::twist::{
    poincare_closed_form, poincare_recursion_check, twist_k_matrix, word_upper_profile, Generator, GradedClass,
    TwistWord,
};

const MAX_COUNTEREXAMPLES: usize = 20;
const TOL: f64 = 1e-9;
const T_GRID: [f64; 3] = [-1.0, 0.0, 1.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Geometry,
    Hn,
    Polygon,
    MassTriangle,
    Twist,
    Growth,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 6] =
        [Suite::Geometry, Suite::Hn, Suite::Polygon, Suite::MassTriangle, Suite::Twist, Suite::Growth];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::Hn => "hn",
            Suite::Polygon => "polygon",
            Suite::MassTriangle => "mass-triangle",
            Suite::Twist => "twist",
            Suite::Growth => "growth",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::INDIVIDUAL
            .iter()
            .chain(&[Suite::All])
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: u64,
    pub violations: u64,
    pub metrics: BTreeMap<String, f64>,
    pub counterexamples: Vec<String>,
}

#[derive(Default)]
struct Tally {
    checks: u64,
    violations: u64,
    metrics: BTreeMap<String, f64>,
    counterexamples: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(what());
            }
        }
    }

    fn result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }

    fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.to_string(), value);
    }

    fn metric_min(&mut self, key: &str, value: f64) {
        let e = self.metrics.entry(key.to_string()).or_insert(f64::INFINITY);
        *e = e.min(value);
    }

    fn metric_max(&mut self, key: &str, value: f64) {
        let e = self.metrics.entry(key.to_string()).or_insert(f64::NEG_INFINITY);
        *e = e.max(value);
    }

    fn finish(self, suite: Suite) -> SuiteReport {
        SuiteReport {
            suite: suite.name().to_string(),
            passed: self.violations == 0,
            checks: self.checks,
            violations: self.violations,
            metrics: self.metrics,
            counterexamples: self.counterexamples,
        }
    }
}

/// Runs one suite, or every suite in a fixed order for [`Suite::All`].
pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<SuiteReport>> {
    let needs_corpus = matches!(suite, Suite::Hn | Suite::Polygon | Suite::MassTriangle | Suite::Growth | Suite::All);
    let corpus = if needs_corpus { seeded_corpus(&CorpusSpec::standard(seed))? } else { Vec::new() };
    let suites: Vec<Suite> = if suite == Suite::All { Suite::INDIVIDUAL.to_vec() } else { vec![suite] };
    Ok(suites
        .into_iter()
        .map(|s| match s {
            Suite::Geometry => geometry_suite(seed),
            Suite::Hn => hn_suite(&corpus),
            Suite::Polygon => polygon_suite(&corpus),
            Suite::MassTriangle => mass_triangle_suite(&corpus, seed),
            Suite::Twist => twist_suite(seed),
            Suite::Growth => growth_suite(&corpus, seed),
            Suite::All => unreachable!("expanded above"),
        })
        .collect())
}

fn random_bh_charge(rng: &mut impl Rng) -> Charge {
    if rng.random_range(0..20) == 0 {
        Charge::new(-rng.random_range(0.01..5.0), 0.0).expect("negative real axis")
    } else {
        Charge::new(rng.random_range(-5.0..5.0), rng.random_range(1e-6..5.0)).expect("open upper half-plane")
    }
}

pub fn geometry_suite(seed: u64) -> SuiteReport {
    let mut tally = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6765_6f6d);
    const SAMPLES: u64 = 100_000;
    let mut worst = f64::INFINITY;
    for _ in 0..SAMPLES {
        let (z1, z2) = (random_bh_charge(&mut rng), random_bh_charge(&mut rng));
        let t = rng.random_range(-3.0..=3.0);
        let d = gt_triangle_defect(&z1, &z2, t);
        worst = worst.min(d);
        tally.check(d >= -1e-12, || format!("g_t triangle: z1={z1:?} z2={z2:?} t={t} defect={d}"));
    }
    tally.metric("triangle_samples", SAMPLES as f64);
    tally.metric("triangle_min_defect", worst);

    for t in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        for (lo, hi) in [(-1.0, 0.0), (0.0, 1.0)] {
            let grid: Vec<f64> = (1..=1000).map(|k| lo + (hi - lo) * k as f64 / 1001.0).collect();
            let vals: Vec<f64> = grid.iter().map(|&x| slope_defect_function(x, t).expect("grid avoids poles")).collect();
            let monotone = vals.windows(2).all(|w| w[1] >= w[0]);
            tally.check(monotone, || format!("f not increasing on ({lo},{hi}) at t={t}"));
        }
        for x in [1e-6, -1e-6] {
            let v = slope_defect_function(x, t).expect("near zero");
            tally.check((v - t / PI).abs() < 1e-4, || format!("f({x}) = {v} at t={t}, expected t/pi"));
        }
    }
    for x in [-1.0, 0.0, 1.0] {
        tally.check(slope_defect_function(x, 0.5).is_err(), || format!("f accepted x={x}"));
    }

    for case in 0..500 {
        let k = rng.random_range(1..8);
        let mut pts: Vec<Gaussian> = (0..k).map(|_| random_gaussian_charge(&mut rng)).collect();
        let total = pts.iter().fold(Gaussian::zero(), |a, b| &a + b);
        let mut set: Vec<Gaussian> = vec![Gaussian::zero(), total.clone()];
        // Partial sums give plausible subobject charges below the total.
        for mask in 1u32..(1 << k) {
            if rng.random_range(0..3) == 0 {
                let s = (0..k).filter(|b| mask >> b & 1 == 1).fold(Gaussian::zero(), |a, b| &a + &pts[b]);
                set.push(s);
            }
        }
        let Some(hull) = tally.result(left_hull(&set, &total), || format!("left_hull case {case}")) else { continue };
        let edges = hull.edges();
        let decreasing = edges.windows(2).all(|w| crate::geometry::cmp_phase(&w[0], &w[1]) == std::cmp::Ordering::Greater);
        tally.check(decreasing, || format!("hull edges not decreasing in case {case}"));
        tally.check(set.iter().all(|p| hull.is_right_of_path(p)), || format!("point left of hull path in case {case}"));
        pts.push(Gaussian::zero());
        let mut bigger = set.clone();
        for _ in 0..3 {
            let extra = (0..k).filter(|_| rng.random_range(0..2) == 0).fold(Gaussian::zero(), |a, b| &a + &pts[b]);
            bigger.push(extra);
        }
        if let Some(outer) = tally.result(left_hull(&bigger, &total), || format!("left_hull superset case {case}")) {
            let inside = hull.vertices().iter().all(|v| outer.contains(v));
            tally.check(inside, || format!("hull monotonicity failed in case {case}"));
        }
    }

    for _ in 0..1000 {
        let z = random_bh_charge(&mut rng);
        let t = rng.random_range(-3.0..3.0);
        let shift = rng.random_range(-3i64..=3);
        let single = mass_from_factors(&[(z, z.phase().0 + shift as f64)], t).expect("one factor");
        let expected = z.g_t(t) * (shift as f64 * t).exp();
        tally.check((single - expected).abs() <= TOL * expected.max(1.0), || format!("single factor mass {z:?}"));
        let w = random_bh_charge(&mut rng);
        let (hi, lo) = if z.phase().0 > w.phase().0 { (z, w) } else { (w, z) };
        if hi.phase().0 - lo.phase().0 > 1e-6 {
            let both = mass_from_factors(&[(hi, hi.phase().0), (lo, lo.phase().0)], t).expect("decreasing");
            let parts = hi.g_t(t) + lo.g_t(t);
            tally.check((both - parts).abs() <= TOL * parts.max(1.0), || format!("mass additivity {hi:?} {lo:?}"));
        }
    }
    tally.finish(Suite::Geometry)
}

fn telescopes(sigma: &StabilityCondition, rep: &Representation, h: &HnFiltration) -> bool {
    let sum = h.charges.iter().fold(Gaussian::zero(), |a, b| &a + b);
    sum == sigma.charge_of(rep.dims())
}

pub fn hn_suite(corpus: &[CorpusEntry]) -> SuiteReport {
    let mut tally = Tally::default();
    for (idx, entry) in corpus.iter().enumerate() {
        let rep = &entry.rep;
        for (c, sigma) in entry.charges.iter().enumerate() {
            let label = || format!("corpus[{idx}] charge {c}");
            let Some(h) = tally.result(hn_filtration(sigma, rep, DEFAULT_CAP), label) else { continue };
            let decreasing = h.phases.windows(2).all(|w| w[1].0 < w[0].0);
            tally.check(decreasing, || format!("{}: phases {:?} not decreasing", label(), h.phases));
            tally.check(telescopes(sigma, rep, &h), || format!("{}: charges do not telescope", label()));
            for f in &h.factors {
                let ok = is_semistable(sigma, f, DEFAULT_CAP).unwrap_or(false);
                tally.check(ok, || format!("{}: factor {} not semistable", label(), f.dims()));
            }
            if let Some(m0) = tally.result(h.mass(0.0), label) {
                let z = sigma.charge_of(rep.dims()).modulus();
                tally.check(z <= m0 + TOL, || format!("{}: |Z| = {z} > mass {m0}", label()));
            }
            if h.len() == 1 {
                if let Some(k) = tally.result(support_constant_sample(sigma, std::slice::from_ref(rep)), label) {
                    tally.metric_min("support_constant_min", k);
                    tally.check(k > 0.0, || format!("{}: support ratio {k}", label()));
                }
            }
            for t in T_GRID {
                let profile = CohomologyProfile::single(CohomologyModule::Rep(rep.clone()), 0);
                if let Some(d) = tally.result(delta_bounds(sigma, &profile, t, DEFAULT_CAP), label) {
                    tally.check(d.lower <= d.upper + TOL, || format!("{}: delta bounds {d:?} at t={t}", label()));
                }
            }
        }
        let flat = StabilityCondition::standard(rep.quiver());
        for t in T_GRID {
            if let Some(m) = tally.result(mass(&flat, rep, t, DEFAULT_CAP), || format!("corpus[{idx}] sigma_0")) {
                let expected = rep.total_dim() as f64 * (t / 2.0).exp();
                let rel = (m - expected).abs() / expected;
                tally.metric_max("sigma0_max_relative_error", rel);
                tally.check(rel <= 1e-12, || format!("corpus[{idx}]: sigma_0 mass {m} vs {expected} at t={t}"));
            }
        }
    }
    tally.metric("corpus_size", corpus.len() as f64);
    tally.finish(Suite::Hn)
}

pub fn polygon_suite(corpus: &[CorpusEntry]) -> SuiteReport {
    let mut tally = Tally::default();
    let (mut agree, mut total) = (0u64, 0u64);
    for (idx, entry) in corpus.iter().enumerate() {
        for (c, sigma) in entry.charges.iter().enumerate() {
            let label = || format!("corpus[{idx}] charge {c}");
            if let Some(o) = tally.result(hn_polygon_oracle(sigma, &entry.rep, DEFAULT_CAP), label) {
                total += 1;
                agree += o.agreement as u64;
                tally.check(o.agreement, || {
                    format!("{}: hull {:?} vs HN {:?}", label(), o.polygon.vertices(), o.hn_vertices)
                });
            }
        }
    }
    tally.metric("polygon_cases", total as f64);
    tally.metric("agreement_rate", if total == 0 { 0.0 } else { agree as f64 / total as f64 });
    tally.finish(Suite::Polygon)
}

fn masses(sigma: &StabilityCondition, rep: &Representation) -> Result<[f64; 3]> {
    if rep.is_zero() {
        return Ok([0.0; 3]);
    }
    let h = hn_filtration(sigma, rep, DEFAULT_CAP)?;
    Ok([h.mass(T_GRID[0])?, h.mass(T_GRID[1])?, h.mass(T_GRID[2])?])
}

/// Subobjects per corpus entry used for short exact sequences, evenly spaced in enumeration order.
pub const MAX_SEQUENCES_PER_REP: usize = 24;

pub fn mass_triangle_suite(corpus: &[CorpusEntry], seed: u64) -> SuiteReport {
    let mut tally = Tally::default();
    let mut sequences = 0u64;
    for (idx, entry) in corpus.iter().enumerate() {
        let rep = &entry.rep;
        let Some(subs) = tally.result(subrep_enumerate(rep, DEFAULT_CAP), || format!("corpus[{idx}]")) else { continue };
        let stride = subs.len().div_ceil(MAX_SEQUENCES_PER_REP).max(1);
        let pieces: Vec<(Representation, Representation)> = subs
            .iter()
            .step_by(stride)
            .filter_map(|s| Some((restriction(rep, s).ok()?, quotient(rep, s).ok()?)))
            .collect();
        sequences += pieces.len() as u64;
        for (c, sigma) in entry.charges.iter().enumerate() {
            let Some(me) = tally.result(masses(sigma, rep), || format!("corpus[{idx}] charge {c}")) else { continue };
            for (a, q) in &pieces {
                let (Ok(ma), Ok(mc)) = (masses(sigma, a), masses(sigma, q)) else {
                    tally.check(false, || format!("corpus[{idx}] charge {c}: HN of a piece failed"));
                    continue;
                };
                for k in 0..3 {
                    tally.check(me[k] <= ma[k] + mc[k] + TOL, || {
                        format!("corpus[{idx}] charge {c}: m(E)={} > m(A)+m(C)={} at t={}", me[k], ma[k] + mc[k], T_GRID[k])
                    });
                }
            }
        }
    }
    tally.metric("short_exact_sequences", sequences as f64);

    let refined = refined_heart_cases(seed, &mut tally);
    tally.metric("refined_cases", refined as f64);
    tally.finish(Suite::MassTriangle)
}

/// Charges with some simples on the negative real axis, and every
/// enumerated `0 -> A -> B -> C -> 0` whose quotient is supported on those
/// simples (so `C` is semistable of phase one).
fn refined_heart_cases(seed: u64, tally: &mut Tally) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7265_6669);
    let field = PrimeField::F2;
    let mut cases = 0u64;
    let mut plans: Vec<(Representation, StabilityCondition)> = Vec::new();
    let a2 = Quiver::linear(2);
    let m = universal_extension(&a2, field, 0, 1).expect("A2 has an arrow");
    plans.push((m, StabilityCondition::new(&a2, CentralCharge::from_ints(&[(-1, 0), (0, 1)]).unwrap()).unwrap()));
    for _ in 0..60 {
        let quiver = if rng.random_range(0..2) == 0 { Quiver::linear(2) } else { Quiver::linear(3) };
        let n = quiver.vertex_count();
        let dims = DimVector((0..n).map(|_| rng.random_range(0..=2)).collect());
        if dims.is_zero() {
            continue;
        }
        let rep = random_rep(&quiver, field, &dims, rng.random(), DEFAULT_CAP).expect("small dims");
        let on_axis: Vec<bool> = (0..n).map(|_| rng.random_range(0..2) == 0).collect();
        let z: Vec<Gaussian> = on_axis
            .iter()
            .map(|&axis| {
                if axis {
                    Gaussian::from_fractions((-rng.random_range(1i64..=3), rng.random_range(1i64..=3)), (0, 1))
                } else {
                    random_gaussian_charge(&mut rng)
                }
            })
            .collect();
        let sigma = StabilityCondition::new(&quiver, CentralCharge::new(z).unwrap()).unwrap();
        plans.push((rep, sigma));
    }
    for (p, (rep, sigma)) in plans.iter().enumerate() {
        let on_axis: Vec<bool> = sigma.charge().values().iter().map(|z| z.phase().0 == 1.0).collect();
        let Ok(subs) = subrep_enumerate(rep, DEFAULT_CAP) else { continue };
        let Ok(mb) = masses(sigma, rep) else { continue };
        for s in &subs {
            let (Ok(a), Ok(c)) = (restriction(rep, s), quotient(rep, s)) else { continue };
            if c.is_zero() || !c.dims().0.iter().zip(&on_axis).all(|(&d, &ax)| d == 0 || ax) {
                continue;
            }
            cases += 1;
            let (Ok(ma), Ok(mc)) = (masses(sigma, &a), masses(sigma, &c)) else { continue };
            for k in 0..3 {
                let t = T_GRID[k];
                tally.check(ma[k] <= mb[k] + (-t).exp() * mc[k] + TOL, || {
                    format!("refined case {p}: m(A)={} > m(B)+e^-t m(C)={} at t={t}", ma[k], mb[k] + (-t).exp() * mc[k])
                });
            }
        }
    }
    cases
}

fn twist_quivers() -> Vec<(&'static str, Quiver)> {
    vec![("A2", Quiver::linear(2)), ("A3", Quiver::linear(3)), ("K3", Quiver::kronecker(3))]
}

fn random_word(rng: &mut impl Rng, n: usize, max_len: usize) -> TwistWord {
    let len = rng.random_range(0..=max_len);
    TwistWord::new(
        (0..len)
            .map(|_| match rng.random_range(0..3) {
                0 => Generator::Twist(rng.random_range(0..n)),
                1 => Generator::InverseTwist(rng.random_range(0..n)),
                _ => Generator::Shift(rng.random_range(-3..=3)),
            })
            .collect(),
    )
}

pub fn twist_suite(seed: u64) -> SuiteReport {
    let mut tally = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7477_6973);
    let field = PrimeField::F2;
    for (name, q) in twist_quivers() {
        let n = q.vertex_count();
        for cy in [3i64, 4] {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..=50u32 {
                        let ok = poincare_recursion_check(&q, field, cy, i, k, j).unwrap_or(false);
                        tally.check(ok, || format!("{name} N={cy}: recursion mismatch for Phi_{}^{k} S_{}", i + 1, j + 1));
                    }
                    for k in 0..=10u32 {
                        let w = TwistWord::new(vec![Generator::Twist(i); k as usize]);
                        let (Ok(up), Ok(exact)) =
                            (word_upper_profile(&q, cy, &w, &GradedClass::simple(n, j)), poincare_closed_form(&q, cy, i, k, j))
                        else {
                            tally.check(false, || format!("{name} N={cy}: profile failed"));
                            continue;
                        };
                        for t in T_GRID {
                            let (u, e) = (up.poincare().evaluate(t), exact.evaluate(t));
                            tally.check(u >= e - TOL * e.max(1.0), || format!("{name} N={cy}: upper {u} < exact {e}"));
                        }
                    }
                }
                let fwd = twist_k_matrix(&q, cy, &TwistWord::new(vec![Generator::Twist(i)]));
                let inv = twist_k_matrix(&q, cy, &TwistWord::new(vec![Generator::InverseTwist(i)]));
                if let (Ok(a), Ok(b)) = (fwd, inv) {
                    tally.check(&a * &b == IntMatrix::identity(n), || format!("{name} N={cy}: T{} T{}' != I", i + 1, i + 1));
                    if cy % 2 == 1 {
                        tally.check(a.determinant() == 1, || format!("{name} N={cy}: det T{} != 1", i + 1));
                    }
                }
            }
            for _ in 0..40 {
                let w = random_word(&mut rng, n, 6);
                let Some(m) = tally.result(twist_k_matrix(&q, cy, &w), || format!("{name}: matrix of {w}")) else { continue };
                for j in 0..n {
                    let Some(up) = tally.result(word_upper_profile(&q, cy, &w, &GradedClass::simple(n, j)), || format!("{name}: {w}"))
                    else {
                        continue;
                    };
                    let col: Vec<i64> = (0..n).map(|r| m.get(r, j)).collect();
                    tally.check(up.k_class_i64() == Some(col.clone()), || {
                        format!("{name} N={cy}: K-class of ({w}) S_{} is {:?}, matrix gives {col:?}", j + 1, up.k_class_i64())
                    });
                }
            }
        }
    }
    tally.finish(Suite::Twist)
}

pub fn growth_suite(corpus: &[CorpusEntry], seed: u64) -> SuiteReport {
    let mut tally = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6772_6f77);
    let field = PrimeField::F2;
    let a2 = Quiver::linear(2);
    let n_max = 200u64;

    let anchor_charges = [CentralCharge::standard(2), CentralCharge::from_ints(&[(0, 1), (-1, 1)]).unwrap()];
    for (c, charge) in anchor_charges.iter().enumerate() {
        let sigma = StabilityCondition::new(&a2, charge.clone()).unwrap();
        for t in T_GRID {
            let label = || format!("A2 N=3 anchor charge {c} t={t}");
            let Some(series) = tally.result(twist_mass_series(&sigma, field, 3, 0, t, n_max, DEFAULT_CAP), label) else {
                continue;
            };
            let Some(est) = tally.result(estimate_growth_rate(&series), label) else { continue };
            let exact = entropy_twist_power(&a2, 3, t).unwrap();
            let allowed = if t >= 0.0 { ((n_max + 2) as f64).ln() / n_max as f64 } else { 0.05 };
            let err = (est.slope_regression - exact).abs();
            tally.metric_max("anchor_max_error", err);
            tally.check(err <= allowed, || format!("{}: slope {} vs {exact}", label(), est.slope_regression));
            tally.check(est.gap < 0.01, || format!("{}: estimator gap {}", label(), est.gap));
        }
    }

    let deformation: Vec<CentralCharge> = [
        [(0, 1), (0, 1)],
        [(0, 1), (-1, 1)],
        [(0, 2), (-3, 1)],
        [(1, 1), (-2, 3)],
        [(-1, 0), (2, 1)],
    ]
    .iter()
    .map(|z| CentralCharge::from_ints(z).unwrap())
    .collect();
    for t in T_GRID {
        let r = deformation_invariance_check(&a2, field, 3, 0, t, &deformation, n_max, DEFORMATION_TOLERANCE, DEFAULT_CAP);
        if let Some(r) = tally.result(r, || format!("deformation t={t}")) {
            tally.metric_max("deformation_max_gap", r.max_gap);
            tally.check(r.passed, || format!("deformation t={t}: gap {}", r.max_gap));
        }
    }

    for (name, q) in twist_quivers() {
        let n = q.vertex_count();
        let flat = StabilityCondition::standard(&q);
        for cy in [3i64, 4] {
            for i in 0..n {
                let w = TwistWord::new(vec![Generator::Twist(i)]);
                let label = || format!("{name} N={cy} T{}", i + 1);
                let Some(m) = tally.result(twist_k_matrix(&q, cy, &w), label) else { continue };
                let Some(rho) = tally.result(spectral_radius(&m, 8), label) else { continue };
                for t in T_GRID {
                    let mass_est = twist_mass_series(&flat, field, cy, i, t, 120, DEFAULT_CAP).and_then(|s| estimate_growth_rate(&s));
                    let upper_est = upper_profile_series(&q, cy, &w, t, 120).and_then(|s| estimate_growth_rate(&s));
                    let (Some(h), Some(u)) = (tally.result(mass_est, label), tally.result(upper_est, label)) else { continue };
                    if t == 0.0 {
                        tally.check(rho.log_value() <= h.slope_regression + SANDWICH_TOLERANCE, || {
                            format!("{}: log rho {} > h {}", label(), rho.log_value(), h.slope_regression)
                        });
                    }
                    tally.check(h.slope_regression <= u.max_slope() + SANDWICH_TOLERANCE, || {
                        format!("{}: h {} > upper {} at t={t}", label(), h.slope_regression, u.max_slope())
                    });
                }
            }
        }
    }

    let k3 = Quiver::kronecker(3);
    if let Some(r) = tally.result(spectral_bound_report(&k3, 3, &"T1 T2".parse().unwrap(), n_max), || "K3 T1 T2".into()) {
        let oracle = ((7.0 + 45f64.sqrt()) / 2.0).ln();
        tally.metric("k3_t1t2_lower_log_rho", r.lower_log_rho);
        tally.metric("k3_t1t2_upper_bound", r.upper_bound);
        tally.check((r.lower_log_rho - oracle).abs() < 1e-9, || format!("K3 T1 T2 log rho {}", r.lower_log_rho));
        tally.check(r.consistent, || format!("K3 T1 T2 sandwich {r:?}"));
    }
    if let Some(r) = tally.result(spectral_bound_report(&a2, 3, &"T1".parse().unwrap(), n_max), || "A2 T1".into()) {
        tally.check(r.lower_log_rho.abs() < 1e-9 && r.exact == Some(0.0), || format!("A2 T1 report {r:?}"));
    }

    for idx in 0..corpus.len().min(100) {
        let entry = &corpus[idx];
        let profile = CohomologyProfile::single(CohomologyModule::Rep(entry.rep.clone()), 0);
        let flat = StabilityCondition::standard(entry.rep.quiver());
        for sigma in entry.charges.iter().chain(std::iter::once(&flat)) {
            for t in T_GRID {
                if let Some(d) = tally.result(delta_bounds(sigma, &profile, t, DEFAULT_CAP), || format!("delta corpus[{idx}]")) {
                    tally.check(d.lower <= d.upper + TOL, || format!("delta corpus[{idx}] t={t}: {d:?}"));
                }
            }
        }
    }

    for _ in 0..60 {
        let (name, q) = &twist_quivers()[rng.random_range(0..3)];
        let n = q.vertex_count();
        let cy = rng.random_range(3i64..=4);
        let (a, b) = (random_word(&mut rng, n, 5), random_word(&mut rng, n, 5));
        if let (Ok(ab), Ok(ma), Ok(mb)) = (twist_k_matrix(q, cy, &a.concat(&b)), twist_k_matrix(q, cy, &a), twist_k_matrix(q, cy, &b)) {
            tally.check(ab == &ma * &mb, || format!("{name} N={cy}: [{a} {b}] not multiplicative"));
        }
    }
    tally.finish(Suite::Growth)
}
