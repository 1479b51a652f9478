//! Geometry of central charges in the semi-closed upper half-plane.
//!
//! Two representations of a charge coexist. [`Gaussian`] is an exact complex
//! number with rational coordinates; it drives every combinatorial decision
//! (phase ordering, hull construction) through cross-product sign tests.
//! [`Charge`] is its floating counterpart and carries the transcendental
//! quantities: `g_t`, masses and defect functions.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used by float-valued inequality checks.
pub const FLOAT_TOL: f64 = 1e-9;

/// Exact complex number with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self { re: BigRational::from_integer(re.into()), im: BigRational::from_integer(im.into()) }
    }

    /// `(re_num / re_den) + (im_num / im_den) i`. Panics on a zero denominator.
    pub fn from_fractions(re: (i64, i64), im: (i64, i64)) -> Self {
        Self {
            re: BigRational::new(re.0.into(), re.1.into()),
            im: BigRational::new(im.0.into(), im.1.into()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Membership in bH = { r e^{i pi phi} : r > 0, phi in (0, 1] }.
    pub fn in_upper_half(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && self.re.is_negative())
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigRational::from_integer(k.into());
        Self { re: &self.re * &k, im: &self.im * &k }
    }

    /// `Im(conj(self) * other)`; positive iff `other` is counter-clockwise from `self`.
    pub fn cross(&self, other: &Gaussian) -> BigRational {
        &self.re * &other.im - &self.im * &other.re
    }

    /// Sign of the orientation of the triangle `(o, a, b)`.
    pub fn orient(o: &Gaussian, a: &Gaussian, b: &Gaussian) -> Ordering {
        let ab = (a - o).cross(&(b - o));
        ab.cmp(&BigRational::zero())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    pub fn modulus(&self) -> f64 {
        let (re, im) = self.to_f64();
        re.hypot(im)
    }

    /// Ordering key along which every element of bH is positive: imaginary
    /// part first, then negated real part.
    fn height_key(&self) -> (BigRational, BigRational) {
        (self.im.clone(), -self.re.clone())
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fallback for huge numerators/denominators.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Add for &Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re)?;
        if self.im.is_negative() {
            write!(f, "-{}i", -self.im.clone())
        } else {
            write!(f, "+{}i", self.im)
        }
    }
}

/// A phase. Heart objects have phases in (0, 1]; shifted objects anywhere on the real line.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Phase(pub f64);

impl Phase {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn shifted(self, m: i64) -> Phase {
        Phase(self.0 + m as f64)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An exact charge known to lie in bH.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactCharge(Gaussian);

impl ExactCharge {
    pub fn new(z: Gaussian) -> Result<Self> {
        if z.in_upper_half() {
            Ok(Self(z))
        } else {
            Err(Error::OutsideUpperHalfPlane { re: z.re.to_string(), im: z.im.to_string() })
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Result<Self> {
        Self::new(Gaussian::from_ints(re, im))
    }

    pub fn value(&self) -> &Gaussian {
        &self.0
    }

    pub fn into_inner(self) -> Gaussian {
        self.0
    }

    /// Exact on the two axes (1/2 and 1), float elsewhere.
    pub fn phase(&self) -> Phase {
        if self.0.im.is_zero() {
            Phase(1.0)
        } else if self.0.re.is_zero() {
            Phase(0.5)
        } else {
            self.to_float().phase()
        }
    }

    /// Compares phases with a cross-product sign test; no arctangent involved.
    pub fn cmp_phase(&self, other: &ExactCharge) -> Ordering {
        // phi(other) < phi(self) <=> self is counter-clockwise from other.
        other.0.cross(&self.0).cmp(&BigRational::zero())
    }

    pub fn to_float(&self) -> Charge {
        let (re, im) = self.0.to_f64();
        Charge { re, im: if im == 0.0 { 0.0 } else { im } }
    }
}

impl fmt::Display for ExactCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Compares the phases of two nonzero elements of bH.
pub fn cmp_phase(a: &Gaussian, b: &Gaussian) -> Ordering {
    b.cross(a).cmp(&BigRational::zero())
}

/// Floating-point charge in bH.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Charge {
    re: f64,
    im: f64,
}

impl Charge {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        let ok = re.is_finite() && im.is_finite() && (im > 0.0 || (im == 0.0 && re < 0.0));
        if ok {
            Ok(Self { re, im: if im == 0.0 { 0.0 } else { im } })
        } else {
            Err(Error::OutsideUpperHalfPlane { re: re.to_string(), im: im.to_string() })
        }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn phase(&self) -> Phase {
        if self.im == 0.0 {
            Phase(1.0)
        } else if self.re == 0.0 {
            Phase(0.5)
        } else {
            Phase(self.im.atan2(self.re) / PI)
        }
    }

    pub fn g_t(&self, t: f64) -> f64 {
        g_t(self, t)
    }
}

impl Add for Charge {
    type Output = Charge;
    /// Sum of two elements of bH; bH is closed under addition.
    fn add(self, rhs: Charge) -> Charge {
        Charge::new(self.re + rhs.re, self.im + rhs.im)
            .expect("bH is closed under addition")
    }
}

/// `(1/pi) arg z` with arg in (0, pi].
pub fn phase(z: &Charge) -> Phase {
    z.phase()
}

/// `g_t(z) = |z| e^{phi(z) t}`.
pub fn g_t(z: &Charge, t: f64) -> f64 {
    z.modulus() * (z.phase().0 * t).exp()
}

/// `g_t(z1) + g_t(z2) - g_t(z1 + z2)`, nonnegative for every pair in bH.
pub fn gt_triangle_defect(z1: &Charge, z2: &Charge, t: f64) -> f64 {
    let sum = Charge::new(z1.re + z2.re, z1.im + z2.im);
    match sum {
        Ok(s) => g_t(z1, t) + g_t(z2, t) - g_t(&s, t),
        // Both summands lie in bH, so the sum cannot leave it.
        Err(_) => unreachable!("sum of elements of bH left bH"),
    }
}

/// `f(x) = (e^{xt} - cos(pi x)) / sin(pi x)` on (-1, 0) and (0, 1).
///
/// The numerator is evaluated as `expm1(xt) + 2 sin^2(pi x / 2)` so the
/// cancellation near `x = 0` does not destroy the limit `t / pi`.
pub fn slope_defect_function(x: f64, t: f64) -> Result<f64> {
    if !(x.is_finite() && x.abs() < 1.0 && x != 0.0) {
        return Err(Error::SlopeDefectDomain(x));
    }
    let half = (PI * x / 2.0).sin();
    let numer = (x * t).exp_m1() + 2.0 * half * half;
    Ok(numer / (PI * x).sin())
}

/// Mass of an object given its semistable factors `(charge, phase)`.
///
/// The charge is the heart representative of a factor; the phase may differ
/// from the charge phase by an integer (a shifted factor). Phases must be
/// strictly decreasing. The empty list has mass zero.
pub fn mass_from_factors(factors: &[(Charge, f64)], t: f64) -> Result<f64> {
    for (k, w) in factors.windows(2).enumerate() {
        if !(w[1].1 < w[0].1) {
            return Err(Error::NonDecreasingPhases(k + 1));
        }
    }
    let mut total = 0.0;
    for (z, phi) in factors {
        let base = z.phase().0;
        let shift = phi - base;
        if (shift - shift.round()).abs() > FLOAT_TOL {
            return Err(Error::PhaseMismatch { phase: *phi, charge_phase: base });
        }
        total += z.modulus() * (phi * t).exp();
    }
    Ok(total)
}

/// The left boundary of a Harder–Narasimhan polygon: extremal points from 0 to `Z(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnPolygon {
    vertices: Vec<Gaussian>,
}

impl HnPolygon {
    pub fn vertices(&self) -> &[Gaussian] {
        &self.vertices
    }

    pub fn total(&self) -> &Gaussian {
        self.vertices.last().expect("polygon has at least one vertex")
    }

    pub fn edges(&self) -> Vec<Gaussian> {
        self.vertices.windows(2).map(|w| &w[1] - &w[0]).collect()
    }

    /// Edge phases strictly decrease along the path.
    pub fn is_convex_chain(&self) -> bool {
        self.edges().windows(2).all(|e| cmp_phase(&e[0], &e[1]) == Ordering::Greater)
    }

    /// `p` lies on or to the right of every edge of the path (exact test).
    pub fn is_right_of_path(&self, p: &Gaussian) -> bool {
        self.vertices
            .windows(2)
            .all(|w| Gaussian::orient(&w[0], &w[1], p) != Ordering::Greater)
    }

    /// `p` lies in the closed region bounded by the path and the chord from `Z(E)` back to 0.
    pub fn contains(&self, p: &Gaussian) -> bool {
        let left_of_chord = self.total().cross(p) >= BigRational::zero();
        left_of_chord && self.is_right_of_path(p)
    }

    /// SVG drawing with a unit-scaled view box: the extremal chain as a path
    /// and `points` as dots.
    pub fn to_svg(&self, points: &[Gaussian]) -> String {
        let all: Vec<(f64, f64)> =
            self.vertices.iter().chain(points.iter()).map(Gaussian::to_f64).collect();
        let scale = all
            .iter()
            .map(|(x, y)| x.abs().max(y.abs()))
            .fold(0.0_f64, f64::max)
            .max(f64::MIN_POSITIVE);
        // `+ 0.0` normalizes negative zero for stable output.
        let map = |(x, y): (f64, f64)| (x / scale + 0.0, -y / scale + 0.0);
        let mut out = String::new();
        out.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.1 -1.1 2.2 1.2\">\n",
        );
        out.push_str(
            "  <line x1=\"-1.1\" y1=\"0\" x2=\"1.1\" y2=\"0\" stroke=\"#999\" stroke-width=\"0.005\"/>\n",
        );
        for p in points {
            let (x, y) = map(p.to_f64());
            out.push_str(&format!(
                "  <circle cx=\"{x:.6}\" cy=\"{y:.6}\" r=\"0.015\" fill=\"#36c\"/>\n"
            ));
        }
        let mut d = String::new();
        for (k, v) in self.vertices.iter().enumerate() {
            let (x, y) = map(v.to_f64());
            d.push_str(&format!("{}{x:.6} {y:.6}", if k == 0 { "M " } else { " L " }));
        }
        out.push_str(&format!(
            "  <path d=\"{d}\" fill=\"none\" stroke=\"#c33\" stroke-width=\"0.01\"/>\n"
        ));
        out.push_str("</svg>\n");
        out
    }
}

/// Left hull of a set of subobject charges.
///
/// Returns the extremal path `0 = z_0, ..., z_k = total` of the convex hull,
/// restricted to the closed half-plane left of the line through 0 and
/// `total`. Collinear points are merged so no direction repeats. The origin
/// is added if absent.
pub fn left_hull(points: &[Gaussian], total: &Gaussian) -> Result<HnPolygon> {
    if points.is_empty() {
        return Err(Error::EmptyInput("left_hull point set"));
    }
    if !points.contains(total) {
        return Err(Error::TotalNotInSet);
    }
    for p in points {
        if !(p.is_zero() || p.in_upper_half()) {
            return Err(Error::OutsideUpperHalfPlane { re: p.re.to_string(), im: p.im.to_string() });
        }
    }
    let total_key = total.height_key();
    let mut sorted: Vec<Gaussian> = points
        .iter()
        .filter(|p| p.height_key() <= total_key)
        .cloned()
        .chain(std::iter::once(Gaussian::zero()))
        .collect();
    sorted.sort_by(|a, b| a.height_key().cmp(&b.height_key()));
    sorted.dedup();

    // Upper monotone chain in the height order: keep only clockwise turns.
    let mut chain: Vec<Gaussian> = Vec::with_capacity(sorted.len());
    for p in sorted {
        while chain.len() >= 2
            && Gaussian::orient(&chain[chain.len() - 2], &chain[chain.len() - 1], &p)
                != Ordering::Less
        {
            chain.pop();
        }
        chain.push(p);
    }
    Ok(HnPolygon { vertices: chain })
}

pub(crate) fn bigint_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Charge {
        Charge::new(re, im).unwrap()
    }

    fn g(re: i64, im: i64) -> Gaussian {
        Gaussian::from_ints(re, im)
    }

    #[test]
    fn phase_examples() {
        assert_eq!(phase(&c(0.0, 1.0)).0, 0.5);
        assert_eq!(phase(&c(-1.0, 0.0)).0, 1.0);
        let oracle = 2.0_f64.atan2(-1.0) / PI;
        assert!((phase(&c(-1.0, 2.0)).0 - oracle).abs() < 1e-15);
        assert!((oracle - 0.647584).abs() < 1e-6);
    }

    #[test]
    fn rejects_outside_upper_half() {
        assert!(Charge::new(0.0, 0.0).is_err());
        assert!(Charge::new(1.0, 0.0).is_err());
        assert!(Charge::new(1.0, -1.0).is_err());
        assert!(ExactCharge::from_ints(0, 0).is_err());
        assert!(ExactCharge::from_ints(2, 0).is_err());
        assert!(ExactCharge::from_ints(-2, 0).is_ok());
    }

    #[test]
    fn g_t_examples() {
        assert_eq!(g_t(&c(0.0, 3.0), 0.0), 3.0);
        assert!((g_t(&c(0.0, 1.0), 2.0) - std::f64::consts::E).abs() < 1e-15);
        for t in [-2.0, 0.3, 1.7] {
            assert!((g_t(&c(-1.0, 0.0), t) - f64::exp(t)).abs() < 1e-14);
        }
    }

    #[test]
    fn defect_examples() {
        let d = gt_triangle_defect(&c(0.0, 1.0), &c(-1.0, 0.0), 0.0);
        assert!((d - (2.0 - 2.0_f64.sqrt())).abs() < 1e-15);
        for t in [-1.0, 0.0, 2.5] {
            assert!(gt_triangle_defect(&c(0.0, 1.0), &c(0.0, 2.0), t).abs() < 1e-12);
        }
        // Both sides evaluated independently.
        let lhs = g_t(&c(0.0, 2.0), 1.0);
        let rhs = 2.0_f64.sqrt() * (0.75_f64).exp() + 2.0_f64.sqrt() * (0.25_f64).exp();
        let d = gt_triangle_defect(&c(-1.0, 1.0), &c(1.0, 1.0), 1.0);
        assert!((d - (rhs - lhs)).abs() < 1e-12);
        assert!(d > 0.0);
    }

    #[test]
    fn slope_defect_examples() {
        let v = slope_defect_function(1e-7, PI).unwrap();
        assert!((v - 1.0).abs() < 1e-5);
        assert!((slope_defect_function(0.5, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((slope_defect_function(-0.5, 0.0).unwrap() + 1.0).abs() < 1e-15);
        for x in [-1.0, 0.0, 1.0, 1.5] {
            assert!(slope_defect_function(x, 0.0).is_err());
        }
    }

    #[test]
    fn left_hull_examples() {
        let hull = left_hull(&[g(0, 0), g(-1, 1), g(-1, 2)], &g(-1, 2)).unwrap();
        assert_eq!(hull.vertices(), &[g(0, 0), g(-1, 1), g(-1, 2)]);
        let hull = left_hull(&[g(0, 0), g(1, 1)], &g(1, 1)).unwrap();
        assert_eq!(hull.vertices(), &[g(0, 0), g(1, 1)]);
        let hull = left_hull(&[g(0, 0), g(0, 1), g(0, 2), g(0, 3)], &g(0, 3)).unwrap();
        assert_eq!(hull.vertices(), &[g(0, 0), g(0, 3)]);
    }

    #[test]
    fn left_hull_handles_negative_real_edges() {
        // S1 in P(1) sitting under an object of phase < 1.
        let pts = [g(0, 0), g(-1, 0), g(-1, 1), g(0, 1)];
        let hull = left_hull(&pts, &g(-1, 1)).unwrap();
        assert_eq!(hull.vertices(), &[g(0, 0), g(-1, 0), g(-1, 1)]);
        assert!(hull.is_convex_chain());
    }

    #[test]
    fn left_hull_errors() {
        assert_eq!(left_hull(&[], &g(0, 1)), Err(Error::EmptyInput("left_hull point set")));
        assert_eq!(left_hull(&[g(0, 0)], &g(0, 1)), Err(Error::TotalNotInSet));
        assert!(left_hull(&[g(0, 0), g(1, -1), g(0, 1)], &g(0, 1)).is_err());
    }

    #[test]
    fn mass_from_factors_examples() {
        let m = mass_from_factors(&[(c(-1.0, 1.0), 0.75), (c(0.0, 1.0), 0.5)], 0.0).unwrap();
        assert!((m - (2.0_f64.sqrt() + 1.0)).abs() < 1e-12);
        assert_eq!(mass_from_factors(&[], 3.0).unwrap(), 0.0);
        let m = mass_from_factors(&[(c(0.0, 1.0), 0.5)], 2.0).unwrap();
        assert!((m - std::f64::consts::E).abs() < 1e-15);
        // shifted factor
        let m = mass_from_factors(&[(c(0.0, 1.0), -1.5)], 1.0).unwrap();
        assert!((m - (-1.5_f64).exp()).abs() < 1e-15);
        assert!(mass_from_factors(&[(c(0.0, 1.0), 0.5), (c(0.0, 1.0), 0.5)], 0.0).is_err());
        assert!(mass_from_factors(&[(c(0.0, 1.0), 0.7)], 0.0).is_err());
    }

    #[test]
    fn exact_phase_ordering_matches_float() {
        let a = ExactCharge::from_ints(-1, 1).unwrap();
        let b = ExactCharge::from_ints(0, 1).unwrap();
        let d = ExactCharge::from_ints(-3, 0).unwrap();
        assert_eq!(a.cmp_phase(&b), Ordering::Greater);
        assert_eq!(b.cmp_phase(&a), Ordering::Less);
        assert_eq!(d.cmp_phase(&a), Ordering::Greater);
        assert_eq!(b.cmp_phase(&ExactCharge::from_ints(0, 5).unwrap()), Ordering::Equal);
    }

    #[test]
    fn svg_has_path_and_dots() {
        let hull = left_hull(&[g(0, 0), g(-1, 1), g(-1, 2)], &g(-1, 2)).unwrap();
        let svg = hull.to_svg(&[g(-1, 1)]);
        assert!(svg.contains("<path d=\"M 0.000000 0.000000 L -0.500000 -0.500000"));
        assert!(svg.contains("<circle"));
    }
}
