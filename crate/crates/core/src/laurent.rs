//! Integer Laurent polynomials in `u = e^{-t}`.
//!
//! Degree `m` carries cohomological degree `m`, so a Poincaré polynomial
//! `sum_k dim H^k e^{-kt}` is stored with coefficient `dim H^k` at degree `k`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::geometry::bigint_to_f64;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    // Invariant: no zero coefficients are stored.
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, degree: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, c.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c.into());
        }
        p
    }

    pub fn add_term(&mut self, degree: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(degree).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, degree: i64) -> BigInt {
        self.coeffs.get(&degree).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn scalar_mul(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|(d, x)| (*d, x * &c)).collect() }
    }

    /// `u^m * self`.
    pub fn shift_degree(&self, m: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(d, x)| (d + m, x.clone())).collect() }
    }

    /// `sum_m c_m e^{-m t}`.
    pub fn evaluate(&self, t: f64) -> f64 {
        self.coeffs.iter().map(|(d, c)| bigint_to_f64(c) * (-(*d as f64) * t).exp()).sum()
    }

    /// `log(self(t))` for a nonzero polynomial with nonnegative coefficients,
    /// computed by log-sum-exp so neither large coefficients nor large `|t|` overflow.
    pub fn log_evaluate(&self, t: f64) -> Option<f64> {
        if self.is_zero() || !self.has_nonnegative_coeffs() {
            return None;
        }
        let logs: Vec<f64> =
            self.coeffs.iter().map(|(d, c)| ln_bigint(c) - (*d as f64) * t).collect();
        Some(log_sum_exp(&logs))
    }

    /// Value at `u = -1`: the signed count `sum_m (-1)^m c_m`.
    pub fn eval_at_minus_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|(d, c)| if d.rem_euclid(2) == 0 { c.clone() } else { -c.clone() })
            .sum()
    }

    /// Value at `u = 1`: sum of coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// `sum_{l=0}^{k-1} r^l` for a monomial `r = c u^d`.
    pub fn geometric_sum(c: impl Into<BigInt>, d: i64, k: u32) -> Self {
        let c = c.into();
        let mut out = Self::zero();
        let mut power = BigInt::one();
        for l in 0..k {
            out.add_term(l as i64 * d, power.clone());
            power *= &c;
        }
        out
    }
}

fn ln_bigint(c: &BigInt) -> f64 {
    match c.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            let bits = c.bits();
            let shift = bits.saturating_sub(60);
            let top: BigInt = c >> shift;
            bigint_to_f64(&top).ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

pub(crate) fn log_sum_exp(logs: &[f64]) -> f64 {
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + logs.iter().map(|l| (l - max).exp()).sum::<f64>().ln()
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (d, c) in &rhs.coeffs {
            self.add_term(*d, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c.clone())).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &rhs.coeffs {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*d, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "u")?,
                (1, false) => write!(f, "{abs}u")?,
                (_, true) => write!(f, "u^{d}")?,
                (_, false) => write!(f, "{abs}u^{d}")?,
            }
        }
        Ok(())
    }
}
