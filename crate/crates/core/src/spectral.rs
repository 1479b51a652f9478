//! Spectral radii of integer matrices via exact characteristic polynomials.

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::rational_to_f64;
use crate::intmat::IntMatrix;

/// Matrices up to this size use the exact characteristic polynomial.
pub const DEFAULT_EXACT_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralMethod {
    ExactCharPoly,
    /// Collatz–Wielandt bound for the entrywise absolute value; an upper bound only.
    PowerIterationUpper,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralRadius {
    pub value: f64,
    pub method: SpectralMethod,
    /// Ascending coefficients of `det(x I - M)`, present for the exact method.
    pub char_poly: Option<Vec<BigInt>>,
}

impl SpectralRadius {
    pub fn log_value(&self) -> f64 {
        self.value.ln()
    }
}

/// `det(x I - M)` by Faddeev–LeVerrier in exact integers; ascending coefficients.
pub fn char_poly(m: &IntMatrix) -> Result<Vec<BigInt>> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let n = m.nrows();
    let a: Vec<Vec<BigInt>> = m.rows().iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(&a, &mk);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    Ok(coeffs)
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

type QPoly = Vec<BigRational>;

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &[BigRational]) -> QPoly {
    trim(p.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(k.into())).collect())
}

/// Quotient and remainder of polynomial division over Q.
fn div_rem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty").clone() / &lead;
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &c * bk;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// `p / gcd(p, p')` made monic: same roots, all simple.
pub fn square_free_part(p: &[BigInt]) -> Vec<BigRational> {
    let q: QPoly = trim(p.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    if q.len() <= 1 {
        return q;
    }
    let g = gcd(&q, &derivative(&q));
    let (mut s, _) = div_rem(&q, &g);
    let lead = s.last().expect("nonzero").clone();
    for c in &mut s {
        *c = &*c / &lead;
    }
    s
}

fn eval(p: &[f64], z: Complex<f64>) -> (Complex<f64>, Complex<f64>) {
    let mut v = Complex::new(0.0, 0.0);
    let mut d = Complex::new(0.0, 0.0);
    for &c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// Complex roots of a monic polynomial (ascending coefficients): companion
/// eigenvalues followed by Newton polishing.
pub fn roots(monic: &[BigRational]) -> Vec<Complex<f64>> {
    let p: Vec<f64> = monic.iter().map(rational_to_f64).collect();
    let d = p.len().saturating_sub(1);
    if d == 0 {
        return Vec::new();
    }
    let companion = DMatrix::from_fn(d, d, |r, c| {
        if c == d - 1 {
            -p[r]
        } else if r == c + 1 {
            1.0
        } else {
            0.0
        }
    });
    companion
        .complex_eigenvalues()
        .iter()
        .map(|&z0| {
            let mut z = z0;
            let mut best = eval(&p, z).0.norm();
            for _ in 0..50 {
                let (v, dv) = eval(&p, z);
                if dv.norm() == 0.0 || v.norm() == 0.0 {
                    break;
                }
                let cand = z - v / dv;
                let val = eval(&p, cand).0.norm();
                if !(val < best) {
                    break;
                }
                best = val;
                z = cand;
            }
            z
        })
        .collect()
}

/// Exact-path spectral radius; errors above `cap`.
pub fn spectral_radius(m: &IntMatrix, cap: usize) -> Result<SpectralRadius> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    if m.nrows() > cap {
        return Err(Error::MatrixTooLarge { size: m.nrows(), cap });
    }
    let cp = char_poly(m)?;
    let value = roots(&square_free_part(&cp)).iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(SpectralRadius { value, method: SpectralMethod::ExactCharPoly, char_poly: Some(cp) })
}

/// Exact below `cap`, otherwise the power-iteration upper bound.
pub fn spectral_radius_or_bound(m: &IntMatrix, cap: usize) -> Result<SpectralRadius> {
    if m.is_square() && m.nrows() > cap {
        Ok(power_iteration_upper(m, 2000))
    } else {
        spectral_radius(m, cap)
    }
}

/// `rho(M) <= rho(|M|) <= max_i (|M| v)_i / v_i` for every positive `v`;
/// iterates `v <- |M| v` and keeps the smallest such bound.
pub fn power_iteration_upper(m: &IntMatrix, iterations: usize) -> SpectralRadius {
    let n = m.nrows();
    let abs: Vec<Vec<f64>> = m.rows().iter().map(|r| r.iter().map(|x| x.abs() as f64).collect()).collect();
    let mut v = vec![1.0f64; n];
    let mut best = f64::INFINITY;
    for _ in 0..iterations.max(1) {
        let w: Vec<f64> = abs.iter().map(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        let bound = w.iter().zip(&v).map(|(a, b)| a / b).fold(0.0, f64::max);
        best = best.min(bound);
        let norm = w.iter().copied().fold(0.0, f64::max);
        if norm == 0.0 {
            best = 0.0;
            break;
        }
        v = w.iter().map(|x| (x / norm).max(1e-12)).collect();
    }
    SpectralRadius { value: if n == 0 { 0.0 } else { best }, method: SpectralMethod::PowerIterationUpper, char_poly: None }
}

/// `x^2 + 7x + 1` style rendering of ascending integer coefficients.
pub fn format_poly(coeffs: &[BigInt]) -> String {
    let mut parts = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        let abs = c.abs();
        let body = match (k, abs.is_one()) {
            (0, _) => abs.to_string(),
            (1, true) => "x".to_string(),
            (1, false) => format!("{abs}x"),
            (_, true) => format!("x^{k}"),
            (_, false) => format!("{abs}x^{k}"),
        };
        parts.push((sign, body));
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (sign, body)) in parts.into_iter().enumerate() {
        if idx == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
fn bigints_to_i64(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(num_traits::ToPrimitive::to_i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    /// `det(x I - M)` by permutation expansion over polynomial entries.
    fn brute_char_poly(m: &IntMatrix) -> Vec<i64> {
        let n = m.nrows();
        let entry = |i: usize, j: usize| -> Vec<i64> {
            if i == j {
                vec![-m.get(i, j), 1]
            } else {
                vec![-m.get(i, j)]
            }
        };
        let mut total = vec![0i64; n + 1];
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| {
            let inversions = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
            let mut prod = vec![1i64];
            for (i, &j) in p.iter().enumerate() {
                let e = entry(i, j);
                let mut next = vec![0i64; prod.len() + e.len() - 1];
                for (a, x) in prod.iter().enumerate() {
                    for (b, y) in e.iter().enumerate() {
                        next[a + b] += x * y;
                    }
                }
                prod = next;
            }
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            for (k, c) in prod.iter().enumerate() {
                total[k] += sign * c;
            }
        });
        total
    }

    fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permutations(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn examples() {
        let id = spectral_radius(&IntMatrix::identity(3), 8).unwrap();
        assert!((id.value - 1.0).abs() < 1e-12);
        let unip = spectral_radius(&mat(vec![vec![1, 1], vec![0, 1]]), 8).unwrap();
        assert!((unip.value - 1.0).abs() < 1e-12);
        let m = mat(vec![vec![-8, 3], vec![-3, 1]]);
        let r = spectral_radius(&m, 8).unwrap();
        assert_eq!(bigints_to_i64(r.char_poly.as_ref().unwrap()).unwrap(), vec![1, 7, 1]);
        let oracle = (7.0 + 45f64.sqrt()) / 2.0;
        assert!((r.value - oracle).abs() < 1e-10);
        assert!((r.log_value() - 1.924847).abs() < 1e-6);
        assert_eq!(format_poly(r.char_poly.as_ref().unwrap()), "x^2 + 7x + 1");
    }

    #[test]
    fn cap_and_fallback() {
        let big = IntMatrix::identity(9);
        assert_eq!(spectral_radius(&big, 8), Err(Error::MatrixTooLarge { size: 9, cap: 8 }));
        let est = spectral_radius_or_bound(&big, 8).unwrap();
        assert_eq!(est.method, SpectralMethod::PowerIterationUpper);
        assert!((est.value - 1.0).abs() < 1e-9);
        let m = mat(vec![vec![-8, 3], vec![-3, 1]]);
        let up = power_iteration_upper(&m, 500);
        assert!(up.value >= spectral_radius(&m, 8).unwrap().value - 1e-9);
        assert_eq!(spectral_radius(&mat(vec![vec![1, 2]]), 8), Err(Error::NotSquare));
    }

    #[test]
    fn repeated_roots_are_exact() {
        // (x - 2)^2 (x + 1)
        let m = mat(vec![vec![2, 1, 0], vec![0, 2, 0], vec![0, 0, -1]]);
        let r = spectral_radius(&m, 8).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        let sf = square_free_part(&char_poly(&m).unwrap());
        assert_eq!(sf.len(), 3);
    }

    proptest! {
        #[test]
        fn char_poly_matches_permutation_expansion(entries in prop::collection::vec(-4i64..5, 16), n in 1usize..5) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| entries[i * 4..i * 4 + n].to_vec()).collect();
            let m = mat(rows);
            let cp = bigints_to_i64(&char_poly(&m).unwrap()).unwrap();
            prop_assert_eq!(cp, brute_char_poly(&m));
        }

        #[test]
        fn radius_bounds(entries in prop::collection::vec(-3i64..4, 9)) {
            let rows: Vec<Vec<i64>> = (0..3).map(|i| entries[i * 3..i * 3 + 3].to_vec()).collect();
            let m = mat(rows);
            let r = spectral_radius(&m, 8).unwrap().value;
            let det = m.determinant().unsigned_abs() as f64;
            // |det| is the product of |lambda|, so rho^3 >= |det|.
            prop_assert!(r.powi(3) >= det - 1e-6 * (1.0 + det));
            prop_assert!(power_iteration_upper(&m, 400).value >= r - 1e-6);
        }
    }
}
