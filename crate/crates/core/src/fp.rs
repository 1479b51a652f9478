//! Linear algebra over a prime field `F_p` and enumeration of subspaces.
//!
//! Subspaces are stored by their reduced row echelon basis, which is the
//! canonical representative used for deduplication and ordering.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

impl PrimeField {
    pub const F2: PrimeField = PrimeField { p: 2 };

    pub fn new(p: u32) -> Result<Self> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if prime {
            Ok(Self { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero");
        // Fermat: a^(p-2).
        let mut base = a as u64 % self.p as u64;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        acc as u32
    }

    /// `a + c * b` entrywise.
    fn axpy(self, a: &mut [u32], c: u32, b: &[u32]) {
        if c == 0 {
            return;
        }
        for (x, y) in a.iter_mut().zip(b) {
            *x = self.add(*x, self.mul(c, *y));
        }
    }
}

/// Dense `rows x cols` matrix over `F_p`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Entries are reduced mod p; `cols` is needed for matrices with no rows.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, got: r.len() });
            }
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, field.reduce(x));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn apply(&self, field: PrimeField, v: &[u32]) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0, |acc, (a, b)| field.add(acc, field.mul(*a, *b)))
            })
            .collect()
    }

    pub fn mul(&self, field: PrimeField, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = FpMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = field.add(out.get(i, j), field.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Null space `{ v : self * v = 0 }`.
    pub fn kernel(&self, field: PrimeField) -> Subspace {
        let (reduced, pivots) = rref(field, self.to_rows(), self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (row, &pc) in reduced.iter().zip(&pivots) {
                    v[pc] = field.sub(0, row[f]);
                }
                v
            })
            .collect();
        Subspace::span(field, self.cols, basis)
    }

    /// Column space, as a subspace of the target.
    pub fn image(&self, field: PrimeField) -> Subspace {
        let cols = (0..self.cols).map(|j| (0..self.rows).map(|i| self.get(i, j)).collect());
        Subspace::span(field, self.rows, cols.collect())
    }
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(field: PrimeField, mut rows: Vec<Vec<u32>>, cols: usize) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = field.sub(0, row[c]);
                field.axpy(row, factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// A subspace of `F_p^ambient`, stored as its RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<u32>>,
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.basis.len(), &self.basis).cmp(&(
            other.ambient,
            other.basis.len(),
            &other.basis,
        ))
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self { ambient, basis }
    }

    pub fn span(field: PrimeField, ambient: usize, vectors: Vec<Vec<u32>>) -> Self {
        let (basis, _) = rref(field, vectors, ambient);
        Self { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("RREF rows are nonzero"))
            .collect()
    }

    /// Columns without a pivot; the matching unit vectors span a complement.
    pub fn complement_columns(&self) -> Vec<usize> {
        let pivots = self.pivots();
        (0..self.ambient).filter(|c| !pivots.contains(c)).collect()
    }

    /// `v` reduced modulo the subspace: pivot coordinates become zero.
    pub fn reduce(&self, field: PrimeField, v: &[u32]) -> Vec<u32> {
        let mut out = v.to_vec();
        for (row, pc) in self.basis.iter().zip(self.pivots()) {
            let c = out[pc];
            if c != 0 {
                field.axpy(&mut out, field.sub(0, c), row);
            }
        }
        out
    }

    pub fn contains(&self, field: PrimeField, v: &[u32]) -> bool {
        self.reduce(field, v).iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, field: PrimeField, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(field, b))
    }

    pub fn sum(&self, field: PrimeField, other: &Subspace) -> Subspace {
        let vecs = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(field, self.ambient, vecs)
    }

    pub fn intersect(&self, field: PrimeField, other: &Subspace) -> Subspace {
        // Left kernel of the stacked basis: c * [U; W] = 0 gives sum c_k u_k in U ∩ W.
        let r = self.dim();
        let stacked: Vec<&Vec<u32>> = self.basis.iter().chain(&other.basis).collect();
        let mut transpose = FpMatrix::zeros(self.ambient, stacked.len());
        for (k, v) in stacked.iter().enumerate() {
            for (c, &x) in v.iter().enumerate() {
                transpose.set(c, k, x);
            }
        }
        let kernel = transpose.kernel(field);
        let vecs = kernel
            .basis
            .iter()
            .map(|coef| {
                let mut v = vec![0u32; self.ambient];
                for k in 0..r {
                    field.axpy(&mut v, coef[k], &self.basis[k]);
                }
                v
            })
            .collect();
        Subspace::span(field, self.ambient, vecs)
    }

    /// Image under a linear map `ambient -> target`.
    pub fn image_under(&self, field: PrimeField, map: &FpMatrix) -> Subspace {
        let vecs = self.basis.iter().map(|b| map.apply(field, b)).collect();
        Subspace::span(field, map.rows(), vecs)
    }

    /// Every subspace of `F_p^ambient`, in canonical order.
    pub fn enumerate_all(field: PrimeField, ambient: usize) -> Vec<Subspace> {
        let mut out = Vec::new();
        for r in 0..=ambient {
            for pivots in combinations(ambient, r) {
                // Free slots: row k, column c > pivot_k that is not itself a pivot.
                let slots: Vec<(usize, usize)> = pivots
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &pk)| {
                        let piv = &pivots;
                        (pk + 1..ambient).filter(move |c| !piv.contains(c)).map(move |c| (k, c))
                    })
                    .collect();
                let p = field.characteristic() as u64;
                let count = p.pow(slots.len() as u32);
                for code in 0..count {
                    let mut basis: Vec<Vec<u32>> = pivots
                        .iter()
                        .map(|&pk| {
                            let mut v = vec![0u32; ambient];
                            v[pk] = 1;
                            v
                        })
                        .collect();
                    let mut rest = code;
                    for &(k, c) in &slots {
                        basis[k][c] = (rest % p) as u32;
                        rest /= p;
                    }
                    out.push(Subspace { ambient, basis });
                }
            }
        }
        out.sort();
        out
    }

    /// Every subspace containing `self`, in canonical order.
    pub fn enumerate_superspaces(&self, field: PrimeField) -> Vec<Subspace> {
        let comp = self.complement_columns();
        Subspace::enumerate_all(field, comp.len())
            .into_iter()
            .map(|v| {
                let lifted = v.basis.iter().map(|row| {
                    let mut full = vec![0u32; self.ambient];
                    for (k, &c) in comp.iter().enumerate() {
                        full[c] = row[k];
                    }
                    full
                });
                let vecs = self.basis.iter().cloned().chain(lifted).collect();
                Subspace::span(field, self.ambient, vecs)
            })
            .collect()
    }
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Gaussian binomial sum: the number of subspaces of F_q^n.
    fn galois_number(q: u64, n: u32) -> u64 {
        (0..=n)
            .map(|k| {
                let mut num = 1u64;
                let mut den = 1u64;
                for i in 0..k {
                    num *= q.pow(n - i) - 1;
                    den *= q.pow(i + 1) - 1;
                }
                num / den
            })
            .sum()
    }

    #[test]
    fn prime_validation() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(7).is_ok());
        assert_eq!(PrimeField::new(4), Err(Error::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn subspace_counts_match_galois_numbers() {
        for (p, n) in [(2u32, 0u32), (2, 1), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let f = PrimeField::new(p).unwrap();
            let all = Subspace::enumerate_all(f, n as usize);
            assert_eq!(all.len() as u64, galois_number(p as u64, n), "p={p} n={n}");
            let mut dedup = all.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
        }
    }

    #[test]
    fn superspaces() {
        let f = PrimeField::F2;
        let w = Subspace::span(f, 3, vec![vec![1, 1, 0]]);
        let sup = w.enumerate_superspaces(f);
        // subspaces of F_2^3 / line: 1 + 3 + 1 = 5
        assert_eq!(sup.len(), 5);
        assert!(sup.iter().all(|s| w.is_subspace_of(f, s)));
        let brute: Vec<_> =
            Subspace::enumerate_all(f, 3).into_iter().filter(|s| w.is_subspace_of(f, s)).collect();
        let mut sorted = sup.clone();
        sorted.sort();
        assert_eq!(sorted, brute);
    }

    #[test]
    fn kernel_and_image() {
        let f = PrimeField::F2;
        let m = FpMatrix::from_rows(f, &[vec![1, 1, 0], vec![0, 0, 1]], 3).unwrap();
        let k = m.kernel(f);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(f, &[1, 1, 0]));
        assert_eq!(m.image(f).dim(), 2);
        let z = FpMatrix::zeros(2, 3);
        assert_eq!(z.kernel(f), Subspace::full(3));
        assert_eq!(z.image(f), Subspace::zero(2));
    }

    #[test]
    fn intersection_and_sum() {
        let f = PrimeField::new(3).unwrap();
        let u = Subspace::span(f, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::span(f, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let i = u.intersect(f, &w);
        assert_eq!(i, Subspace::span(f, 3, vec![vec![0, 1, 0]]));
        assert_eq!(u.sum(f, &w), Subspace::full(3));
        assert_eq!(u.sum(f, &w).dim() + i.dim(), u.dim() + w.dim());
    }
}
