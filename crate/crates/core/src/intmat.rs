//! Small dense integer matrices (K-theory actions, Euler forms).

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n), "ragged matrix");
        Self { rows }
    }

    pub fn zeros(n: usize, m: usize) -> Self {
        Self { rows: vec![vec![0; m]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = 1;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        let (n, m) = (self.nrows(), self.ncols());
        let mut t = Self::zeros(m, n);
        for i in 0..n {
            for j in 0..m {
                t.rows[j][i] = self.rows[i][j];
            }
        }
        t
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self { rows: self.rows.iter().map(|r| r.iter().map(|x| x * k).collect()).collect() }
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination in `i128`.
    pub fn determinant(&self) -> i128 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.nrows();
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> =
            self.rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols(), rhs.nrows(), "dimension mismatch");
        let mut out = IntMatrix::zeros(self.nrows(), rhs.ncols());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = self.rows[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.ncols() {
                    out.rows[i][j] += a * rhs.rows[k][j];
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        assert_eq!(IntMatrix::from_rows(vec![vec![-8, 3], vec![-3, 1]]).determinant(), 1);
        assert_eq!(IntMatrix::identity(4).determinant(), 1);
        let m = IntMatrix::from_rows(vec![vec![0, 2, 1], vec![1, 0, 0], vec![3, 1, 1]]);
        // cofactor expansion along row 1: -1 * (2*1 - 1*1) = -1
        assert_eq!(m.determinant(), -1);
        let singular = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.determinant(), 0);
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(vec![vec![1, 3], vec![0, 1]]);
        let b = IntMatrix::from_rows(vec![vec![1, 0], vec![-3, 1]]);
        assert_eq!(&a * &b, IntMatrix::from_rows(vec![vec![-8, 3], vec![-3, 1]]));
        assert_eq!(a.transpose(), IntMatrix::from_rows(vec![vec![1, 0], vec![3, 1]]));
        assert_eq!(a.to_string(), "[[1,3],[0,1]]");
    }
}
