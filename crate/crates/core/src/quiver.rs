//! Acyclic quivers, dimension vectors, and the graded Hom table of the
//! Calabi–Yau-N Ginzburg category.
//!
//! Vertices are 0-based internally. `hom(i, j, m) = dim Hom(S_i, S_j[m])`
//! and `chi[i][j] = chi(S_i, S_j)`: the first index is always the Hom source.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    q: Vec<Vec<u32>>,
    order: Vec<usize>,
    arrows: Vec<(usize, usize)>,
}

/// Validates an arrow-count matrix: square, nonnegative, zero diagonal, acyclic.
pub fn validate_quiver(q: &[Vec<i64>]) -> Result<Quiver> {
    let n = q.len();
    if q.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare);
    }
    let mut counts = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = q[i][j];
            if v < 0 {
                return Err(Error::NegativeEntry(i, j));
            }
            if i == j && v != 0 {
                return Err(Error::NonzeroDiagonal(i));
            }
            counts[i][j] = u32::try_from(v).map_err(|_| Error::NegativeEntry(i, j))?;
        }
    }
    // Kahn's algorithm, smallest available vertex first for a deterministic order.
    let mut indeg: Vec<usize> =
        (0..n).map(|j| (0..n).filter(|&i| counts[i][j] > 0).count()).collect();
    let mut ready: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for w in 0..n {
            if counts[v][w] > 0 {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|v| !order.contains(v)).unwrap_or(0);
        return Err(Error::CycleDetected(stuck));
    }
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for _ in 0..counts[i][j] {
                arrows.push((i, j));
            }
        }
    }
    Ok(Quiver { q: counts, order, arrows })
}

impl Quiver {
    /// Linear `A_n`: `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Self {
        let mut q = vec![vec![0i64; n]; n];
        for i in 0..n.saturating_sub(1) {
            q[i][i + 1] = 1;
        }
        validate_quiver(&q).expect("linear quiver is acyclic")
    }

    /// Generalized Kronecker quiver with `m` parallel arrows `1 -> 2`.
    pub fn kronecker(m: u32) -> Self {
        validate_quiver(&[vec![0, m as i64], vec![0, 0]]).expect("Kronecker quiver is acyclic")
    }

    pub fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let mut q = vec![vec![0i64; n]; n];
        for &(i, j) in arrows {
            if i >= n {
                return Err(Error::InvalidVertex(i));
            }
            if j >= n {
                return Err(Error::InvalidVertex(j));
            }
            q[i][j] += 1;
        }
        validate_quiver(&q)
    }

    pub fn vertex_count(&self) -> usize {
        self.q.len()
    }

    pub fn arrow_count(&self, i: usize, j: usize) -> u32 {
        self.q[i][j]
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.q
    }

    /// Every arrow as `(source, target)`, in lexicographic order with parallel
    /// arrows adjacent. Representations index their maps by this list.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.order
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v))
        }
    }

    /// Connectivity of the underlying unoriented graph.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if !seen[w] && (self.q[v][w] > 0 || self.q[w][v] > 0) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Dimension vector of a heart object: `[E] = sum_i d_i [S_i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut d = Self::zero(n);
        d.0[i] = 1;
        d
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `dim E = sum_i d_i`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        if self.len() != other.len() {
            return None;
        }
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<_>>().map(DimVector)
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        assert_eq!(self.len(), rhs.len(), "dimension vectors of different length");
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub fn check_cy_dim(cy_dim: i64) -> Result<u32> {
    if cy_dim >= 3 {
        u32::try_from(cy_dim).map_err(|_| Error::UnsupportedCyDimension(cy_dim))
    } else {
        Err(Error::UnsupportedCyDimension(cy_dim))
    }
}

/// `dim Hom(S_i, S_j[m])` for the simples of the Ginzburg CY-N category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedHomTable {
    n: usize,
    cy_dim: u32,
    entries: BTreeMap<(usize, usize, i64), u32>,
}

impl GradedHomTable {
    pub fn new(quiver: &Quiver, cy_dim: i64) -> Result<Self> {
        let cy_dim = check_cy_dim(cy_dim)?;
        let n = quiver.vertex_count();
        let big_n = cy_dim as i64;
        let mut entries = BTreeMap::new();
        for i in 0..n {
            entries.insert((i, i, 0), 1);
            entries.insert((i, i, big_n), 1);
            for j in 0..n {
                if i == j {
                    continue;
                }
                let qij = quiver.arrow_count(i, j);
                let qji = quiver.arrow_count(j, i);
                if qij > 0 {
                    entries.insert((i, j, 1), qij);
                }
                if qji > 0 {
                    entries.insert((i, j, big_n - 1), qji);
                }
            }
        }
        Ok(Self { n, cy_dim, entries })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn cy_dim(&self) -> u32 {
        self.cy_dim
    }

    pub fn hom(&self, i: usize, j: usize, m: i64) -> u32 {
        self.entries.get(&(i, j, m)).copied().unwrap_or(0)
    }

    /// Nonzero entries `((i, j, m), dim)` in deterministic order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = ((usize, usize, i64), u32)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    /// Nonzero degrees `(m, dim)` of `Hom^*(S_i, S_j)`.
    pub fn graded_hom(&self, i: usize, j: usize) -> Vec<(i64, u32)> {
        self.entries.range((i, j, i64::MIN)..=(i, j, i64::MAX)).map(|(k, v)| (k.2, *v)).collect()
    }

    pub fn euler_matrix(&self) -> IntMatrix {
        let mut chi = IntMatrix::zeros(self.n, self.n);
        for (&(i, j, m), &v) in &self.entries {
            let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
            chi.set(i, j, chi.get(i, j) + sign * v as i64);
        }
        chi
    }
}

/// `chi[i][j] = sum_m (-1)^m dim Hom(S_i, S_j[m])` on the CY-N category.
pub fn cyn_euler_matrix(quiver: &Quiver, cy_dim: i64) -> Result<IntMatrix> {
    Ok(GradedHomTable::new(quiver, cy_dim)?.euler_matrix())
}

/// Euler form of the path algebra: `sum_i d_i e_i - sum_{i -> j} d_i e_j`.
pub fn euler_form_hereditary(quiver: &Quiver, d: &DimVector, e: &DimVector) -> Result<i64> {
    let n = quiver.vertex_count();
    for v in [d, e] {
        if v.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: v.len() });
        }
    }
    let diag: i64 = d.0.iter().zip(&e.0).map(|(a, b)| (a * b) as i64).sum();
    let arrows: i64 = quiver.arrows().iter().map(|&(i, j)| (d.0[i] * e.0[j]) as i64).sum();
    Ok(diag - arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Quiver {
        Quiver::linear(3)
    }

    #[test]
    fn validate_examples() {
        let a2 = validate_quiver(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(a2.topological_order(), &[0, 1]);
        let k3 = validate_quiver(&[vec![0, 3], vec![0, 0]]).unwrap();
        assert_eq!(k3.arrows().len(), 3);
        assert!(matches!(
            validate_quiver(&[vec![0, 1], vec![1, 0]]),
            Err(Error::CycleDetected(_))
        ));
        assert_eq!(validate_quiver(&[vec![0, -1], vec![0, 0]]), Err(Error::NegativeEntry(0, 1)));
        assert_eq!(validate_quiver(&[vec![1, 0], vec![0, 0]]), Err(Error::NonzeroDiagonal(0)));
        assert_eq!(validate_quiver(&[vec![0, 1]]), Err(Error::NotSquare));
    }

    #[test]
    fn topological_order_respects_arrows() {
        let q = validate_quiver(&[vec![0, 0, 0], vec![1, 0, 1], vec![1, 0, 0]]).unwrap();
        let pos: Vec<usize> =
            (0..3).map(|v| q.topological_order().iter().position(|&x| x == v).unwrap()).collect();
        for &(i, j) in q.arrows() {
            assert!(pos[i] < pos[j]);
        }
        assert_eq!(q.topological_order(), &[1, 2, 0]);
    }

    #[test]
    fn euler_matrix_examples() {
        let a2 = Quiver::linear(2);
        let chi = cyn_euler_matrix(&a2, 3).unwrap();
        assert_eq!(chi, IntMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]));
        let chi = cyn_euler_matrix(&Quiver::kronecker(3), 3).unwrap();
        assert_eq!(chi, IntMatrix::from_rows(vec![vec![0, -3], vec![3, 0]]));
        for q in [Quiver::linear(2), a3(), Quiver::kronecker(3)] {
            let chi = cyn_euler_matrix(&q, 4).unwrap();
            for i in 0..q.vertex_count() {
                assert_eq!(chi.get(i, i), 2);
            }
        }
        assert_eq!(cyn_euler_matrix(&a2, 2), Err(Error::UnsupportedCyDimension(2)));
    }

    #[test]
    fn euler_matrix_closed_form() {
        for q in [Quiver::linear(2), a3(), Quiver::kronecker(3), Quiver::kronecker(2)] {
            for big_n in 3..=6i64 {
                let chi = cyn_euler_matrix(&q, big_n).unwrap();
                let sign = |k: i64| if k.rem_euclid(2) == 0 { 1 } else { -1 };
                for i in 0..q.vertex_count() {
                    for j in 0..q.vertex_count() {
                        let qij = q.arrow_count(i, j) as i64;
                        let qji = q.arrow_count(j, i) as i64;
                        let expected = if i == j {
                            1 + sign(big_n)
                        } else if qij > 0 {
                            -qij
                        } else if qji > 0 {
                            sign(big_n - 1) * qji
                        } else {
                            0
                        };
                        assert_eq!(chi.get(i, j), expected);
                    }
                }
                // odd N: antisymmetric, even N: symmetric
                let t = chi.transpose();
                if big_n % 2 == 1 {
                    assert_eq!(t, chi.scaled(-1));
                } else {
                    assert_eq!(t, chi);
                }
            }
        }
    }

    #[test]
    fn hom_table_is_calabi_yau() {
        for q in [Quiver::linear(2), a3(), Quiver::kronecker(3)] {
            for big_n in [3, 4, 5] {
                let table = GradedHomTable::new(&q, big_n).unwrap();
                for ((i, j, m), v) in table.nonzero_entries() {
                    assert_eq!(table.hom(j, i, big_n - m), v);
                }
                for i in 0..q.vertex_count() {
                    for m in -2..=big_n + 2 {
                        let expected = u32::from(m == 0 || m == big_n);
                        assert_eq!(table.hom(i, i, m), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn hereditary_euler_form() {
        let a2 = Quiver::linear(2);
        let one = DimVector(vec![1, 1]);
        assert_eq!(euler_form_hereditary(&a2, &one, &one).unwrap(), 1);
        let k3 = Quiver::kronecker(3);
        assert_eq!(euler_form_hereditary(&k3, &one, &DimVector::zero(2)).unwrap(), 0);
        assert_eq!(
            euler_form_hereditary(&k3, &DimVector(vec![1, 0]), &DimVector(vec![0, 1])).unwrap(),
            -3
        );
        assert!(euler_form_hereditary(&k3, &DimVector(vec![1]), &one).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(Quiver::linear(3).is_connected());
        let disc = validate_quiver(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert!(!disc.is_connected());
        assert!(Quiver::linear(1).is_connected());
    }
}
