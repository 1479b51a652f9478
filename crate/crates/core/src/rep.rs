//! Finite-dimensional quiver representations over prime fields.
//!
//! This is the concrete model of the standard heart: a representation is an
//! object, arrow-invariant subspace tuples are its subobjects, and exhaustive
//! subrepresentation enumeration is the brute-force oracle behind
//! semistability and HN polygons.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{FpMatrix, PrimeField, Subspace};
use crate::quiver::{DimVector, Quiver};

/// Default total-dimension bound for subrepresentation enumeration.
pub const DEFAULT_CAP: usize = 8;
/// Largest cap accepted from configuration.
pub const HARD_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    field: PrimeField,
    dims: DimVector,
    /// One `d_target x d_source` matrix per arrow, indexed like `quiver.arrows()`.
    maps: Vec<FpMatrix>,
}

impl Representation {
    pub fn new(quiver: Quiver, field: PrimeField, dims: DimVector, maps: Vec<FpMatrix>) -> Result<Self> {
        let n = quiver.vertex_count();
        if dims.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: dims.len() });
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::LengthMismatch { expected: quiver.arrows().len(), got: maps.len() });
        }
        for (a, (&(i, j), m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            let expected = (dims.0[j], dims.0[i]);
            if m.shape() != expected {
                return Err(Error::ShapeMismatch { arrow: a, expected, got: m.shape() });
            }
        }
        Ok(Self { quiver, field, dims, maps })
    }

    /// Direct sum of simples with the given multiplicities (all arrow maps zero).
    pub fn semisimple(quiver: &Quiver, field: PrimeField, dims: DimVector) -> Result<Self> {
        let maps = quiver.arrows().iter().map(|&(i, j)| FpMatrix::zeros(dims.0[j], dims.0[i])).collect();
        Self::new(quiver.clone(), field, dims, maps)
    }

    pub fn simple(quiver: &Quiver, field: PrimeField, i: usize) -> Result<Self> {
        quiver.check_vertex(i)?;
        Self::semisimple(quiver, field, DimVector::unit(quiver.vertex_count(), i))
    }

    pub fn zero(quiver: &Quiver, field: PrimeField) -> Self {
        Self::semisimple(quiver, field, DimVector::zero(quiver.vertex_count()))
            .expect("zero representation is well formed")
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    pub fn maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.total_dim() > cap {
            Err(Error::CapExceeded { dim: self.total_dim(), cap })
        } else {
            Ok(())
        }
    }

    fn same_category(&self, other: &Representation) -> Result<()> {
        if self.field != other.field || self.quiver != other.quiver {
            Err(Error::FieldMismatch)
        } else {
            Ok(())
        }
    }

    pub fn to_spec(&self) -> RepSpec {
        RepSpec {
            dims: self.dims.0.clone(),
            maps: self
                .maps
                .iter()
                .map(|m| m.to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect())
                .collect(),
        }
    }

    pub fn from_spec(quiver: &Quiver, field: PrimeField, spec: &RepSpec) -> Result<Self> {
        let dims = DimVector(spec.dims.clone());
        if dims.len() != quiver.vertex_count() {
            return Err(Error::LengthMismatch { expected: quiver.vertex_count(), got: dims.len() });
        }
        if spec.maps.len() != quiver.arrows().len() {
            return Err(Error::LengthMismatch { expected: quiver.arrows().len(), got: spec.maps.len() });
        }
        let maps = quiver
            .arrows()
            .iter()
            .zip(&spec.maps)
            .enumerate()
            .map(|(a, (&(i, j), rows))| {
                let expected = (dims.0[j], dims.0[i]);
                let cols = rows.first().map_or(dims.0[i], Vec::len);
                if rows.len() != expected.0 || cols != expected.1 {
                    return Err(Error::ShapeMismatch { arrow: a, expected, got: (rows.len(), cols) });
                }
                FpMatrix::from_rows(field, rows, cols)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(quiver.clone(), field, dims, maps)
    }
}

/// Serialized form of a representation: explicit matrices, one per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepSpec {
    pub dims: Vec<usize>,
    pub maps: Vec<Vec<Vec<i64>>>,
}

/// An arrow-invariant tuple of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subrep {
    spaces: Vec<Subspace>,
}

impl PartialOrd for Subrep {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subrep {
    /// Dimension vector first, then canonical forms.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim_vector(), &self.spaces).cmp(&(other.dim_vector(), &other.spaces))
    }
}

impl Subrep {
    pub fn new(rep: &Representation, spaces: Vec<Subspace>) -> Result<Self> {
        let n = rep.quiver.vertex_count();
        if spaces.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: spaces.len() });
        }
        for (v, s) in spaces.iter().enumerate() {
            if s.ambient() != rep.dims.0[v] {
                return Err(Error::LengthMismatch { expected: rep.dims.0[v], got: s.ambient() });
            }
        }
        let sub = Self { spaces };
        if let Some(a) = sub.first_violated_arrow(rep) {
            return Err(Error::NotInvariant(a));
        }
        Ok(sub)
    }

    pub fn zero(rep: &Representation) -> Self {
        Self { spaces: rep.dims.0.iter().map(|&d| Subspace::zero(d)).collect() }
    }

    pub fn full(rep: &Representation) -> Self {
        Self { spaces: rep.dims.0.iter().map(|&d| Subspace::full(d)).collect() }
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.spaces.iter().map(Subspace::dim).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(|s| s.dim() == 0)
    }

    fn first_violated_arrow(&self, rep: &Representation) -> Option<usize> {
        rep.quiver.arrows().iter().enumerate().find_map(|(a, &(i, j))| {
            let img = self.spaces[i].image_under(rep.field, &rep.maps[a]);
            (!img.is_subspace_of(rep.field, &self.spaces[j])).then_some(a)
        })
    }

    pub fn is_invariant(&self, rep: &Representation) -> bool {
        self.first_violated_arrow(rep).is_none()
    }

    pub fn is_contained_in(&self, field: PrimeField, other: &Subrep) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.is_subspace_of(field, b))
    }

    pub fn intersect(&self, field: PrimeField, other: &Subrep) -> Subrep {
        Subrep { spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.intersect(field, b)).collect() }
    }

    pub fn sum(&self, field: PrimeField, other: &Subrep) -> Subrep {
        Subrep { spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.sum(field, b)).collect() }
    }
}

/// Every subrepresentation of `rep`, sorted by dimension vector then canonical form.
///
/// Vertices are visited in topological order; at each vertex only subspaces
/// containing the images from already-fixed predecessors are generated.
pub fn subrep_enumerate(rep: &Representation, cap: usize) -> Result<Vec<Subrep>> {
    rep.check_cap(cap)?;
    let n = rep.quiver.vertex_count();
    let mut out = Vec::new();
    let mut current: Vec<Option<Subspace>> = vec![None; n];
    enumerate_from(rep, 0, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn enumerate_from(
    rep: &Representation,
    pos: usize,
    current: &mut Vec<Option<Subspace>>,
    out: &mut Vec<Subrep>,
) {
    let order = rep.quiver.topological_order();
    if pos == order.len() {
        out.push(Subrep { spaces: current.iter().map(|s| s.clone().expect("all vertices fixed")).collect() });
        return;
    }
    let v = order[pos];
    let field = rep.field;
    let mut required = Subspace::zero(rep.dims.0[v]);
    for (a, &(i, j)) in rep.quiver.arrows().iter().enumerate() {
        if j == v {
            let src = current[i].as_ref().expect("predecessor fixed in topological order");
            required = required.sum(field, &src.image_under(field, &rep.maps[a]));
        }
    }
    for choice in required.enumerate_superspaces(field) {
        current[v] = Some(choice);
        enumerate_from(rep, pos + 1, current, out);
    }
    current[v] = None;
}

/// The subrepresentation in its own basis (the RREF basis of each subspace).
pub fn restriction(rep: &Representation, sub: &Subrep) -> Result<Representation> {
    if !sub.is_invariant(rep) {
        return Err(Error::NotInvariant(sub.first_violated_arrow(rep).unwrap_or(0)));
    }
    let field = rep.field;
    let maps = rep
        .quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(i, j))| {
            let (src, dst) = (&sub.spaces[i], &sub.spaces[j]);
            let pivots = dst.pivots();
            let mut m = FpMatrix::zeros(dst.dim(), src.dim());
            for (c, b) in src.basis().iter().enumerate() {
                let img = rep.maps[a].apply(field, b);
                // RREF coordinates of a vector in the subspace are its pivot entries.
                for (r, &pc) in pivots.iter().enumerate() {
                    m.set(r, c, img[pc]);
                }
            }
            m
        })
        .collect();
    Representation::new(rep.quiver.clone(), field, sub.dim_vector(), maps)
}

/// `0 -> A -> E -> E/A -> 0` with explicit projection matrices.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    pub sub: Subrep,
    pub sub_rep: Representation,
    pub total: Representation,
    pub quotient: Representation,
    /// Per vertex, the `dim(E/A)_v x dim E_v` projection.
    pub projection: Vec<FpMatrix>,
}

impl ShortExactSeq {
    pub fn new(total: &Representation, sub: &Subrep) -> Result<Self> {
        let sub_rep = restriction(total, sub)?;
        let (quotient, projection) = quotient_with_projection(total, sub)?;
        Ok(Self { sub: sub.clone(), sub_rep, total: total.clone(), quotient, projection })
    }

    pub fn dims_add_up(&self) -> bool {
        &self.sub_rep.dims + &self.quotient.dims == self.total.dims
    }
}

fn projection_matrix(field: PrimeField, space: &Subspace, v: &[u32], comp: &[usize]) -> Vec<u32> {
    let reduced = space.reduce(field, v);
    comp.iter().map(|&c| reduced[c]).collect()
}

fn quotient_with_projection(rep: &Representation, sub: &Subrep) -> Result<(Representation, Vec<FpMatrix>)> {
    if let Some(a) = sub.first_violated_arrow(rep) {
        return Err(Error::NotInvariant(a));
    }
    let field = rep.field;
    let comps: Vec<Vec<usize>> = sub.spaces.iter().map(Subspace::complement_columns).collect();
    let dims = DimVector(comps.iter().map(Vec::len).collect());
    let maps = rep
        .quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(i, j))| {
            let mut m = FpMatrix::zeros(comps[j].len(), comps[i].len());
            for (c, &col) in comps[i].iter().enumerate() {
                let mut e = vec![0u32; rep.dims.0[i]];
                e[col] = 1;
                let img = rep.maps[a].apply(field, &e);
                for (r, x) in projection_matrix(field, &sub.spaces[j], &img, &comps[j]).into_iter().enumerate() {
                    m.set(r, c, x);
                }
            }
            m
        })
        .collect();
    let projection = (0..rep.quiver.vertex_count())
        .map(|v| {
            let d = rep.dims.0[v];
            let mut p = FpMatrix::zeros(comps[v].len(), d);
            for col in 0..d {
                let mut e = vec![0u32; d];
                e[col] = 1;
                for (r, x) in projection_matrix(field, &sub.spaces[v], &e, &comps[v]).into_iter().enumerate() {
                    p.set(r, col, x);
                }
            }
            p
        })
        .collect();
    Ok((Representation::new(rep.quiver.clone(), field, dims, maps)?, projection))
}

/// `E / A`, with quotient coordinates on the non-pivot columns of each `A_v`.
pub fn quotient(rep: &Representation, sub: &Subrep) -> Result<Representation> {
    quotient_with_projection(rep, sub).map(|(q, _)| q)
}

/// Preimage in `E` of a subrepresentation of `E / A`.
pub fn preimage(rep: &Representation, sub: &Subrep, upstairs: &Subrep) -> Subrep {
    let field = rep.field;
    let spaces = sub
        .spaces
        .iter()
        .zip(&upstairs.spaces)
        .map(|(a, w)| {
            let comp = a.complement_columns();
            let lifted = w.basis().iter().map(|row| {
                let mut v = vec![0u32; a.ambient()];
                for (k, &c) in comp.iter().enumerate() {
                    v[c] = row[k];
                }
                v
            });
            Subspace::span(field, a.ambient(), a.basis().iter().cloned().chain(lifted).collect())
        })
        .collect();
    Subrep { spaces }
}

/// A morphism of representations: one matrix per vertex, commuting with arrows.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    components: Vec<FpMatrix>,
}

impl Morphism {
    pub fn new(source: &Representation, target: &Representation, components: Vec<FpMatrix>) -> Result<Self> {
        source.same_category(target)?;
        let n = source.quiver.vertex_count();
        if components.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: components.len() });
        }
        for (v, c) in components.iter().enumerate() {
            let expected = (target.dims.0[v], source.dims.0[v]);
            if c.shape() != expected {
                return Err(Error::ShapeMismatch { arrow: v, expected, got: c.shape() });
            }
        }
        let field = source.field;
        for (a, &(i, j)) in source.quiver.arrows().iter().enumerate() {
            let lhs = components[j].mul(field, &source.maps[a]);
            let rhs = target.maps[a].mul(field, &components[i]);
            if lhs != rhs {
                return Err(Error::NotAMorphism(a));
            }
        }
        Ok(Self { source: source.clone(), target: target.clone(), components })
    }

    pub fn zero(source: &Representation, target: &Representation) -> Result<Self> {
        let comps = (0..source.quiver.vertex_count())
            .map(|v| FpMatrix::zeros(target.dims.0[v], source.dims.0[v]))
            .collect();
        Self::new(source, target, comps)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn components(&self) -> &[FpMatrix] {
        &self.components
    }

    pub fn kernel(&self) -> Subrep {
        Subrep { spaces: self.components.iter().map(|c| c.kernel(self.source.field)).collect() }
    }

    pub fn image(&self) -> Subrep {
        Subrep { spaces: self.components.iter().map(|c| c.image(self.source.field)).collect() }
    }
}

pub fn direct_sum(a: &Representation, b: &Representation) -> Result<Representation> {
    a.same_category(b)?;
    let dims = &a.dims + &b.dims;
    let maps = a
        .quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| {
            let mut m = FpMatrix::zeros(dims.0[j], dims.0[i]);
            let (ma, mb) = (&a.maps[k], &b.maps[k]);
            for r in 0..ma.rows() {
                for c in 0..ma.cols() {
                    m.set(r, c, ma.get(r, c));
                }
            }
            for r in 0..mb.rows() {
                for c in 0..mb.cols() {
                    m.set(ma.rows() + r, ma.cols() + c, mb.get(r, c));
                }
            }
            m
        })
        .collect();
    Representation::new(a.quiver.clone(), a.field, dims, maps)
}

/// Simple factors of a Jordan–Hölder filtration, bottom first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSeries {
    pub factors: Vec<usize>,
    pub multiplicities: Vec<usize>,
}

impl CompositionSeries {
    pub fn length(&self) -> usize {
        self.factors.len()
    }
}

/// Builds a Jordan–Hölder filtration by repeatedly splitting off a simple
/// subobject at the last nonzero vertex in topological order (all arrows out
/// of it land in zero spaces, so any vector there spans a copy of `S_v`).
pub fn composition_series(rep: &Representation) -> Result<CompositionSeries> {
    if rep.is_zero() {
        return Err(Error::ZeroObject);
    }
    let n = rep.quiver.vertex_count();
    let mut factors = Vec::with_capacity(rep.total_dim());
    let mut current = rep.clone();
    while !current.is_zero() {
        let v = *current
            .quiver
            .topological_order()
            .iter()
            .rev()
            .find(|&&v| current.dims.0[v] > 0)
            .expect("nonzero representation");
        let mut spaces: Vec<Subspace> = (0..n).map(|w| Subspace::zero(current.dims.0[w])).collect();
        let mut e = vec![0u32; current.dims.0[v]];
        e[0] = 1;
        spaces[v] = Subspace::span(current.field, current.dims.0[v], vec![e]);
        let simple = Subrep::new(&current, spaces)?;
        factors.push(v);
        current = quotient(&current, &simple)?;
    }
    let mut multiplicities = vec![0; n];
    for &v in &factors {
        multiplicities[v] += 1;
    }
    Ok(CompositionSeries { factors, multiplicities })
}

/// The universal extension `0 -> S_j -> X -> S_i^{q_ij} -> 0`: arrow copy `k`
/// of `i -> j` is the `k`-th coordinate functional `F^{q_ij} -> F`.
pub fn universal_extension(quiver: &Quiver, field: PrimeField, i: usize, j: usize) -> Result<Representation> {
    quiver.check_vertex(i)?;
    quiver.check_vertex(j)?;
    let q = quiver.arrow_count(i, j) as usize;
    if q == 0 {
        return Err(Error::NoArrows(i, j));
    }
    let n = quiver.vertex_count();
    let mut dims = DimVector::zero(n);
    dims.0[j] = 1;
    dims.0[i] = q;
    let mut copy = 0;
    let maps = quiver
        .arrows()
        .iter()
        .map(|&(s, t)| {
            let mut m = FpMatrix::zeros(dims.0[t], dims.0[s]);
            if (s, t) == (i, j) {
                m.set(0, copy, 1);
                copy += 1;
            }
            m
        })
        .collect();
    Representation::new(quiver.clone(), field, dims, maps)
}

/// Seeded pseudo-random representation; identical seeds give identical output.
pub fn random_rep(
    quiver: &Quiver,
    field: PrimeField,
    dims: &DimVector,
    seed: u64,
    cap: usize,
) -> Result<Representation> {
    if dims.len() != quiver.vertex_count() {
        return Err(Error::LengthMismatch { expected: quiver.vertex_count(), got: dims.len() });
    }
    if dims.total() > cap {
        return Err(Error::CapExceeded { dim: dims.total(), cap });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.characteristic();
    let maps = quiver
        .arrows()
        .iter()
        .map(|&(i, j)| {
            let mut m = FpMatrix::zeros(dims.0[j], dims.0[i]);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    m.set(r, c, rng.random_range(0..p));
                }
            }
            m
        })
        .collect();
    Representation::new(quiver.clone(), field, dims.clone(), maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::linear(2)
    }

    fn indecomposable_a2() -> Representation {
        universal_extension(&a2(), PrimeField::F2, 0, 1).unwrap()
    }

    #[test]
    fn enumerate_a2_indecomposable() {
        let m = indecomposable_a2();
        let subs = subrep_enumerate(&m, DEFAULT_CAP).unwrap();
        let dims: Vec<DimVector> = subs.iter().map(Subrep::dim_vector).collect();
        assert_eq!(dims, vec![DimVector(vec![0, 0]), DimVector(vec![0, 1]), DimVector(vec![1, 1])]);
    }

    #[test]
    fn enumerate_semisimple_and_simple() {
        let q = a2();
        let ss = Representation::semisimple(&q, PrimeField::F2, DimVector(vec![1, 1])).unwrap();
        assert_eq!(subrep_enumerate(&ss, DEFAULT_CAP).unwrap().len(), 4);
        for i in 0..2 {
            let s = Representation::simple(&q, PrimeField::F2, i).unwrap();
            let subs = subrep_enumerate(&s, DEFAULT_CAP).unwrap();
            assert_eq!(subs.len(), 2);
            assert!(subs[0].is_zero());
        }
    }

    #[test]
    fn enumeration_matches_brute_force_filter() {
        // Oracle: all subspace tuples, filtered by the invariance predicate.
        let q = Quiver::linear(3);
        for seed in 0..10 {
            let rep = random_rep(&q, PrimeField::F2, &DimVector(vec![2, 1, 2]), seed, 8).unwrap();
            let mut brute = Vec::new();
            for a in Subspace::enumerate_all(PrimeField::F2, 2) {
                for b in Subspace::enumerate_all(PrimeField::F2, 1) {
                    for c in Subspace::enumerate_all(PrimeField::F2, 2) {
                        let s = Subrep { spaces: vec![a.clone(), b.clone(), c.clone()] };
                        if s.is_invariant(&rep) {
                            brute.push(s);
                        }
                    }
                }
            }
            brute.sort();
            assert_eq!(subrep_enumerate(&rep, 8).unwrap(), brute);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let q = a2();
        let big = Representation::semisimple(&q, PrimeField::F2, DimVector(vec![5, 4])).unwrap();
        assert_eq!(subrep_enumerate(&big, 8), Err(Error::CapExceeded { dim: 9, cap: 8 }));
        assert!(random_rep(&q, PrimeField::F2, &DimVector(vec![5, 4]), 1, 8).is_err());
    }

    #[test]
    fn quotient_of_indecomposable_is_s1() {
        let m = indecomposable_a2();
        let subs = subrep_enumerate(&m, DEFAULT_CAP).unwrap();
        let s2 = subs.iter().find(|s| s.dim_vector() == DimVector(vec![0, 1])).unwrap();
        let q = quotient(&m, s2).unwrap();
        assert_eq!(q, Representation::simple(&a2(), PrimeField::F2, 0).unwrap());
        let ses = ShortExactSeq::new(&m, s2).unwrap();
        assert!(ses.dims_add_up());
        assert_eq!(ses.sub_rep, Representation::simple(&a2(), PrimeField::F2, 1).unwrap());
    }

    #[test]
    fn quotient_rejects_non_invariant() {
        let m = indecomposable_a2();
        let bad = Subrep { spaces: vec![Subspace::full(1), Subspace::zero(1)] };
        assert_eq!(quotient(&m, &bad), Err(Error::NotInvariant(0)));
        assert!(Subrep::new(&m, bad.spaces.clone()).is_err());
    }

    #[test]
    fn direct_sum_and_morphisms() {
        let q = a2();
        let m = indecomposable_a2();
        let s1 = Representation::simple(&q, PrimeField::F2, 0).unwrap();
        let sum = direct_sum(&m, &s1).unwrap();
        assert_eq!(sum.dims(), &DimVector(vec![2, 1]));
        let zero = Morphism::zero(&m, &s1).unwrap();
        assert_eq!(zero.kernel(), Subrep::full(&m));
        assert!(zero.image().is_zero());
        // The projection M -> S1 is a morphism with kernel S2.
        let proj = Morphism::new(&m, &s1, vec![FpMatrix::identity(1), FpMatrix::zeros(0, 1)]).unwrap();
        assert_eq!(proj.kernel().dim_vector(), DimVector(vec![0, 1]));
        assert_eq!(proj.image(), Subrep::full(&s1));
        // The inclusion S1 -> M does not commute with the arrow.
        assert!(Morphism::new(&s1, &m, vec![FpMatrix::identity(1), FpMatrix::zeros(1, 0)]).is_err());
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(direct_sum(&m, &Representation::simple(&q, f3, 0).unwrap()), Err(Error::FieldMismatch));
    }

    #[test]
    fn composition_series_examples() {
        let q = a2();
        let cs = composition_series(&indecomposable_a2()).unwrap();
        assert_eq!(cs.length(), 2);
        assert_eq!(cs.multiplicities, vec![1, 1]);
        assert_eq!(cs.factors, vec![1, 0]);
        let s = Representation::semisimple(&q, PrimeField::F2, DimVector(vec![3, 0])).unwrap();
        assert_eq!(composition_series(&s).unwrap().multiplicities, vec![3, 0]);
        assert_eq!(composition_series(&Representation::zero(&q, PrimeField::F2)), Err(Error::ZeroObject));
        for seed in 0..20 {
            let d = DimVector(vec![(seed % 3) as usize + 1, (seed % 4) as usize]);
            let r = random_rep(&q, PrimeField::F2, &d, seed, 8).unwrap();
            assert_eq!(composition_series(&r).unwrap().multiplicities, d.0);
        }
    }

    #[test]
    fn universal_extension_examples() {
        let m = indecomposable_a2();
        assert_eq!(m.maps()[0], FpMatrix::identity(1));
        let k3 = Quiver::kronecker(3);
        let x = universal_extension(&k3, PrimeField::F2, 0, 1).unwrap();
        assert_eq!(x.dims(), &DimVector(vec![3, 1]));
        for (k, map) in x.maps().iter().enumerate() {
            let mut expected = FpMatrix::zeros(1, 3);
            expected.set(0, k, 1);
            assert_eq!(map, &expected);
        }
        // Nonsplit: S2 is a subobject, S1 is not.
        let subs = subrep_enumerate(&m, DEFAULT_CAP).unwrap();
        assert!(subs.iter().any(|s| s.dim_vector() == DimVector(vec![0, 1])));
        assert!(!subs.iter().any(|s| s.dim_vector() == DimVector(vec![1, 0])));
        let subs = subrep_enumerate(&x, DEFAULT_CAP).unwrap();
        assert!(!subs.iter().any(|s| s.dim_vector().0[1] == 0 && s.dim_vector().0[0] > 0));
        assert_eq!(universal_extension(&a2(), PrimeField::F2, 1, 0), Err(Error::NoArrows(1, 0)));
    }

    #[test]
    fn random_rep_is_reproducible() {
        let q = Quiver::linear(3);
        let d = DimVector(vec![2, 2, 1]);
        let a = random_rep(&q, PrimeField::F2, &d, 42, 8).unwrap();
        let b = random_rep(&q, PrimeField::F2, &d, 42, 8).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dims(), &d);
    }

    #[test]
    fn random_corpus_is_fast() {
        let q = a2();
        let start = std::time::Instant::now();
        let reps: Vec<_> = (0..200u64)
            .map(|s| {
                let d = DimVector(vec![(s % 4) as usize, ((s / 4) % 4) as usize]);
                random_rep(&q, PrimeField::F2, &d, s, 8).unwrap()
            })
            .collect();
        assert_eq!(reps.len(), 200);
        assert!(start.elapsed().as_secs_f64() < 1.0);
    }

    #[test]
    fn closure_and_dimension_properties() {
        let q = Quiver::linear(3);
        for seed in 0..15 {
            let rep = random_rep(&q, PrimeField::F2, &DimVector(vec![1, 2, 2]), seed, 8).unwrap();
            let subs = subrep_enumerate(&rep, 8).unwrap();
            for a in &subs {
                assert!(a.is_invariant(&rep));
                let quo = quotient(&rep, a).unwrap();
                assert_eq!(a.dim_vector().total() + quo.total_dim(), rep.total_dim());
                for b in &subs {
                    let f = rep.field();
                    assert!(subs.binary_search(&a.intersect(f, b)).is_ok());
                    assert!(subs.binary_search(&a.sum(f, b)).is_ok());
                }
            }
        }
    }

    #[test]
    fn preimage_inverts_quotient() {
        let q = Quiver::linear(3);
        let rep = random_rep(&q, PrimeField::F2, &DimVector(vec![2, 2, 1]), 9, 8).unwrap();
        let subs = subrep_enumerate(&rep, 8).unwrap();
        let f = rep.field();
        for a in &subs {
            let quo = quotient(&rep, a).unwrap();
            let upstairs = subrep_enumerate(&quo, 8).unwrap();
            for w in &upstairs {
                let pre = preimage(&rep, a, w);
                assert!(pre.is_invariant(&rep));
                assert!(a.is_contained_in(f, &pre));
                assert_eq!(pre.dim_vector(), &a.dim_vector() + &w.dim_vector());
            }
            // Bijection between subreps of E/A and subreps of E containing A.
            let containing = subs.iter().filter(|s| a.is_contained_in(f, s)).count();
            assert_eq!(containing, upstairs.len());
        }
    }

    #[test]
    fn spec_round_trip() {
        let q = Quiver::linear(3);
        let rep = random_rep(&q, PrimeField::F2, &DimVector(vec![2, 0, 1]), 3, 8).unwrap();
        let back = Representation::from_spec(&q, PrimeField::F2, &rep.to_spec()).unwrap();
        assert_eq!(back, rep);
    }
}
