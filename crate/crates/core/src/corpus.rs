//! Seeded test corpus of small representations with random exact charges.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fp::PrimeField;
use crate::geometry::Gaussian;
use crate::hn::{CentralCharge, StabilityCondition};
use crate::quiver::{DimVector, Quiver};
use crate::rep::{random_rep, Representation, DEFAULT_CAP};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub rep: Representation,
    pub charges: Vec<StabilityCondition>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub seed: u64,
    pub a2_count: usize,
    pub a3_count: usize,
    pub charges_per_rep: usize,
    /// Componentwise bound on A2 dimension vectors.
    pub a2_max_dim: usize,
    /// Bound on the total dimension of A3 representations.
    pub a3_max_total: usize,
}

impl CorpusSpec {
    pub fn standard(seed: u64) -> Self {
        Self { seed, a2_count: 100, a3_count: 100, charges_per_rep: 5, a2_max_dim: 3, a3_max_total: 6 }
    }
}

/// A random element of bH with coordinates `a/b`, `|a| <= 3`, `1 <= b <= 3`, imaginary part at most 3.
pub fn random_gaussian_charge(rng: &mut impl Rng) -> Gaussian {
    loop {
        let re = (rng.random_range(-3i64..=3), rng.random_range(1i64..=3));
        let im = (rng.random_range(0i64..=3), rng.random_range(1i64..=3));
        let z = Gaussian::from_fractions(re, im);
        if z.in_upper_half() {
            return z;
        }
    }
}

pub fn random_central_charge(rng: &mut impl Rng, n: usize) -> CentralCharge {
    CentralCharge::new((0..n).map(|_| random_gaussian_charge(rng)).collect()).expect("charges drawn from bH")
}

fn random_dims(rng: &mut impl Rng, n: usize, max_each: usize, max_total: usize) -> DimVector {
    loop {
        let d: Vec<usize> = (0..n).map(|_| rng.random_range(0..=max_each)).collect();
        let total: usize = d.iter().sum();
        if total > 0 && total <= max_total {
            return DimVector(d);
        }
    }
}

/// A2 entries first, then A3, all over F2.
pub fn seeded_corpus(spec: &CorpusSpec) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let field = PrimeField::F2;
    let mut out = Vec::with_capacity(spec.a2_count + spec.a3_count);
    let plan = [
        (Quiver::linear(2), spec.a2_count, spec.a2_max_dim, 2 * spec.a2_max_dim),
        (Quiver::linear(3), spec.a3_count, spec.a3_max_total, spec.a3_max_total),
    ];
    for (quiver, count, max_each, max_total) in plan {
        for _ in 0..count {
            let dims = random_dims(&mut rng, quiver.vertex_count(), max_each, max_total);
            let rep = random_rep(&quiver, field, &dims, rng.random(), DEFAULT_CAP)?;
            let charges = (0..spec.charges_per_rep)
                .map(|_| StabilityCondition::new(&quiver, random_central_charge(&mut rng, quiver.vertex_count())))
                .collect::<Result<Vec<_>>>()?;
            out.push(CorpusEntry { rep, charges });
        }
    }
    Ok(out)
}
