//! Stability conditions on the standard heart: semistability, HN
//! filtrations, masses and sampled deformation estimates.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{left_hull, mass_from_factors, Charge, ExactCharge, Gaussian, HnPolygon, Phase};
use crate::laurent::{log_sum_exp, LaurentPoly};
use crate::quiver::{DimVector, Quiver};
use crate::rep::{preimage, quotient, restriction, subrep_enumerate, Representation, Subrep};

/// Values `z_i = Z(S_i)` of a central charge on the simples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharge {
    z: Vec<ExactCharge>,
}

impl CentralCharge {
    pub fn new(z: Vec<Gaussian>) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::EmptyInput("central charge"));
        }
        Ok(Self { z: z.into_iter().map(ExactCharge::new).collect::<Result<_>>()? })
    }

    pub fn from_ints(z: &[(i64, i64)]) -> Result<Self> {
        Self::new(z.iter().map(|&(re, im)| Gaussian::from_ints(re, im)).collect())
    }

    /// Every simple sent to `i`.
    pub fn standard(n: usize) -> Self {
        Self { z: (0..n).map(|_| ExactCharge::from_ints(0, 1).expect("i lies in bH")).collect() }
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn values(&self) -> &[ExactCharge] {
        &self.z
    }

    pub fn charge_of(&self, d: &DimVector) -> Gaussian {
        self.z
            .iter()
            .zip(&d.0)
            .fold(Gaussian::zero(), |acc, (z, &k)| &acc + &z.value().scale(k as i64))
    }

    /// All charges multiplied by `w`; fails if some value leaves bH.
    pub fn multiplied_by(&self, w: &Gaussian) -> Result<Self> {
        Self::new(self.z.iter().map(|z| z.value() * w).collect())
    }
}

/// A stability condition with the standard heart of `quiver`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityCondition {
    quiver: Quiver,
    charge: CentralCharge,
}

impl StabilityCondition {
    pub fn new(quiver: &Quiver, charge: CentralCharge) -> Result<Self> {
        if charge.len() != quiver.vertex_count() {
            return Err(Error::LengthMismatch { expected: quiver.vertex_count(), got: charge.len() });
        }
        Ok(Self { quiver: quiver.clone(), charge })
    }

    /// `sigma_0`: every simple has charge `i`.
    pub fn standard(quiver: &Quiver) -> Self {
        Self { quiver: quiver.clone(), charge: CentralCharge::standard(quiver.vertex_count()) }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn charge(&self) -> &CentralCharge {
        &self.charge
    }

    pub fn charge_of(&self, d: &DimVector) -> Gaussian {
        self.charge.charge_of(d)
    }

    fn exact_charge_of(&self, d: &DimVector) -> Result<ExactCharge> {
        if d.is_zero() {
            return Err(Error::ZeroObject);
        }
        ExactCharge::new(self.charge_of(d))
    }

    pub fn phase_of(&self, d: &DimVector) -> Result<Phase> {
        Ok(self.exact_charge_of(d)?.phase())
    }

    fn check_rep(&self, rep: &Representation) -> Result<()> {
        if rep.quiver() != &self.quiver {
            Err(Error::LengthMismatch { expected: self.quiver.vertex_count(), got: rep.quiver().vertex_count() })
        } else {
            Ok(())
        }
    }
}

pub fn charge_of(sigma: &StabilityCondition, d: &DimVector) -> Gaussian {
    sigma.charge_of(d)
}

/// No nonzero subobject has larger phase. The zero object is rejected.
pub fn is_semistable(sigma: &StabilityCondition, rep: &Representation, cap: usize) -> Result<bool> {
    sigma.check_rep(rep)?;
    let z = sigma.exact_charge_of(rep.dims())?;
    let subs = subrep_enumerate(rep, cap)?;
    Ok(subs
        .iter()
        .filter(|s| !s.is_zero())
        .all(|s| ExactCharge::new(sigma.charge_of(&s.dim_vector())).expect("nonzero class").cmp_phase(&z) != Ordering::Greater))
}

/// `0 = E_0 ⊂ E_1 ⊂ ... ⊂ E_m = E` with semistable factors of strictly decreasing phase.
#[derive(Clone, Debug)]
pub struct HnFiltration {
    /// `E_1, ..., E_m` in the coordinates of `E`.
    pub steps: Vec<Subrep>,
    pub factors: Vec<Representation>,
    pub charges: Vec<Gaussian>,
    pub phases: Vec<Phase>,
}

impl HnFiltration {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step_dims(&self) -> Vec<DimVector> {
        self.steps.iter().map(Subrep::dim_vector).collect()
    }

    pub fn factor_dims(&self) -> Vec<DimVector> {
        self.factors.iter().map(|f| f.dims().clone()).collect()
    }

    /// `[0, Z(E_1), ..., Z(E_m)]`.
    pub fn step_charges(&self) -> Vec<Gaussian> {
        let mut out = vec![Gaussian::zero()];
        for z in &self.charges {
            let next = out.last().expect("nonempty") + z;
            out.push(next);
        }
        out
    }

    pub fn mass(&self, t: f64) -> Result<f64> {
        let factors: Vec<(Charge, f64)> = self
            .charges
            .iter()
            .zip(&self.phases)
            .map(|(z, p)| Ok((ExactCharge::new(z.clone())?.to_float(), p.0)))
            .collect::<Result<_>>()?;
        mass_from_factors(&factors, t)
    }

    pub fn report(&self) -> HnReport {
        HnReport {
            steps: self.step_dims(),
            factor_dims: self.factor_dims(),
            factor_phases: self.phases.iter().map(|p| p.0).collect(),
            factor_charges: self.charges.iter().map(|z| [z.re.to_string(), z.im.to_string()]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HnReport {
    pub steps: Vec<DimVector>,
    pub factor_dims: Vec<DimVector>,
    pub factor_phases: Vec<f64>,
    pub factor_charges: Vec<[String; 2]>,
}

/// Greedy HN filtration: repeatedly split off the maximal destabilizing
/// subobject (maximal phase, then maximal dimension) of the current quotient.
pub fn hn_filtration(sigma: &StabilityCondition, rep: &Representation, cap: usize) -> Result<HnFiltration> {
    sigma.check_rep(rep)?;
    if rep.is_zero() {
        return Err(Error::ZeroObject);
    }
    let field = rep.field();
    let mut base = Subrep::zero(rep);
    let mut filtration = HnFiltration { steps: Vec::new(), factors: Vec::new(), charges: Vec::new(), phases: Vec::new() };
    while base.dim_vector() != *rep.dims() {
        let step = filtration.steps.len();
        let current = quotient(rep, &base)?;
        let subs = subrep_enumerate(&current, cap)?;
        let candidates: Vec<(&Subrep, ExactCharge, usize)> = subs
            .iter()
            .filter(|s| !s.is_zero())
            .map(|s| {
                let d = s.dim_vector();
                (s, sigma.exact_charge_of(&d).expect("nonzero class"), d.total())
            })
            .collect();
        let best = candidates
            .iter()
            .max_by(|a, b| a.1.cmp_phase(&b.1).then(a.2.cmp(&b.2)))
            .expect("the whole quotient is a candidate");
        let ties = candidates
            .iter()
            .filter(|c| c.1.cmp_phase(&best.1) == Ordering::Equal && c.2 == best.2)
            .count();
        if ties != 1 {
            return Err(Error::NonUniqueDestabilizer(step));
        }
        let destabilizer = best.0;
        let factor = restriction(&current, destabilizer)?;
        let next = preimage(rep, &base, destabilizer);
        debug_assert!(base.is_contained_in(field, &next));
        filtration.phases.push(best.1.phase());
        filtration.charges.push(best.1.value().clone());
        filtration.factors.push(factor);
        filtration.steps.push(next.clone());
        base = next;
    }
    Ok(filtration)
}

/// `m_{sigma,t}(E)`; zero for the zero object.
pub fn mass(sigma: &StabilityCondition, rep: &Representation, t: f64, cap: usize) -> Result<f64> {
    if rep.is_zero() {
        return Ok(0.0);
    }
    hn_filtration(sigma, rep, cap)?.mass(t)
}

/// Mass of a semisimple object: simples of equal phase form one factor
/// whose modulus is the sum of theirs.
pub fn semisimple_mass(sigma: &StabilityCondition, dims: &DimVector, t: f64) -> f64 {
    sigma
        .charge
        .values()
        .iter()
        .zip(&dims.0)
        .map(|(z, &d)| d as f64 * z.to_float().g_t(t))
        .sum()
}

#[derive(Clone, Debug)]
pub struct PolygonOracle {
    pub polygon: HnPolygon,
    pub subobject_charges: Vec<Gaussian>,
    pub hn_vertices: Vec<Gaussian>,
    pub agreement: bool,
}

/// Left hull of all subobject charges against the charges of the HN steps.
pub fn hn_polygon_oracle(sigma: &StabilityCondition, rep: &Representation, cap: usize) -> Result<PolygonOracle> {
    sigma.check_rep(rep)?;
    if rep.is_zero() {
        return Err(Error::ZeroObject);
    }
    let subs = subrep_enumerate(rep, cap)?;
    let mut points: Vec<Gaussian> = subs.iter().map(|s| sigma.charge_of(&s.dim_vector())).collect();
    points.sort_by(|a, b| (&a.im, &a.re).cmp(&(&b.im, &b.re)));
    points.dedup();
    let total = sigma.charge_of(rep.dims());
    let polygon = left_hull(&points, &total)?;
    let hn_vertices = hn_filtration(sigma, rep, cap)?.step_charges();
    let agreement = polygon.vertices() == hn_vertices.as_slice();
    Ok(PolygonOracle { polygon, subobject_charges: points, hn_vertices, agreement })
}

/// A heart object with its module data, or a semisimple object given by multiplicities.
#[derive(Clone, Debug)]
pub enum CohomologyModule {
    Rep(Representation),
    Semisimple(DimVector),
}

impl CohomologyModule {
    pub fn dims(&self) -> &DimVector {
        match self {
            CohomologyModule::Rep(r) => r.dims(),
            CohomologyModule::Semisimple(d) => d,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dims().is_zero()
    }

    pub fn mass(&self, sigma: &StabilityCondition, t: f64, cap: usize) -> Result<f64> {
        match self {
            CohomologyModule::Rep(r) => mass(sigma, r, t, cap),
            CohomologyModule::Semisimple(d) => Ok(semisimple_mass(sigma, d, t)),
        }
    }
}

/// An object of the derived category recorded by its cohomology: `(H^k, k)`.
#[derive(Clone, Debug)]
pub struct CohomologyProfile {
    entries: Vec<(CohomologyModule, i64)>,
}

impl CohomologyProfile {
    /// Entries are sorted by degree; degrees must be distinct.
    pub fn new(mut entries: Vec<(CohomologyModule, i64)>) -> Result<Self> {
        entries.sort_by_key(|e| e.1);
        for w in entries.windows(2) {
            if w[0].1 == w[1].1 {
                return Err(Error::DuplicateDegree(w[0].1));
            }
        }
        Ok(Self { entries })
    }

    pub fn single(module: CohomologyModule, degree: i64) -> Self {
        Self { entries: vec![(module, degree)] }
    }

    pub fn entries(&self) -> &[(CohomologyModule, i64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|(m, _)| m.is_zero())
    }

    /// `sum_k dim H^k u^k`.
    pub fn poincare(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.entries.iter().map(|(m, k)| (*k, m.dims().total() as i64)))
    }

    /// Class in `K`: `sum_k (-1)^k [H^k]`.
    pub fn k_class(&self) -> Vec<i64> {
        let n = self.entries.first().map_or(0, |(m, _)| m.dims().len());
        let mut out = vec![0i64; n];
        for (m, k) in &self.entries {
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            for (o, &d) in out.iter_mut().zip(&m.dims().0) {
                *o += sign * d as i64;
            }
        }
        out
    }
}

/// `sum_k m_{sigma,t}(H^k) e^{-kt}`.
pub fn mass_of_complex(sigma: &StabilityCondition, profile: &CohomologyProfile, t: f64, cap: usize) -> Result<f64> {
    profile
        .entries
        .iter()
        .map(|(m, k)| Ok(m.mass(sigma, t, cap)? * (-(*k as f64) * t).exp()))
        .sum()
}

/// `log` of [`mass_of_complex`], accumulated without overflow. `None` for the zero object.
pub fn log_mass_of_complex(
    sigma: &StabilityCondition,
    profile: &CohomologyProfile,
    t: f64,
    cap: usize,
) -> Result<Option<f64>> {
    let mut logs = Vec::with_capacity(profile.entries.len());
    for (m, k) in &profile.entries {
        if m.is_zero() {
            continue;
        }
        logs.push(m.mass(sigma, t, cap)?.ln() - *k as f64 * t);
    }
    Ok((!logs.is_empty()).then(|| log_sum_exp(&logs)))
}

/// `min |Z(E)| / ||[E]||` over the corpus (Euclidean norm on dimension vectors).
pub fn support_constant_sample(sigma: &StabilityCondition, corpus: &[Representation]) -> Result<f64> {
    let nonzero: Vec<&Representation> = corpus.iter().filter(|r| !r.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::EmptyInput("support-constant corpus"));
    }
    Ok(nonzero
        .iter()
        .map(|r| {
            let norm = r.dims().0.iter().map(|&d| (d * d) as f64).sum::<f64>().sqrt();
            sigma.charge_of(r.dims()).modulus() / norm
        })
        .fold(f64::INFINITY, f64::min))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceSample {
    pub phase_gap: f64,
    pub charge_gap: f64,
    pub mass_ratio_min: f64,
    pub mass_ratio_max: f64,
}

/// Sampled versions of the phase distance, the charge distance and the mass
/// comparison constants between two stability conditions.
pub fn stab_distance_sample(
    sigma: &StabilityCondition,
    tau: &StabilityCondition,
    corpus: &[Representation],
    t: f64,
    cap: usize,
) -> Result<DistanceSample> {
    let nonzero: Vec<&Representation> = corpus.iter().filter(|r| !r.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::EmptyInput("distance corpus"));
    }
    let mut out = DistanceSample {
        phase_gap: 0.0,
        charge_gap: 0.0,
        mass_ratio_min: f64::INFINITY,
        mass_ratio_max: f64::NEG_INFINITY,
    };
    for rep in nonzero {
        let hs = hn_filtration(sigma, rep, cap)?;
        let ht = hn_filtration(tau, rep, cap)?;
        let (s_plus, s_minus) = (hs.phases[0].0, hs.phases[hs.len() - 1].0);
        let (t_plus, t_minus) = (ht.phases[0].0, ht.phases[ht.len() - 1].0);
        out.phase_gap = out.phase_gap.max((s_plus - t_plus).abs()).max((s_minus - t_minus).abs());
        if hs.len() == 1 {
            let z = sigma.charge_of(rep.dims());
            let w = tau.charge_of(rep.dims());
            out.charge_gap = out.charge_gap.max((&z - &w).modulus() / z.modulus());
        }
        let ratio = hs.mass(t)? / ht.mass(t)?;
        out.mass_ratio_min = out.mass_ratio_min.min(ratio);
        out.mass_ratio_max = out.mass_ratio_max.max(ratio);
    }
    Ok(out)
}
