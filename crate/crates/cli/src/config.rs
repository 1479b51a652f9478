//! JSON run configuration. Vertices are numbered from 1; charges and t values
//! are exact rationals written as `[num, den]` (plain integers are also accepted).

use std::path::PathBuf;

use serde::Deserialize;
use stabgrowth::fp::PrimeField;
use stabgrowth::geometry::Gaussian;
use stabgrowth::hn::{CentralCharge, StabilityCondition};
use stabgrowth::quiver::{validate_quiver, DimVector, Quiver};
use stabgrowth::rep::{random_rep, universal_extension, RepSpec, Representation, DEFAULT_CAP, HARD_CAP};
use stabgrowth::twist::TwistWord;

use crate::CliError;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub quiver: Quiver,
    pub field: PrimeField,
    pub cy_dim: i64,
    pub sigma: StabilityCondition,
    pub word: TwistWord,
    pub t_grid: Vec<f64>,
    pub n_max: u64,
    pub seed: u64,
    pub cap: usize,
    pub rep: Representation,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    quiver: Option<RawQuiver>,
    field: Option<RawPrime>,
    cy_dim: Option<i64>,
    charges: Option<Vec<RawCharge>>,
    word: Option<String>,
    t_grid: Option<Vec<RawRational>>,
    n_max: Option<u64>,
    seed: Option<u64>,
    cap: Option<usize>,
    rep: Option<RawRep>,
    out: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
enum RawQuiver {
    /// Arrow-count matrix, `q[i][j]` arrows from `i` to `j`.
    Matrix(Vec<Vec<i64>>),
    Arrows { vertices: usize, arrows: Vec<[usize; 2]> },
    Linear(usize),
    Kronecker(u32),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
enum RawRep {
    Explicit(RepSpec),
    Random { dims: Vec<usize>, seed: Option<u64> },
    /// Universal extension of `S_i` by `S_j` along the arrows `i -> j`.
    Extension([usize; 2]),
    Simple(usize),
    Semisimple(Vec<usize>),
    Zero,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(try_from = "u32")]
struct RawPrime(PrimeField);

impl TryFrom<u32> for RawPrime {
    type Error = String;

    fn try_from(p: u32) -> Result<Self, String> {
        PrimeField::new(p).map(RawPrime).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Int(i64),
    Frac([i64; 2]),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(try_from = "RationalRepr")]
struct RawRational((i64, i64));

impl TryFrom<RationalRepr> for RawRational {
    type Error = String;

    fn try_from(r: RationalRepr) -> Result<Self, String> {
        match r {
            RationalRepr::Int(n) => Ok(RawRational((n, 1))),
            RationalRepr::Frac([_, 0]) => Err("zero denominator".into()),
            RationalRepr::Frac([n, d]) => Ok(RawRational((n, d))),
        }
    }
}

impl RawRational {
    fn to_f64(self) -> f64 {
        self.0 .0 as f64 / self.0 .1 as f64
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(try_from = "[RawRational; 2]")]
struct RawCharge(Gaussian);

impl TryFrom<[RawRational; 2]> for RawCharge {
    type Error = String;

    fn try_from([re, im]: [RawRational; 2]) -> Result<Self, String> {
        let z = Gaussian::from_fractions(re.0, im.0);
        if z.in_upper_half() {
            Ok(RawCharge(z))
        } else {
            Err(format!("charge {z} is not in the semi-closed upper half-plane"))
        }
    }
}

/// Overrides from command-line flags.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub t_grid: Option<Vec<f64>>,
    pub n_max: Option<u64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

/// `-1,0,1`, `-1 0 1` or `1/2,2`.
pub fn parse_t_list(s: &str) -> Result<Vec<f64>, String> {
    let values: Vec<f64> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| match p.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| format!("bad t value `{p}`"))?;
                let d: i64 = d.trim().parse().map_err(|_| format!("bad t value `{p}`"))?;
                if d == 0 {
                    return Err(format!("zero denominator in `{p}`"));
                }
                Ok(n as f64 / d as f64)
            }
            None => p.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| format!("bad t value `{p}`")),
        })
        .collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err("empty t list".into());
    }
    Ok(values)
}

/// 1-based line and column of the first occurrence of `"key"`.
fn locate(text: &str, key: &str) -> String {
    let needle = format!("\"{key}\"");
    match text.find(&needle) {
        Some(pos) => {
            let before = &text[..pos];
            let line = before.matches('\n').count() + 1;
            let col = pos - before.rfind('\n').map_or(0, |i| i + 1) + 1;
            format!(" at line {line} column {col}")
        }
        None => String::new(),
    }
}

fn vertex(v: usize, n: usize, what: &str) -> Result<usize, String> {
    if v == 0 || v > n {
        Err(format!("{what}: vertex {v} does not exist (vertices are 1..={n})"))
    } else {
        Ok(v - 1)
    }
}

impl RunConfig {
    pub fn load(text: Option<&str>, overrides: &Overrides) -> Result<Self, CliError> {
        let raw: RawConfig = match text {
            Some(t) => serde_json::from_str(t).map_err(|e| CliError::Config(e.to_string()))?,
            None => RawConfig::default(),
        };
        let text = text.unwrap_or("");
        let bad = |key: &str, msg: String| CliError::Config(format!("{key}: {msg}{}", locate(text, key)));

        let quiver = match &raw.quiver {
            None => Quiver::linear(2),
            Some(RawQuiver::Matrix(q)) => validate_quiver(q).map_err(|e| bad("quiver", e.to_string()))?,
            Some(RawQuiver::Arrows { vertices, arrows }) => {
                let arrows = arrows
                    .iter()
                    .map(|&[s, t]| Ok((vertex(s, *vertices, "arrow")?, vertex(t, *vertices, "arrow")?)))
                    .collect::<Result<Vec<_>, String>>()
                    .map_err(|m| bad("quiver", m))?;
                Quiver::from_arrows(*vertices, &arrows).map_err(|e| bad("quiver", e.to_string()))?
            }
            Some(RawQuiver::Linear(n)) => {
                if *n == 0 {
                    return Err(bad("quiver", "a quiver needs at least one vertex".into()));
                }
                Quiver::linear(*n)
            }
            Some(RawQuiver::Kronecker(m)) => Quiver::kronecker(*m),
        };
        let n = quiver.vertex_count();
        let field = raw.field.map_or(PrimeField::F2, |p| p.0);
        let cy_dim = raw.cy_dim.unwrap_or(3);
        stabgrowth::quiver::check_cy_dim(cy_dim).map_err(|e| bad("cy_dim", e.to_string()))?;

        let charge = match &raw.charges {
            Some(cs) => {
                if cs.len() != n {
                    return Err(bad("charges", format!("expected {n} charges, one per vertex, got {}", cs.len())));
                }
                CentralCharge::new(cs.iter().map(|c| c.0.clone()).collect()).map_err(|e| bad("charges", e.to_string()))?
            }
            None if n == 2 => CentralCharge::from_ints(&[(0, 1), (-1, 1)]).expect("default charges lie in bH"),
            None => CentralCharge::standard(n),
        };
        let sigma = StabilityCondition::new(&quiver, charge).map_err(|e| bad("charges", e.to_string()))?;

        let word: TwistWord = raw.word.as_deref().unwrap_or("T1").parse().map_err(|e: stabgrowth::Error| bad("word", e.to_string()))?;
        word.validate(n).map_err(|_| bad("word", format!("word `{word}` references a vertex outside 1..={n}")))?;

        let t_grid = match (&overrides.t_grid, &raw.t_grid) {
            (Some(t), _) => t.clone(),
            (None, Some(t)) if t.is_empty() => return Err(bad("t_grid", "empty t grid".into())),
            (None, Some(t)) => t.iter().map(|r| r.to_f64()).collect(),
            (None, None) => vec![-1.0, 0.0, 1.0],
        };
        let n_max = overrides.n_max.or(raw.n_max).unwrap_or(200);
        let seed = overrides.seed.or(raw.seed).unwrap_or(0);
        let cap = raw.cap.unwrap_or(DEFAULT_CAP);
        if cap > HARD_CAP {
            return Err(bad("cap", format!("enumeration cap {cap} exceeds the hard limit {HARD_CAP}")));
        }

        let rep = match &raw.rep {
            None if n >= 2 && quiver.arrow_count(0, 1) > 0 => universal_extension(&quiver, field, 0, 1),
            None => Representation::semisimple(&quiver, field, DimVector(vec![1; n])),
            Some(RawRep::Explicit(spec)) => Representation::from_spec(&quiver, field, spec),
            Some(RawRep::Random { dims, seed: s }) => {
                random_rep(&quiver, field, &DimVector(dims.clone()), s.unwrap_or(seed), cap)
            }
            Some(RawRep::Extension([i, j])) => {
                let i = vertex(*i, n, "extension").map_err(|m| bad("rep", m))?;
                let j = vertex(*j, n, "extension").map_err(|m| bad("rep", m))?;
                universal_extension(&quiver, field, i, j)
            }
            Some(RawRep::Simple(i)) => {
                let i = vertex(*i, n, "simple").map_err(|m| bad("rep", m))?;
                Representation::simple(&quiver, field, i)
            }
            Some(RawRep::Semisimple(d)) => Representation::semisimple(&quiver, field, DimVector(d.clone())),
            Some(RawRep::Zero) => Ok(Representation::zero(&quiver, field)),
        }
        .map_err(|e| bad("rep", e.to_string()))?;
        if rep.total_dim() > cap {
            return Err(bad("rep", format!("total dimension {} exceeds the enumeration cap {cap}", rep.total_dim())));
        }

        Ok(RunConfig {
            quiver,
            field,
            cy_dim,
            sigma,
            word,
            t_grid,
            n_max,
            seed,
            cap,
            rep,
            out: overrides.out.clone().or(raw.out),
        })
    }
}
