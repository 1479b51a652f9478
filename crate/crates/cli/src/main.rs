mod config;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use stabgrowth::checks::{run_suite, Suite};
use stabgrowth::growth::{
    estimate_growth_rate, exact_word_entropy, spectral_bound_report, twist_power_mass_series, upper_profile_series,
    GrowthSeries, SANDWICH_TOLERANCE,
};
use stabgrowth::hn::{hn_filtration, hn_polygon_oracle};
use stabgrowth::spectral::{format_poly, spectral_radius_or_bound, DEFAULT_EXACT_CAP};
use stabgrowth::twist::{twist_k_matrix, word_upper_profile, GradedClass};

use crate::config::{parse_t_list, Overrides, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] stabgrowth::Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Parser, Debug)]
#[command(name = "stabgrowth", version, about = "Stability conditions, HN filtrations and twist entropy for quiver categories")]
struct Cli {
    /// JSON run configuration
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// t values, e.g. "-1,0,1" or "1/2 2"
    #[arg(long = "t", global = true, value_name = "LIST", allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, global = true, value_name = "INT")]
    nmax: Option<u64>,
    #[arg(long, global = true, value_name = "INT")]
    seed: Option<u64>,
    /// Directory for CSV, JSON and SVG artifacts
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Also write the HN polygon as SVG
    #[arg(long, global = true)]
    svg: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Harder–Narasimhan filtration of the configured representation
    Hn,
    /// Mass of the configured representation on the t grid
    Mass,
    /// Brute-force HN polygon against the HN steps
    Polygon,
    /// Mass growth of the configured twist word
    Growth,
    /// Spectral radius of the word on the Grothendieck group
    Spectral,
    /// Upper Poincaré profiles of the iterates of the word applied to the generator
    TwistOrbit,
    /// Run an invariant suite
    Check {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Geometry,
    Hn,
    Polygon,
    MassTriangle,
    Twist,
    Growth,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Geometry => Suite::Geometry,
            SuiteArg::Hn => Suite::Hn,
            SuiteArg::Polygon => Suite::Polygon,
            SuiteArg::MassTriangle => Suite::MassTriangle,
            SuiteArg::Twist => Suite::Twist,
            SuiteArg::Growth => Suite::Growth,
            SuiteArg::All => Suite::All,
        }
    }
}

struct Outcome {
    report: Value,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            let body = serde_json::to_string_pretty(&o.report).expect("report serializes");
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let text = match &cli.config {
        Some(p) => Some(fs::read_to_string(p).map_err(|source| CliError::Io { path: p.clone(), source })?),
        None => None,
    };
    let overrides = Overrides {
        t_grid: cli.t.as_deref().map(parse_t_list).transpose().map_err(CliError::Usage)?,
        n_max: cli.nmax,
        seed: cli.seed,
        out: cli.out.clone(),
    };
    let cfg = RunConfig::load(text.as_deref(), &overrides)?;
    let out = cfg.out.clone();
    let outcome = match &cli.command {
        Command::Hn => cmd_hn(&cfg)?,
        Command::Mass => cmd_mass(&cfg)?,
        Command::Polygon => cmd_polygon(&cfg, cli.svg)?,
        Command::Growth => cmd_growth(&cfg)?,
        Command::Spectral => cmd_spectral(&cfg)?,
        Command::TwistOrbit => cmd_twist_orbit(&cfg)?,
        Command::Check { suite } => cmd_check(&cfg, (*suite).into())?,
    };
    if let Some(dir) = &out {
        let name = match &cli.command {
            Command::Hn => "hn".to_string(),
            Command::Mass => "mass".to_string(),
            Command::Polygon => "polygon".to_string(),
            Command::Growth => "growth".to_string(),
            Command::Spectral => "spectral".to_string(),
            Command::TwistOrbit => "twist_orbit".to_string(),
            Command::Check { suite } => format!("check_{}", Suite::from(*suite).name().replace('-', "_")),
        };
        let body = serde_json::to_string_pretty(&outcome.report).expect("report serializes") + "\n";
        write_file(dir, &format!("{name}.json"), &body)?;
    }
    Ok(outcome)
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io { path, source })
}

fn t_label(t: f64) -> String {
    format!("{}", t + 0.0)
}

fn write_series(cfg: &RunConfig, stem: &str, t: f64, series: &GrowthSeries) -> Result<(), CliError> {
    match &cfg.out {
        Some(dir) => write_file(dir, &format!("{stem}_t{}.csv", t_label(t)), &series.to_csv()),
        None => Ok(()),
    }
}

fn cmd_hn(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let rep = &cfg.rep;
    let (report, masses) = if rep.is_zero() {
        (json!({"steps": [], "factor_dims": [], "factor_phases": [], "factor_charges": []}), cfg.t_grid.iter().map(|_| 0.0).collect())
    } else {
        let hn = hn_filtration(&cfg.sigma, rep, cfg.cap)?;
        let masses = cfg.t_grid.iter().map(|&t| hn.mass(t)).collect::<Result<Vec<_>, _>>()?;
        (serde_json::to_value(hn.report()).expect("report serializes"), masses)
    };
    let masses: Vec<Value> = cfg.t_grid.iter().zip(masses).map(|(&t, m)| json!({"t": t, "mass": m})).collect();
    Ok(Outcome {
        report: json!({"dims": rep.dims(), "hn": report, "masses": masses}),
        passed: true,
    })
}

fn cmd_mass(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let rep = &cfg.rep;
    let z = cfg.sigma.charge_of(rep.dims());
    let rows = cfg
        .t_grid
        .iter()
        .map(|&t| {
            let m = stabgrowth::hn::mass(&cfg.sigma, rep, t, cfg.cap)?;
            Ok(json!({"t": t, "mass": m, "log_mass": if m > 0.0 { json!(m.ln()) } else { Value::Null }}))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let modulus = z.modulus();
    let mass0 = stabgrowth::hn::mass(&cfg.sigma, rep, 0.0, cfg.cap)?;
    Ok(Outcome {
        report: json!({
            "dims": rep.dims(),
            "charge": [z.re.to_string(), z.im.to_string()],
            "charge_modulus": modulus,
            "masses": rows,
        }),
        passed: modulus <= mass0 + 1e-9,
    })
}

fn cmd_polygon(cfg: &RunConfig, svg: bool) -> Result<Outcome, CliError> {
    let oracle = hn_polygon_oracle(&cfg.sigma, &cfg.rep, cfg.cap)?;
    let pair = |z: &stabgrowth::geometry::Gaussian| json!([z.re.to_string(), z.im.to_string()]);
    if svg {
        let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
        write_file(&dir, "polygon.svg", &oracle.polygon.to_svg(&oracle.subobject_charges))?;
    }
    Ok(Outcome {
        report: json!({
            "dims": cfg.rep.dims(),
            "polygon_vertices": oracle.polygon.vertices().iter().map(pair).collect::<Vec<_>>(),
            "hn_step_charges": oracle.hn_vertices.iter().map(pair).collect::<Vec<_>>(),
            "subobject_charge_count": oracle.subobject_charges.len(),
            "agreement": oracle.agreement,
        }),
        passed: oracle.agreement,
    })
}

fn cmd_growth(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let word = &cfg.word;
    let power = word.as_twist_power().or_else(|| word.as_pure_shift().map(|s| (0, 0, s)));
    let mode = if power.is_some() { "exact" } else { "bounds-only" };
    let notice = power.is_none().then(|| {
        format!("word `{word}` is not a power of a single generator; exact entropy unavailable, reporting bounds-only")
    });
    if let Some(n) = &notice {
        eprintln!("notice: {n}");
    }
    let k_matrix = twist_k_matrix(&cfg.quiver, cfg.cy_dim, word)?;
    let rho = spectral_radius_or_bound(&k_matrix, DEFAULT_EXACT_CAP)?;
    let lower = rho.log_value();
    let mut consistent = true;
    let mut rows = Vec::new();
    for &t in &cfg.t_grid {
        let upper_series = upper_profile_series(&cfg.quiver, cfg.cy_dim, word, t, cfg.n_max)?;
        let upper = estimate_growth_rate(&upper_series)?;
        let (series, exact) = match power {
            Some((i, k, s)) => (
                twist_power_mass_series(&cfg.sigma, cfg.field, cfg.cy_dim, i, k, s, t, cfg.n_max, cfg.cap)?,
                exact_word_entropy(&cfg.quiver, cfg.cy_dim, word, t)?,
            ),
            None => (upper_series.clone(), None),
        };
        let est = estimate_growth_rate(&series)?;
        let slope = est.slope_regression;
        let mut ok = slope <= upper.max_slope() + SANDWICH_TOLERANCE;
        if let Some(h) = exact {
            ok &= (slope - h).abs() <= SANDWICH_TOLERANCE;
        }
        if t == 0.0 && !rho.value.is_nan() {
            ok &= lower <= slope + SANDWICH_TOLERANCE;
        }
        consistent &= ok;
        write_series(cfg, "growth", t, &series)?;
        rows.push(json!({
            "t": t,
            "slope_regression": slope,
            "slope_increment": est.slope_increment,
            "exact": exact,
            "upper_bound": upper.max_slope(),
            "consistent": ok,
            "diagnostics": {
                "series": series.label(),
                "gap": est.gap,
                "residual_variance": est.residual_variance,
                "tail_start": est.tail_start,
                "tail_len": est.tail_len,
            },
        }));
    }
    Ok(Outcome {
        report: json!({
            "word": word.to_string(),
            "mode": mode,
            "notice": notice,
            "n_max": cfg.n_max,
            "lower_log_rho": lower,
            "spectral_method": rho.method,
            "rows": rows,
            "consistent": consistent,
        }),
        passed: consistent,
    })
}

fn cmd_spectral(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let m = twist_k_matrix(&cfg.quiver, cfg.cy_dim, &cfg.word)?;
    let rho = spectral_radius_or_bound(&m, DEFAULT_EXACT_CAP)?;
    let report = spectral_bound_report(&cfg.quiver, cfg.cy_dim, &cfg.word, cfg.n_max)?;
    Ok(Outcome {
        report: json!({
            "word": cfg.word.to_string(),
            "k_matrix": m.rows(),
            "char_poly": rho.char_poly.as_deref().map(format_poly),
            "char_poly_coefficients": rho.char_poly.as_ref().map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            "spectral_radius": rho.value,
            "lower_log_rho": report.lower_log_rho,
            "spectral_method": report.spectral_method,
            "exact": report.exact,
            "upper_bound": report.upper_bound,
            "diagnostics": report.upper_estimate,
            "consistent": report.consistent,
        }),
        passed: report.consistent,
    })
}

fn cmd_twist_orbit(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let n = cfg.quiver.vertex_count();
    let mut class = GradedClass::generator(n);
    let mut rows = Vec::new();
    for step in 0..=cfg.n_max {
        if step > 0 {
            class = word_upper_profile(&cfg.quiver, cfg.cy_dim, &cfg.word, &class)?;
        }
        let p = class.poincare();
        let values: Vec<Value> = cfg
            .t_grid
            .iter()
            .map(|&t| json!({"t": t, "log_value": p.log_evaluate(t)}))
            .collect();
        rows.push(json!({
            "n": step,
            "k_class": class.k_class().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "poincare": p.to_string(),
            "values": values,
        }));
    }
    for &t in &cfg.t_grid {
        write_series(cfg, "twist_orbit", t, &upper_profile_series(&cfg.quiver, cfg.cy_dim, &cfg.word, t, cfg.n_max)?)?;
    }
    let exact_on_simples = cfg.word.as_twist_power().is_some() || cfg.word.as_pure_shift().is_some();
    Ok(Outcome {
        report: json!({
            "word": cfg.word.to_string(),
            "profile": if exact_on_simples { "exact" } else { "upper-bound" },
            "k_matrix": twist_k_matrix(&cfg.quiver, cfg.cy_dim, &cfg.word)?.rows(),
            "orbit": rows,
        }),
        passed: class.is_nonnegative(),
    })
}

fn cmd_check(cfg: &RunConfig, suite: Suite) -> Result<Outcome, CliError> {
    let reports = run_suite(suite, cfg.seed)?;
    let passed = reports.iter().all(|r| r.passed);
    Ok(Outcome {
        report: json!({"suite": suite.name(), "seed": cfg.seed, "passed": passed, "reports": reports}),
        passed,
    })
}
