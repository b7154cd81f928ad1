//! Command-line dispatch. Every command prints one JSON document.
//!
//! Exit codes: 0 on success, 1 on a domain error (with `{error, detail}` on
//! standard output), 2 on a usage error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use fiberstab_core::basecurve::{enumerate_quasimap_types, run_mmp};
use fiberstab_core::cbf::{hirzebruch_bound_check, moduli_degree_from_map, n4_curve_map_degree};
use fiberstab_core::fujita::{builtin_config, log_discrepancy, s_invariant_report, Configuration, BUILTIN_CONFIGS};
use fiberstab_core::git::{git_status, pencil_is_smooth};
use fiberstab_core::lct::{lct_along_fiber, nondegeneracy, LocalPair};
use fiberstab_core::models;
use fiberstab_core::zariski::decompose_ray;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::DomainError;
use crate::json::{
    class_from_arg, fiber_from_str, form_from_json, germ_from_json, rational_from_str, scalar_from_str, BetaJson,
    DecompositionJson, ErrorJson, FlagJson, FormTermJson, GermTermJson, GitJson, GraphJson, HirzebruchJson, LctJson,
    MapDegreeJson, MmpJson, ModelJson, ModuliDegreeJson, QuasimapsJson, SInvariantJson, WallScanJson,
};
use crate::suite::{self, DEGREE_BOUND};

#[derive(Debug, Parser)]
#[command(name = "fiberstab", version, about = "Exact invariants of log pairs fibered over P^1")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a built-in surface model.
    Model {
        #[command(subcommand)]
        kind: ModelKind,
    },
    /// Zariski decomposition of `start - t direction`.
    Zariski(ZariskiArgs),
    /// beta = A - S for a divisor of a built-in configuration.
    Beta(InvariantArgs),
    /// S-invariant for a divisor of a built-in configuration.
    SInvariant(SArgs),
    /// Walls of beta as c varies.
    WallScan(WallArgs),
    /// GIT stability of a bidegree form.
    GitCheck(GitArgs),
    /// Log canonical threshold against a fiber.
    Lct(LctArgs),
    /// Run the base-curve MMP on a decorated dual graph.
    MmpBase {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Dual-graph types of quasimaps of a given degree.
    EnumerateQuasimaps {
        #[arg(long)]
        degree: i64,
    },
    /// Canonical bundle formula degrees.
    Cbf(CbfArgs),
    /// Run every reproduction check.
    PaperSuite {
        /// Print a plain table instead of JSON.
        #[arg(long)]
        table: bool,
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModelKind {
    /// P^1 x P^1 with basis f1, f2.
    P1xp1,
    /// The Hirzebruch surface F_m.
    Hirzebruch {
        #[arg(long)]
        m: i64,
    },
    /// The (a, b)-weighted blow-up of P^1 x P^1 at a torus fixed point.
    Wblowup {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
    },
}

#[derive(Debug, Args)]
pub struct ZariskiArgs {
    /// Model JSON file.
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub model: Option<PathBuf>,
    /// Built-in configuration; the ray starts at `-K - cD`.
    #[arg(long)]
    pub config: Option<String>,
    /// Start class, comma separated.
    #[arg(long, conflicts_with = "c", required_unless_present = "c", allow_hyphen_values = true)]
    pub start: Option<String>,
    #[arg(long, requires = "config")]
    pub c: Option<String>,
    /// Direction class, comma separated.
    #[arg(long, conflicts_with = "divisor", required_unless_present = "divisor", allow_hyphen_values = true)]
    pub direction: Option<String>,
    #[arg(long, requires = "config")]
    pub divisor: Option<String>,
}

#[derive(Debug, Args)]
pub struct InvariantArgs {
    #[arg(long)]
    pub config: String,
    #[arg(long)]
    pub divisor: String,
    #[arg(long)]
    pub c: String,
}

#[derive(Debug, Args)]
pub struct SArgs {
    #[arg(long, required_unless_present = "flag")]
    pub config: Option<String>,
    #[arg(long, required_unless_present = "flag")]
    pub divisor: Option<String>,
    #[arg(long)]
    pub c: String,
    /// The refined invariant of the flag through a point of f2 on P^1 x P^1.
    #[arg(long, conflicts_with_all = ["config", "divisor"])]
    pub flag: bool,
}

#[derive(Debug, Args)]
pub struct WallArgs {
    #[arg(long)]
    pub config: String,
    #[arg(long)]
    pub divisor: String,
    #[arg(long, default_value_t = DEGREE_BOUND)]
    pub degree_bound: usize,
}

#[derive(Debug, Args)]
pub struct GitArgs {
    #[arg(long)]
    pub d1: u32,
    #[arg(long)]
    pub d2: u32,
    /// JSON list of {i, j, num, den}.
    #[arg(long)]
    pub coeffs: PathBuf,
}

#[derive(Debug, Args)]
pub struct LctArgs {
    /// JSON list of {alpha, beta, num, den}.
    #[arg(long)]
    pub germ: PathBuf,
    #[arg(long, default_value = "y", value_parser = ["x", "y"])]
    pub fiber: String,
    #[arg(long, default_value = "1/2")]
    pub a: String,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct CbfArgs {
    /// Degree of the classifying map.
    #[arg(long)]
    pub deg_f: Option<u64>,
    #[command(subcommand)]
    pub sub: Option<CbfCommand>,
}

#[derive(Debug, Subcommand)]
pub enum CbfCommand {
    /// Test the bound 6n <= deg f on F_n.
    HirzebruchBound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        deg_f: u64,
    },
    /// Map degree of the family over the n-th section curve.
    MapDegree {
        #[arg(long)]
        n: u64,
    },
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(Reply::Json(body)) => Outcome { code: 0, stdout: body, stderr: String::new() },
        Ok(Reply::Text(body, code)) => Outcome { code, stdout: body, stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}\n", msg) },
        Err(Failure::Domain(e)) => {
            let body = ErrorJson { error: e.kind().to_string(), detail: e.to_string() };
            Outcome { code: 1, stdout: to_json(&body), stderr: String::new() }
        }
    }
}

enum Reply {
    Json(String),
    Text(String, i32),
}

enum Failure {
    Usage(String),
    Domain(DomainError),
}

impl<E: Into<DomainError>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.into())
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn json<T: Serialize>(v: &T) -> Result<Reply, Failure> {
    Ok(Reply::Json(to_json(v)))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, DomainError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| DomainError::Io { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

fn config(name: &str) -> Result<Configuration, DomainError> {
    builtin_config(name)
        .ok_or_else(|| DomainError::UnknownConfig(format!("{} (known: {})", name, BUILTIN_CONFIGS.join(", "))))
}

fn dispatch(cmd: &Command) -> Result<Reply, Failure> {
    match cmd {
        Command::Model { kind } => {
            let m = match kind {
                ModelKind::P1xp1 => models::p1xp1(),
                ModelKind::Hirzebruch { m } => models::hirzebruch(*m)?,
                ModelKind::Wblowup { a, b } => models::weighted_blowup_p1xp1(*a, *b)?,
            };
            json(&ModelJson::from(&m))
        }
        Command::Zariski(a) => zariski(a),
        Command::Beta(a) => {
            let cfg = config(&a.config)?;
            let c = scalar_from_str(&a.c)?;
            let spec = cfg.divisor(&a.divisor)?;
            let ld = log_discrepancy(spec, &c)?;
            let s = cfg.s_invariant(&c, &a.divisor)?;
            let beta = cfg.beta(&c, &a.divisor)?;
            json(&BetaJson {
                config: cfg.name.clone(),
                divisor: a.divisor.clone(),
                c: (&c).into(),
                log_discrepancy: (&ld).into(),
                s: (&s).into(),
                beta: (&beta).into(),
            })
        }
        Command::SInvariant(a) => {
            let c = scalar_from_str(&a.c)?;
            if a.flag {
                let s = fiberstab_core::fujita::flag_s_invariant(&c)?;
                return json(&FlagJson { c: (&c).into(), s: (&s).into() });
            }
            let (name, divisor) = (a.config.as_deref().unwrap_or_default(), a.divisor.as_deref().unwrap_or_default());
            let cfg = config(name)?;
            let r = s_invariant_report(&cfg.model, &cfg.family, &c, cfg.divisor(divisor)?.class())?;
            json(&SInvariantJson {
                config: cfg.name.clone(),
                divisor: divisor.to_string(),
                c: (&c).into(),
                volume: (&r.volume).into(),
                s: (&r.s).into(),
                decomposition: (&r.decomposition).into(),
            })
        }
        Command::WallScan(a) => {
            let cfg = config(&a.config)?;
            let scan = cfg.wall_scan(&a.divisor, a.degree_bound)?;
            json(&WallScanJson::new(&cfg.name, &a.divisor, &scan))
        }
        Command::GitCheck(a) => {
            let terms: Vec<FormTermJson> = read_json(&a.coeffs)?;
            let f = form_from_json(a.d1, a.d2, &terms)?;
            let r = git_status(&f)?;
            let smooth = pencil_is_smooth(&f).or_else(|| pencil_is_smooth(&f.transpose()));
            json(&GitJson::new(&f, &r, smooth))
        }
        Command::Lct(a) => {
            let terms: Vec<GermTermJson> = read_json(&a.germ)?;
            let fiber = fiber_from_str(&a.fiber)?;
            let coeff = rational_from_str(&a.a)?;
            let p = LocalPair::new(germ_from_json(&terms)?, fiber, coeff.clone())?;
            let r = lct_along_fiber(&p)?;
            json(&LctJson::new(fiber, &coeff, &r, &nondegeneracy(&p)))
        }
        Command::MmpBase { graph } => {
            let g: GraphJson = read_json(graph)?;
            let (g, warnings) = g.to_graph()?;
            json(&MmpJson::new(&run_mmp(&g)?, warnings))
        }
        Command::EnumerateQuasimaps { degree } => {
            json(&QuasimapsJson::new(*degree, &enumerate_quasimap_types(*degree)?))
        }
        Command::Cbf(a) => match (&a.sub, a.deg_f) {
            (Some(CbfCommand::HirzebruchBound { n, deg_f }), _) => {
                json(&HirzebruchJson::from(&hirzebruch_bound_check(*n, *deg_f)?))
            }
            (Some(CbfCommand::MapDegree { n }), _) => {
                let d = n4_curve_map_degree(*n)?;
                json(&MapDegreeJson { n: *n, map_degree: d, moduli_degree: (&moduli_degree_from_map(d)?).into() })
            }
            (None, Some(d)) => {
                json(&ModuliDegreeJson { deg_f: d, moduli_degree: (&moduli_degree_from_map(d)?).into() })
            }
            (None, None) => Err(Failure::Usage("cbf needs --deg-f or a subcommand".into())),
        },
        Command::PaperSuite { table, criterion } => {
            let s = match criterion {
                Some(id) => {
                    let c = suite::run_criterion(*id).ok_or_else(|| Failure::Usage(format!("no criterion {}", id)))?;
                    crate::json::SuiteJson { all_passed: c.passed, criteria: vec![c] }
                }
                None => suite::run_suite(),
            };
            if *table {
                Ok(Reply::Text(suite::render_table(&s), 0))
            } else {
                json(&s)
            }
        }
    }
}

fn zariski(a: &ZariskiArgs) -> Result<Reply, Failure> {
    let (model, cfg) = match (&a.model, &a.config) {
        (Some(path), _) => {
            let m: ModelJson = read_json(path)?;
            (m.to_model()?, None)
        }
        (None, Some(name)) => {
            let cfg = config(name)?;
            (cfg.model.clone(), Some(cfg))
        }
        (None, None) => return Err(Failure::Usage("zariski needs --model or --config".into())),
    };
    let start = match (&a.start, &a.c, &cfg) {
        (Some(s), _, _) => class_from_arg(s)?,
        (None, Some(c), Some(cfg)) => cfg.family.at(&scalar_from_str(c)?),
        _ => return Err(Failure::Usage("zariski needs --start, or --c with --config".into())),
    };
    let direction = match (&a.direction, &a.divisor, &cfg) {
        (Some(d), _, _) => class_from_arg(d)?,
        (None, Some(name), Some(cfg)) => cfg.divisor(name)?.class().clone(),
        _ => return Err(Failure::Usage("zariski needs --direction, or --divisor with --config".into())),
    };
    let d = decompose_ray(&model, &start, &direction)?;
    json(&DecompositionJson::from(&d))
}
