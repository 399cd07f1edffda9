//! Command-line front end: `blochgauge <command> --config audit.toml`.
//!
//! Exit codes: 0 completed (whatever the verdict), 2 configuration error,
//! 3 numerical failure.

pub mod config;
mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::analysis::{self, AuditSettings, SampleGrid, Thm2Options};
use crate::functions::HoloFunction;
use crate::{Error, Weight};
use config::{Builder, Config};
use report::Writer;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable holding the low-discrepancy scrambling seed.
pub const SEED_VAR: &str = "BLOCHGAUGE_SEED";

#[derive(Debug, Parser)]
#[command(name = "blochgauge", version, about = "Numerical audits of Bloch-type membership criteria")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Audit config (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (default: `output.dir` from the config, else `./blochgauge-out`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Number of radii `r_k = 1 − 2^{-k}`.
    #[arg(long = "grid-k", global = true)]
    pub grid_k: Option<u32>,
    /// Base circle quadrature size (power of two).
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    /// Worker threads (default: number of cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Evaluate the four membership conditions on the sample grid.
    Check,
    /// Schwarz–Pick margins of a zero-free self-map.
    Lemma,
    /// Poisson-side quantity of a Herglotz-type function, plus the L^p check.
    Thm2,
    /// Decay scan `Q_k` of the Poisson-side quantity.
    LittleBloch,
    /// Moderateness, fast-majorant ratio and class of the weight.
    Weights,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Lemma => "lemma",
            Command::Thm2 => "thm2",
            Command::LittleBloch => "little-bloch",
            Command::Weights => "weights",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Both,
}

/// Why a run stopped.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Numerical(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Config(_) => EXIT_CONFIG,
            Failure::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    fn from_compute(e: Error) -> Self {
        match e.root() {
            Error::Precondition(_) => Failure::Config(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "config error: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("blochgauge: {f}");
            f.code()
        }
    }
}

/// Settings resolved from config, flags and environment.
struct Job {
    cfg: Config,
    base: PathBuf,
    out: PathBuf,
    format: Format,
    seed: u64,
}

fn resolve(cli: &Cli) -> Result<Job, Failure> {
    let path = cli.config.as_ref().ok_or_else(|| Failure::Config("--config PATH is required".into()))?;
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut cfg = Config::parse(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    if let Some(k) = cli.grid_k {
        cfg.grid.k = k;
    }
    if let Some(n) = cli.nodes {
        cfg.grid.nodes = n;
    }
    if let Some(t) = cli.tolerance {
        cfg.tolerance = t;
    }
    cfg.validate().map_err(Failure::Config)?;
    if let Some(c) = &cfg.command {
        if c != cli.command.name() {
            return Err(Failure::Config(format!("config is for `{c}`, not `{}`", cli.command.name())));
        }
    }
    if cli.workers == Some(0) {
        return Err(Failure::Config("--workers must be at least 1".into()));
    }
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let out = match (&cli.out, &cfg.output.dir) {
        (Some(o), _) => o.clone(),
        (None, Some(d)) => base.join(d),
        (None, None) => PathBuf::from("blochgauge-out"),
    };
    let format = match (cli.format, cfg.output.format.as_deref()) {
        (Some(f), _) => f,
        (None, Some(s)) => {
            Format::from_str(s, true).map_err(|_| Failure::Config(format!("unknown output format `{s}`")))?
        }
        (None, None) => Format::Both,
    };
    let seed = match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Config(format!("{SEED_VAR}={s} is not a u64")))?,
        Err(_) => 0,
    };
    Ok(Job { cfg, base, out, format, seed })
}

fn run(cli: &Cli) -> Result<i32, Failure> {
    let job = resolve(cli)?;
    let writer = Writer::create(&job.out, job.format)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        pool = pool.num_threads(w);
    }
    let pool = pool.build().map_err(|e| Failure::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| execute(cli.command, &job, &writer))
}

fn function(job: &Job) -> Result<HoloFunction, Failure> {
    let spec = job.cfg.function.as_ref().ok_or_else(|| Failure::Config("missing [function] section".into()))?;
    Builder { base: &job.base, nodes: job.cfg.grid.nodes }.function(spec).map_err(Failure::Config)
}

fn echo(job: &Job, command: Command) -> serde_json::Value {
    let mut v = serde_json::to_value(&job.cfg).expect("config serializes");
    v["seed"] = json!(job.seed);
    v["command"] = json!(command.name());
    v
}

fn execute(command: Command, job: &Job, w: &Writer) -> Result<i32, Failure> {
    let g = &job.cfg.grid;
    let compute = Failure::from_compute;
    let thm2_opts = Thm2Options { boundary_samples: g.boundary_samples, base_nodes: g.nodes };
    let herglotz_boundary = |f: &HoloFunction| {
        f.as_herglotz()
            .map(|h| h.boundary().clone())
            .ok_or_else(|| Failure::Config(format!("`{}` needs a herglotz function", command.name())))
    };
    match command {
        Command::Check => {
            let f = function(job)?;
            let grid = SampleGrid::new(f.dim(), g.k, g.j, job.seed).map_err(|e| Failure::Config(e.to_string()))?;
            let settings =
                AuditSettings { boundary_samples: g.boundary_samples, seed: job.seed, tolerance: job.cfg.tolerance };
            let r = analysis::audit_criteria(&f, &job.cfg.weight, &grid, &settings).map_err(compute)?;
            w.csv("criteria.csv", &r.rows)?;
            w.summary(&r, echo(job, command))?;
            Ok(EXIT_OK)
        }
        Command::Lemma => {
            let f = function(job)?;
            let grid =
                SampleGrid::new(f.dim(), g.k, g.j, job.seed).map_err(|e| Failure::Config(e.to_string()))?.with_origin();
            let r = analysis::lemma_scan(&f, &grid, job.cfg.tolerance).map_err(compute)?;
            w.csv("lemma.csv", &r.points)?;
            w.summary(&r, echo(job, command))?;
            if r.violations > 0 {
                return Err(Failure::Numerical(format!(
                    "{} margins below -{:e}; smallest {} at k = {}, direction {}",
                    r.violations, r.tolerance, r.min_margin, r.extremal.k, r.extremal.direction
                )));
            }
            Ok(EXIT_OK)
        }
        Command::Thm2 => {
            let bd = herglotz_boundary(&function(job)?)?;
            let grid = SampleGrid::new(1, g.k, g.j, job.seed).map_err(|e| Failure::Config(e.to_string()))?;
            let r =
                analysis::theorem2_grid(&bd, &job.cfg.weight, &grid, job.cfg.thm2.p, &thm2_opts).map_err(compute)?;
            w.csv("thm2.csv", &r.rows)?;
            w.summary(&r, echo(job, command))?;
            Ok(EXIT_OK)
        }
        Command::LittleBloch => {
            let bd = herglotz_boundary(&function(job)?)?;
            let q = analysis::little_bloch_scan(&bd, g.k, g.j, &thm2_opts).map_err(compute)?;
            let rows: Vec<report::ScanRow> = q
                .iter()
                .enumerate()
                .map(|(i, &q)| report::ScanRow { k: i as u32 + 1, d_z: 0.5f64.powi(i as i32 + 1), q })
                .collect();
            w.csv("little_bloch.csv", &rows)?;
            w.summary(&report::ScanSummary::new(&q), echo(job, command))?;
            Ok(EXIT_OK)
        }
        Command::Weights => {
            let r = report::WeightsSummary::new(&job.cfg.weight, &job.cfg.weights).map_err(compute)?;
            w.csv("weights.csv", &r.rows())?;
            w.summary(&r, echo(job, command))?;
            Ok(EXIT_OK)
        }
    }
}

/// Weight diagnostics, also used by the library callers of the CLI module.
pub fn weight_summary(w: &Weight, k_max: u32, delta: f64) -> crate::Result<report::WeightsSummary> {
    report::WeightsSummary::new(w, &config::WeightsSpec { k_max, delta })
}

pub use report::{ScanSummary, WeightsSummary};
