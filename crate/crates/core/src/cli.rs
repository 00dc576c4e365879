//! The `collapse-lab` command-line driver.
//!
//! Exit codes: `0` on success, `2` for flag and input-file errors, `3` when a
//! backend rejects its input (outside a domain, too large, no coverage).
//! `COLLAPSE_LAB_SEED` replaces the default seed `0`; an explicit `--seed`
//! wins over both.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::collapse::{
    classify, profile, reproduce, CollapseError, CollapseProfile, CollapseVerdict, Family, ModeKind,
    SequenceSpec, DEFAULT_FIT_TOLERANCE, DEFAULT_THRESHOLD,
};
use crate::geometry::DEFAULT_SAMPLES;
use crate::gh::{gh_distance_exact, gh_lower_bound, FiniteMetricSpace, MetricError, EXACT_MAX_POINTS};
use crate::numeric::fmt_sig17;
use crate::submersion::{compute_breakdown, tau_profile, BoundBreakdown, SubmersionBoundInput, TauRow};

pub const SEED_ENV: &str = "COLLAPSE_LAB_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Default loop lengths for `bounds --tau-grid` without a value.
pub const DEFAULT_TAU_GRID: [f64; 9] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) | CliError::Write { .. } => EXIT_DOMAIN,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "collapse-lab", version, about = "Collapse diagnostics for model manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Profile the criterion ratio along a sequence and classify the collapse.
    Analyze(AnalyzeArgs),
    /// Constants of the fiber injectivity bound for a bounded submersion.
    Bounds(BoundsArgs),
    /// Gromov-Hausdorff distance between two finite metric spaces.
    Gh(GhArgs),
    /// Recompute the worked examples as one table.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Torus,
    Berger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    #[value(name = "monte_carlo", alias = "monte-carlo", alias = "mc")]
    MonteCarlo,
}

impl From<ModeArg> for ModeKind {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => ModeKind::Exact,
            ModeArg::MonteCarlo => ModeKind::MonteCarlo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Circle radii as functions of i, e.g. "1,1/i" (torus).
    #[arg(long, conflicts_with = "eps_rule")]
    pub radii_rule: Option<String>,
    /// Fiber scale as a function of i, e.g. "1/i" (berger).
    #[arg(long)]
    pub eps_rule: Option<String>,
    /// Inclusive index range a:b.
    #[arg(long, value_parser = parse_range)]
    pub range: (u64, u64),
    #[arg(long)]
    pub r: f64,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: f64,
    #[arg(long, default_value_t = DEFAULT_FIT_TOLERANCE)]
    pub fit_tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub ca: f64,
    #[arg(long)]
    pub ct: f64,
    #[arg(long)]
    pub k: u32,
    /// Curvature bound |sec| <= K.
    #[arg(long = "K")]
    pub cap_k: f64,
    #[arg(long)]
    pub ell: f64,
    /// Comma-separated loop lengths; bare flag uses 1e-1 .. 1e-9.
    #[arg(long, num_args = 0..=1, default_missing_value = "")]
    pub tau_grid: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GhArgs {
    #[arg(long)]
    pub x: PathBuf,
    #[arg(long)]
    pub y: PathBuf,
    /// Require the exact distance; fails above the size limit.
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// What `analyze` writes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub spec: SequenceSpec,
    pub profile: CollapseProfile,
    pub verdict: CollapseVerdict,
}

/// What `bounds --tau-grid` writes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub breakdown: BoundBreakdown,
    pub tau_profile: Vec<TauRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GhMethod {
    Exact,
    LowerBound,
}

/// What `gh` writes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GhReport {
    pub method: GhMethod,
    pub distance: f64,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected a:b, got '{s}'"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|e| format!("'{t}' is not an index: {e}"))
    };
    Ok((num(a)?, num(b)?))
}

/// Runs the process: reads the real environment, prints to stdio.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_seed = std::env::var(SEED_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, env_seed.as_deref(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` and executes the subcommand, returning the exit code.
pub fn run<I, T>(args: I, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, env_seed, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, env_seed: Option<&str>, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Analyze(a) => cmd_analyze(a, env_seed, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::Gh(a) => cmd_gh(a, out),
        Command::Reproduce(a) => cmd_reproduce(a, env_seed, out),
    }
}

fn resolve_seed(flag: Option<u64>, env_seed: Option<&str>) -> Result<u64, CliError> {
    match (flag, env_seed) {
        (Some(s), _) => Ok(s),
        (None, Some(text)) => text.trim().parse().map_err(|_| {
            CliError::Usage(format!("{SEED_ENV} must be an unsigned integer, got '{text}'"))
        }),
        (None, None) => Ok(0),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, body).map_err(|source| CliError::Write {
            path: p.display().to_string(),
            source,
        }),
        None => out.write_all(body.as_bytes()).map_err(|source| CliError::Write {
            path: "stdout".into(),
            source,
        }),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn collapse_error(e: CollapseError) -> CliError {
    match e {
        CollapseError::EmptyRange { start, end } => {
            CliError::Usage(format!("--range {start}:{end} is empty"))
        }
        CollapseError::ZeroIndex { start } => {
            CliError::Usage(format!("--range must start at 1 or later, got {start}"))
        }
        CollapseError::InvalidRadius(r) => {
            CliError::Usage(format!("--r must be positive and finite, got {r}"))
        }
        CollapseError::Rule(e) => CliError::Usage(format!("parameter rule: {e}")),
        other => CliError::Domain(other.to_string()),
    }
}

pub fn cmd_analyze(a: AnalyzeArgs, env_seed: Option<&str>, out: &mut dyn Write) -> Result<(), CliError> {
    let seed = resolve_seed(a.seed, env_seed)?;
    let (family, flag, rule) = match (a.family, &a.radii_rule, &a.eps_rule) {
        (FamilyArg::Torus, Some(r), None) => (Family::Torus, "--radii-rule", r),
        (FamilyArg::Berger, None, Some(r)) => (Family::Berger, "--eps-rule", r),
        (FamilyArg::Torus, _, _) => {
            return Err(CliError::Usage("--family torus takes --radii-rule".into()))
        }
        (FamilyArg::Berger, _, _) => {
            return Err(CliError::Usage("--family berger takes --eps-rule".into()))
        }
    };
    let (start, end) = a.range;
    let spec = SequenceSpec::new(family, rule, start, end, a.r)
        .map_err(|e| match e {
            CollapseError::Rule(e) => CliError::Usage(format!("{flag}: {e}")),
            other => collapse_error(other),
        })?
        .with_mode(a.mode.into());
    let spec = SequenceSpec {
        samples: a.samples,
        seed,
        ..spec
    };
    for (name, v) in [("--threshold", a.threshold), ("--fit-tolerance", a.fit_tolerance)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(CliError::Usage(format!("{name} must be nonnegative, got {v}")));
        }
    }
    let prof = profile(&spec).map_err(collapse_error)?;
    let verdict = classify(&prof, a.threshold, a.fit_tolerance).map_err(collapse_error)?;
    let body = match a.format {
        Format::Json => to_json(&AnalyzeReport {
            spec,
            profile: prof,
            verdict,
        }),
        Format::Csv => format!("{}\n{}", prof.to_csv(), verdict.to_csv()),
    };
    emit(out, a.out.as_deref(), &body)
}

fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    if text.trim().is_empty() {
        return Ok(DEFAULT_TAU_GRID.to_vec());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("--tau-grid: '{}' is not a number", t.trim())))
        })
        .collect()
}

pub fn cmd_bounds(a: BoundsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let domain = |e: crate::submersion::BoundsError| CliError::Domain(e.to_string());
    let grid = a.tau_grid.as_deref().map(parse_grid).transpose()?;
    let input = SubmersionBoundInput::new(a.ca, a.ct, a.k, a.cap_k, a.ell).map_err(domain)?;
    let breakdown = compute_breakdown(&input).map_err(domain)?;
    let body = match (grid, a.format) {
        (None, Format::Json) => to_json(&breakdown),
        (None, Format::Csv) => {
            let b = &breakdown;
            let vals = [b.q_t, b.q_s_tilde, b.g1, b.g2, b.p_bound, b.l_lipschitz, b.c_total];
            format!(
                "q_t,q_s_tilde,g1,g2,p_bound,l_lipschitz,c_total\n{}\n",
                vals.map(fmt_sig17).join(",")
            )
        }
        (Some(grid), format) => {
            let rows = tau_profile(&input, &grid).map_err(domain)?;
            match format {
                Format::Json => to_json(&BoundsReport {
                    breakdown,
                    tau_profile: rows,
                }),
                Format::Csv => {
                    let mut s = String::from("ell,p,l_minus_1,c_minus_1\n");
                    for r in rows {
                        let vals = [r.ell, r.p, r.l_minus_1, r.c_minus_1];
                        s.push_str(&vals.map(fmt_sig17).join(","));
                        s.push('\n');
                    }
                    s
                }
            }
        }
    };
    emit(out, a.out.as_deref(), &body)
}

fn read_space(flag: &str, path: &Path) -> Result<FiniteMetricSpace, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{flag} {}: {e}", path.display())))?;
    FiniteMetricSpace::from_json(&text)
        .map_err(|e| CliError::Usage(format!("{flag} {}: {e}", path.display())))
}

pub fn cmd_gh(a: GhArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let x = read_space("--x", &a.x)?;
    let y = read_space("--y", &a.y)?;
    let small = x.len() <= EXACT_MAX_POINTS && y.len() <= EXACT_MAX_POINTS;
    let report = if a.exact || small {
        let d = gh_distance_exact(&x, &y).map_err(|e| match e {
            MetricError::TooLarge { .. } => CliError::Domain(format!("--exact: {e}")),
            other => CliError::Domain(other.to_string()),
        })?;
        GhReport {
            method: GhMethod::Exact,
            distance: d,
        }
    } else {
        GhReport {
            method: GhMethod::LowerBound,
            distance: gh_lower_bound(&x, &y),
        }
    };
    emit(out, a.out.as_deref(), &to_json(&report))
}

pub fn cmd_reproduce(a: ReproduceArgs, env_seed: Option<&str>, out: &mut dyn Write) -> Result<(), CliError> {
    let seed = resolve_seed(a.seed, env_seed)?;
    let table = reproduce(a.mode.into(), a.samples, seed).map_err(collapse_error)?;
    let body = match a.format {
        Format::Csv => table.to_csv(),
        Format::Json => to_json(&table),
    };
    emit(out, a.out.as_deref(), &body)
}
