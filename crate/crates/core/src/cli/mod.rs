//! The `ffdio` experiment runner.
//!
//! Every subcommand builds a [`output::RunReport`]; the process exit code is
//! 0 when all checks pass, 1 on a hard failure, 2 when precision ran out and
//! 3 on invalid input.

pub mod config;
pub mod generate;
pub mod output;
pub mod rng;
pub mod suites;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::algebra::{Field, FieldSpec, LaurentSeries, MatrixF};
use crate::approx::{
    dirichlet_solve, verify_dirichlet, DirichletMode, DirichletOutcome, DirichletTarget,
};
use crate::error::{Error, Result};
use crate::exponents::{estimate, profile, ProfileKind};
use crate::rational::{self, Rational};
use crate::transference::{check_dirichlet_bound, check_mult_dominance};
use config::{ExperimentConfig, Format, ModeName};
use generate::{
    generate_matrix, generate_series, plant_witness, random_matrix, PlantParams, SeriesSpec,
};
use output::{InstanceRecord, NamedProfile, RunReport, SuiteReport};
use rng::instance_rng;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PRECISION: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ffdio",
    version,
    about = "Diophantine approximation experiments over F_q((1/X))"
)]
pub struct Cli {
    /// TOML experiment config; defaults apply when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory for report.json and CSV tables; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long, global = true)]
    pub tmax: Option<u32>,
    /// Tolerance for diagnostic checks, e.g. `3/10`.
    #[arg(long, global = true, value_parser = parse_tol)]
    pub tol: Option<Rational>,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Best-approximation profile and exponent estimates for the configured Y and theta.
    Estimate,
    /// Solve the Dirichlet system for the configured Y and target.
    Dirichlet,
    /// Audit the sigma inequalities and enumerate the index set.
    AuditTset,
    /// Run a named check suite, or `all`.
    Verify { suite: String },
    /// Generate an instance from the configured specs, or plant a witness.
    Gen,
}

fn parse_tol(s: &str) -> std::result::Result<Rational, String> {
    rational::parse_rational(s).map_err(|e| e.to_string())
}

/// Exit code for an error that aborted the whole command.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted(_) | Error::WindowCensored { .. } => EXIT_PRECISION,
        Error::Parse { .. }
        | Error::InvalidInput(_)
        | Error::InvalidField(_)
        | Error::InvalidTarget(_)
        | Error::DimensionMismatch(_) => EXIT_INVALID,
        _ => EXIT_FAILURE,
    }
}

/// Loads the config and applies command-line overrides.
pub fn resolve_config(cli: &Cli) -> Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(t) = cli.tmax {
        cfg.t_max = t;
    }
    if let Some(t) = cli.tol {
        cfg.tol = t;
    }
    if let Some(w) = cli.workers {
        cfg.workers = w;
    }
    if let Some(f) = cli.format {
        cfg.output.format = match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        };
    }
    if let Some(o) = &cli.out {
        cfg.output.dir = Some(o.display().to_string());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn field_of(cfg: &ExperimentConfig) -> Result<std::sync::Arc<Field>> {
    Field::new(FieldSpec::parse(&cfg.field)?)
}

fn parse_specs(rows: &[Vec<String>]) -> Result<Vec<Vec<SeriesSpec>>> {
    rows.iter()
        .map(|r| r.iter().map(|s| SeriesSpec::parse(s)).collect())
        .collect()
}

/// `Y` and `θ` from the config; `Y` is required.
fn instance(cfg: &ExperimentConfig, f: &Field) -> Result<(MatrixF, Vec<LaurentSeries>)> {
    let rows = cfg
        .y
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("config must set y".into()))?;
    let mut rng = instance_rng(cfg.seed, "instance", 0);
    let y = generate_matrix(&parse_specs(rows)?, f, cfg.floor, &mut rng)?;
    let theta = theta_of(cfg, f, &mut rng)?;
    Ok((y, theta))
}

fn theta_of(
    cfg: &ExperimentConfig,
    f: &Field,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<Vec<LaurentSeries>> {
    match &cfg.theta {
        None => Ok(vec![LaurentSeries::zero(); cfg.m]),
        Some(th) => th
            .iter()
            .map(|s| generate_series(&SeriesSpec::parse(s)?, f, cfg.floor, rng))
            .collect(),
    }
}

fn run_estimate(cfg: &ExperimentConfig, report: &mut RunReport) -> Result<()> {
    let f = field_of(cfg)?;
    let (y, theta) = instance(cfg, &f)?;
    let std = profile(&y, &theta, cfg.t_max, ProfileKind::Standard, &f)?;
    let est = estimate(&std)?;
    let mut result = json!({"estimate": est});
    let mut checks = Vec::new();
    if theta.iter().all(LaurentSeries::is_exact_zero) {
        checks.push(check_dirichlet_bound(&std)?);
    }
    if cfg.multiplicative {
        let mult = profile(&y, &theta, cfg.t_max, ProfileKind::Multiplicative, &f)?;
        result["multiplicative_estimate"] = json!(estimate(&mult)?);
        checks.push(check_mult_dominance(&std, &mult)?);
        report.profiles.push(NamedProfile {
            name: "multiplicative".into(),
            profile: mult,
        });
    }
    report.profiles.insert(
        0,
        NamedProfile {
            name: "standard".into(),
            profile: std,
        },
    );
    if !checks.is_empty() {
        report.suites.push(SuiteReport::new(
            "estimate",
            "exact profile invariants",
            vec![InstanceRecord::new(0, checks, serde_json::Value::Null)],
        ));
    }
    report.result = result;
    Ok(())
}

fn run_dirichlet(cfg: &ExperimentConfig, report: &mut RunReport) -> Result<()> {
    let f = field_of(cfg)?;
    let (y, _) = instance(cfg, &f)?;
    let t = cfg
        .target
        .clone()
        .ok_or_else(|| Error::InvalidInput("config must set target".into()))?;
    let target = DirichletTarget::new(t, y.rows(), y.cols())?;
    let mode = match cfg.mode {
        ModeName::Strict => DirichletMode::Strict,
        ModeName::Relaxed => DirichletMode::Relaxed,
    };
    let outcome = dirichlet_solve(&y, &target, mode, &f)?;
    let check = match outcome.witness() {
        Some(w) => crate::report::CheckReport::exact(
            "dirichlet_verified",
            verify_dirichlet(&y, &target, mode, w, &f)?,
        ),
        None => {
            crate::report::CheckReport::exact("dirichlet_verified", mode == DirichletMode::Strict)
                .with_note("no solution")
        }
    };
    let solved = matches!(outcome, DirichletOutcome::Solved { .. });
    report.suites.push(SuiteReport::new(
        "dirichlet",
        "the returned witness re-verifies",
        vec![InstanceRecord::new(0, vec![check], serde_json::Value::Null)],
    ));
    report.result = json!({"mode": mode, "target": target.t, "solved": solved, "outcome": outcome});
    Ok(())
}

fn run_audit_tset(cfg: &ExperimentConfig, report: &mut RunReport) -> Result<()> {
    let mode = if cfg.multiplicative {
        crate::limsup::TsetMode::Multiplicative
    } else {
        crate::limsup::TsetMode::Dual
    };
    let params = crate::limsup::TsetParams::new(cfg.m, cfg.n, cfg.eta, mode)?;
    let record = suites::tset_record(0, &params, cfg.tset.grid, cfg.tset.sigma_bound, cfg.epsilon)?;
    report.suites.push(SuiteReport::new(
        "audit-tset",
        "sigma inequalities hold on the grid and enumeration matches brute force",
        vec![record],
    ));
    Ok(())
}

fn run_gen(cfg: &ExperimentConfig, report: &mut RunReport) -> Result<()> {
    let f = field_of(cfg)?;
    if cfg.plant {
        let params = PlantParams {
            m: cfg.m,
            n: cfg.n,
            eta: cfg.eta,
            eps: cfg.epsilon,
            horizon: cfg.horizon,
            floor: cfg.floor,
            exact_hit: false,
        };
        let planted = plant_witness(&params, &f, &mut instance_rng(cfg.seed, "plant", 0))?;
        report.result = json!({
            "y": planted.y.format(&f),
            "theta": planted.theta.iter().map(|t| t.format(&f)).collect::<Vec<_>>(),
            "alpha": planted.alpha,
            "T": planted.horizon,
        });
        return Ok(());
    }
    let (y, theta) = match cfg.y {
        Some(_) => instance(cfg, &f)?,
        None => {
            let mut rng = instance_rng(cfg.seed, "instance", 0);
            let y = random_matrix(cfg.m, cfg.n, &f, cfg.floor, &mut rng);
            let theta = theta_of(cfg, &f, &mut rng)?;
            (y, theta)
        }
    };
    report.result = json!({
        "y": y.format(&f),
        "theta": theta.iter().map(|t| t.format(&f)).collect::<Vec<_>>(),
    });
    Ok(())
}

fn run_verify(cfg: &ExperimentConfig, suite: &str, report: &mut RunReport) -> Result<()> {
    let names: Vec<&str> = if suite == "all" {
        suites::SUITES.to_vec()
    } else {
        suite.split(',').map(str::trim).collect()
    };
    let runner = suites::Runner::new(cfg)?;
    for name in names {
        report.suites.push(runner.run(name)?);
    }
    Ok(())
}

/// Runs a parsed command and returns its report, without writing anything.
pub fn run(cli: &Cli) -> Result<RunReport> {
    let cfg = resolve_config(cli)?;
    let name = match &cli.command {
        Command::Estimate => "estimate".to_string(),
        Command::Dirichlet => "dirichlet".to_string(),
        Command::AuditTset => "audit-tset".to_string(),
        Command::Verify { suite } => format!("verify {suite}"),
        Command::Gen => "gen".to_string(),
    };
    let mut report = RunReport::new(name, &cfg);
    match &cli.command {
        Command::Estimate => run_estimate(&cfg, &mut report)?,
        Command::Dirichlet => run_dirichlet(&cfg, &mut report)?,
        Command::AuditTset => run_audit_tset(&cfg, &mut report)?,
        Command::Verify { suite } => run_verify(&cfg, suite, &mut report)?,
        Command::Gen => run_gen(&cfg, &mut report)?,
    }
    report.exit_code = report.compute_exit_code();
    Ok(report)
}

fn emit(report: &RunReport) -> Result<()> {
    let cfg = &report.config;
    let csv = cfg.output.format == Format::Csv;
    match &cfg.output.dir {
        Some(dir) => report.write(std::path::Path::new(dir), csv, cfg.output.decimals),
        None if csv => {
            for p in report.all_profiles() {
                print!("{}", output::profile_csv(&p.profile));
            }
            if !report.suites.is_empty() {
                print!("{}", report.checks_csv());
            }
            Ok(())
        }
        None => {
            print!("{}", report.to_json(cfg.output.decimals)?);
            Ok(())
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    if let Err(e) = emit(&report) {
        eprintln!("error: {e}");
        return EXIT_FAILURE;
    }
    for s in &report.suites {
        eprintln!(
            "{}: {} ({} instances, {} hard failures, {} precision exhausted)",
            s.suite,
            if s.passed { "PASS" } else { "FAIL" },
            s.tally.instances,
            s.tally.hard_failures,
            s.tally.precision_exhausted
        );
    }
    report.exit_code
}
