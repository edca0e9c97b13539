//! `mlfrac`: evaluate, verify and sweep the time-fractional reaction-diffusion
//! fundamental solution.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod grid;
mod output;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mlfrac::bounds::{divergence_certified, dottie_number, front_sample, FrontConfig};
use mlfrac::solution::{solve, FracParams, MethodChoice, Tolerance};
use mlfrac::special::{MittagLeffler, MlParams, DEFAULT_ASYMPTOTIC_TERMS, DEFAULT_SERIES_RADIUS};
use rayon::prelude::*;
use serde_json::Value;

use output::{num, Format, OutputRecord, Record};

#[derive(Debug, Parser)]
#[command(name = "mlfrac", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Emit {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Also write the output to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mittag-Leffler function E_α(r).
    Ml(MlArgs),
    /// Fundamental solution u(x, t).
    Solution(SolutionArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Track u along x = c·t^β.
    Front(FrontArgs),
}

#[derive(Debug, Args)]
struct MlArgs {
    #[arg(long)]
    alpha: f64,
    /// Single argument.
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "r_min",
        conflicts_with = "r_min"
    )]
    r: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["r_max", "r_steps"])]
    r_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "r_min")]
    r_max: Option<f64>,
    #[arg(long, requires = "r_min")]
    r_steps: Option<usize>,
    /// Emit ln E_α(r) instead of E_α(r).
    #[arg(long)]
    log: bool,
    #[arg(long, default_value_t = DEFAULT_SERIES_RADIUS)]
    series_radius: f64,
    #[arg(long, default_value_t = DEFAULT_ASYMPTOTIC_TERMS)]
    asymptotic_terms: usize,
    #[command(flatten)]
    emit: Emit,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Series,
    Quadrature,
    Auto,
}

#[derive(Debug, Args)]
struct SolutionArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    d: f64,
    /// Comma-separated positions.
    #[arg(
        long,
        required = true,
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    x: Vec<f64>,
    /// Comma-separated times.
    #[arg(
        long,
        required = true,
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    t: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    #[arg(long, env = "MLFRAC_DEFAULT_TOL", default_value_t = mlfrac::solution::DEFAULT_TOL)]
    tol: f64,
    /// Interpret --tol relative to |u|.
    #[arg(long)]
    relative: bool,
    #[command(flatten)]
    emit: Emit,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = suites::Suite::All)]
    suite: suites::Suite,
    #[command(flatten)]
    emit: Emit,
}

#[derive(Debug, Args)]
struct FrontArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    c: f64,
    #[arg(long)]
    t_min: f64,
    #[arg(long)]
    t_max: f64,
    #[arg(long)]
    t_steps: usize,
    /// Defaults to the fixed point of cos.
    #[arg(long)]
    ell: Option<f64>,
    #[command(flatten)]
    emit: Emit,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ml(args) => cmd_ml(args),
        Command::Solution(args) => cmd_solution(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Front(args) => cmd_front(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| num(v).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn emit(rec: &OutputRecord, emit: &Emit) -> Result<()> {
    rec.emit(emit.format, emit.out.as_deref())
}

fn cmd_ml(args: MlArgs) -> Result<ExitCode> {
    let params = MlParams::new(args.alpha)?
        .with_series_radius(args.series_radius)?
        .with_asymptotic_terms(args.asymptotic_terms)?;
    let ml = MittagLeffler::new(params)?;
    let rs = match (args.r, args.r_min, args.r_max, args.r_steps) {
        (Some(r), ..) => vec![r],
        (None, Some(lo), Some(hi), Some(n)) => grid::linspace(lo, hi, n)?,
        _ => bail!("give --r or --r-min/--r-max/--r-steps"),
    };
    let mut inputs = record! {
        "alpha" => num(args.alpha),
        "series_radius" => num(args.series_radius),
        "asymptotic_terms" => Value::from(args.asymptotic_terms),
        "log" => Value::from(args.log),
    };
    match args.r {
        Some(r) => {
            inputs.insert("r".into(), num(r));
        }
        None => {
            inputs.insert("r_min".into(), num(rs[0]));
            inputs.insert("r_max".into(), num(rs[rs.len() - 1]));
            inputs.insert("r_steps".into(), Value::from(rs.len()));
        }
    }
    let value_key = if args.log { "log_value" } else { "value" };
    let rows: Vec<Record> = rs
        .par_iter()
        .map(|&r| {
            let v = ml.e(r);
            let value = if args.log { v.ln() } else { v.value };
            record! {
                "alpha" => num(args.alpha),
                "r" => num(r),
                value_key => num(value),
                "method" => Value::from(v.method.as_str()),
                "err_estimate" => num(v.err_estimate),
            }
        })
        .collect();
    emit(&OutputRecord::new("ml", inputs, rows), &args.emit)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_solution(args: SolutionArgs) -> Result<ExitCode> {
    let params = FracParams::new(args.alpha, args.d, args.a)?;
    let choice = match args.method {
        Method::Series => MethodChoice::Series,
        Method::Quadrature => MethodChoice::Quadrature,
        Method::Auto => MethodChoice::Auto,
    };
    let tol = if args.relative {
        Tolerance::Relative(args.tol)
    } else {
        Tolerance::Absolute(args.tol)
    };
    let points: Vec<(f64, f64)> = args
        .x
        .iter()
        .flat_map(|&x| args.t.iter().map(move |&t| (x, t)))
        .collect();
    let rows = points
        .par_iter()
        .map(|&(x, t)| -> Result<Record> {
            let v = solve(&params, x, t, choice, tol)?;
            Ok(record! {
                "alpha" => num(args.alpha),
                "d" => num(args.d),
                "a" => num(args.a),
                "x" => num(x),
                "t" => num(t),
                "method" => Value::from(v.method.as_str()),
                "u" => num(v.u),
                "log_u" => num(v.ln()),
                "abs_error_bound" => num(v.abs_error_bound),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let inputs = record! {
        "alpha" => num(args.alpha),
        "d" => num(args.d),
        "a" => num(args.a),
        "x" => Value::from(join(&args.x)),
        "t" => Value::from(join(&args.t)),
        "method" => Value::from(format!("{:?}", args.method).to_lowercase()),
        "tol" => num(args.tol),
        "relative" => Value::from(args.relative),
    };
    emit(&OutputRecord::new("solution", inputs, rows), &args.emit)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let checks = suites::run(args.suite)?;
    let rows = checks.iter().map(suites::Check::record).collect();
    let suite = args
        .suite
        .to_possible_value()
        .map(|v| v.get_name().to_owned())
        .unwrap_or_default();
    let inputs = record! {"suite" => Value::from(suite)};
    emit(&OutputRecord::new("verify", inputs, rows), &args.emit)?;
    let failed = checks.iter().filter(|c| c.failed()).count();
    let info = checks
        .iter()
        .filter(|c| c.status == suites::Status::Info)
        .count();
    let passed = checks.len() - failed - info;
    eprintln!(
        "verify: {} checks, {passed} passed, {failed} failed, {info} informational",
        checks.len()
    );
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_front(args: FrontArgs) -> Result<ExitCode> {
    if !(args.beta > 0.0 && args.beta < 0.5) {
        bail!(
            "beta = {} is outside (0, 1/2), where the divergence result applies",
            args.beta
        );
    }
    let ts = grid::logspace(args.t_min, args.t_max, args.t_steps)?;
    let ell = args.ell.unwrap_or_else(dottie_number);
    let config = FrontConfig::new(args.alpha, args.beta, args.c, ts.clone())?.with_ell(ell)?;
    let samples = ts
        .par_iter()
        .map(|&t| front_sample(t, &config))
        .collect::<mlfrac::Result<Vec<_>>>()?;
    let rows = samples
        .iter()
        .map(|s| {
            record! {
                "alpha" => num(args.alpha),
                "beta" => num(args.beta),
                "c" => num(args.c),
                "ell" => num(ell),
                "t" => num(s.t),
                "x" => num(s.x),
                "log_u" => num(s.log_u),
                "log_lower_bound" => num(s.log_lower_bound),
                "bracket_ok" => Value::from(s.bracket_ok),
            }
        })
        .collect();
    let inputs = record! {
        "alpha" => num(args.alpha),
        "beta" => num(args.beta),
        "c" => num(args.c),
        "ell" => num(ell),
        "t_min" => num(args.t_min),
        "t_max" => num(args.t_max),
        "t_steps" => Value::from(args.t_steps),
    };
    emit(&OutputRecord::new("front", inputs, rows), &args.emit)?;
    let certified = divergence_certified(&samples, args.t_min);
    let sandwiched = samples.iter().all(|s| s.bracket_ok);
    if certified && sandwiched {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "front: divergence certified = {certified}, lower bound respected = {sandwiched}"
        );
        Ok(ExitCode::FAILURE)
    }
}
