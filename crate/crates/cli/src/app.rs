//! Command-line definition and dispatch.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fermat_core::optimality::{
    certificate_check, interval_total_value, solve_intervals, three_set_check, torricelli_point,
};
use fermat_core::oracle::{default_bbox, grid_minimize, BBox, DEFAULT_MARGIN};
use fermat_core::solver::{solve, CustomSchedule, SolveOptions, StepSchedule};
use fermat_core::{Dynamics, Point, Problem};
use serde::Serialize;

use crate::error::CliError;
use crate::problem_file::load_problem;
use crate::report::{CheckReport, IntervalsReport, OracleReport, SolveReport, TorricelliReport};
use crate::trace::write_trace;

#[derive(Debug, Parser)]
#[command(
    name = "fermat",
    version,
    about = "Generalized Fermat-Torricelli solver and verifier"
)]
pub struct Cli {
    /// Print human-readable text instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the subgradient method.
    Solve(SolveArgs),
    /// Check the optimality certificate at a point.
    Check(CheckArgs),
    /// Brute-force grid minimization.
    Oracle(OracleArgs),
    /// Solve the sum-of-distances problem for sorted disjoint intervals.
    Intervals(IntervalsArgs),
    /// Fermat-Torricelli point of three points in the plane.
    Torricelli(TorricelliArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub problem: PathBuf,
    /// Comma-separated coordinates, e.g. `5,7`.
    #[arg(long, allow_hyphen_values = true)]
    pub start: String,
    /// `harmonic`, `scaled:C` or `constant:C`.
    #[arg(long, default_value = "harmonic")]
    pub steps: String,
    #[arg(long, default_value_t = 100_000)]
    pub max_iters: usize,
    /// Write the iterate trace as CSV.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    pub trace_every: usize,
    /// Stop early once the certificate residual at the best point is below this.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Report the a-priori error bound, estimating the distance to the
    /// solution set with the grid oracle.
    #[arg(long)]
    pub error_bound: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub problem: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub problem: PathBuf,
    /// Lower then upper corner, e.g. `-4,-4,4,4` in the plane.
    #[arg(long, allow_hyphen_values = true)]
    pub bbox: Option<String>,
    #[arg(long, default_value_t = 200)]
    pub coarse_n: usize,
    #[arg(long, default_value_t = 4)]
    pub refinements: usize,
}

#[derive(Debug, Args)]
pub struct IntervalsArgs {
    /// Intervals as `a,b`, sorted and pairwise disjoint.
    #[arg(required = true, allow_hyphen_values = true)]
    pub intervals: Vec<String>,
}

#[derive(Debug, Args)]
pub struct TorricelliArgs {
    /// Three points as `x,y`.
    #[arg(num_args = 3, required = true, allow_hyphen_values = true)]
    pub points: Vec<String>,
}

fn parse_numbers(flag: &str, text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::invalid(flag, format!("`{s}` is not a finite number")))
        })
        .collect()
}

fn parse_point(flag: &str, text: &str, dim: usize) -> Result<Point, CliError> {
    let v = parse_numbers(flag, text)?;
    if v.len() != dim {
        return Err(CliError::invalid(
            flag,
            format!("expected {dim} coordinates, found {}", v.len()),
        ));
    }
    Ok(Point::new(v)?)
}

pub fn parse_schedule(text: &str) -> Result<StepSchedule, CliError> {
    let bad = || {
        CliError::invalid(
            "--steps",
            format!("expected harmonic, scaled:C or constant:C, found `{text}`"),
        )
    };
    if text == "harmonic" {
        return Ok(StepSchedule::Harmonic);
    }
    let (name, value) = text.split_once(':').ok_or_else(bad)?;
    let c: f64 = value.parse().map_err(|_| bad())?;
    if !c.is_finite() || c <= 0.0 {
        return Err(CliError::invalid(
            "--steps",
            "step constant must be positive and finite",
        ));
    }
    match name {
        "scaled" => Ok(StepSchedule::ScaledHarmonic(c)),
        "constant" => Ok(StepSchedule::Custom(CustomSchedule::constant(c))),
        _ => Err(bad()),
    }
}

fn emit<W: Write, T: Serialize>(
    out: &mut W,
    pretty: bool,
    report: &T,
    text: impl FnOnce(&T) -> String,
) -> Result<(), CliError> {
    let line = if pretty {
        text(report)
    } else {
        let mut s = serde_json::to_string(report).expect("reports serialize");
        s.push('\n');
        s
    };
    out.write_all(line.as_bytes())
        .map_err(|source| CliError::Io {
            path: "stdout".to_owned(),
            source,
        })
}

fn oracle_for(problem: &Problem) -> Result<fermat_core::oracle::OracleResult, CliError> {
    Ok(grid_minimize(
        problem,
        &default_bbox(problem, DEFAULT_MARGIN),
        200,
        4,
    )?)
}

fn cmd_solve<W: Write>(a: &SolveArgs, pretty: bool, out: &mut W) -> Result<(), CliError> {
    let problem = load_problem(&a.problem)?;
    let start = parse_point("--start", &a.start, problem.dimension())?;
    let schedule = parse_schedule(&a.steps)?;
    if a.trace_every == 0 {
        return Err(CliError::invalid("--trace-every", "must be at least 1"));
    }
    let mut opts = SolveOptions::new(a.max_iters).trace_every(a.trace_every);
    if let Some(tol) = a.tol {
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(CliError::invalid("--tol", "must be nonnegative and finite"));
        }
        opts = opts.residual_tol(tol);
    }
    let mut dist = None;
    if a.error_bound {
        let o = oracle_for(&problem)?;
        let d = start
            .iter()
            .zip(o.argmin.iter())
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
        opts = opts.dist_to_solutions(d);
        dist = Some(d);
    }
    let result = solve(&problem, &start, &schedule, &opts)?;
    if let Some(path) = &a.trace {
        let file = File::create(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        write_trace(BufWriter::new(file), problem.dimension(), &result.trace)?;
    }
    emit(
        out,
        pretty,
        &SolveReport::new(&result, dist),
        SolveReport::pretty,
    )
}

fn cmd_check<W: Write>(a: &CheckArgs, pretty: bool, out: &mut W) -> Result<(), CliError> {
    let problem = load_problem(&a.problem)?;
    let x = parse_point("--point", &a.point, problem.dimension())?;
    if !(a.tol.is_finite() && a.tol >= 0.0) {
        return Err(CliError::invalid("--tol", "must be nonnegative and finite"));
    }
    let cert = certificate_check(&problem, &x, a.tol)?;
    let three = if problem.targets().len() == 3 && problem.dynamics() == Dynamics::EuclideanBall {
        Some(three_set_check(&problem, &x, a.tol)?)
    } else {
        None
    };
    let value = problem.total_value(&x)?;
    emit(
        out,
        pretty,
        &CheckReport::new(&cert, value, three.as_ref()),
        CheckReport::pretty,
    )
}

fn cmd_oracle<W: Write>(a: &OracleArgs, pretty: bool, out: &mut W) -> Result<(), CliError> {
    let problem = load_problem(&a.problem)?;
    let d = problem.dimension();
    let bbox = match &a.bbox {
        Some(text) => {
            let v = parse_numbers("--bbox", text)?;
            if v.len() != 2 * d {
                return Err(CliError::invalid(
                    "--bbox",
                    format!("expected {} numbers, found {}", 2 * d, v.len()),
                ));
            }
            BBox::new(v[..d].to_vec(), v[d..].to_vec())
                .map_err(|e| CliError::invalid("--bbox", e.to_string()))?
        }
        None => default_bbox(&problem, DEFAULT_MARGIN),
    };
    let r = grid_minimize(&problem, &bbox, a.coarse_n, a.refinements)?;
    emit(out, pretty, &OracleReport::from(&r), OracleReport::pretty)
}

fn cmd_intervals<W: Write>(a: &IntervalsArgs, pretty: bool, out: &mut W) -> Result<(), CliError> {
    let ivs = a
        .intervals
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let flag = format!("intervals[{i}]");
            match parse_numbers(&flag, s)?[..] {
                [lo, hi] => Ok((lo, hi)),
                _ => Err(CliError::invalid(flag, "expected `a,b`")),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (lo, hi) = solve_intervals(&ivs)?;
    let report = IntervalsReport {
        optimal_interval: [lo, hi],
        value: interval_total_value(&ivs, lo),
    };
    emit(out, pretty, &report, IntervalsReport::pretty)
}

fn cmd_torricelli<W: Write>(a: &TorricelliArgs, pretty: bool, out: &mut W) -> Result<(), CliError> {
    let pts = a
        .points
        .iter()
        .enumerate()
        .map(|(i, s)| parse_point(&format!("points[{i}]"), s, 2))
        .collect::<Result<Vec<_>, _>>()?;
    let x = torricelli_point(&pts[0], &pts[1], &pts[2])?;
    let value = pts
        .iter()
        .map(|p| ((p[0] - x[0]).powi(2) + (p[1] - x[1]).powi(2)).sqrt())
        .sum();
    let report = TorricelliReport {
        point: x.to_vec(),
        value,
    };
    emit(out, pretty, &report, TorricelliReport::pretty)
}

pub fn execute<W: Write>(cli: &Cli, out: &mut W) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a, cli.pretty, out),
        Command::Check(a) => cmd_check(a, cli.pretty, out),
        Command::Oracle(a) => cmd_oracle(a, cli.pretty, out),
        Command::Intervals(a) => cmd_intervals(a, cli.pretty, out),
        Command::Torricelli(a) => cmd_torricelli(a, cli.pretty, out),
    }
}

/// Hyphen-valued positionals would swallow a trailing `--pretty`, so it is
/// moved in front of the subcommand unless it follows `--`.
fn hoist_global_flags(args: Vec<OsString>) -> Vec<OsString> {
    let cut = args.iter().position(|a| a == "--").unwrap_or(args.len());
    let is_flag = |i: usize, a: &OsString| i > 0 && i < cut && a == "--pretty";
    let mut flags = Vec::new();
    let mut rest = Vec::with_capacity(args.len());
    for (i, a) in args.into_iter().enumerate() {
        if is_flag(i, &a) {
            flags.push(a);
        } else {
            rest.push(a);
        }
    }
    let at = rest.len().min(1);
    rest.splice(at..at, flags);
    rest
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let args = hoist_global_flags(args.into_iter().map(Into::into).collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if informational { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if informational {
                0
            } else {
                CliError::Usage(e.to_string()).exit_code()
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
