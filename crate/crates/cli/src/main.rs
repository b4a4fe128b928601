//! `bohr`: Bohr and Bohr–Rogosinski radii from the command line.

mod format;

use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;

use bohr_core::oracle::{AxiomSuiteReport, TailForm};
use bohr_core::{
    run_axiom_suite, run_br_monte_carlo, run_tail_monte_carlo, run_weighted_monte_carlo, solve, sweep, Error,
    Family, Mode, PsiSpec, RadiusProblem, SweepAxis, TailRunConfig, VerificationReport, WeightedRunConfig,
    DEFAULT_ORDER, DEFAULT_TOL,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::format::{result_fields, sig12, write_csv, write_json, write_table, CSV_HEADER};

const EXIT_USAGE: u8 = 2;
const EXIT_SOLVER: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(name = "bohr", version, about = "Bohr and Bohr-Rogosinski radii for Ma-Minda classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one radius problem.
    Radius(RadiusArgs),
    /// Solve a problem over a range of N or m (`--N 1..10` or `--m 1..5`).
    Sweep(SweepArgs),
    /// Monte-Carlo verification of the underlying inequalities; prints JSON.
    Verify(VerifyArgs),
    /// List the preset ψ functions with their Koebe radii.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Args)]
struct ProblemArgs {
    /// ψ preset, e.g. cardioid, sine, janowski:D=0.5,E=-0.5, alpha:0.25
    #[arg(long, default_value = "cardioid")]
    psi: String,
    /// starlike or convex
    #[arg(long, default_value = "starlike")]
    family: String,
    /// bohr-rogosinski or bohr-limit
    #[arg(long, default_value = "bohr-rogosinski")]
    mode: String,
    /// Truncation order of every series.
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Bisection stopping width.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

impl ProblemArgs {
    fn problem(&self, m: u32, n: u32) -> Result<RadiusProblem, Error> {
        let psi: PsiSpec = self.psi.parse()?;
        let family: Family = self.family.parse()?;
        let mode: Mode = self.mode.parse()?;
        let p = RadiusProblem::new(psi, family)
            .with_m(m)
            .with_n(n)
            .with_mode(mode)
            .with_order(self.order)
            .with_tol(self.tol);
        p.validate()?;
        Ok(p)
    }
}

#[derive(Args)]
struct RadiusArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long = "N", default_value_t = 1)]
    n: u32,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// A single value or a range `a..b` (inclusive).
    #[arg(long, default_value = "1")]
    m: String,
    /// A single value or a range `a..b` (inclusive).
    #[arg(long = "N", default_value = "1")]
    n: String,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Lemma {
    /// Subordination tail inequality over catalog extremal functions.
    Tail,
    /// Bohr operator properties on random series.
    BohrOperator,
    /// τ-weighted tail inequality with h = τ(1+z)/2.
    Weighted,
    /// Full Bohr–Rogosinski inequality for subordinants of the extremal function.
    Br,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "tail")]
    lemma: Lemma,
    /// Shorthand for `--lemma weighted`.
    #[arg(long)]
    weighted: bool,
    /// ψ preset; `tail` defaults to the whole catalog, the others to cardioid.
    #[arg(long)]
    psi: Option<String>,
    /// starlike, convex, or both (tail only).
    #[arg(long, default_value = "starlike")]
    family: String,
    #[arg(long, default_value = "bohr-rogosinski")]
    mode: String,
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Tail indices: a single value or a range `a..b`. Defaults to 1..3
    /// (0,1,3 for bohr-operator); `br` uses the first value.
    #[arg(long = "N")]
    n: Option<String>,
    /// `high-order` drops the first N coefficients of f before composing.
    #[arg(long, value_enum, default_value = "subordinate")]
    form: FormArg,
    #[arg(long, default_value_t = 0.8)]
    tau: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Largest Blaschke degree of the sampled Schwarz functions.
    #[arg(long, default_value_t = 4)]
    degree_max: usize,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Subordinate,
    HighOrder,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

enum Failure {
    Usage(String),
    Solver(String),
    Violations,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::InvalidInput(_) | Error::Domain { .. } | Error::Unsupported(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Solver(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn parse_range(s: &str, min: u32) -> Result<RangeInclusive<u32>, Failure> {
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| Failure::Usage(format!("cannot parse '{t}' as a nonnegative integer")))
    };
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let v = num(s)?;
            v..=v
        }
    };
    if range.is_empty() || *range.start() < min {
        return Err(Failure::Usage(format!("range '{s}' must be nonempty and start at {min} or later")));
    }
    Ok(range)
}

fn emit_results(out: &mut impl Write, rows: &[bohr_core::RadiusResult], format: OutputFormat) -> io::Result<()> {
    match format {
        OutputFormat::Json if rows.len() == 1 => write_json(out, &rows[0]),
        OutputFormat::Json => write_json(out, &rows),
        OutputFormat::Csv | OutputFormat::Table => {
            let cells: Vec<Vec<String>> = rows.iter().map(|r| result_fields(r).to_vec()).collect();
            if matches!(format, OutputFormat::Csv) {
                write_csv(out, &CSV_HEADER, &cells)
            } else {
                write_table(out, &CSV_HEADER, &cells)
            }
        }
    }
}

fn run_radius(args: &RadiusArgs, out: &mut impl Write) -> Result<(), Failure> {
    let res = solve(&args.problem.problem(args.m, args.n)?)?;
    emit_results(out, &[res], args.format)?;
    Ok(())
}

fn run_sweep(args: &SweepArgs, out: &mut impl Write) -> Result<(), Failure> {
    let m = parse_range(&args.m, 1)?;
    let n = parse_range(&args.n, 1)?;
    let (m0, n0) = (*m.start(), *n.start());
    let axis = match (m0 == *m.end(), n0 == *n.end()) {
        (true, _) => SweepAxis::N(n),
        (false, true) => SweepAxis::M(m),
        (false, false) => return Err(Failure::Usage("sweep over either m or N, not both".into())),
    };
    let problem = args.problem.problem(m0, n0)?;
    let table = sweep(&problem, &axis)?;
    emit_results(out, &table.rows, args.format)?;
    if !table.nondecreasing && !matches!(args.format, OutputFormat::Json) {
        eprintln!("note: r0 is not nondecreasing along the swept axis");
    }
    Ok(())
}

fn finish_report(out: &mut impl Write, report: &impl Serialize, violations: usize) -> Result<(), Failure> {
    write_json(out, report)?;
    if violations > 0 {
        return Err(Failure::Violations);
    }
    Ok(())
}

fn report_violation(report: &VerificationReport) {
    if let Some(c) = &report.counterexample {
        eprintln!("{} violation(s); worst margin {}; first: {c}", report.violations, sig12(report.worst_margin));
    }
}

fn run_verify(args: &VerifyArgs, out: &mut impl Write) -> Result<(), Failure> {
    let lemma = if args.weighted { Lemma::Weighted } else { args.lemma };
    let default_n = if lemma == Lemma::BohrOperator { "0" } else { "1" };
    let n_values: Vec<usize> = match &args.n {
        Some(s) => parse_range(s, if lemma == Lemma::BohrOperator { 0 } else { 1 })?
            .map(|v| v as usize)
            .collect(),
        None if lemma == Lemma::BohrOperator => vec![0, 1, 3],
        None => parse_range(&format!("{default_n}..3"), 1)?.map(|v| v as usize).collect(),
    };
    let psi = |fallback: &str| -> Result<PsiSpec, Failure> {
        Ok(args.psi.as_deref().unwrap_or(fallback).parse::<PsiSpec>()?)
    };
    match lemma {
        Lemma::Tail => {
            let families = match args.family.as_str() {
                "both" => vec![Family::Starlike, Family::Convex],
                f => vec![f.parse::<Family>()?],
            };
            let psis = match &args.psi {
                Some(p) => vec![p.parse::<PsiSpec>()?.to_string()],
                None => PsiSpec::catalog().iter().map(ToString::to_string).collect(),
            };
            let cfg = TailRunConfig {
                psi: psis,
                families,
                n_values,
                degree_max: args.degree_max,
                order: args.order,
                form: match args.form {
                    FormArg::Subordinate => TailForm::Subordinate,
                    FormArg::HighOrder => TailForm::HighOrder,
                },
                ..TailRunConfig::default()
            };
            let report = run_tail_monte_carlo(args.seed, args.trials, &cfg)?;
            report_violation(&report);
            finish_report(out, &report, report.violations)
        }
        Lemma::Weighted => {
            let mut cfg = WeightedRunConfig::new(&psi("cardioid")?, args.tau);
            cfg.n_values = n_values;
            cfg.degree_max = args.degree_max;
            cfg.order = args.order;
            let report = run_weighted_monte_carlo(args.seed, args.trials, &cfg)?;
            report_violation(&report);
            finish_report(out, &report, report.violations)
        }
        Lemma::Br => {
            let problem = RadiusProblem::new(psi("cardioid")?, args.family.parse()?)
                .with_m(args.m)
                .with_n(n_values[0] as u32)
                .with_mode(args.mode.parse()?)
                .with_order(args.order);
            problem.validate()?;
            let report = run_br_monte_carlo(args.seed, args.trials, &problem, args.degree_max)?;
            report_violation(&report);
            finish_report(out, &report, report.violations)
        }
        Lemma::BohrOperator => {
            let report: AxiomSuiteReport = run_axiom_suite(args.seed, args.trials, &n_values, args.order)?;
            if report.violations > 0 {
                eprintln!("{} axiom violation(s); worst margin {}", report.violations, sig12(report.worst_margin));
            }
            finish_report(out, &report, report.violations)
        }
    }
}

#[derive(Serialize)]
struct CatalogRow {
    psi: String,
    koebe_starlike: f64,
    koebe_convex: f64,
    exact_coefficient_bounds: bool,
}

fn run_catalog(args: &CatalogArgs, out: &mut impl Write) -> Result<(), Failure> {
    let rows = PsiSpec::catalog()
        .iter()
        .map(|psi| {
            Ok(CatalogRow {
                psi: psi.to_string(),
                koebe_starlike: bohr_core::koebe_radius(psi, Family::Starlike)?,
                koebe_convex: bohr_core::koebe_radius(psi, Family::Convex)?,
                exact_coefficient_bounds: psi.has_exact_coefficient_bounds(),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let header = ["psi", "koebe_starlike", "koebe_convex", "exact_coefficient_bounds"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.psi.clone(),
                sig12(r.koebe_starlike),
                sig12(r.koebe_convex),
                r.exact_coefficient_bounds.to_string(),
            ]
        })
        .collect();
    match args.format {
        OutputFormat::Json => write_json(out, &rows)?,
        OutputFormat::Csv => write_csv(out, &header, &cells)?,
        OutputFormat::Table => write_table(out, &header, &cells)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match &cli.command {
        Command::Radius(a) => run_radius(a, &mut out),
        Command::Sweep(a) => run_sweep(a, &mut out),
        Command::Verify(a) => run_verify(a, &mut out),
        Command::Catalog(a) => run_catalog(a, &mut out),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(Failure::Usage(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        (Err(Failure::Solver(msg)), _) => {
            eprintln!("solver error: {msg}");
            ExitCode::from(EXIT_SOLVER)
        }
        (Err(Failure::Violations), _) => ExitCode::from(EXIT_VIOLATION),
        (Err(Failure::Io(e)), _) | (Ok(()), Err(e)) => {
            if e.kind() == io::ErrorKind::BrokenPipe {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
