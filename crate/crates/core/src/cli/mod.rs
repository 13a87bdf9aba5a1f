//! Command-line front end: `relate`, `bench` and `fit`.
//!
//! Exit codes: 0 for a decided result, 1 for input errors (parse, domain,
//! ingest, caps), 2 for an indeterminate verdict or when no candidate fits.
//! Reports go to stdout, as text or as one JSON document with `--json`;
//! errors go to stderr.

mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use report::{
    CandidateRow, FitReport, FitSection, RelateReport, Relations, Report, SampleRow,
    VerdictSection,
};

use crate::expr::{parse, GrowthExpr};
use crate::profiler::{
    default_candidates, fit_class, ingest, measure_seeded, Algorithm, ColumnRef, CsvFormat,
    FitError, FitResult, MeasurementSeries, TimeUnit,
};
use crate::relation::{
    classify_with, ClassifyOptions, Mode, RelationReport, SamplingSchedule, Thresholds,
    VerdictKind,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "almost", version, about = "Asymptotic relations between growth functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide o, O, Θ, ~ and a(K, ·) for f against g.
    Relate(RelateArgs),
    /// Time a built-in algorithm and fit its growth class.
    Bench(BenchArgs),
    /// Fit the growth class of timings read from CSV.
    Fit(FitArgs),
}

#[derive(Debug, Args)]
pub struct RelateArgs {
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    #[arg(allow_hyphen_values = true)]
    pub g: String,
    /// Force the sampled estimator.
    #[arg(long, conflicts_with = "symbolic")]
    pub numeric: bool,
    /// Require exact normal forms.
    #[arg(long)]
    pub symbolic: bool,
    #[arg(long, default_value_t = 16)]
    pub n0: u64,
    #[arg(long, default_value_t = 2.0)]
    pub ratio: f64,
    #[arg(long, default_value_t = 36)]
    pub steps: usize,
    #[arg(long, default_value_t = 8)]
    pub window: usize,
    /// Relative tail spread accepted as convergence.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub algorithm: String,
    /// Smallest size (default depends on the algorithm).
    #[arg(long)]
    pub n0: Option<u64>,
    #[arg(long)]
    pub ratio: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, default_value_t = 5)]
    pub reps: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    pub csv: PathBuf,
    /// Column holding n: 0-based index or header name.
    #[arg(long, default_value = "0")]
    pub n_col: String,
    /// Column holding the runtime: 0-based index or header name.
    #[arg(long, default_value = "1")]
    pub t_col: String,
    /// Unit of the runtime column: ns, us, ms or s.
    #[arg(long, default_value = "ns")]
    pub unit: String,
    /// Candidate model; repeat to replace the default set.
    #[arg(long = "candidate", allow_hyphen_values = true)]
    pub candidates: Vec<String>,
    #[arg(long)]
    pub json: bool,
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

impl Outcome {
    fn error(message: impl std::fmt::Display, exit_code: i32) -> Outcome {
        Outcome {
            exit_code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            report: None,
        }
    }

    fn report(report: Report, text: String, json: bool) -> Outcome {
        Outcome {
            exit_code: report.exit_code(),
            stdout: if json {
                report.to_json() + "\n"
            } else {
                text
            },
            stderr: String::new(),
            report: Some(report),
        }
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    exit_code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: rendered,
                    report: None,
                }
            } else {
                // --help, --version
                Outcome {
                    exit_code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                    report: None,
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Relate(a) => run_relate(a),
        Command::Bench(a) => run_bench(a),
        Command::Fit(a) => run_fit(a),
    }
}

fn mark(holds: bool, yes: &str, no: &str) -> String {
    if holds { yes } else { no }.to_string()
}

fn relation_text(f: &str, g: &str, r: &RelationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "f = {f}");
    let _ = writeln!(out, "g = {g}");
    let almost = match r.almost {
        Some(k) => format!("f ∈ a({k}, g)"),
        None => "f ∉ a(K, g)".to_string(),
    };
    let _ = writeln!(
        out,
        "{}, {}; {}; {}; {}",
        mark(r.little_o, "f ∈ o(g)", "f ∉ o(g)"),
        mark(r.big_o, "f ∈ O(g)", "f ∉ O(g)"),
        mark(r.theta, "f ∈ Θ(g)", "f ∉ Θ(g)"),
        mark(r.tilde, "f ~ g", "f ≁ g"),
        almost
    );
    if r.reverse_little_o {
        let _ = writeln!(out, "g ∈ o(f)");
    }
    let kind = match r.verdict.kind {
        VerdictKind::Finite { k } => format!("finite, K = {k}"),
        VerdictKind::Bounded { lo, hi } => format!("bounded in [{lo:.6}, {hi:.6}]"),
        other => other.name().to_string(),
    };
    let _ = writeln!(
        out,
        "verdict: {kind} ({}, {} confidence), n_min = {}",
        match r.verdict.method {
            crate::relation::Method::Symbolic => "symbolic",
            crate::relation::Method::Numeric => "numeric",
        },
        match r.verdict.confidence {
            crate::relation::Confidence::Exact => "exact",
            crate::relation::Confidence::High => "high",
            crate::relation::Confidence::Low => "low",
        },
        r.n_min
    );
    out
}

pub fn run_relate(a: &RelateArgs) -> Outcome {
    let f = match parse(&a.f) {
        Ok(e) => e,
        Err(e) => return Outcome::error(format!("f: {e}"), EXIT_INPUT),
    };
    let g = match parse(&a.g) {
        Ok(e) => e,
        Err(e) => return Outcome::error(format!("g: {e}"), EXIT_INPUT),
    };
    let schedule = match SamplingSchedule::new(a.n0, a.ratio, a.steps, a.window) {
        Ok(s) => s,
        Err(e) => return Outcome::error(e, EXIT_INPUT),
    };
    if !a.tol.is_finite() || a.tol <= 0.0 {
        return Outcome::error("--tol must be positive", EXIT_INPUT);
    }
    let opts = ClassifyOptions {
        mode: if a.numeric {
            Mode::Numeric
        } else if a.symbolic {
            Mode::Symbolic
        } else {
            Mode::Auto
        },
        schedule,
        thresholds: Thresholds {
            conv_tol: a.tol,
            ..Thresholds::default()
        },
        ..ClassifyOptions::default()
    };
    let report = match classify_with(&f, &g, &opts) {
        Ok(r) => r,
        Err(e) => return Outcome::error(e, EXIT_INPUT),
    };
    let exit_code = if report.verdict.kind == VerdictKind::Indeterminate {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    };
    let text = relation_text(&a.f, &a.g, &report);
    let json = RelateReport::new("relate".into(), a.f.clone(), a.g.clone(), &report, exit_code);
    Outcome::report(Report::Relate(json), text, a.json)
}

fn fit_text(series: &MeasurementSeries, fit: &FitResult) -> String {
    let mut out = String::new();
    let samples = series.samples();
    let _ = writeln!(
        out,
        "source: {} ({} samples, n = {}..{})",
        series.source(),
        samples.len(),
        samples[0].n,
        samples[samples.len() - 1].n
    );
    let _ = writeln!(
        out,
        "model: {}  K = {:.6}  tail spread = {:.4} ({})",
        fit.model,
        fit.k,
        fit.tail_spread,
        fit.quality.name()
    );
    let _ = writeln!(out, "candidates:");
    for c in &fit.candidates {
        match (c.k, c.tail_spread, &c.excluded) {
            (Some(k), Some(s), _) => {
                let _ = writeln!(out, "  {:<14} K = {:<14.6e} spread = {:.4}", c.model.to_string(), k, s);
            }
            (_, _, Some(why)) => {
                let _ = writeln!(out, "  {:<14} excluded: {why}", c.model.to_string());
            }
            _ => {}
        }
    }
    out
}

fn report_fit(command: &str, series: &MeasurementSeries, candidates: &[GrowthExpr], json: bool) -> Outcome {
    match fit_class(series, candidates) {
        Ok(fit) => {
            let text = fit_text(series, &fit);
            let report = FitReport::new(command.into(), series, &fit, EXIT_OK);
            Outcome::report(Report::Fit(report), text, json)
        }
        Err(e @ FitError::NoFit { .. }) => Outcome::error(e, EXIT_UNDECIDED),
        Err(e @ FitError::InsufficientSamples(_)) => Outcome::error(e, EXIT_INPUT),
    }
}

pub fn run_bench(a: &BenchArgs) -> Outcome {
    let algorithm: Algorithm = match a.algorithm.parse() {
        Ok(alg) => alg,
        Err(e) => return Outcome::error(e, EXIT_INPUT),
    };
    let defaults = algorithm.default_sizes();
    let sizes = match SamplingSchedule::new(
        a.n0.unwrap_or(defaults.n0()),
        a.ratio.unwrap_or(defaults.ratio()),
        a.steps.unwrap_or(defaults.steps()),
        4,
    ) {
        Ok(s) => s,
        Err(e) => return Outcome::error(e, EXIT_INPUT),
    };
    let series = match measure_seeded(algorithm, &sizes, a.reps, a.seed) {
        Ok(s) => s,
        Err(e) => return Outcome::error(e, EXIT_INPUT),
    };
    report_fit("bench", &series, &default_candidates(), a.json)
}

pub fn run_fit(a: &FitArgs) -> Outcome {
    let unit: TimeUnit = match a.unit.parse() {
        Ok(u) => u,
        Err(e) => return Outcome::error(e, EXIT_INPUT),
    };
    let format = CsvFormat {
        n_col: a.n_col.parse::<ColumnRef>().unwrap_or(ColumnRef::Index(0)),
        t_col: a.t_col.parse::<ColumnRef>().unwrap_or(ColumnRef::Index(1)),
        unit,
    };
    let candidates = if a.candidates.is_empty() {
        default_candidates()
    } else {
        let mut parsed = Vec::with_capacity(a.candidates.len());
        for text in &a.candidates {
            match parse(text) {
                Ok(e) => parsed.push(e),
                Err(e) => return Outcome::error(format!("candidate '{text}': {e}"), EXIT_INPUT),
            }
        }
        parsed
    };
    let series = match ingest(&a.csv, &format) {
        Ok(s) => s,
        Err(e) => return Outcome::error(e, EXIT_INPUT),
    };
    report_fit("fit", &series, &candidates, a.json)
}
