//! Deciding o, O, Θ, ~ and a(K, ·) for an ordered pair `(f, g)`.
//!
//! Every relation is read off the limit of `|f(n)/g(n)|`:
//!
//! | limit              | o   | O   | Θ   | a(K, g) | ~            |
//! |--------------------|-----|-----|-----|---------|--------------|
//! | finite `K > 0`     | no  | yes | yes | `K`     | `|K-1|<=tol` |
//! | zero               | yes | yes | no  | no      | no           |
//! | infinite           | no  | no  | no  | no      | no           |
//! | bounded, `lo > 0`  | no  | yes | yes | no      | no           |
//!
//! Absolute values are used throughout, so sign-changing `f` is compared by
//! magnitude. Pairs whose members both have a poly-log-exp normal form are
//! decided exactly; otherwise the limit is estimated on a geometric sample
//! grid and the verdict carries `method = numeric`.

mod limit;
mod schedule;

use serde::{Deserialize, Serialize};

use crate::expr::{EvalError, GrowthExpr};
use crate::ple::normalize_ple;

pub use limit::{
    judge_tail, limit_ratio_numeric, limit_ratio_numeric_with, limit_ratio_symbolic,
    sample_ratios, RatioSamples, Thresholds,
};
pub use schedule::SamplingSchedule;

/// `~` tolerance on `|K - 1|` for exact verdicts.
pub const SYMBOLIC_TILDE_TOL: f64 = 1e-6;
/// `~` tolerance on `|K - 1|` for sampled verdicts.
pub const NUMERIC_TILDE_TOL: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RelationError {
    #[error("{which} has no poly-log-exp normal form; symbolic mode needs one")]
    NotNormalizable { which: &'static str },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("g(n) is zero at n = {n}")]
    ZeroDenominator { n: u64 },
    #[error("only {usable} usable samples, tail window needs {window}")]
    InsufficientSamples { usable: usize, window: usize },
    #[error("invalid schedule: {0}")]
    Schedule(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VerdictKind {
    Finite { k: f64 },
    Zero,
    Infinite,
    /// Ratio stays within `[lo, hi]` without settling.
    Bounded { lo: f64, hi: f64 },
    Indeterminate,
}

impl VerdictKind {
    pub fn name(&self) -> &'static str {
        match self {
            VerdictKind::Finite { .. } => "finite",
            VerdictKind::Zero => "zero",
            VerdictKind::Infinite => "infinite",
            VerdictKind::Bounded { .. } => "bounded",
            VerdictKind::Indeterminate => "indeterminate",
        }
    }

    pub fn same_kind(&self, other: &VerdictKind) -> bool {
        self.name() == other.name()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Symbolic,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Confidence {
    Exact,
    High,
    Low,
}

/// Outcome of `lim |f/g|` and how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitVerdict {
    pub kind: VerdictKind,
    pub method: Method,
    pub confidence: Confidence,
}

/// Which relations hold for `(f, g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub little_o: bool,
    pub big_o: bool,
    pub theta: bool,
    pub tilde: bool,
    /// `K` of `f ∈ a(K, g)`.
    pub almost: Option<f64>,
    /// `g ∈ o(f)`.
    pub reverse_little_o: bool,
    pub verdict: LimitVerdict,
    pub n_min: u64,
    /// Tolerance used to decide `tilde`.
    pub tilde_tolerance: f64,
}

/// Map a limit verdict to the relation flags.
pub fn derive_relations(verdict: LimitVerdict, tilde_tolerance: f64) -> RelationReport {
    let mut r = RelationReport {
        little_o: false,
        big_o: false,
        theta: false,
        tilde: false,
        almost: None,
        reverse_little_o: false,
        verdict,
        n_min: 0,
        tilde_tolerance,
    };
    match verdict.kind {
        VerdictKind::Finite { k } => {
            r.big_o = true;
            r.theta = true;
            r.almost = Some(k);
            r.tilde = (k - 1.0).abs() <= tilde_tolerance;
        }
        VerdictKind::Zero => {
            r.little_o = true;
            r.big_o = true;
        }
        VerdictKind::Infinite => r.reverse_little_o = true,
        VerdictKind::Bounded { lo, .. } => {
            r.big_o = true;
            r.theta = lo > 0.0;
        }
        VerdictKind::Indeterminate => {}
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Symbolic when both sides normalize, numeric otherwise.
    #[default]
    Auto,
    Symbolic,
    Numeric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyOptions {
    pub mode: Mode,
    pub schedule: SamplingSchedule,
    pub thresholds: Thresholds,
    pub symbolic_tilde_tol: f64,
    pub numeric_tilde_tol: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            mode: Mode::Auto,
            schedule: SamplingSchedule::default(),
            thresholds: Thresholds::default(),
            symbolic_tilde_tol: SYMBOLIC_TILDE_TOL,
            numeric_tilde_tol: NUMERIC_TILDE_TOL,
        }
    }
}

/// First schedule point where both `|f|` and `|g|` are positive; falls back
/// to the last point when there is none.
fn first_positive_point(f: &GrowthExpr, g: &GrowthExpr, schedule: &SamplingSchedule) -> u64 {
    let pts = schedule.points();
    pts.iter()
        .copied()
        .find(|&n| {
            matches!(
                (f.magnitude(n), g.magnitude(n)),
                (Ok(a), Ok(b)) if !a.is_zero() && !b.is_zero()
            )
        })
        .unwrap_or(pts[pts.len() - 1])
}

pub fn classify(
    f: &GrowthExpr,
    g: &GrowthExpr,
    mode: Mode,
    schedule: &SamplingSchedule,
) -> Result<RelationReport, RelationError> {
    classify_with(
        f,
        g,
        &ClassifyOptions {
            mode,
            schedule: schedule.clone(),
            ..ClassifyOptions::default()
        },
    )
}

pub fn classify_with(
    f: &GrowthExpr,
    g: &GrowthExpr,
    opts: &ClassifyOptions,
) -> Result<RelationReport, RelationError> {
    let forms = match opts.mode {
        Mode::Numeric => None,
        Mode::Auto => normalize_ple(f).zip(normalize_ple(g)),
        Mode::Symbolic => {
            let nf = normalize_ple(f).ok_or(RelationError::NotNormalizable { which: "f" })?;
            let ng = normalize_ple(g).ok_or(RelationError::NotNormalizable { which: "g" })?;
            Some((nf, ng))
        }
    };
    match forms {
        Some((nf, ng)) => {
            let mut report =
                derive_relations(limit_ratio_symbolic(&nf, &ng), opts.symbolic_tilde_tol);
            report.n_min = first_positive_point(f, g, &opts.schedule);
            Ok(report)
        }
        None => {
            let (verdict, n_min) =
                limit_ratio_numeric_with(f, g, &opts.schedule, &opts.thresholds)?;
            let mut report = derive_relations(verdict, opts.numeric_tilde_tol);
            report.n_min = n_min;
            Ok(report)
        }
    }
}

/// `K` such that `f ∈ a(K, g)`, if the limit is finite and positive.
pub fn check_almost(f: &GrowthExpr, g: &GrowthExpr) -> Result<Option<f64>, RelationError> {
    Ok(classify(f, g, Mode::Auto, &SamplingSchedule::default())?.almost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn rel(f: &str, g: &str) -> RelationReport {
        classify(
            &parse(f).unwrap(),
            &parse(g).unwrap(),
            Mode::Auto,
            &SamplingSchedule::default(),
        )
        .unwrap()
    }

    fn verdict(kind: VerdictKind) -> LimitVerdict {
        LimitVerdict {
            kind,
            method: Method::Numeric,
            confidence: Confidence::Low,
        }
    }

    #[test]
    fn finite_two_is_theta_but_not_tilde() {
        let r = derive_relations(verdict(VerdictKind::Finite { k: 2.0 }), SYMBOLIC_TILDE_TOL);
        assert!(r.big_o && r.theta && !r.tilde && !r.little_o && !r.reverse_little_o);
        assert_eq!(r.almost, Some(2.0));
    }

    #[test]
    fn zero_is_little_o_and_big_o() {
        let r = derive_relations(verdict(VerdictKind::Zero), SYMBOLIC_TILDE_TOL);
        assert!(r.little_o && r.big_o && !r.theta && !r.tilde);
        assert_eq!(r.almost, None);
    }

    #[test]
    fn infinite_sets_only_the_reverse_flag() {
        let r = derive_relations(verdict(VerdictKind::Infinite), SYMBOLIC_TILDE_TOL);
        assert!(r.reverse_little_o);
        assert!(!(r.little_o || r.big_o || r.theta || r.tilde) && r.almost.is_none());
    }

    #[test]
    fn bounded_is_theta_without_almost() {
        let r = derive_relations(verdict(VerdictKind::Bounded { lo: 1.0, hi: 3.0 }), 1e-2);
        assert!(r.theta && r.big_o && !r.little_o && !r.tilde);
        assert_eq!(r.almost, None);
        let r = derive_relations(verdict(VerdictKind::Bounded { lo: 0.0, hi: 3.0 }), 1e-2);
        assert!(r.big_o && !r.theta && !r.little_o);
    }

    #[test]
    fn indeterminate_keeps_everything_false() {
        let v = verdict(VerdictKind::Indeterminate);
        let r = derive_relations(v, 1e-2);
        assert!(!(r.little_o || r.big_o || r.theta || r.tilde || r.reverse_little_o));
        assert_eq!(r.verdict, v);
    }

    #[test]
    fn tilde_tolerance_boundary() {
        let r = derive_relations(verdict(VerdictKind::Finite { k: 1.005 }), NUMERIC_TILDE_TOL);
        assert!(r.tilde);
        let r = derive_relations(verdict(VerdictKind::Finite { k: 1.005 }), SYMBOLIC_TILDE_TOL);
        assert!(!r.tilde);
    }

    #[test]
    fn classify_examples() {
        let r = rel("n^2", "n^3");
        assert!(r.little_o && r.big_o && !r.reverse_little_o);
        let r = rel("n^3", "n^2");
        assert!(!r.big_o && r.reverse_little_o);
        let r = rel("n^3 + 1000*n^2 + n + 300", "n^5");
        assert!(r.little_o && r.big_o && !r.theta);
        let r = rel("n^3 + 1000*n^2 + n + 300", "n^3 + n^2");
        assert_eq!(r.almost, Some(1.0));
        assert!(r.theta);
        assert_eq!(r.verdict.method, Method::Symbolic);
    }

    #[test]
    fn auto_mode_falls_back_to_numeric() {
        let r = rel("2 - sin(n)", "1");
        assert_eq!(r.verdict.method, Method::Numeric);
        assert!(r.theta && r.almost.is_none());
        assert_eq!(r.verdict.confidence, Confidence::Low);
    }

    #[test]
    fn symbolic_mode_requires_normal_forms() {
        let err = classify(
            &parse("2 - sin(n)").unwrap(),
            &parse("1").unwrap(),
            Mode::Symbolic,
            &SamplingSchedule::default(),
        )
        .unwrap_err();
        assert_eq!(err, RelationError::NotNormalizable { which: "f" });
    }

    #[test]
    fn forced_numeric_mode_on_ple_pair() {
        let r = classify(
            &parse("3*n^3 + 2*n^2 + n").unwrap(),
            &parse("n^3").unwrap(),
            Mode::Numeric,
            &SamplingSchedule::default(),
        )
        .unwrap();
        assert_eq!(r.verdict.method, Method::Numeric);
        let k = r.almost.unwrap();
        assert!((k - 3.0).abs() < 1e-6);
        assert_eq!(r.tilde_tolerance, NUMERIC_TILDE_TOL);
    }

    #[test]
    fn n_min_skips_leading_zeros() {
        assert_eq!(rel("n - 16", "n").n_min, 32);
        assert_eq!(rel("n", "n").n_min, 16);
    }

    #[test]
    fn check_almost_examples() {
        let f = parse("3*n^3 + 2*n^2 + n").unwrap();
        assert_eq!(check_almost(&f, &parse("3*n^3").unwrap()).unwrap(), Some(1.0));
        assert_eq!(check_almost(&f, &f).unwrap(), Some(1.0));
        assert_eq!(
            check_almost(&parse("n*log2(n)").unwrap(), &parse("n^2").unwrap()).unwrap(),
            None
        );
    }
}
