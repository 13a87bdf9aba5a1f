//! Ratio limits `lim |f(n) / g(n)|`.

use crate::expr::GrowthExpr;
use crate::ple::PleNormalForm;

use super::{Confidence, LimitVerdict, Method, RelationError, SamplingSchedule, VerdictKind};

/// Decision thresholds of the sampled estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Largest relative tail spread `max/min - 1` still called convergent.
    pub conv_tol: f64,
    pub upper_cutoff: f64,
    pub lower_cutoff: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            conv_tol: 1e-3,
            upper_cutoff: 1e9,
            lower_cutoff: 1e-9,
        }
    }
}

/// Exact limit on the poly-log-exp family: the leading terms decide.
pub fn limit_ratio_symbolic(f: &PleNormalForm, g: &PleNormalForm) -> LimitVerdict {
    let (lf, lg) = (f.leading(), g.leading());
    let kind = match lf.key.cmp(&lg.key) {
        std::cmp::Ordering::Equal => VerdictKind::Finite {
            k: (lf.coefficient / lg.coefficient).abs(),
        },
        std::cmp::Ordering::Less => VerdictKind::Zero,
        std::cmp::Ordering::Greater => VerdictKind::Infinite,
    };
    LimitVerdict {
        kind,
        method: Method::Symbolic,
        confidence: Confidence::Exact,
    }
}

/// Sampled ratio sequence in log space, together with the first schedule
/// point where both functions are non-zero.
#[derive(Debug, Clone)]
pub struct RatioSamples {
    pub n_min: u64,
    /// `(n, ln |f(n)/g(n)|)` for every usable point at or after `n_min`.
    pub ln_ratios: Vec<(u64, f64)>,
}

pub fn sample_ratios(
    f: &GrowthExpr,
    g: &GrowthExpr,
    schedule: &SamplingSchedule,
) -> Result<RatioSamples, RelationError> {
    let mut n_min = None;
    let mut ln_ratios = Vec::new();
    let mut all_f_zero = true;
    for n in schedule.points() {
        let fm = f.magnitude(n)?;
        let gm = g.magnitude(n)?;
        if n_min.is_none() {
            if gm.is_zero() {
                continue;
            }
            all_f_zero &= fm.is_zero();
            if fm.is_zero() {
                continue;
            }
            n_min = Some(n);
        }
        if gm.is_zero() {
            return Err(RelationError::ZeroDenominator { n });
        }
        let r = fm.ln_abs - gm.ln_abs;
        if !r.is_nan() {
            ln_ratios.push((n, r));
        }
    }
    match n_min {
        Some(n_min) => Ok(RatioSamples { n_min, ln_ratios }),
        // f vanishes on the whole schedule while g does not
        None if all_f_zero && !schedule.points().is_empty() => {
            let pts = schedule.points();
            Ok(RatioSamples {
                n_min: pts[0],
                ln_ratios: pts.into_iter().map(|n| (n, f64::NEG_INFINITY)).collect(),
            })
        }
        None => Err(RelationError::ZeroDenominator {
            n: schedule.points()[0],
        }),
    }
}

/// Classify a tail of log-ratios (ascending `n`).
pub fn judge_tail(tail: &[f64], thresholds: &Thresholds) -> VerdictKind {
    let max = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let last = *tail.last().expect("non-empty tail");
    if min.is_finite() && max.is_finite() {
        let spread = (max - min).exp_m1();
        if spread <= thresholds.conv_tol {
            let k = (tail.iter().sum::<f64>() / tail.len() as f64).exp();
            if k > 0.0 && k.is_finite() {
                return VerdictKind::Finite { k };
            }
        }
    }
    let increasing = tail.windows(2).all(|w| w[1] >= w[0]);
    let decreasing = tail.windows(2).all(|w| w[1] <= w[0]);
    if increasing && last > thresholds.upper_cutoff.ln() {
        return VerdictKind::Infinite;
    }
    if decreasing && last < thresholds.lower_cutoff.ln() {
        return VerdictKind::Zero;
    }
    if min >= thresholds.lower_cutoff.ln() && max <= thresholds.upper_cutoff.ln() {
        return VerdictKind::Bounded {
            lo: min.exp(),
            hi: max.exp(),
        };
    }
    VerdictKind::Indeterminate
}

/// Sampled estimate of the ratio limit over `schedule`, detecting
/// convergence, monotone divergence to 0 or infinity, and bounded
/// oscillation.
pub fn limit_ratio_numeric(
    f: &GrowthExpr,
    g: &GrowthExpr,
    schedule: &SamplingSchedule,
) -> Result<LimitVerdict, RelationError> {
    limit_ratio_numeric_with(f, g, schedule, &Thresholds::default()).map(|(v, _)| v)
}

/// As [`limit_ratio_numeric`], also returning `n_min`.
pub fn limit_ratio_numeric_with(
    f: &GrowthExpr,
    g: &GrowthExpr,
    schedule: &SamplingSchedule,
    thresholds: &Thresholds,
) -> Result<(LimitVerdict, u64), RelationError> {
    let samples = sample_ratios(f, g, schedule)?;
    let w = schedule.window();
    if samples.ln_ratios.len() < w {
        return Err(RelationError::InsufficientSamples {
            usable: samples.ln_ratios.len(),
            window: w,
        });
    }
    let tail: Vec<f64> = samples.ln_ratios[samples.ln_ratios.len() - w..]
        .iter()
        .map(|(_, r)| *r)
        .collect();
    let kind = judge_tail(&tail, thresholds);
    let confidence = match kind {
        VerdictKind::Finite { .. } | VerdictKind::Zero | VerdictKind::Infinite => Confidence::High,
        _ => Confidence::Low,
    };
    Ok((
        LimitVerdict {
            kind,
            method: Method::Numeric,
            confidence,
        },
        samples.n_min,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::ple::normalize_ple;

    fn sym(f: &str, g: &str) -> VerdictKind {
        let f = normalize_ple(&parse(f).unwrap()).unwrap();
        let g = normalize_ple(&parse(g).unwrap()).unwrap();
        limit_ratio_symbolic(&f, &g).kind
    }

    fn num(f: &str, g: &str) -> VerdictKind {
        limit_ratio_numeric(
            &parse(f).unwrap(),
            &parse(g).unwrap(),
            &SamplingSchedule::default(),
        )
        .unwrap()
        .kind
    }

    #[test]
    fn symbolic_examples() {
        assert_eq!(sym("n*log2(n)", "n^2"), VerdictKind::Zero);
        assert_eq!(sym("3*n^3 + 2*n^2 + n", "3*n^3"), VerdictKind::Finite { k: 1.0 });
        assert_eq!(sym("3*n^3 + 2*n^2 + n", "n^3"), VerdictKind::Finite { k: 3.0 });
        assert_eq!(sym("exp_b(2, n)", "n^100"), VerdictKind::Infinite);
        assert_eq!(sym("n - 5*n^2", "n^2"), VerdictKind::Finite { k: 5.0 });
    }

    #[test]
    fn oscillation_is_bounded() {
        match num("2 - sin(n)", "1") {
            VerdictKind::Bounded { lo, hi } => {
                assert!((lo - 1.0).abs() <= 0.15, "lo = {lo}");
                assert!((hi - 3.0).abs() <= 0.45, "hi = {hi}");
            }
            other => panic!("expected Bounded, got {other:?}"),
        }
    }

    #[test]
    fn numeric_matches_symbolic_on_n_log_n_over_n_squared() {
        assert_eq!(num("n*log2(n)", "n^2"), sym("n*log2(n)", "n^2"));
    }

    #[test]
    fn numeric_converges_on_shifted_identity() {
        match num("n + 1", "n") {
            VerdictKind::Finite { k } => assert!((k - 1.0).abs() <= 1e-3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn numeric_exponential_gap_is_infinite() {
        assert_eq!(num("exp_b(3, n)", "exp_b(2, n) * n^5"), VerdictKind::Infinite);
        assert_eq!(num("n^2", "exp_b(1.5, n)"), VerdictKind::Zero);
    }

    #[test]
    fn slow_log_ratio_is_bounded_not_infinite() {
        // n log n / n grows too slowly to clear the upper cutoff
        assert!(matches!(num("n*log2(n)", "n"), VerdictKind::Bounded { .. }));
    }

    #[test]
    fn zero_numerator_is_zero() {
        assert_eq!(num("0", "n"), VerdictKind::Zero);
        assert_eq!(num("n - n", "n"), VerdictKind::Zero);
    }

    #[test]
    fn late_zero_denominator_is_an_error() {
        let f = parse("n").unwrap();
        let g = parse("n - 64").unwrap();
        let err = limit_ratio_numeric(&f, &g, &SamplingSchedule::default()).unwrap_err();
        assert_eq!(err, RelationError::ZeroDenominator { n: 64 });
    }

    #[test]
    fn early_zeros_move_n_min() {
        let f = parse("n - 16").unwrap();
        let g = parse("n").unwrap();
        let (v, n_min) = limit_ratio_numeric_with(
            &f,
            &g,
            &SamplingSchedule::default(),
            &Thresholds::default(),
        )
        .unwrap();
        assert_eq!(n_min, 32);
        assert!(matches!(v.kind, VerdictKind::Finite { .. }));
    }

    #[test]
    fn evaluation_errors_propagate() {
        let f = parse("log2(n - 100)").unwrap();
        let g = parse("n").unwrap();
        assert!(matches!(
            limit_ratio_numeric(&f, &g, &SamplingSchedule::default()),
            Err(RelationError::Eval(_))
        ));
    }

    #[test]
    fn insufficient_finite_samples() {
        // exp of exp overflows the log domain from n = 1024 on, both sides
        let f = parse("exp_b(2, exp_b(2, n))").unwrap();
        let err = limit_ratio_numeric(&f, &f, &SamplingSchedule::default()).unwrap_err();
        assert!(matches!(err, RelationError::InsufficientSamples { .. }), "{err:?}");
    }

    #[test]
    fn judge_tail_rules() {
        let t = Thresholds::default();
        let flat = [0.5f64.ln(); 8];
        assert!(matches!(judge_tail(&flat, &t), VerdictKind::Finite { k } if (k - 0.5).abs() < 1e-12));
        let rising: Vec<f64> = (0..8).map(|i| 20.0 + i as f64).collect();
        assert_eq!(judge_tail(&rising, &t), VerdictKind::Infinite);
        let falling: Vec<f64> = rising.iter().map(|x| -x).collect();
        assert_eq!(judge_tail(&falling, &t), VerdictKind::Zero);
        // rises past the cutoff but not monotonically
        let mut wobble = rising.clone();
        wobble.swap(2, 3);
        assert_eq!(judge_tail(&wobble, &t), VerdictKind::Indeterminate);
        assert_eq!(judge_tail(&[f64::INFINITY; 4], &t), VerdictKind::Infinite);
    }
}
