use crate::expr::{GrowthExpr, Sign};
use crate::relation::Thresholds;

use super::MeasurementSeries;

pub const MIN_SAMPLES: usize = 8;
/// A fit whose best tail spread exceeds this is rejected.
pub const MAX_TAIL_SPREAD: f64 = 10.0;
/// Exponential candidates only make sense on tiny inputs.
const EXPONENTIAL_MAX_N: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quality {
    /// Best tail spread is at most half the runner-up's.
    Clear,
    Marginal,
}

impl Quality {
    pub fn name(self) -> &'static str {
        match self {
            Quality::Clear => "clear",
            Quality::Marginal => "marginal",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateDiagnostic {
    pub model: GrowthExpr,
    /// Geometric mean of the tail ratios `t/g`.
    pub k: Option<f64>,
    pub tail_spread: Option<f64>,
    /// Why the candidate took no part in the selection.
    pub excluded: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub model: GrowthExpr,
    pub k: f64,
    pub tail_spread: f64,
    pub quality: Quality,
    pub candidates: Vec<CandidateDiagnostic>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FitError {
    #[error("need at least {MIN_SAMPLES} samples, got {0}")]
    InsufficientSamples(usize),
    #[error("no candidate fits: best tail spread {best:?} (limit {MAX_TAIL_SPREAD})")]
    NoFit {
        best: Option<f64>,
        candidates: Vec<CandidateDiagnostic>,
    },
}

/// `1, log2(n), n, n*log2(n), n^2, n^3, 2^n`.
pub fn default_candidates() -> Vec<GrowthExpr> {
    let n = GrowthExpr::n;
    vec![
        GrowthExpr::constant(1.0),
        GrowthExpr::log2(n()),
        n(),
        n() * GrowthExpr::log2(n()),
        n().pow(2.0),
        n().pow(3.0),
        GrowthExpr::exp_b(2.0, n()),
    ]
}

/// Tail length used for `count` samples: `max(4, ceil(count / 3))`.
pub fn tail_window(count: usize) -> usize {
    count.div_ceil(3).max(4)
}

fn contains_exp(e: &GrowthExpr) -> bool {
    match e {
        GrowthExpr::Exp { .. } => true,
        GrowthExpr::Const(_) | GrowthExpr::Var => false,
        GrowthExpr::Add(a, b) | GrowthExpr::Sub(a, b) | GrowthExpr::Mul(a, b) | GrowthExpr::Div(a, b) => {
            contains_exp(a) || contains_exp(b)
        }
        GrowthExpr::Pow(a, _) | GrowthExpr::Sin(a) => contains_exp(a),
        GrowthExpr::Log { arg, .. } => contains_exp(arg),
    }
}

fn diagnose(model: &GrowthExpr, series: &MeasurementSeries, w: usize) -> CandidateDiagnostic {
    let excluded = |why: String| CandidateDiagnostic {
        model: model.clone(),
        k: None,
        tail_spread: None,
        excluded: Some(why),
    };
    let max_n = series.samples().last().map_or(0, |s| s.n);
    if contains_exp(model) && max_n > EXPONENTIAL_MAX_N {
        return excluded(format!("exponential model dropped for n > {EXPONENTIAL_MAX_N}"));
    }
    let tail = &series.samples()[series.len() - w..];
    let mut ln_ratios = Vec::with_capacity(w);
    for s in tail {
        match model.magnitude(s.n) {
            Ok(m) if m.sign == Sign::Positive && m.ln_abs.is_finite() => {
                ln_ratios.push(s.t_ns.ln() - m.ln_abs)
            }
            Ok(_) => return excluded(format!("model is not positive and finite at n = {}", s.n)),
            Err(e) => return excluded(e.to_string()),
        }
    }
    let max = ln_ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = ln_ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let monotone = ln_ratios.windows(2).all(|p| p[1] >= p[0])
        || ln_ratios.windows(2).all(|p| p[1] <= p[0]);
    if monotone && max - min > Thresholds::default().upper_cutoff.ln() {
        return excluded("tail ratios diverge monotonically".to_string());
    }
    CandidateDiagnostic {
        model: model.clone(),
        k: Some((ln_ratios.iter().sum::<f64>() / w as f64).exp()),
        tail_spread: Some((max - min).exp_m1()),
        excluded: None,
    }
}

/// Pick the candidate `g` whose ratios `t(n)/g(n)` are flattest over the
/// last [`tail_window`] samples.
pub fn fit_class(
    series: &MeasurementSeries,
    candidates: &[GrowthExpr],
) -> Result<FitResult, FitError> {
    if series.len() < MIN_SAMPLES {
        return Err(FitError::InsufficientSamples(series.len()));
    }
    let w = tail_window(series.len());
    let diagnostics: Vec<CandidateDiagnostic> =
        candidates.iter().map(|g| diagnose(g, series, w)).collect();

    let mut ranked: Vec<(usize, f64)> = diagnostics
        .iter()
        .enumerate()
        .filter_map(|(i, d)| d.tail_spread.map(|s| (i, s)))
        .collect();
    // stable: ties keep candidate order
    ranked.sort_by(|a, b| a.1.total_cmp(&b.1));

    let best = ranked.first().copied();
    match best {
        Some((i, spread)) if spread <= MAX_TAIL_SPREAD => {
            let quality = match ranked.get(1) {
                Some(&(_, runner_up)) if spread > 0.5 * runner_up => Quality::Marginal,
                _ => Quality::Clear,
            };
            Ok(FitResult {
                model: diagnostics[i].model.clone(),
                k: diagnostics[i].k.expect("ranked candidates have K"),
                tail_spread: spread,
                quality,
                candidates: diagnostics,
            })
        }
        _ => Err(FitError::NoFit {
            best: best.map(|b| b.1),
            candidates: diagnostics,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::profiler::Source;

    fn exact(g: &GrowthExpr, c: f64, sizes: impl IntoIterator<Item = u64>) -> MeasurementSeries {
        MeasurementSeries::from_pairs(
            sizes.into_iter().map(|n| (n, c * g.evaluate(n).unwrap())),
            Source::Synthetic(g.to_string()),
        )
        .unwrap()
    }

    fn doublings() -> impl Iterator<Item = u64> {
        (10..18).map(|k| 1u64 << k)
    }

    #[test]
    fn window_sizes() {
        assert_eq!(tail_window(8), 4);
        assert_eq!(tail_window(12), 4);
        assert_eq!(tail_window(13), 5);
        assert_eq!(tail_window(30), 10);
    }

    #[test]
    fn recovers_n_log_n_with_constant_five() {
        let g = parse("n * log2(n)").unwrap();
        let fit = fit_class(&exact(&g, 5.0, doublings()), &default_candidates()).unwrap();
        assert_eq!(fit.model, g);
        assert!((fit.k / 5.0 - 1.0).abs() <= 0.02);
        assert_eq!(fit.quality, Quality::Clear);
    }

    #[test]
    fn constant_series() {
        let series = MeasurementSeries::from_pairs(
            doublings().map(|n| (n, 42.0)),
            Source::Synthetic("flat".into()),
        )
        .unwrap();
        let fit = fit_class(&series, &default_candidates()).unwrap();
        assert_eq!(fit.model, GrowthExpr::constant(1.0));
        assert!((fit.k - 42.0).abs() < 1e-12);
        assert_eq!(fit.tail_spread, 0.0);
    }

    #[test]
    fn exponential_candidate_is_dropped_on_large_sizes() {
        let fit = fit_class(&exact(&GrowthExpr::n(), 1.0, doublings()), &default_candidates()).unwrap();
        let exp = fit.candidates.last().unwrap();
        assert!(exp.excluded.is_some());
        assert_eq!(exp.tail_spread, None);
    }

    #[test]
    fn exponential_is_recoverable_on_small_sizes() {
        let g = GrowthExpr::exp_b(2.0, GrowthExpr::n());
        let fit = fit_class(&exact(&g, 3.0, (1..=8).map(|k| 8 * k)), &default_candidates()).unwrap();
        assert_eq!(fit.model, g);
        assert!((fit.k / 3.0 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn insufficient_samples() {
        let s = exact(&GrowthExpr::n(), 1.0, [1, 2, 3]);
        assert_eq!(
            fit_class(&s, &default_candidates()),
            Err(FitError::InsufficientSamples(3))
        );
    }

    #[test]
    fn wildly_noisy_series_has_no_fit() {
        let t = [1.0, 1e6, 2.0, 3e6, 1.0, 5e6, 2.0, 1e7];
        let s = MeasurementSeries::from_pairs(
            doublings().zip(t),
            Source::Synthetic("noise".into()),
        )
        .unwrap();
        assert!(matches!(
            fit_class(&s, &default_candidates()),
            Err(FitError::NoFit { .. })
        ));
    }

    #[test]
    fn monotonically_diverging_candidates_are_excluded() {
        // n^3 against a constant series falls by 2^36 over the tail
        let series = MeasurementSeries::from_pairs(
            (0..8).map(|k| (1u64 << (4 * k + 1), 1.0)),
            Source::Synthetic("flat".into()),
        )
        .unwrap();
        let fit = fit_class(&series, &[parse("n^3").unwrap(), GrowthExpr::constant(1.0)]).unwrap();
        assert!(fit.candidates[0].excluded.is_some());
        assert_eq!(fit.model, GrowthExpr::constant(1.0));
    }

    #[test]
    fn close_runner_up_is_marginal() {
        // t = n log2 n sampled where log2 n barely moves: n and n log n tie
        let g = parse("n * log2(n)").unwrap();
        let s = exact(&g, 1.0, (0..8).map(|k| 1_000_000 + 1000 * k));
        let fit = fit_class(&s, &[parse("n").unwrap(), g.clone()]).unwrap();
        assert_eq!(fit.model, g);
        assert_eq!(fit.quality, Quality::Clear);
        let s = exact(&parse("n").unwrap(), 1.0, (0..8).map(|k| 1_000_000 + 1000 * k));
        let noisy = MeasurementSeries::from_pairs(
            s.samples()
                .iter()
                .enumerate()
                .map(|(i, x)| (x.n, x.t_ns * if i % 2 == 0 { 1.01 } else { 0.99 })),
            Source::Synthetic("noisy".into()),
        )
        .unwrap();
        let fit = fit_class(&noisy, &[parse("n").unwrap(), g]).unwrap();
        assert_eq!(fit.quality, Quality::Marginal);
    }
}
