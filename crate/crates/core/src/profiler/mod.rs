//! Empirical growth classification.
//!
//! [`measure`] times one of the built-in reference algorithms over a schedule
//! of input sizes, [`ingest`] reads timings from CSV, and [`fit_class`] picks
//! the candidate growth function `g` whose ratio `t(n)/g(n)` is flattest over
//! the largest sizes. The flat ratio's level is the constant `K` of
//! `t ∈ a(K, g)`.

mod algorithms;
mod fit;
mod ingest;
mod measure;

use std::path::PathBuf;

pub use algorithms::{linear_sum, mergesort, quicksort_first_pivot, Algorithm, UnknownAlgorithm};
pub use fit::{
    default_candidates, fit_class, tail_window, CandidateDiagnostic, FitError, FitResult, Quality,
};
pub use ingest::{ingest, ingest_reader, ColumnRef, CsvFormat, IngestError, TimeUnit};
pub use measure::{measure, measure_seeded, median_and_spread, MeasureError};

/// One measured input size.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub n: u64,
    /// Median runtime in nanoseconds.
    pub t_ns: f64,
    /// Timed repetitions behind the median; `None` for external data.
    pub reps: Option<u32>,
    /// Interquartile range relative to the median.
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Builtin(Algorithm),
    File(PathBuf),
    /// Series built in code (tests, examples).
    Synthetic(String),
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Source::Builtin(a) => write!(f, "builtin:{}", a.id()),
            Source::File(p) => write!(f, "file:{}", p.display()),
            Source::Synthetic(label) => write!(f, "synthetic:{label}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeriesError {
    #[error("sizes must be strictly increasing (n = {n} follows {prev})")]
    NotIncreasing { prev: u64, n: u64 },
    #[error("runtime at n = {n} must be positive and finite, got {t}")]
    NonPositiveTime { n: u64, t: f64 },
    #[error("at least 3 repetitions required at n = {n}")]
    TooFewReps { n: u64 },
    #[error("negative spread at n = {n}")]
    NegativeSpread { n: u64 },
}

/// Runtime samples ordered by strictly increasing `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSeries {
    samples: Vec<Sample>,
    source: Source,
}

impl MeasurementSeries {
    pub fn new(samples: Vec<Sample>, source: Source) -> Result<Self, SeriesError> {
        for (i, s) in samples.iter().enumerate() {
            if i > 0 && s.n <= samples[i - 1].n {
                return Err(SeriesError::NotIncreasing {
                    prev: samples[i - 1].n,
                    n: s.n,
                });
            }
            if !s.t_ns.is_finite() || s.t_ns <= 0.0 {
                return Err(SeriesError::NonPositiveTime { n: s.n, t: s.t_ns });
            }
            if matches!(s.reps, Some(r) if r < 3) {
                return Err(SeriesError::TooFewReps { n: s.n });
            }
            if s.spread.is_nan() || s.spread < 0.0 {
                return Err(SeriesError::NegativeSpread { n: s.n });
            }
        }
        Ok(MeasurementSeries { samples, source })
    }

    /// Series of exact `(n, t_ns)` pairs with no repetition data.
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (u64, f64)>,
        source: Source,
    ) -> Result<Self, SeriesError> {
        let samples = pairs
            .into_iter()
            .map(|(n, t_ns)| Sample {
                n,
                t_ns,
                reps: None,
                spread: 0.0,
            })
            .collect();
        Self::new(samples, source)
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Same sizes with every runtime multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self, SeriesError> {
        let samples = self
            .samples
            .iter()
            .map(|s| Sample {
                t_ns: s.t_ns * factor,
                ..s.clone()
            })
            .collect();
        Self::new(samples, self.source.clone())
    }

    /// Drop the first `count` samples.
    pub fn skip(&self, count: usize) -> Self {
        MeasurementSeries {
            samples: self.samples.iter().skip(count).cloned().collect(),
            source: self.source.clone(),
        }
    }
}
