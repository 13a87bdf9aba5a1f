//! Machine-readable reports.
//!
//! The JSON layout is published as `schema/report.schema.json`. A report
//! parses back into the same value, and re-serializing it reproduces the
//! original bytes.

use serde::{Deserialize, Serialize};

use crate::profiler::{FitResult, MeasurementSeries};
use crate::relation::{Confidence, Method, RelationReport, VerdictKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Relate(RelateReport),
    Fit(FitReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Report::Relate(r) => r.exit_code,
            Report::Fit(r) => r.exit_code,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelateReport {
    pub command: String,
    pub f: String,
    pub g: String,
    pub relations: Relations,
    pub verdict: VerdictSection,
    pub n_min: u64,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Relations {
    pub little_o: bool,
    pub big_o: bool,
    pub theta: bool,
    pub tilde: bool,
    #[serde(rename = "almost_K")]
    pub almost_k: Option<f64>,
    pub reverse_little_o: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictSection {
    pub kind: String,
    #[serde(rename = "K")]
    pub k: Option<f64>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub method: Method,
    pub confidence: Confidence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitReport {
    pub command: String,
    pub source: String,
    pub samples: Vec<SampleRow>,
    pub fit: FitSection,
    pub candidates: Vec<CandidateRow>,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleRow {
    pub n: u64,
    pub t_ns: f64,
    pub reps: Option<u32>,
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitSection {
    pub model: String,
    #[serde(rename = "K")]
    pub k: f64,
    pub tail_spread: f64,
    pub quality: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateRow {
    pub model: String,
    #[serde(rename = "K")]
    pub k: Option<f64>,
    pub tail_spread: Option<f64>,
    pub excluded: Option<String>,
}

impl RelateReport {
    pub fn new(command: String, f: String, g: String, r: &RelationReport, exit_code: i32) -> Self {
        let (k, lo, hi) = match r.verdict.kind {
            VerdictKind::Finite { k } => (Some(k), None, None),
            VerdictKind::Bounded { lo, hi } => (None, Some(lo), Some(hi)),
            _ => (None, None, None),
        };
        RelateReport {
            command,
            f,
            g,
            relations: Relations {
                little_o: r.little_o,
                big_o: r.big_o,
                theta: r.theta,
                tilde: r.tilde,
                almost_k: r.almost,
                reverse_little_o: r.reverse_little_o,
            },
            verdict: VerdictSection {
                kind: r.verdict.kind.name().to_string(),
                k,
                lo,
                hi,
                method: r.verdict.method,
                confidence: r.verdict.confidence,
            },
            n_min: r.n_min,
            exit_code,
        }
    }
}

impl FitReport {
    pub fn new(command: String, series: &MeasurementSeries, fit: &FitResult, exit_code: i32) -> Self {
        FitReport {
            command,
            source: series.source().to_string(),
            samples: series
                .samples()
                .iter()
                .map(|s| SampleRow {
                    n: s.n,
                    t_ns: s.t_ns,
                    reps: s.reps,
                    spread: s.spread,
                })
                .collect(),
            fit: FitSection {
                model: fit.model.to_string(),
                k: fit.k,
                tail_spread: fit.tail_spread,
                quality: fit.quality.name().to_string(),
            },
            candidates: fit
                .candidates
                .iter()
                .map(|c| CandidateRow {
                    model: c.model.to_string(),
                    k: c.k,
                    tail_spread: c.tail_spread,
                    excluded: c.excluded.clone(),
                })
                .collect(),
            exit_code,
        }
    }
}
