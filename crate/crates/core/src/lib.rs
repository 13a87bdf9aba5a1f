//! Asymptotic relations between growth functions.
//!
//! Given two univariate growth functions `f(n)` and `g(n)`, this crate decides
//! which of little-o, Big-O, Big-Theta, `~` and the "almost" relation
//! `a(K, g)` (the ratio `f/g` tends to a finite positive `K`) hold. Pairs in
//! the poly-log-exp family are decided exactly from their normal forms;
//! everything else goes through a sampled estimate of `lim |f/g|` that can
//! tell convergence from divergence and bounded oscillation.
//!
//! The [`profiler`] module points the same machinery at measured runtimes:
//! it times a few reference algorithms, or reads timings from CSV, and picks
//! the candidate growth class the measurements are "almost".
//!
//! ```
//! use almost::expr::parse;
//! use almost::relation::{classify, Mode, SamplingSchedule};
//!
//! let f = parse("3*n^3 + 2*n^2 + n").unwrap();
//! let g = parse("n^3").unwrap();
//! let report = classify(&f, &g, Mode::Auto, &SamplingSchedule::default()).unwrap();
//! assert!(report.theta && !report.tilde);
//! assert_eq!(report.almost, Some(3.0));
//! ```

pub mod cli;
pub mod expr;
pub mod ple;
pub mod profiler;
pub mod relation;

pub use expr::{parse, GrowthExpr};
pub use ple::PleNormalForm;
pub use relation::{check_almost, classify, LimitVerdict, RelationReport};
