//! Ratios that have no closed normal form are sampled on a geometric grid and
//! judged from the tail. A ratio that vanishes as slowly as `1/log n` has
//! not crossed the zero cutoff by `n = 2^39`, so it is reported as bounded,
//! which still implies O but not o.

use almost::relation::{classify_with, ClassifyOptions, Mode, SamplingSchedule};
use almost::parse;

fn main() {
    let opts = ClassifyOptions {
        mode: Mode::Numeric,
        schedule: SamplingSchedule::new(16, 2.0, 36, 8).unwrap(),
        ..ClassifyOptions::default()
    };
    for (f, g) in [
        ("n^2 + sin(n)", "n^2"),
        ("n*(2 + sin(n))", "1"),
        ("log2(n) * (3 + sin(n))", "log2(n)"),
        ("n^2", "n^2 * log2(n)"),
        ("1 / n", "1"),
    ] {
        let r = classify_with(&parse(f).unwrap(), &parse(g).unwrap(), &opts).unwrap();
        println!(
            "{f:<24} vs {g:<14} {:<14} from n = {:<3} almost = {:?}",
            r.verdict.kind.name(),
            r.n_min,
            r.almost
        );
    }
}
