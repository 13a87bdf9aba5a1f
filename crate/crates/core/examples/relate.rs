//! Relation flags for a few classic pairs.
//!
//!     cargo run --example relate
//!     cargo run --example relate -- "n^2 + 7*n" "n^2"

use almost::relation::{classify, Mode, SamplingSchedule};
use almost::parse;

const PAIRS: &[(&str, &str)] = &[
    ("n*log2(n)", "n^2"),
    ("n^3 + 1000*n^2 + n + 300", "n^5"),
    ("n^3 + 1000*n^2 + n + 300", "n^3"),
    ("3*n^3 + 2*n^2 + n", "3*n^3"),
    ("3*n^3 + 2*n^2 + n", "n^3"),
    ("n^3", "n^2"),
    ("exp_b(2, n)", "n^100"),
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pairs: Vec<(String, String)> = match args.as_slice() {
        [f, g] => vec![(f.clone(), g.clone())],
        _ => PAIRS.iter().map(|(f, g)| (f.to_string(), g.to_string())).collect(),
    };
    println!("{:<28} {:<8} {:>5} {:>5} {:>5} {:>5}  almost", "f", "g", "o", "O", "Θ", "~");
    for (f, g) in pairs {
        let r = classify(&parse(&f)?, &parse(&g)?, Mode::Auto, &SamplingSchedule::default())?;
        println!(
            "{:<28} {:<8} {:>5} {:>5} {:>5} {:>5}  {}",
            f,
            g,
            r.little_o,
            r.big_o,
            r.theta,
            r.tilde,
            r.almost.map_or("-".to_string(), |k| format!("K = {k}"))
        );
    }
    Ok(())
}
