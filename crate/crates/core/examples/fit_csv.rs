//! Classify timings from a CSV file.
//!
//!     cargo run --example fit_csv -- crates/core/examples/data/timings.csv size ms

use std::path::PathBuf;

use almost::profiler::{default_candidates, fit_class, ingest, CsvFormat};

fn main() {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/timings.csv"));
    let n_col = args.next().unwrap_or_else(|| "size".into());
    let t_col = args.next().unwrap_or_else(|| "ms".into());

    let format = CsvFormat {
        n_col: n_col.parse().unwrap(),
        t_col: t_col.parse().unwrap(),
        unit: "ms".parse().unwrap(),
    };
    let series = match ingest(&path, &format) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            std::process::exit(1);
        }
    };
    let fit = fit_class(&series, &default_candidates()).unwrap();
    println!("{} samples from {}", series.len(), series.source());
    for d in &fit.candidates {
        match (&d.excluded, d.tail_spread) {
            (Some(why), _) => println!("  {:<12} excluded ({why})", d.model.to_string()),
            (None, Some(s)) => println!("  {:<12} tail spread {s:.4}", d.model.to_string()),
            _ => {}
        }
    }
    println!("best: {} with K = {:.3} ns ({})", fit.model, fit.k, fit.quality.name());
}
