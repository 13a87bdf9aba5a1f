//! Average versus worst case of first-element-pivot quicksort, measured and
//! classified.
//!
//!     cargo run --release --example quicksort_profile

use almost::profiler::{default_candidates, fit_class, measure, Algorithm};

fn main() {
    for alg in [Algorithm::QuicksortRandom, Algorithm::QuicksortAdversarial] {
        let series = measure(alg, &alg.default_sizes(), 5).unwrap();
        println!("{alg}");
        for s in series.samples() {
            println!("  n = {:>7}  t = {:>12.0} ns  iqr/median = {:.3}", s.n, s.t_ns, s.spread);
        }
        let fit = fit_class(&series, &default_candidates()).unwrap();
        println!(
            "  -> {}  K = {:.4}  tail spread = {:.3} ({})\n",
            fit.model,
            fit.k,
            fit.tail_spread,
            fit.quality.name()
        );
    }
}
