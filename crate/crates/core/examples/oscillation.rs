//! `2 - sin(n)` against `1`: the ratio never converges, yet it stays in
//! `[1, 3]`, so the pair is Θ but not almost-equivalent for any K.

use almost::relation::{classify, Mode, SamplingSchedule, VerdictKind};
use almost::parse;

fn main() {
    let f = parse("2 - sin(n)").unwrap();
    let g = parse("1").unwrap();
    let schedule = SamplingSchedule::default();

    for n in schedule.points().iter().rev().take(schedule.window()).rev() {
        println!("n = {n:>14}  f/g = {:.4}", f.evaluate(*n).unwrap());
    }

    let r = classify(&f, &g, Mode::Auto, &schedule).unwrap();
    if let VerdictKind::Bounded { lo, hi } = r.verdict.kind {
        println!("bounded in [{lo:.4}, {hi:.4}], confidence {:?}", r.verdict.confidence);
    }
    println!("theta: {}  almost: {:?}", r.theta, r.almost);
}
