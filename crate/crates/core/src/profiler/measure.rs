use std::hint::black_box;
use std::time::Instant;

use super::{Algorithm, MeasurementSeries, Sample, SeriesError, Source};
use crate::relation::SamplingSchedule;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MeasureError {
    #[error("{algorithm} is capped at n = {cap}, schedule reaches {n}")]
    CapExceeded {
        algorithm: Algorithm,
        n: u64,
        cap: u64,
    },
    #[error("at least 3 repetitions required, got {0}")]
    TooFewReps(u32),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// splitmix64 finalizer, used to derive per-run seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn run_seed(base: u64, algorithm: Algorithm, n: u64, rep: u32) -> u64 {
    let alg = Algorithm::ALL.iter().position(|a| *a == algorithm).unwrap() as u64;
    mix(mix(mix(base ^ alg) ^ n) ^ rep as u64)
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Median and interquartile range relative to the median.
pub fn median_and_spread(times: &[f64]) -> (f64, f64) {
    let mut sorted = times.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = quantile(&sorted, 0.5);
    let iqr = quantile(&sorted, 0.75) - quantile(&sorted, 0.25);
    (median, if median > 0.0 { iqr / median } else { 0.0 })
}

/// [`measure_seeded`] with base seed 0.
pub fn measure(
    algorithm: Algorithm,
    sizes: &SamplingSchedule,
    reps: u32,
) -> Result<MeasurementSeries, MeasureError> {
    measure_seeded(algorithm, sizes, reps, 0)
}

/// Time `algorithm` at every size of the schedule.
///
/// Each size gets one untimed warm-up run, then `reps` timed runs, each on a
/// freshly generated input seeded by `(base_seed, algorithm, n, rep)`. Input
/// generation is outside the timed region. Runs are strictly sequential and
/// sweep the sizes round-robin, one rep per size per sweep, so slow drifts in
/// machine load spread evenly over all sizes instead of bending the curve.
pub fn measure_seeded(
    algorithm: Algorithm,
    sizes: &SamplingSchedule,
    reps: u32,
    base_seed: u64,
) -> Result<MeasurementSeries, MeasureError> {
    if reps < 3 {
        return Err(MeasureError::TooFewReps(reps));
    }
    let points = sizes.points();
    let cap = algorithm.max_size();
    if let Some(&n) = points.iter().find(|&&n| n > cap) {
        return Err(MeasureError::CapExceeded { algorithm, n, cap });
    }
    for &n in &points {
        let mut warm = algorithm.generate_input(n as usize, run_seed(base_seed, algorithm, n, u32::MAX));
        black_box(algorithm.run(black_box(&mut warm)));
    }
    let mut times = vec![Vec::with_capacity(reps as usize); points.len()];
    for rep in 0..reps {
        for (&n, slot) in points.iter().zip(times.iter_mut()) {
            let mut input = algorithm.generate_input(n as usize, run_seed(base_seed, algorithm, n, rep));
            let start = Instant::now();
            black_box(algorithm.run(black_box(&mut input)));
            // floor at the timer's resolution
            slot.push((start.elapsed().as_nanos() as f64).max(1.0));
        }
    }
    let samples = points
        .iter()
        .zip(&times)
        .map(|(&n, ts)| {
            let (t_ns, spread) = median_and_spread(ts);
            Sample {
                n,
                t_ns,
                reps: Some(reps),
                spread,
            }
        })
        .collect();
    Ok(MeasurementSeries::new(samples, Source::Builtin(algorithm))?)
}
