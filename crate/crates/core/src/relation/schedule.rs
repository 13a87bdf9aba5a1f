use serde::{Deserialize, Serialize};

use super::RelationError;

/// Geometric grid `n_i = round(n0 * ratio^i)`, `i = 0..steps`, that stands in
/// for `n -> inf`. The last `window` usable points form the tail on which
/// convergence is judged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingSchedule {
    n0: u64,
    ratio: f64,
    steps: usize,
    window: usize,
}

impl Default for SamplingSchedule {
    /// `16 * 2^i` for 36 steps, tail of 8: the last sample is `2^39`.
    fn default() -> Self {
        SamplingSchedule {
            n0: 16,
            ratio: 2.0,
            steps: 36,
            window: 8,
        }
    }
}

impl SamplingSchedule {
    pub fn new(n0: u64, ratio: f64, steps: usize, window: usize) -> Result<Self, RelationError> {
        let bad = |why: String| Err(RelationError::Schedule(why));
        if n0 < 2 {
            return bad(format!("n0 must be at least 2, got {n0}"));
        }
        if !ratio.is_finite() || ratio <= 1.0 {
            return bad(format!("growth ratio must be a finite value above 1, got {ratio}"));
        }
        if steps < 8 {
            return bad(format!("need at least 8 steps, got {steps}"));
        }
        if window < 4 || window > steps {
            return bad(format!("tail window must be in 4..={steps}, got {window}"));
        }
        let s = SamplingSchedule {
            n0,
            ratio,
            steps,
            window,
        };
        let pts = s.raw_points();
        if pts.iter().any(|p| !p.is_finite() || *p >= u64::MAX as f64) {
            return bad("schedule overflows the integer range".to_string());
        }
        if pts.windows(2).any(|w| w[1].round() <= w[0].round()) {
            return bad(format!(
                "ratio {ratio} is too small for n0 = {n0}: sample points repeat"
            ));
        }
        Ok(s)
    }

    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn window(&self) -> usize {
        self.window
    }

    fn raw_points(&self) -> Vec<f64> {
        (0..self.steps)
            .map(|i| self.n0 as f64 * self.ratio.powi(i as i32))
            .collect()
    }

    /// Sample sizes, strictly increasing.
    pub fn points(&self) -> Vec<u64> {
        self.raw_points().into_iter().map(|p| p.round() as u64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_reaches_two_to_the_39() {
        let pts = SamplingSchedule::default().points();
        assert_eq!(pts.len(), 36);
        assert_eq!(pts[0], 16);
        assert_eq!(*pts.last().unwrap(), 1 << 39);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SamplingSchedule::new(1, 2.0, 10, 4).is_err());
        assert!(SamplingSchedule::new(16, 1.0, 10, 4).is_err());
        assert!(SamplingSchedule::new(16, 2.0, 7, 4).is_err());
        assert!(SamplingSchedule::new(16, 2.0, 10, 3).is_err());
        assert!(SamplingSchedule::new(16, 2.0, 10, 11).is_err());
        // round(2 * 1.01^i) repeats
        assert!(SamplingSchedule::new(2, 1.01, 10, 4).is_err());
        assert!(SamplingSchedule::new(16, 2.0, 80, 8).is_err());
    }

    #[test]
    fn non_integer_ratio_rounds_to_increasing_points() {
        let s = SamplingSchedule::new(1024, 2f64.powf(4.0 / 7.0), 8, 4).unwrap();
        let pts = s.points();
        assert_eq!(pts[0], 1024);
        assert_eq!(pts[7], 16384);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }
}
