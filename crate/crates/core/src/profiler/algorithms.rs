use std::fmt;
use std::hint::black_box;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::relation::SamplingSchedule;

/// Built-in reference workloads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// First-element-pivot quicksort on uniform random input.
    QuicksortRandom,
    /// First-element-pivot quicksort on ascending input: the quadratic case.
    QuicksortAdversarial,
    Mergesort,
    LinearSum,
    ConstantOp,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown algorithm '{0}' (expected one of quicksort_random, quicksort_adversarial, mergesort, linear_sum, constant_op)")]
pub struct UnknownAlgorithm(pub String);

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::QuicksortRandom,
        Algorithm::QuicksortAdversarial,
        Algorithm::Mergesort,
        Algorithm::LinearSum,
        Algorithm::ConstantOp,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::QuicksortRandom => "quicksort_random",
            Algorithm::QuicksortAdversarial => "quicksort_adversarial",
            Algorithm::Mergesort => "mergesort",
            Algorithm::LinearSum => "linear_sum",
            Algorithm::ConstantOp => "constant_op",
        }
    }

    /// Largest admissible input size. The adversarial quicksort is held to
    /// `n^2 <= 1e9` comparisons.
    pub fn max_size(self) -> u64 {
        match self {
            Algorithm::QuicksortAdversarial => 31_622,
            _ => 1 << 26,
        }
    }

    /// `2^10..=2^17` in 8 doublings; the adversarial case spans `2^10..=2^14`
    /// in 8 steps to stay under its cap.
    pub fn default_sizes(self) -> SamplingSchedule {
        match self {
            Algorithm::QuicksortAdversarial => {
                SamplingSchedule::new(1024, 2f64.powf(4.0 / 7.0), 8, 4)
            }
            _ => SamplingSchedule::new(1024, 2.0, 8, 4),
        }
        .expect("valid built-in schedule")
    }

    pub(crate) fn generate_input(self, n: usize, seed: u64) -> Vec<u64> {
        match self {
            Algorithm::QuicksortAdversarial => (0..n as u64).collect(),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..n).map(|_| rng.gen()).collect()
            }
        }
    }

    /// Run once on `input`, returning a checksum that keeps the work alive.
    pub(crate) fn run(self, input: &mut [u64]) -> u64 {
        match self {
            Algorithm::QuicksortRandom | Algorithm::QuicksortAdversarial => {
                quicksort_first_pivot(input);
                input[input.len() / 2]
            }
            Algorithm::Mergesort => {
                mergesort(input);
                input[input.len() / 2]
            }
            Algorithm::LinearSum => chained_sum(input),
            Algorithm::ConstantOp => constant_op(input),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

/// Lomuto partition around `v[0]`; returns the pivot's final index.
fn partition_first(v: &mut [u64]) -> usize {
    let pivot = v[0];
    let mut store = 0;
    for i in 1..v.len() {
        if v[i] < pivot {
            store += 1;
            v.swap(store, i);
        }
    }
    v.swap(0, store);
    store
}

/// Quicksort with the first element as pivot. Recurses into the smaller
/// side only, so sorted input costs `n^2/2` comparisons but `O(log n)` stack.
pub fn quicksort_first_pivot(mut v: &mut [u64]) {
    while v.len() > 1 {
        let p = partition_first(v);
        let (left, right) = std::mem::take(&mut v).split_at_mut(p);
        let right = &mut right[1..];
        if left.len() < right.len() {
            quicksort_first_pivot(left);
            v = right;
        } else {
            quicksort_first_pivot(right);
            v = left;
        }
    }
}

/// Top-down merge sort with one scratch buffer.
pub fn mergesort(v: &mut [u64]) {
    let mut scratch = v.to_vec();
    merge_rec(v, &mut scratch);
}

fn merge_rec(v: &mut [u64], scratch: &mut [u64]) {
    let n = v.len();
    if n <= 1 {
        return;
    }
    let mid = n / 2;
    merge_rec(&mut v[..mid], &mut scratch[..mid]);
    merge_rec(&mut v[mid..], &mut scratch[mid..]);
    if v[mid - 1] <= v[mid] {
        return;
    }
    scratch[..n].copy_from_slice(v);
    let (a, b) = scratch[..n].split_at(mid);
    let (mut i, mut j) = (0, 0);
    for slot in v.iter_mut() {
        if j >= b.len() || (i < a.len() && a[i] <= b[j]) {
            *slot = a[i];
            i += 1;
        } else {
            *slot = b[j];
            j += 1;
        }
    }
}

pub fn linear_sum(v: &[u64]) -> u64 {
    v.iter().fold(0u64, |acc, x| acc.wrapping_add(*x))
}

/// One dependent multiply per element keeps the scan compute-bound, so its
/// time tracks `n` rather than the cache level the input lands in.
fn chained_sum(v: &[u64]) -> u64 {
    v.iter().fold(0u64, |acc, &x| {
        (acc ^ x).wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(29)
    })
}

/// Fixed amount of work regardless of `v.len()`.
fn constant_op(v: &[u64]) -> u64 {
    // the last element was written most recently, so this read stays in cache
    let mut x = black_box(v[v.len() - 1]);
    for _ in 0..4096 {
        x = x.rotate_left(7).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (x >> 3);
    }
    x
}
