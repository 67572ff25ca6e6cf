//! Seeded input tuples for the numeric experiments.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Rational;

/// Sorted tuple with entries in `[lo, hi]` and every `ln a_{i+1} - ln a_i >= min_gap`,
/// drawn by rejection.
pub fn sample_tuple<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64, min_gap: f64) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
        v.sort_by(f64::total_cmp);
        if v.windows(2).all(|w| (w[1] / w[0]).ln() >= min_gap) {
            return v;
        }
    }
}

/// `n` pairwise distinct rationals with numerators in `-50..=50` and denominators in `1..=9`.
pub fn sample_rationals<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    while out.len() < n {
        let q = Rational::from((rng.gen_range(-50..=50), rng.gen_range(1..=9)));
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out
}

/// Independent reproducible stream per (seed, row label, n).
#[derive(Clone, Debug)]
pub struct TupleSampler {
    rng: ChaCha8Rng,
    pub lo: f64,
    pub hi: f64,
    pub min_gap: f64,
}

impl TupleSampler {
    pub fn new(seed: u64, label: &str, n: usize, lo: f64, hi: f64, min_gap: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id(label, n));
        TupleSampler {
            rng,
            lo,
            hi,
            min_gap,
        }
    }

    pub fn tuple(&mut self, n: usize) -> Vec<f64> {
        sample_tuple(&mut self.rng, n, self.lo, self.hi, self.min_gap)
    }

    pub fn tuples(&mut self, n: usize, count: usize) -> Vec<Vec<f64>> {
        (0..count).map(|_| self.tuple(n)).collect()
    }

    pub fn shuffled(&mut self, values: &[f64]) -> Vec<f64> {
        let mut out = values.to_vec();
        out.shuffle(&mut self.rng);
        out
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn rationals(&mut self, n: usize) -> Vec<Rational> {
        sample_rationals(&mut self.rng, n)
    }
}

/// FNV-1a over the label bytes and `n`.
fn stream_id(label: &str, n: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes().chain((n as u64).to_le_bytes()) {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}
