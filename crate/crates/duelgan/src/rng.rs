//! Counter-based seeded random generator.
//!
//! Draw `i` of a stream is a pure function of `(seed, stream name, i)`, so
//! identical seeds reproduce identical values on every platform and the full
//! generator state is two integers, which makes checkpointing trivial.
//! Independent concerns (data sampling, noise, pair indices, ...) use named
//! streams so that consuming draws in one stream never shifts another.

use serde::{Deserialize, Serialize};

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer: a bijective avalanche mix.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[inline]
fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h = (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64, stream: &str) -> Self {
        CounterRng {
            key: mix64(seed ^ mix64(fnv1a(stream.as_bytes()))),
            counter: 0,
        }
    }

    /// Derive a fresh stream from this one's key (e.g. per-iteration streams).
    pub fn substream(&self, label: &str, index: u64) -> Self {
        CounterRng {
            key: mix64(self.key ^ mix64(fnv1a(label.as_bytes())) ^ mix64(index)),
            counter: 0,
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let state = self.key.wrapping_add(GOLDEN.wrapping_mul(self.counter));
        self.counter += 1;
        mix64(state)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    #[inline]
    pub fn uniform01(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[0, n)`.
    #[inline]
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((u128::from(self.next_u64()) * n as u128) >> 64) as usize
    }

    /// One Box-Muller pair of independent standard normals.
    #[inline]
    pub fn normal_pair(&mut self) -> (f64, f64) {
        // 1 - u maps [0,1) onto (0,1] so the log argument is never zero.
        let u1 = 1.0 - self.uniform01();
        let u2 = self.uniform01();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        (r * theta.cos(), r * theta.sin())
    }

    /// Fill a slice with standard normals; a trailing odd element discards
    /// its Box-Muller partner so the draw count is deterministic.
    pub fn fill_normal(&mut self, out: &mut [f64]) {
        let mut chunks = out.chunks_exact_mut(2);
        for pair in &mut chunks {
            let (a, b) = self.normal_pair();
            pair[0] = a;
            pair[1] = b;
        }
        if let [last] = chunks.into_remainder() {
            *last = self.normal_pair().0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream_identical() {
        let mut a = CounterRng::new(7, "data");
        let mut b = CounterRng::new(7, "data");
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn streams_are_distinct() {
        let mut a = CounterRng::new(7, "data");
        let mut b = CounterRng::new(7, "noise");
        let hits = (0..64).filter(|_| a.next_u64() == b.next_u64()).count();
        assert_eq!(hits, 0);
    }

    #[test]
    fn uniform_mean_and_range() {
        let mut rng = CounterRng::new(123, "u");
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let u = rng.uniform01();
            assert!((0.0..1.0).contains(&u));
            sum += u;
        }
        assert!((sum / n as f64 - 0.5).abs() < 0.005);
    }

    #[test]
    fn normal_moments() {
        let mut rng = CounterRng::new(9, "n");
        let n = 100_000usize;
        let mut xs = vec![0.0; n];
        rng.fill_normal(&mut xs);
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 4.0 / (n as f64).sqrt());
        assert!((var - 1.0).abs() < 0.1);
    }

    #[test]
    fn below_is_in_range_and_roughly_uniform() {
        let mut rng = CounterRng::new(5, "idx");
        let mut counts = [0usize; 7];
        for _ in 0..70_000 {
            counts[rng.below(7)] += 1;
        }
        for &c in &counts {
            assert!((c as f64 - 10_000.0).abs() < 500.0, "count {c}");
        }
    }
}
