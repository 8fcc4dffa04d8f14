//! Counter-based random numbers for reproducible Monte Carlo.
//!
//! Every protocol round owns an independent stream keyed by
//! `(master seed, round index)`; each draw is a pure function of
//! `(seed, round, draw counter)`. Rounds can therefore be executed in any
//! order, on any number of workers, and still produce bit-identical
//! transcripts. The mixer is the splitmix64 finalizer, applied twice to
//! derive the stream key and once per draw.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 finalizer: full-avalanche 64-bit mix.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive an independent stream key (or sub-seed) from a master seed and a
/// stream index. Used for per-round streams and per-sweep-value seeds.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    mix64(seed ^ mix64(stream.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Source of uniform draws on the half-open-from-below interval `(0, 1]`.
///
/// The closed upper end makes `u <= p` an exact Bernoulli(p) test for
/// p = 0 and p = 1, and keeps zero-probability measurement outcomes
/// unreachable.
pub trait UnitRandom {
    fn next_unit(&mut self) -> f64;
}

/// Per-round random stream: a counter-based generator keyed by
/// `(master seed, round index)`.
#[derive(Debug, Clone)]
pub struct RoundRng {
    key: u64,
    draws: u64,
}

impl RoundRng {
    pub fn new(seed: u64, round: u64) -> Self {
        Self {
            key: derive_seed(seed, round),
            draws: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        mix64(self.key.wrapping_add(self.draws.wrapping_mul(GOLDEN)))
    }

    /// Uniform draw in `(0, 1]` with 53-bit resolution.
    pub fn next_unit(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Bernoulli(p) for p in [0, 1]; exact at both endpoints.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_unit() <= p
    }

    /// Uniform index in `0..n` for power-of-two n (the alphabet sizes 2 and 4).
    pub fn next_index_pow2(&mut self, n: usize) -> usize {
        debug_assert!(n.is_power_of_two());
        (self.next_u64() & (n as u64 - 1)) as usize
    }
}

impl UnitRandom for RoundRng {
    fn next_unit(&mut self) -> f64 {
        RoundRng::next_unit(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_key_same_stream() {
        let mut a = RoundRng::new(42, 7);
        let mut b = RoundRng::new(42, 7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn distinct_rounds_are_distinct_streams() {
        let mut a = RoundRng::new(42, 0);
        let mut b = RoundRng::new(42, 1);
        let va: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let vb: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_ne!(va, vb);
    }

    #[test]
    fn unit_draws_live_in_half_open_interval() {
        let mut rng = RoundRng::new(1, 0);
        for _ in 0..10_000 {
            let u = rng.next_unit();
            assert!(u > 0.0 && u <= 1.0);
        }
    }

    #[test]
    fn bernoulli_endpoints_are_exact() {
        let mut rng = RoundRng::new(3, 5);
        for _ in 0..1000 {
            assert!(!rng.bernoulli(0.0));
            assert!(rng.bernoulli(1.0));
        }
    }

    #[test]
    fn unit_draws_are_roughly_uniform() {
        let mut rng = RoundRng::new(9, 2);
        let n = 100_000;
        let mean: f64 = (0..n).map(|_| rng.next_unit()).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.005, "mean = {mean}");
    }
}
