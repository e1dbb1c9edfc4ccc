use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded index generator: ChaCha8 keyed by `seed_from_u64`, with uniform
/// indices drawn by rejection so that no index is favoured.
#[derive(Debug, Clone)]
pub struct IndexRng {
    inner: ChaCha8Rng,
}

impl IndexRng {
    pub fn new(seed: u64) -> Self {
        IndexRng { inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform draw from `0..m`. Panics if `m == 0`.
    pub fn index(&mut self, m: usize) -> usize {
        assert!(m > 0, "empty index range");
        let range = m as u64;
        // largest multiple of `range` that fits; values at or above it are redrawn
        let zone = u64::MAX - (u64::MAX % range + 1) % range;
        loop {
            let v = self.inner.next_u64();
            if v <= zone {
                return (v % range) as usize;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a: Vec<usize> = {
            let mut r = IndexRng::new(42);
            (0..50).map(|_| r.index(3)).collect()
        };
        let b: Vec<usize> = {
            let mut r = IndexRng::new(42);
            (0..50).map(|_| r.index(3)).collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().all(|&i| i < 3));
        let c: Vec<usize> = {
            let mut r = IndexRng::new(43);
            (0..50).map(|_| r.index(3)).collect()
        };
        assert_ne!(a, c);
    }

    #[test]
    fn roughly_uniform() {
        let mut r = IndexRng::new(7);
        let mut counts = [0usize; 5];
        for _ in 0..50_000 {
            counts[r.index(5)] += 1;
        }
        for c in counts {
            assert!((c as f64 - 10_000.0).abs() < 500.0, "{counts:?}");
        }
    }

    #[test]
    fn single_index() {
        let mut r = IndexRng::new(0);
        assert!((0..10).all(|_| r.index(1) == 0));
    }
}
