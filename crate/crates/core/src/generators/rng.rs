use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::special::normal_quantile;

/// Deterministic pseudorandom stream keyed by `(seed, stream)`.
///
/// Backed by ChaCha20, whose output is specified bit-for-bit, so streams are
/// identical on every platform. Distinct stream indices select disjoint
/// keystreams under the same seed.
#[derive(Debug, Clone)]
pub struct RngStream {
    inner: ChaCha20Rng,
}

const TWO_POW_53: f64 = 9_007_199_254_740_992.0;

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha20Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self { inner }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on the open interval (0, 1), on the grid `(k + 1/2) / 2^53`.
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) / TWO_POW_53
    }

    /// Standard normal by inversion of one uniform.
    pub fn normal(&mut self) -> f64 {
        normal_quantile(self.uniform())
    }

    pub fn normals(&mut self, count: usize) -> Vec<f64> {
        (0..count).map(|_| self.normal()).collect()
    }

    /// Unit-rate exponential.
    pub fn exponential(&mut self) -> f64 {
        -self.uniform().ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_stream_separated() {
        let a: Vec<u64> = {
            let mut r = RngStream::new(42, 3);
            (0..8).map(|_| r.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut r = RngStream::new(42, 3);
            (0..8).map(|_| r.next_u64()).collect()
        };
        let c: Vec<u64> = {
            let mut r = RngStream::new(42, 4);
            (0..8).map(|_| r.next_u64()).collect()
        };
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn known_first_output() {
        // Pins the keystream so a dependency bump cannot silently change results.
        let mut r = RngStream::new(0, 0);
        let first = r.next_u64();
        assert_eq!(first, 449_479_075_714_955_186);
        let mut other = RngStream::new(0, 1);
        assert_ne!(first, other.next_u64());
    }

    #[test]
    fn uniform_is_open_and_centered() {
        let mut r = RngStream::new(7, 0);
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let u = r.uniform();
            assert!(u > 0.0 && u < 1.0);
            sum += u;
        }
        assert!((sum / n as f64 - 0.5).abs() < 0.005);
    }

    #[test]
    fn normal_moments() {
        let mut r = RngStream::new(11, 0);
        let z = r.normals(100_000);
        let mean = z.iter().sum::<f64>() / z.len() as f64;
        let var = z.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / z.len() as f64;
        assert!(mean.abs() < 0.015);
        assert!((var - 1.0).abs() < 0.02);
    }
}
