//! Truncated moving-average filtering, by FFT and by direct summation.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::coefficients::CoefficientVector;
use crate::error::{Error, Result};

/// A causal FIR filter with a cached transform of its weights, for repeated
/// application to innovation streams of one fixed length.
///
/// Innovations are indexed so that `innovations[t]` is `eps_{t+2-M}`; the
/// output `Z_i = sum_{j<M} a_j eps_{i-j}`, `i = 1..n`, then needs exactly
/// `n + M - 1` innovations.
pub struct LinearFilter {
    taps: usize,
    n: usize,
    size: usize,
    spectrum: Vec<Complex<f64>>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for LinearFilter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LinearFilter")
            .field("taps", &self.taps)
            .field("n", &self.n)
            .field("size", &self.size)
            .finish()
    }
}

impl LinearFilter {
    pub fn new(coeffs: &CoefficientVector, n: usize) -> Self {
        let taps = coeffs.len();
        let size = (n + taps - 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(size);
        let inverse = planner.plan_fft_inverse(size);
        let mut spectrum = vec![Complex::new(0.0, 0.0); size];
        for (slot, &a) in spectrum.iter_mut().zip(&coeffs.a) {
            slot.re = a;
        }
        forward.process(&mut spectrum);
        Self {
            taps,
            n,
            size,
            spectrum,
            forward,
            inverse,
        }
    }

    pub fn innovations_needed(&self) -> usize {
        self.n + self.taps - 1
    }

    pub fn fft_size(&self) -> usize {
        self.size
    }

    pub fn apply(&self, innovations: &[f64]) -> Result<Vec<f64>> {
        let needed = self.innovations_needed();
        if innovations.len() < needed {
            return Err(Error::LengthMismatch {
                needed,
                got: innovations.len(),
            });
        }
        let mut buf = vec![Complex::new(0.0, 0.0); self.size];
        for (slot, &e) in buf.iter_mut().zip(&innovations[..needed]) {
            slot.re = e;
        }
        self.forward.process(&mut buf);
        for (b, s) in buf.iter_mut().zip(&self.spectrum) {
            *b *= s;
        }
        self.inverse.process(&mut buf);
        // Circular wrap only touches outputs below index M-1, which are discarded.
        let scale = 1.0 / self.size as f64;
        Ok(buf[self.taps - 1..self.taps - 1 + self.n]
            .iter()
            .map(|c| c.re * scale)
            .collect())
    }
}

/// `Z_1..Z_n` via a zero-padded FFT of power-of-two size `>= n + M - 1`.
pub fn fft_convolve(coeffs: &CoefficientVector, innovations: &[f64], n: usize) -> Result<Vec<f64>> {
    LinearFilter::new(coeffs, n).apply(innovations)
}

/// `Z_1..Z_n` by O(nM) summation.
pub fn direct_convolve(coeffs: &CoefficientVector, innovations: &[f64], n: usize) -> Result<Vec<f64>> {
    let taps = coeffs.len();
    let needed = n + taps - 1;
    if innovations.len() < needed {
        return Err(Error::LengthMismatch {
            needed,
            got: innovations.len(),
        });
    }
    Ok((0..n)
        .map(|i| {
            let t = i + taps - 1;
            coeffs
                .a
                .iter()
                .enumerate()
                .map(|(j, a)| a * innovations[t - j])
                .sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::RngStream;

    fn cv(a: &[f64]) -> CoefficientVector {
        CoefficientVector::from_weights(a.to_vec()).unwrap()
    }

    #[test]
    fn identity_filter() {
        let e = [0.5, -1.0, 2.0, 3.5];
        let z = fft_convolve(&cv(&[1.0]), &e, 4).unwrap();
        for (a, b) in z.iter().zip(&e) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn two_tap_hand_example() {
        let e = [1.0, 2.0, 3.0, 4.0];
        let z = fft_convolve(&cv(&[1.0, 1.0]), &e, 2).unwrap();
        assert!((z[0] - 3.0).abs() < 1e-13);
        assert!((z[1] - 5.0).abs() < 1e-13);
        assert_eq!(direct_convolve(&cv(&[1.0, 1.0]), &e, 2).unwrap(), vec![3.0, 5.0]);
    }

    #[test]
    fn fft_matches_direct() {
        let mut rng = RngStream::new(5, 0);
        for (n, m) in [(1, 1), (17, 5), (100, 64), (256, 300), (200, 1)] {
            let a: Vec<f64> = (0..m).map(|_| rng.normal()).collect();
            let e = rng.normals(n + m - 1);
            let c = cv(&a);
            let fast = fft_convolve(&c, &e, n).unwrap();
            let slow = direct_convolve(&c, &e, n).unwrap();
            for (x, y) in fast.iter().zip(&slow) {
                assert!((x - y).abs() <= 1e-8, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn short_innovations_rejected() {
        let err = fft_convolve(&cv(&[1.0, 0.5, 0.25]), &[1.0; 5], 4).unwrap_err();
        assert_eq!(err, Error::LengthMismatch { needed: 6, got: 5 });
        assert!(direct_convolve(&cv(&[1.0, 0.5]), &[1.0; 3], 3).is_err());
    }
}
