use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{invalid, Result};
use crate::generators::CoefficientVector;

/// `gamma[0..=maxlag]` of a stationary scalar process.
#[derive(Debug, Clone, PartialEq)]
pub struct AutocovarianceSequence {
    gamma: Vec<f64>,
}

impl AutocovarianceSequence {
    pub fn new(gamma: Vec<f64>) -> Result<Self> {
        let g0 = *gamma.first().ok_or_else(|| invalid("empty autocovariance sequence"))?;
        if !(g0 > 0.0 && g0.is_finite()) {
            return Err(invalid(format!("gamma[0] = {g0} must be positive")));
        }
        for (h, &g) in gamma.iter().enumerate() {
            if !g.is_finite() || g.abs() > g0 * (1.0 + 1e-12) {
                return Err(invalid(format!("|gamma[{h}]| = {} exceeds gamma[0] = {g0}", g.abs())));
            }
        }
        Ok(Self { gamma })
    }

    pub fn values(&self) -> &[f64] {
        &self.gamma
    }

    pub fn max_lag(&self) -> usize {
        self.gamma.len() - 1
    }

    /// `gamma(h)`, zero beyond the stored lags.
    pub fn at(&self, h: usize) -> f64 {
        self.gamma.get(h).copied().unwrap_or(0.0)
    }

    /// Power-law envelope `C h^{-p}` dominating `|gamma|` over the last decade of
    /// lags, evaluated at `h`. Flat when the fit does not decay; zero when the
    /// decade is identically zero.
    fn envelope_at(&self, h: usize) -> f64 {
        let maxlag = self.max_lag();
        if maxlag == 0 {
            return 0.0;
        }
        let start = (maxlag.div_ceil(10)).max(1);
        let pts: Vec<(f64, f64)> = (start..=maxlag)
            .filter(|&lag| self.gamma[lag] != 0.0)
            .map(|lag| ((lag as f64).ln(), self.gamma[lag].abs().ln()))
            .collect();
        let peak = (start..=maxlag).map(|lag| self.gamma[lag].abs()).fold(0.0, f64::max);
        if pts.len() < 2 {
            return peak;
        }
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        if slope >= 0.0 {
            return peak;
        }
        let decay = -slope;
        // lift the intercept until the curve sits on or above every point
        let ln_c = pts.iter().map(|p| p.1 + decay * p.0).fold(f64::NEG_INFINITY, f64::max);
        (ln_c - decay * (h as f64).ln()).exp()
    }
}

/// Above this many multiply-adds the autocovariances come from an FFT.
const DIRECT_WORK_LIMIT: usize = 1 << 24;

/// Autocovariances `gamma(h) = sum_j a_j a_{j+h}` of the filtered unit-variance
/// noise, for `h = 0..=maxlag`.
pub fn acf_from_coefficients(coeffs: &CoefficientVector, maxlag: usize) -> Result<AutocovarianceSequence> {
    let m = coeffs.len();
    if maxlag >= m {
        return Err(invalid(format!("maxlag {maxlag} must be below the cutoff {m}")));
    }
    let gamma = if (maxlag + 1).saturating_mul(m) <= DIRECT_WORK_LIMIT {
        direct_acf(&coeffs.a, maxlag)
    } else {
        fft_acf(&coeffs.a, maxlag)
    };
    AutocovarianceSequence::new(gamma)
}

fn direct_acf(a: &[f64], maxlag: usize) -> Vec<f64> {
    let m = a.len();
    (0..=maxlag)
        .map(|h| a[..m - h].iter().zip(&a[h..]).map(|(x, y)| x * y).sum())
        .collect()
}

/// Inverse transform of `|A|^2`, zero-padded so lags up to `maxlag` do not wrap.
fn fft_acf(a: &[f64], maxlag: usize) -> Vec<f64> {
    let size = (a.len() + maxlag + 1).next_power_of_two();
    let mut planner = FftPlanner::new();
    let mut buf = vec![Complex::new(0.0, 0.0); size];
    for (slot, &v) in buf.iter_mut().zip(a) {
        slot.re = v;
    }
    planner.plan_fft_forward(size).process(&mut buf);
    for z in buf.iter_mut() {
        *z = Complex::new(z.norm_sqr(), 0.0);
    }
    planner.plan_fft_inverse(size).process(&mut buf);
    let scale = 1.0 / size as f64;
    let mut gamma: Vec<f64> = buf[..=maxlag].iter().map(|z| z.re * scale).collect();
    // the zero lag is a plain sum of squares; keep it exact so |gamma(h)| <= gamma(0)
    gamma[0] = a.iter().map(|x| x * x).sum();
    gamma
}

/// `M(k) = sup_{h > k} |gamma(h)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailMax {
    pub value: f64,
    /// Set when lags beyond the stored sequence could determine the value, in
    /// which case their contribution comes from the fitted power-law envelope.
    pub extrapolated: bool,
}

pub fn m_gamma(gamma: &AutocovarianceSequence, k: usize) -> TailMax {
    let maxlag = gamma.max_lag();
    let observed = if k < maxlag {
        gamma.values()[k + 1..].iter().fold(0.0f64, |m, g| m.max(g.abs()))
    } else {
        0.0
    };
    let tail = gamma.envelope_at(k.max(maxlag) + 1);
    if k >= maxlag || tail > observed {
        TailMax {
            value: observed.max(tail),
            extrapolated: true,
        }
    } else {
        TailMax {
            value: observed,
            extrapolated: false,
        }
    }
}

/// `M(k)` for every `k` in `0..=kmax`, in one backward pass.
pub(crate) fn m_gamma_table(gamma: &AutocovarianceSequence, kmax: usize) -> Vec<f64> {
    let maxlag = gamma.max_lag();
    let mut out = vec![0.0; kmax + 1];
    let mut running = 0.0f64;
    // suffix maxima over stored lags h > k
    let mut suffix = vec![0.0; maxlag + 1];
    for h in (0..maxlag).rev() {
        running = running.max(gamma.values()[h + 1].abs());
        suffix[h] = running;
    }
    let tail_at_end = gamma.envelope_at(maxlag + 1);
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = if k < maxlag {
            suffix[k].max(tail_at_end)
        } else {
            gamma.envelope_at(k + 1)
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{coefficients, CoefficientFamily};

    fn acf(v: &[f64]) -> AutocovarianceSequence {
        AutocovarianceSequence::new(v.to_vec()).unwrap()
    }

    fn cv(a: &[f64]) -> CoefficientVector {
        CoefficientVector::from_weights(a.to_vec()).unwrap()
    }

    #[test]
    fn acf_examples() {
        assert_eq!(acf_from_coefficients(&cv(&[1.0]), 0).unwrap().values(), &[1.0]);
        assert_eq!(acf_from_coefficients(&cv(&[1.0, 1.0]), 1).unwrap().values(), &[2.0, 1.0]);
        assert_eq!(
            acf_from_coefficients(&cv(&[1.0, 0.5, 0.0]), 2).unwrap().values(),
            &[1.25, 0.5, 0.0]
        );
        assert!(acf_from_coefficients(&cv(&[1.0, 0.5]), 2).is_err());
    }

    #[test]
    fn fft_acf_matches_direct() {
        for (family, d) in [(CoefficientFamily::Plain, 0.3), (CoefficientFamily::LogWeighted, -1.0)] {
            let c = coefficients(family, d, 5_000).unwrap();
            let direct = direct_acf(&c.a, 700);
            let fft = fft_acf(&c.a, 700);
            for (h, (x, y)) in direct.iter().zip(&fft).enumerate() {
                assert!((x - y).abs() <= 1e-12 * direct[0], "h={h}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn validation() {
        assert!(AutocovarianceSequence::new(vec![]).is_err());
        assert!(AutocovarianceSequence::new(vec![0.0, 0.0]).is_err());
        assert!(AutocovarianceSequence::new(vec![1.0, 1.5]).is_err());
        assert!(AutocovarianceSequence::new(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn m_gamma_examples() {
        assert_eq!(m_gamma(&acf(&[1.0, 0.0, 0.0, 0.0]), 0).value, 0.0);
        assert_eq!(m_gamma(&acf(&[1.0, 0.5, 0.25]), 1).value, 0.25);
        let t = m_gamma(&acf(&[1.0, -0.6, 0.2]), 0);
        assert_eq!(t.value, 0.6);
        assert!(!t.extrapolated);
    }

    #[test]
    fn m_gamma_beyond_stored_lags_uses_envelope() {
        // gamma(h) = h^{-1/2} exactly; the fitted envelope reproduces it
        let g: Vec<f64> = (0..=200).map(|h| if h == 0 { 1.0 } else { (h as f64).powf(-0.5) }).collect();
        let seq = acf(&g);
        let t = m_gamma(&seq, 400);
        assert!(t.extrapolated);
        assert!((t.value - 401f64.powf(-0.5)).abs() < 1e-9);
        let inside = m_gamma(&seq, 50);
        assert!((inside.value - 51f64.powf(-0.5)).abs() < 1e-12);
    }

    #[test]
    fn table_matches_pointwise() {
        let c = coefficients(CoefficientFamily::Plain, 0.3, 400).unwrap();
        let seq = acf_from_coefficients(&c, 120).unwrap();
        let table = m_gamma_table(&seq, 300);
        for k in [0, 1, 7, 119, 120, 121, 250, 300] {
            assert_eq!(table[k], m_gamma(&seq, k).value, "k={k}");
        }
    }

    #[test]
    fn regular_variation_of_plain_acf() {
        // gamma(h) ~ C h^{2d-1}; at d = 0.25 that is h^{-1/2}
        let c = coefficients(CoefficientFamily::Plain, 0.25, 200_000).unwrap();
        let seq = acf_from_coefficients(&c, 2_000).unwrap();
        let scaled: Vec<f64> = [250usize, 500, 1000, 1999]
            .iter()
            .map(|&k| m_gamma(&seq, k).value * (k as f64).powf(0.5))
            .collect();
        for w in scaled.windows(2) {
            assert!((w[1] / w[0] - 1.0).abs() < 0.06, "{scaled:?}");
        }
        assert!(scaled.iter().all(|&s| s > 0.5));
    }
}
