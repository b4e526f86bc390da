use crate::error::{invalid, Result};
use crate::series::Neumaier;

/// Shape of the moving-average weights `a_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientFamily {
    /// `a_j = (1+j)^(d-1)`
    Plain,
    /// `a_j = (1+j)^(d-1) * ln(1+j)`
    LogWeighted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    pub a: Vec<f64>,
    /// `sum_j a_j^2`, the variance of the filtered unit-variance noise.
    pub sum_sq: f64,
}

impl CoefficientVector {
    /// Wraps arbitrary weights.
    pub fn from_weights(a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(invalid("coefficient vector must be non-empty"));
        }
        if a.iter().any(|v| !v.is_finite()) {
            return Err(invalid("coefficients must be finite"));
        }
        let mut acc = Neumaier::default();
        for &v in &a {
            acc.add(v * v);
        }
        Ok(Self {
            a,
            sum_sq: acc.sum(),
        })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

/// First `m` weights of the family with memory parameter `d < 1/2`.
pub fn coefficients(family: CoefficientFamily, d: f64, m: usize) -> Result<CoefficientVector> {
    if !(d < 0.5) {
        return Err(invalid(format!("memory parameter d = {d} must be below 1/2")));
    }
    if m == 0 {
        return Err(invalid("coefficient count must be at least 1"));
    }
    let a = (0..m)
        .map(|j| {
            let base = (1.0 + j as f64).powf(d - 1.0);
            match family {
                CoefficientFamily::Plain => base,
                CoefficientFamily::LogWeighted => base * (j as f64).ln_1p(),
            }
        })
        .collect();
    CoefficientVector::from_weights(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn examples() {
        for d in [-1.0, 0.2, 0.4] {
            assert_eq!(coefficients(CoefficientFamily::Plain, d, 3).unwrap().a[0], 1.0);
            assert_eq!(coefficients(CoefficientFamily::LogWeighted, d, 3).unwrap().a[0], 0.0);
        }
        let c = coefficients(CoefficientFamily::Plain, 0.25, 4).unwrap();
        assert_abs_diff_eq!(c.a[3], 0.3535533905932738, epsilon = 1e-15);
    }

    #[test]
    fn sum_sq_matches_naive() {
        let c = coefficients(CoefficientFamily::LogWeighted, 0.2, 500).unwrap();
        let naive: f64 = c.a.iter().map(|v| v * v).sum();
        assert_abs_diff_eq!(c.sum_sq, naive, epsilon = 1e-12 * naive);
        assert!(c.a[1..].iter().all(|&v| v > 0.0));
    }

    #[test]
    fn rejects_long_memory_boundary() {
        assert!(coefficients(CoefficientFamily::Plain, 0.5, 10).is_err());
        assert!(coefficients(CoefficientFamily::Plain, f64::NAN, 10).is_err());
        assert!(coefficients(CoefficientFamily::Plain, 0.1, 0).is_err());
    }
}
