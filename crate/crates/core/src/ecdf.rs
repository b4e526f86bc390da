//! Empirical distribution functions and inf-type quantiles.

use crate::error::{Error, Result};

/// Step-function ECDF over a finite sample.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new<I: IntoIterator<Item = f64>>(values: I) -> Result<Self> {
        let mut sorted: Vec<f64> = values.into_iter().collect();
        if sorted.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = sorted.iter().position(|v| v.is_nan()) {
            return Err(Error::NonFinite { index });
        }
        sorted.sort_by(f64::total_cmp);
        Ok(Self { sorted })
    }

    pub fn sorted_values(&self) -> &[f64] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Fraction of values `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.len() as f64
    }

    /// `inf{x : eval(x) >= p}`, the order statistic of rank `ceil(p*m)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(self.sorted[quantile_rank(p, self.len()) - 1])
    }

    /// Distinct knots `(x, eval(x))` of the step function.
    pub fn knots(&self) -> Vec<(f64, f64)> {
        let m = self.len() as f64;
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(self.len());
        for (idx, &v) in self.sorted.iter().enumerate() {
            let f = (idx + 1) as f64 / m;
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 = f,
                _ => out.push((v, f)),
            }
        }
        out
    }
}

/// `ceil(p*m)`, snapping products that sit within rounding of an integer.
pub(crate) fn quantile_rank(p: f64, m: usize) -> usize {
    let x = p * m as f64;
    let nearest = x.round();
    let rank = if (x - nearest).abs() <= 1e-9 * x.max(1.0) {
        nearest
    } else {
        x.ceil()
    };
    (rank as usize).clamp(1, m)
}

pub fn empirical_cdf<I: IntoIterator<Item = f64>>(values: I) -> Result<EmpiricalCdf> {
    EmpiricalCdf::new(values)
}

pub fn quantile(cdf: &EmpiricalCdf, p: f64) -> Result<f64> {
    cdf.quantile(p)
}
