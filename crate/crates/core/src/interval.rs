//! Confidence intervals for the mean from the block-sampling distribution.

use crate::block::{block_statistics, full_normalizer, Centering};
use crate::ecdf::EmpiricalCdf;
use crate::error::{Error, Result};
use crate::series::{PrefixSums, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `(-inf, hi]`
    LowerOneSided,
    /// `[lo, +inf)`
    UpperOneSided,
    TwoSided,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceInterval {
    pub side: Side,
    pub lo: f64,
    pub hi: f64,
    pub level: f64,
    pub n: usize,
    pub b: usize,
    pub mean: f64,
    /// Full-sample normalizer `D_n`.
    pub normalizer: f64,
    /// Block quantile that produced `lo`, if finite.
    pub lo_quantile: Option<f64>,
    /// Block quantile that produced `hi`, if finite.
    pub hi_quantile: Option<f64>,
    pub degenerate_blocks: usize,
}

impl ConfidenceInterval {
    pub fn contains(&self, mu: f64) -> bool {
        self.lo <= mu && mu <= self.hi
    }
}

/// Everything needed to invert the block-sampling distribution for one series:
/// the sample mean, `D_n`, and the ECDF of sample-mean-centered block statistics.
#[derive(Debug, Clone)]
pub struct BlockSampling {
    n: usize,
    b: usize,
    mean: f64,
    normalizer: f64,
    cdf: EmpiricalCdf,
    degenerate: usize,
}

impl BlockSampling {
    pub fn new(series: &TimeSeries, b: usize) -> Result<Self> {
        let stats = block_statistics(series, b, Centering::SampleMean)?;
        let prefix = PrefixSums::centered(series);
        let normalizer = full_normalizer(series, &prefix)?;
        let degenerate = stats.degenerate_count();
        let cdf = match EmpiricalCdf::new(stats.defined()) {
            Ok(cdf) => cdf,
            Err(Error::Empty) => return Err(Error::AllBlocksDegenerate),
            Err(e) => return Err(e),
        };
        Ok(Self {
            n: series.len(),
            b,
            mean: prefix.offset(),
            normalizer,
            cdf,
            degenerate,
        })
    }

    pub fn cdf(&self) -> &EmpiricalCdf {
        &self.cdf
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn degenerate_blocks(&self) -> usize {
        self.degenerate
    }

    /// `xbar - q * D_n / n`
    fn bound(&self, q: f64) -> f64 {
        self.mean - q * self.normalizer / self.n as f64
    }

    pub fn interval(&self, level: f64, side: Side) -> Result<ConfidenceInterval> {
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::InvalidProbability(level));
        }
        let alpha = 1.0 - level;
        let (lo_p, hi_p) = match side {
            Side::LowerOneSided => (None, Some(alpha)),
            Side::UpperOneSided => (Some(1.0 - alpha), None),
            Side::TwoSided => (Some(1.0 - alpha / 2.0), Some(alpha / 2.0)),
        };
        let lo_quantile = lo_p.map(|p| self.cdf.quantile(p)).transpose()?;
        let hi_quantile = hi_p.map(|p| self.cdf.quantile(p)).transpose()?;
        Ok(ConfidenceInterval {
            side,
            lo: lo_quantile.map_or(f64::NEG_INFINITY, |q| self.bound(q)),
            hi: hi_quantile.map_or(f64::INFINITY, |q| self.bound(q)),
            level,
            n: self.n,
            b: self.b,
            mean: self.mean,
            normalizer: self.normalizer,
            lo_quantile,
            hi_quantile,
            degenerate_blocks: self.degenerate,
        })
    }
}

pub fn confidence_interval(
    series: &TimeSeries,
    b: usize,
    level: f64,
    side: Side,
) -> Result<ConfidenceInterval> {
    BlockSampling::new(series, b)?.interval(level, side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hand_example() {
        let ci = confidence_interval(&ts(&[1.0, 2.0, 3.0]), 2, 0.5, Side::LowerOneSided).unwrap();
        assert_eq!(ci.lo, f64::NEG_INFINITY);
        assert_abs_diff_eq!(ci.hi, 2.769_800_358_919_501, epsilon = 1e-12);
        assert_abs_diff_eq!(ci.normalizer, (2.0f64 / 3.0).sqrt(), epsilon = 1e-15);
        assert!(ci.hi_quantile.unwrap() < 0.0 && ci.hi > ci.mean);
    }

    #[test]
    fn shift_equivariance() {
        let x = [0.3, 1.9, -0.4, 2.2, 0.8, 1.1, -1.3, 0.05];
        let base = confidence_interval(&ts(&x), 3, 0.8, Side::TwoSided).unwrap();
        let shifted: Vec<f64> = x.iter().map(|v| v + 4.5).collect();
        let moved = confidence_interval(&ts(&shifted), 3, 0.8, Side::TwoSided).unwrap();
        assert_abs_diff_eq!(moved.lo, base.lo + 4.5, epsilon = 1e-12);
        assert_abs_diff_eq!(moved.hi, base.hi + 4.5, epsilon = 1e-12);
    }

    #[test]
    fn sides_have_infinite_ends() {
        let x = ts(&[0.3, 1.9, -0.4, 2.2, 0.8, 1.1]);
        let up = confidence_interval(&x, 3, 0.9, Side::UpperOneSided).unwrap();
        assert_eq!(up.hi, f64::INFINITY);
        assert!(up.lo.is_finite());
        let two = confidence_interval(&x, 3, 0.9, Side::TwoSided).unwrap();
        assert!(two.lo <= two.hi);
    }

    #[test]
    fn degenerate_errors() {
        assert_eq!(
            confidence_interval(&ts(&[2.0; 5]), 2, 0.9, Side::LowerOneSided).unwrap_err(),
            Error::DegenerateNormalizer
        );
        let x = ts(&[1.0, 1.0, 1.0, 2.0, 2.0, 2.0]);
        let bs = BlockSampling::new(&x, 3).unwrap();
        assert_eq!(bs.degenerate_blocks(), 2);
        assert!(confidence_interval(&x, 2, 0.9, Side::LowerOneSided).is_ok());
    }

    #[test]
    fn rejects_bad_level() {
        let x = ts(&[0.3, 1.9, -0.4, 2.2]);
        assert!(confidence_interval(&x, 2, 1.0, Side::LowerOneSided).is_err());
        assert!(confidence_interval(&x, 2, 0.0, Side::LowerOneSided).is_err());
    }
}
