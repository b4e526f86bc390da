//! Self-normalized block sampling (SNBS) for inference on the mean of a
//! stationary time series.
//!
//! The statistic `T_n = (S_{1,n} - n mu) / D_n` is normalized by a functional of
//! its own centered partial sums, so its unknown rate of convergence cancels.
//! Its sampling distribution is approximated by the empirical distribution of
//! the same statistic over all overlapping blocks of length `b`. This works
//! unchanged under short- or long-range dependence and under heavy tails.
//!
//! ```
//! use snbs::{confidence_interval, Side, TimeSeries};
//!
//! let x = TimeSeries::new(vec![0.3, 1.9, -0.4, 2.2, 0.8, 1.1, -1.3, 0.05, 0.6]).unwrap();
//! let ci = confidence_interval(&x, 3, 0.9, Side::LowerOneSided).unwrap();
//! assert!(ci.hi.is_finite() && ci.lo == f64::NEG_INFINITY);
//! ```

pub mod advisor;
mod block;
mod ecdf;
mod error;
pub mod generators;
pub mod harness;
mod interval;
mod series;

pub use block::{block_normalizer, block_statistics, full_statistic, BlockStatistics, Centering};
pub use ecdf::{empirical_cdf, quantile, EmpiricalCdf};
pub use error::{Error, Result};
pub use interval::{confidence_interval, BlockSampling, ConfidenceInterval, Side};
pub use series::{PrefixSums, Provenance, TimeSeries};

/// Block size `floor(c * sqrt(n))`.
pub fn block_size(n: usize, c: f64) -> usize {
    (c * (n as f64).sqrt()).floor() as usize
}
