//! Self-normalized full-sample and block statistics.

use crate::error::{Error, Result};
use crate::series::{PrefixSums, TimeSeries};

/// How block sums are centered.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Centering {
    /// Known population mean.
    Population(f64),
    /// Mean of the full sample, applied to every block.
    SampleMean,
}

/// Overlapping block statistics `T_{i,b}` with their normalizers `D_{i,b}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockStatistics {
    /// `None` where the block normalizer is zero (constant block).
    pub t: Vec<Option<f64>>,
    pub d: Vec<f64>,
    pub b: usize,
    pub centering: Centering,
}

impl BlockStatistics {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Statistics of the non-degenerate blocks, in block order.
    pub fn defined(&self) -> impl Iterator<Item = f64> + '_ {
        self.t.iter().filter_map(|t| *t)
    }

    pub fn degenerate_count(&self) -> usize {
        self.t.iter().filter(|t| t.is_none()).count()
    }
}

/// Smallest block size accepted by the normalizer.
pub const MIN_BLOCK: usize = 2;

/// `D_{i,b}` from prefix scans in O(1); the direct O(b) path is
/// [`PrefixSums::block_normalizer_direct`].
pub fn block_normalizer(prefix: &PrefixSums, i: usize, b: usize) -> Result<f64> {
    if b < MIN_BLOCK {
        return Err(Error::InvalidBlockSize { b, n: prefix.len() });
    }
    prefix.block_normalizer_sliding(i, b)
}

/// `T_n = (S_{1,n} - n*mu) / D_n`.
pub fn full_statistic(series: &TimeSeries, mu: f64) -> Result<f64> {
    let prefix = PrefixSums::centered(series);
    let d = full_normalizer(series, &prefix)?;
    let n = series.len() as f64;
    // S_{1,n} - n*mu = (S_{1,n} - n*xbar) + n*(xbar - mu), and the first term is p[n].
    let numer = prefix.p()[series.len()] + n * (prefix.offset() - mu);
    Ok(numer / d)
}

/// Full-sample normalizer `D_n`, evaluated directly.
pub(crate) fn full_normalizer(series: &TimeSeries, prefix: &PrefixSums) -> Result<f64> {
    if is_constant(series.values()) {
        return Err(Error::DegenerateNormalizer);
    }
    prefix.block_normalizer_direct(1, series.len())
}

fn is_constant(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

/// All `n - b + 1` overlapping block statistics in O(n).
///
/// Blocks whose observations are all equal have `D_{i,b} = 0` exactly; their
/// statistic is left undefined.
pub fn block_statistics(
    series: &TimeSeries,
    b: usize,
    centering: Centering,
) -> Result<BlockStatistics> {
    let n = series.len();
    if b < MIN_BLOCK || b > n {
        return Err(Error::InvalidBlockSize { b, n });
    }
    let prefix = PrefixSums::centered(series);
    let center = match centering {
        Centering::Population(mu) => {
            if !mu.is_finite() {
                return Err(Error::InvalidParameter(format!("population mean {mu}")));
            }
            mu
        }
        Centering::SampleMean => prefix.offset(),
    };
    let shift = b as f64 * (prefix.offset() - center);

    // run[k] = length of the run of equal values ending at observation k (0-based)
    let values = series.values();
    let mut run = vec![1usize; n];
    for k in 1..n {
        if values[k] == values[k - 1] {
            run[k] = run[k - 1] + 1;
        }
    }

    let count = n - b + 1;
    let mut t = Vec::with_capacity(count);
    let mut d = Vec::with_capacity(count);
    for i in 1..=count {
        if run[i + b - 2] >= b {
            t.push(None);
            d.push(0.0);
            continue;
        }
        let di = prefix.sliding_unchecked(i, b);
        let numer = prefix.shifted_segment_sum(i, i + b - 1) + shift;
        t.push(Some(numer / di));
        d.push(di);
    }
    Ok(BlockStatistics {
        t,
        d,
        b,
        centering,
    })
}
