//! Literal, unoptimized transcriptions of the block-sampling definitions,
//! used to check the prefix-sum pipeline in `snbs`.
//!
//! Every quantity is recomputed from raw sums on each call; nothing is shared
//! between blocks, and probabilities are exact rationals.

/// `S_{i,k} = x_i + ... + x_k`, 1-based and inclusive.
pub fn partial_sum(x: &[f64], i: usize, k: usize) -> f64 {
    let mut s = 0.0;
    for t in i..=k {
        s += x[t - 1];
    }
    s
}

pub fn mean(x: &[f64]) -> f64 {
    partial_sum(x, 1, x.len()) / x.len() as f64
}

/// `D_{i,b} = sqrt(b^{-1} sum_{k=i}^{i+b-1} (S_{i,k} - (k-i+1)/b * S_{i,i+b-1})^2)`
pub fn normalizer(x: &[f64], i: usize, b: usize) -> f64 {
    let bf = b as f64;
    let total = partial_sum(x, i, i + b - 1);
    let mut ss = 0.0;
    for k in i..i + b {
        let u = partial_sum(x, i, k) - (k - i + 1) as f64 / bf * total;
        ss += u * u;
    }
    (ss / bf).sqrt()
}

fn constant(x: &[f64]) -> bool {
    x.iter().all(|&v| v == x[0])
}

/// `T_{i,b} = (S_{i,i+b-1} - b * xbar) / D_{i,b}` for `i = 1..=n-b+1`; `None`
/// where the block is constant and `D_{i,b} = 0`.
pub fn block_statistics(x: &[f64], b: usize) -> Vec<Option<f64>> {
    let xbar = mean(x);
    (1..=x.len() - b + 1)
        .map(|i| {
            if constant(&x[i - 1..i - 1 + b]) {
                None
            } else {
                Some((partial_sum(x, i, i + b - 1) - b as f64 * xbar) / normalizer(x, i, b))
            }
        })
        .collect()
}

/// Fraction of `values` that are `<= t`.
pub fn ecdf(values: &[f64], t: f64) -> f64 {
    values.iter().filter(|&&v| v <= t).count() as f64 / values.len() as f64
}

/// The smallest value whose ECDF reaches `num/den`: the order statistic of
/// rank `ceil(num * m / den)`, in exact integer arithmetic.
pub fn quantile(values: &[f64], num: u64, den: u64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len() as u64;
    let rank = (num * m).div_ceil(den).clamp(1, m);
    sorted[rank as usize - 1]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sides {
    Lower,
    Upper,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Interval { lo: f64, hi: f64 },
    /// `D_n = 0`: the series is constant.
    ConstantSeries,
    /// Every block is constant.
    NoBlocks,
}

/// Interval for the mean at level `1 - alpha_pct / 100`:
/// `(-inf, xbar - q_alpha D_n / n]`, `[xbar - q_{1-alpha} D_n / n, inf)`, or
/// both ends with `alpha / 2`.
pub fn interval(x: &[f64], b: usize, alpha_pct: u64, sides: Sides) -> Outcome {
    let n = x.len();
    if constant(x) {
        return Outcome::ConstantSeries;
    }
    let stats: Vec<f64> = block_statistics(x, b).into_iter().flatten().collect();
    if stats.is_empty() {
        return Outcome::NoBlocks;
    }
    let xbar = mean(x);
    let dn = normalizer(x, 1, n);
    let end = |q: f64| xbar - q * dn / n as f64;
    let (lo, hi) = match sides {
        Sides::Lower => (f64::NEG_INFINITY, end(quantile(&stats, alpha_pct, 100))),
        Sides::Upper => (end(quantile(&stats, 100 - alpha_pct, 100)), f64::INFINITY),
        Sides::Two => (
            end(quantile(&stats, 200 - alpha_pct, 200)),
            end(quantile(&stats, alpha_pct, 200)),
        ),
    };
    Outcome::Interval { lo, hi }
}

/// Relative discrepancy `|got - want| / max(1, |want|)`; zero for equal
/// infinities.
pub fn rel_err(got: f64, want: f64) -> f64 {
    if got == want {
        return 0.0;
    }
    (got - want).abs() / want.abs().max(1.0)
}

/// Kinds of data drawn by [`random_case`], cycled by case index.
const KINDS: usize = 5;

/// A random series of length `2..=50` with a block size in `2..=n`. The data
/// cycle through Gaussian noise, heavy-tailed ratios, small-integer values with
/// many ties, a shifted level, and piecewise-constant runs.
pub fn random_case(rng: &mut snbs::generators::RngStream, index: usize) -> (Vec<f64>, usize) {
    let n = 2 + (rng.next_u64() % 49) as usize;
    let b = 2 + (rng.next_u64() % (n as u64 - 1)) as usize;
    let mut level = 0.0;
    let x = (0..n)
        .map(|_| match index % KINDS {
            0 => rng.normal(),
            1 => rng.normal() / rng.exponential().sqrt(),
            2 => (rng.next_u64() % 3) as f64,
            3 => 40.0 + 3.0 * rng.normal(),
            _ => {
                if rng.uniform() < 0.3 {
                    level = (rng.next_u64() % 5) as f64 - 2.0;
                }
                level
            }
        })
        .collect();
    (x, b)
}

/// Largest discrepancies between `snbs` and the transcription for one case.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Discrepancy {
    pub statistic: f64,
    pub ecdf: f64,
    pub endpoint: f64,
}

impl Discrepancy {
    pub fn max(self, other: Self) -> Self {
        Self {
            statistic: self.statistic.max(other.statistic),
            ecdf: self.ecdf.max(other.ecdf),
            endpoint: self.endpoint.max(other.endpoint),
        }
    }
}

/// Interval levels checked, as `alpha` in percent.
pub const ALPHA_PCTS: [u64; 5] = [1, 5, 10, 20, 50];

/// Compares every block statistic, the ECDF between and around its jumps, and
/// every interval endpoint at the levels in [`ALPHA_PCTS`]. Structural
/// disagreements (a block defined on one side only, a different error) are
/// returned as `Err`.
pub fn compare(x: &[f64], b: usize) -> Result<Discrepancy, String> {
    use snbs::{BlockSampling, Centering, Error, Side, TimeSeries};

    let ts = TimeSeries::new(x.to_vec()).map_err(|e| e.to_string())?;
    let mut worst = Discrepancy::default();

    let want = block_statistics(x, b);
    let got = snbs::block_statistics(&ts, b, Centering::SampleMean).map_err(|e| e.to_string())?;
    if got.t.len() != want.len() {
        return Err(format!("{} blocks, expected {}", got.t.len(), want.len()));
    }
    for (i, (g, w)) in got.t.iter().zip(&want).enumerate() {
        match (g, w) {
            (Some(g), Some(w)) => worst.statistic = worst.statistic.max(rel_err(*g, *w)),
            (None, None) => {}
            _ => return Err(format!("block {}: {g:?} vs {w:?}", i + 1)),
        }
    }

    let sampling = BlockSampling::new(&ts, b);
    for sides in [Sides::Lower, Sides::Upper, Sides::Two] {
        for alpha in ALPHA_PCTS {
            let expected = interval(x, b, alpha, sides);
            let side = match sides {
                Sides::Lower => Side::LowerOneSided,
                Sides::Upper => Side::UpperOneSided,
                Sides::Two => Side::TwoSided,
            };
            let level = (100 - alpha) as f64 / 100.0;
            match (&sampling, expected) {
                (Ok(s), Outcome::Interval { lo, hi }) => {
                    let ci = s.interval(level, side).map_err(|e| e.to_string())?;
                    worst.endpoint = worst.endpoint.max(rel_err(ci.lo, lo)).max(rel_err(ci.hi, hi));
                }
                (Err(Error::DegenerateNormalizer), Outcome::ConstantSeries)
                | (Err(Error::AllBlocksDegenerate), Outcome::NoBlocks) => {}
                (got, want) => return Err(format!("interval: {:?} vs {want:?}", got.as_ref().err())),
            }
        }
    }

    if let Ok(s) = &sampling {
        let mut values: Vec<f64> = want.iter().flatten().copied().collect();
        values.sort_by(f64::total_cmp);
        for p in probes(&values) {
            worst.ecdf = worst.ecdf.max(rel_err(s.cdf().eval(p), ecdf(&values, p)));
        }
    }
    Ok(worst)
}

/// Points below, between and above the jumps of the ECDF of sorted `values`.
/// Values within `1e-9` relative of each other count as one jump, so a probe
/// never sits inside a rounding-sized gap.
fn probes(values: &[f64]) -> Vec<f64> {
    let (Some(&first), Some(&last)) = (values.first(), values.last()) else {
        return Vec::new();
    };
    let mut out = vec![first - 1.0 - first.abs(), last + 1.0 + last.abs()];
    for w in values.windows(2) {
        if w[1] - w[0] > 1e-9 * w[0].abs().max(w[1].abs()).max(1.0) {
            out.push(0.5 * (w[0] + w[1]));
        }
    }
    out
}
