//! Validated observation sequences and their prefix-sum scans.

use crate::error::{Error, Result};

/// Where a series came from, when it was simulated.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub model: String,
    pub seed: u64,
}

/// An ordered sequence of finite observations with at least two entries.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    provenance: Option<Provenance>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooShort(values.len()));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            values,
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; a valid series holds at least two observations.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn mean(&self) -> f64 {
        let mut acc = Neumaier::default();
        for &v in &self.values {
            acc.add(v);
        }
        acc.sum() / self.values.len() as f64
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

/// Expanded sums of squares below this fraction of their cancelled terms are
/// recomputed directly, keeping the sliding normalizer within ~1e-12 relative.
const CANCELLATION_GUARD: f64 = 1e-4;

/// Compensated (Kahan–Babuška–Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Cumulative scans of a series, shifted by a constant `offset`.
///
/// With `y_k = x_k - offset`:
/// `p[k] = y_1 + ... + y_k`, `q[k] = p[0] + ... + p[k]`,
/// `r[k] = p[0]^2 + ... + p[k]^2`, `s[k] = 0*p[0] + ... + k*p[k]`.
///
/// The offset drops out of every block normalizer, so scanning a centered
/// series keeps the sliding normalizer free of the cancellation that large
/// level shifts would otherwise cause. Segment sums add the offset back.
#[derive(Debug, Clone)]
pub struct PrefixSums {
    offset: f64,
    p: Vec<f64>,
    q: Vec<f64>,
    r: Vec<f64>,
    s: Vec<f64>,
}

impl PrefixSums {
    /// Plain scans (`offset = 0`), so `p[k] = x_1 + ... + x_k`.
    pub fn new(series: &TimeSeries) -> Self {
        Self::with_offset(series, 0.0)
    }

    /// Scans of `x - series.mean()`.
    pub fn centered(series: &TimeSeries) -> Self {
        Self::with_offset(series, series.mean())
    }

    pub fn with_offset(series: &TimeSeries, offset: f64) -> Self {
        let n = series.len();
        let mut p = Vec::with_capacity(n + 1);
        let mut q = Vec::with_capacity(n + 1);
        let mut r = Vec::with_capacity(n + 1);
        let mut s = Vec::with_capacity(n + 1);
        p.push(0.0);
        q.push(0.0);
        r.push(0.0);
        s.push(0.0);
        let (mut ap, mut aq, mut ar, mut as_) = (
            Neumaier::default(),
            Neumaier::default(),
            Neumaier::default(),
            Neumaier::default(),
        );
        for (idx, &x) in series.values().iter().enumerate() {
            let k = (idx + 1) as f64;
            ap.add(x - offset);
            let pk = ap.sum();
            aq.add(pk);
            ar.add(pk * pk);
            as_.add(k * pk);
            p.push(pk);
            q.push(aq.sum());
            r.push(ar.sum());
            s.push(as_.sum());
        }
        Self { offset, p, q, r, s }
    }

    /// Number of observations scanned.
    pub fn len(&self) -> usize {
        self.p.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    /// Sum of the offset-shifted observations `y_j + ... + y_k` (1-based, inclusive).
    pub(crate) fn shifted_segment_sum(&self, j: usize, k: usize) -> f64 {
        self.p[k] - self.p[j - 1]
    }

    /// `S_{j,k} = x_j + ... + x_k` (1-based, inclusive).
    pub fn segment_sum(&self, j: usize, k: usize) -> f64 {
        self.shifted_segment_sum(j, k) + (k + 1 - j) as f64 * self.offset
    }

    fn check_block(&self, i: usize, b: usize) -> Result<()> {
        let n = self.len();
        if i == 0 || b == 0 || i + b - 1 > n {
            return Err(Error::IndexOutOfRange { i, b, n });
        }
        Ok(())
    }

    /// Block normalizer `D_{i,b}` by direct O(b) evaluation.
    pub fn block_normalizer_direct(&self, i: usize, b: usize) -> Result<f64> {
        self.check_block(i, b)?;
        Ok(self.direct_unchecked(i, b))
    }

    fn direct_unchecked(&self, i: usize, b: usize) -> f64 {
        let base = self.p[i - 1];
        let total = self.p[i + b - 1] - base;
        let bf = b as f64;
        let mut acc = Neumaier::default();
        for k in i..i + b {
            let j = (k + 1 - i) as f64;
            let u = (self.p[k] - base) - j / bf * total;
            acc.add(u * u);
        }
        (acc.sum() / bf).max(0.0).sqrt()
    }

    /// Block normalizer `D_{i,b}` in O(1) from the `q`, `r`, `s` scans.
    ///
    /// When the expanded sum of squares cancels to a small fraction of its
    /// terms, the result would carry only a few correct digits; such blocks
    /// are recomputed directly.
    pub fn block_normalizer_sliding(&self, i: usize, b: usize) -> Result<f64> {
        self.check_block(i, b)?;
        Ok(self.sliding_unchecked(i, b))
    }

    pub(crate) fn sliding_unchecked(&self, i: usize, b: usize) -> f64 {
        let (ss, magnitude) = self.expanded_sum_of_squares(i, b);
        if ss < CANCELLATION_GUARD * magnitude {
            self.direct_unchecked(i, b)
        } else {
            (ss / b as f64).sqrt()
        }
    }

    /// Expands `b * D_{i,b}^2 = sum_j (p[k] - c - j*g)^2` over `k = i..i+b-1`,
    /// `j = k-i+1`, with `c = p[i-1]` and `g = (p[i+b-1] - c) / b`. Also returns
    /// the scale of the terms that cancel, which bounds the rounding error.
    fn expanded_sum_of_squares(&self, i: usize, b: usize) -> (f64, f64) {
        let last = i + b - 1;
        let c = self.p[i - 1];
        let g = (self.p[last] - c) / b as f64;
        let sum_p = self.q[last] - self.q[i - 1];
        let sum_p2 = self.r[last] - self.r[i - 1];
        let sum_kp = self.s[last] - self.s[i - 1];
        let lead = (i - 1) as f64;
        let sum_jp = sum_kp - lead * sum_p;
        let bf = b as f64;
        let sum_j = bf * (bf + 1.0) / 2.0;
        let sum_j2 = bf * (bf + 1.0) * (2.0 * bf + 1.0) / 6.0;
        let ss = sum_p2 - 2.0 * c * sum_p - 2.0 * g * sum_jp
            + bf * c * c
            + 2.0 * c * g * sum_j
            + g * g * sum_j2;
        let q_scale = self.q[last].abs() + self.q[i - 1].abs();
        let magnitude = self.r[last].abs()
            + self.r[i - 1].abs()
            + 2.0 * c.abs() * q_scale
            + 2.0 * g.abs() * (self.s[last].abs() + self.s[i - 1].abs() + lead * q_scale)
            + bf * c * c
            + 2.0 * (c * g).abs() * sum_j
            + g * g * sum_j2;
        (ss, magnitude)
    }
}
