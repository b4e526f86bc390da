//! Smallest eigenvalue of the symmetric Toeplitz autocovariance matrix.

use nalgebra::{DMatrix, SymmetricEigen};

use super::acf::AutocovarianceSequence;
use crate::error::{invalid, Error, Result};

/// Orders up to this size use a dense symmetric eigensolver.
pub const DENSE_LIMIT: usize = 512;

const REL_TOL: f64 = 1e-10;
const MAX_BISECTIONS: usize = 400;

/// `lambda_m`, the smallest eigenvalue of `[gamma(|i - j|)]_{i,j < m}`.
///
/// Lags past the stored sequence are taken as zero.
pub fn min_eigenvalue(gamma: &AutocovarianceSequence, m: usize) -> Result<f64> {
    if m <= DENSE_LIMIT {
        min_eigenvalue_dense(gamma, m)
    } else {
        min_eigenvalue_bisection(gamma, m)
    }
}

fn pd_floor(gamma: &AutocovarianceSequence, m: usize) -> f64 {
    1e-13 * gamma.at(0) * m as f64
}

pub fn min_eigenvalue_dense(gamma: &AutocovarianceSequence, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(invalid("matrix order must be at least 1"));
    }
    let mat = DMatrix::from_fn(m, m, |i, j| gamma.at(i.abs_diff(j)));
    let lambda = SymmetricEigen::new(mat).eigenvalues.min();
    if lambda <= pd_floor(gamma, m) {
        return Err(Error::NonPositiveDefinite { m, lambda });
    }
    Ok(lambda)
}

/// Whether `T_m(gamma) - shift * I` is positive definite, by the Durbin
/// recursion: every normalized prediction-error variance must stay positive.
fn shifted_is_pd(gamma: &AutocovarianceSequence, m: usize, shift: f64) -> bool {
    let t0 = gamma.at(0) - shift;
    if t0 <= 0.0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let r: Vec<f64> = (0..m).map(|h| gamma.at(h) / t0).collect();
    let mut y = Vec::with_capacity(m);
    let mut z = Vec::with_capacity(m);
    y.push(-r[1]);
    let mut alpha = -r[1];
    let mut beta = 1.0;
    for k in 1..m - 1 {
        beta *= 1.0 - alpha * alpha;
        if beta <= 0.0 {
            return false;
        }
        let dot: f64 = (0..k).map(|i| r[k - i] * y[i]).sum();
        alpha = -(r[k + 1] + dot) / beta;
        z.clear();
        z.extend((0..k).map(|i| y[i] + alpha * y[k - 1 - i]));
        std::mem::swap(&mut y, &mut z);
        y.push(alpha);
    }
    beta * (1.0 - alpha * alpha) > 0.0
}

/// `lambda_m` by bisection on the shift, with O(m^2) definiteness tests.
///
/// Smallest eigenvalues of Toeplitz covariance matrices cluster as `m` grows,
/// which stalls inverse iteration; the inertia test does not care.
pub fn min_eigenvalue_bisection(gamma: &AutocovarianceSequence, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(invalid("matrix order must be at least 1"));
    }
    let floor = pd_floor(gamma, m);
    if !shifted_is_pd(gamma, m, floor) {
        return Err(Error::NonPositiveDefinite { m, lambda: 0.0 });
    }
    let mut lo = floor;
    let mut hi = gamma.at(0);
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= REL_TOL * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if shifted_is_pd(gamma, m, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
