use super::acf::{m_gamma, m_gamma_table, AutocovarianceSequence};
use super::toeplitz::min_eigenvalue;
use crate::error::{invalid, Result};

/// Upper bound on the canonical correlation between two blocks of span `m`
/// whose starts are `k` apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalBoundReport {
    pub k: usize,
    pub m: usize,
    /// `M(k - m)`; `gamma(0)` when `k < m`, where the bound is vacuous.
    pub m_gamma: f64,
    pub lambda_m: f64,
    /// `min{ m * M(k - m) / lambda_m, 1 }`
    pub bound: f64,
    pub extrapolated: bool,
}

pub fn rho_bound(gamma: &AutocovarianceSequence, k: usize, m: usize) -> Result<CanonicalBoundReport> {
    if m == 0 {
        return Err(invalid("block span must be at least 1"));
    }
    let lambda_m = min_eigenvalue(gamma, m)?;
    Ok(bound_with(gamma, k, m, lambda_m))
}

/// [`rho_bound`] for every `k` in `ks`, sharing one eigenvalue computation.
pub fn rho_bounds<I: IntoIterator<Item = usize>>(
    gamma: &AutocovarianceSequence,
    m: usize,
    ks: I,
) -> Result<Vec<CanonicalBoundReport>> {
    if m == 0 {
        return Err(invalid("block span must be at least 1"));
    }
    let lambda_m = min_eigenvalue(gamma, m)?;
    Ok(ks.into_iter().map(|k| bound_with(gamma, k, m, lambda_m)).collect())
}

fn bound_with(gamma: &AutocovarianceSequence, k: usize, m: usize, lambda_m: f64) -> CanonicalBoundReport {
    if k < m {
        return CanonicalBoundReport {
            k,
            m,
            m_gamma: gamma.at(0),
            lambda_m,
            bound: 1.0,
            extrapolated: false,
        };
    }
    let tail = m_gamma(gamma, k - m);
    CanonicalBoundReport {
        k,
        m,
        m_gamma: tail.value,
        lambda_m,
        bound: (m as f64 * tail.value / lambda_m).min(1.0),
        extrapolated: tail.extrapolated,
    }
}

/// `n^{-1} * sum_{k=0}^{n} min{ b M(k - b - l) / lambda_{b+l}, 1 }`, with the
/// first `b + l + 1` summands (overlapping or adjacent blocks) counted as 1.
///
/// Small values indicate the block-dependence sum is plausibly `o(n)` at this
/// sample size.
pub fn a3_diagnostic(gamma: &AutocovarianceSequence, n: usize, b: usize, l: usize) -> Result<f64> {
    if n == 0 || b == 0 || b + l > n {
        return Err(invalid(format!("need 1 <= b and b + l <= n, got n = {n}, b = {b}, l = {l}")));
    }
    let span = b + l;
    let lambda = min_eigenvalue(gamma, span)?;
    let scale = b as f64 / lambda;
    let table = m_gamma_table(gamma, n - span);
    let capped = (span + 1).min(n + 1) as f64;
    let rest: f64 = (span + 1..=n).map(|k| (scale * table[k - span]).min(1.0)).sum();
    Ok((capped + rest) / n as f64)
}

/// Dependence regime used to pick a block-size growth exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// Summable, non-increasing autocovariances.
    SrdSummable,
    /// `gamma(k) ~ k^{2H-2}`, `H` in (1/2, 1).
    LrdPower { hurst: f64 },
    /// Anti-persistent: any `b = o(n)`.
    AntiPersistent,
    /// Spectral density vanishing at zero with order `beta`; `nu` is the
    /// eigenvalue decay order of the autocovariance matrix.
    ZeroSpectrum { beta: f64, nu: f64 },
}

/// Margin subtracted from theoretical exponents so `b = o(n^e)` holds with
/// room at finite `n`. A heuristic.
const EXPONENT_MARGIN: f64 = 0.05;

impl Regime {
    pub fn exponent(&self) -> Result<f64> {
        match *self {
            Regime::SrdSummable => Ok(0.5),
            Regime::LrdPower { hurst } => {
                if !(hurst > 0.5 && hurst < 1.0) {
                    return Err(invalid(format!("Hurst index {hurst} must lie in (1/2, 1)")));
                }
                Ok(0.5f64.min(2.0 - 2.0 * hurst - EXPONENT_MARGIN))
            }
            Regime::AntiPersistent => Ok(1.0 - EXPONENT_MARGIN),
            Regime::ZeroSpectrum { beta, nu } => {
                if !(beta > 0.0 && beta.is_finite() && nu >= 0.0 && nu.is_finite()) {
                    return Err(invalid(format!("need beta > 0 and nu >= 0, got beta = {beta}, nu = {nu}")));
                }
                Ok(0.5f64.min(beta / (1.0 + nu) - EXPONENT_MARGIN))
            }
        }
    }
}

/// `max(2, floor(c * n^e))` with `e` from the regime, capped at `n`.
pub fn recommend_block(regime: Regime, n: usize, c: f64) -> Result<usize> {
    if n < 2 {
        return Err(invalid(format!("sample size {n} must be at least 2")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(invalid(format!("multiplier c = {c} must be positive")));
    }
    let e = regime.exponent()?;
    let raw = (c * (n as f64).powf(e)).floor();
    Ok((raw as usize).clamp(2, n))
}
