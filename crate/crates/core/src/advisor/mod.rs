//! Diagnostics for the between-block canonical correlation of a scalar
//! Gaussian process, and block-size recommendations by dependence regime.
//!
//! For blocks of span `m` separated by lag `k`, the canonical correlation is
//! bounded by `min{ m * M(k - m) / lambda_m, 1 }`. Here `M(k)` is the largest
//! `|gamma(h)|` over `h > k`, and `lambda_m` is the smallest eigenvalue of the
//! `m x m` autocovariance matrix.

mod acf;
mod bounds;
mod toeplitz;

pub use acf::{acf_from_coefficients, m_gamma, AutocovarianceSequence, TailMax};
pub use bounds::{a3_diagnostic, recommend_block, rho_bound, rho_bounds, CanonicalBoundReport, Regime};
pub use toeplitz::{min_eigenvalue, min_eigenvalue_bisection, min_eigenvalue_dense, DENSE_LIMIT};
