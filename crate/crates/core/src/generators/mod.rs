//! Seedable simulators for the Gaussian-subordinated, threshold
//! autoregressive, stochastic-duration and stable moving-average models.

mod coefficients;
mod convolve;
mod models;
mod rng;
pub mod special;

pub use coefficients::{coefficients, CoefficientFamily, CoefficientVector};
pub use convolve::{direct_convolve, fft_convolve, LinearFilter};
pub use models::{
    generate, symmetric_stable, GeneratorConfig, GeneratorKind, Sampler, Transform,
    DEFAULT_TAR_BURN_IN, DEFAULT_T_DF,
};
pub use rng::RngStream;
pub use special::{normal_cdf, student_t_cdf, student_t_quantile};
