//! Normal and Student-t distribution functions.

use libm::erfc;
use statrs::function::erf::erfc_inv;
use statrs::function::gamma::ln_gamma;
use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

/// Standard normal quantile for `p` in (0, 1).
pub fn normal_quantile(p: f64) -> f64 {
    -SQRT_2 * erfc_inv(2.0 * p)
}

const CF_TOL: f64 = 1e-14;
const CF_MAX_ITER: usize = 10_000;
const TINY: f64 = 1e-300;

/// Regularized incomplete beta `I_x(a, b)`, taking `y = 1 - x` separately so
/// callers can supply it without cancellation.
pub fn beta_reg(a: f64, b: f64, x: f64, y: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if y <= 0.0 {
        return 1.0;
    }
    let ln_front = a * x.ln() + b * y.ln() - ln_beta(a, b);
    if x < (a + 1.0) / (a + b + 2.0) {
        ln_front.exp() * beta_cf(a, b, x) / a
    } else {
        1.0 - ln_front.exp() * beta_cf(b, a, y) / b
    }
}

fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Continued fraction for the incomplete beta, modified Lentz evaluation.
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < CF_TOL {
            break;
        }
    }
    h
}

/// `P(T > x)` for `x >= 0`.
fn t_upper_tail(x: f64, df: f64) -> f64 {
    let x2 = x * x;
    let denom = df + x2;
    0.5 * beta_reg(df / 2.0, 0.5, df / denom, x2 / denom)
}

/// Student-t CDF with `df` degrees of freedom.
pub fn student_t_cdf(x: f64, df: f64) -> f64 {
    if x >= 0.0 {
        1.0 - t_upper_tail(x, df)
    } else {
        t_upper_tail(-x, df)
    }
}

fn t_ln_density_const(df: f64) -> f64 {
    ln_gamma((df + 1.0) / 2.0) - ln_gamma(df / 2.0) - 0.5 * (df * PI).ln()
}

pub fn student_t_pdf(x: f64, df: f64) -> f64 {
    (t_ln_density_const(df) - (df + 1.0) / 2.0 * (x * x / df).ln_1p()).exp()
}

/// Student-t quantile for `p` in (0, 1).
pub fn student_t_quantile(p: f64, df: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    if !(df > 0.0 && df.is_finite()) {
        return Err(Error::InvalidParameter(format!("degrees of freedom {df}")));
    }
    Ok(if p < 0.5 {
        -t_upper_quantile(p, df)
    } else {
        t_upper_quantile(1.0 - p, df)
    })
}

/// The `x >= 0` with `P(T > x) = q`, for `q` in (0, 1/2].
///
/// Geometric bracketing and a few bisection steps, then Newton iterations
/// kept inside the bracket.
pub(crate) fn t_upper_quantile(q: f64, df: f64) -> f64 {
    if q >= 0.5 {
        return 0.0;
    }
    let ln_const = t_ln_density_const(df);
    let pdf = |x: f64| (ln_const - (df + 1.0) / 2.0 * (x * x / df).ln_1p()).exp();

    let mut lo = 0.0;
    let mut hi = 1.0;
    while t_upper_tail(hi, df) > q {
        lo = hi;
        hi *= 4.0;
        if !hi.is_finite() {
            return f64::MAX;
        }
    }
    let mid = |lo: f64, hi: f64| if lo > 0.0 { (lo * hi).sqrt() } else { 0.5 * hi };
    for _ in 0..4 {
        let m = mid(lo, hi);
        if t_upper_tail(m, df) > q {
            lo = m;
        } else {
            hi = m;
        }
    }

    let mut x = mid(lo, hi);
    for _ in 0..100 {
        let f = t_upper_tail(x, df) - q;
        if f == 0.0 {
            return x;
        }
        if f > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x + f / pdf(x);
        if !(next > lo && next < hi) {
            next = mid(lo, hi);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * next || (hi - lo) <= 4.0 * f64::EPSILON * hi {
            return next;
        }
        x = next;
    }
    x
}

/// `Phi_t^{-1}(Phi_N(z))`, evaluated through the tail on the side of `z` so
/// large `|z|` keeps full relative precision.
pub(crate) fn gaussian_to_t(z: f64, df: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    let tail = normal_cdf(-z.abs());
    let x = t_upper_quantile(tail, df);
    if z > 0.0 {
        x
    } else {
        -x
    }
}
