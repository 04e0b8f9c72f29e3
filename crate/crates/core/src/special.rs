//! Error function, its inverse and the standard normal CDF.
//!
//! `erf`/`erfc` come from `libm` (the fdlibm rational approximations) and
//! `erf_inv` from `statrs` (the Boost rational approximations); both are
//! accurate to a few ulps.

use std::f64::consts::SQRT_2;

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Inverse error function on `[-1, 1]`; returns `±inf` at the end points.
/// Odd by construction: `erf_inv(-y) == -erf_inv(y)` bit for bit.
pub fn erf_inv(y: f64) -> f64 {
    if y.is_nan() {
        return f64::NAN;
    }
    let a = y.abs();
    let v = if a >= 1.0 {
        f64::INFINITY
    } else {
        statrs::function::erf::erf_inv(a)
    };
    v.copysign(y)
}

/// Standard normal cumulative distribution function.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / SQRT_2)
}
