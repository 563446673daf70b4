//! Complex special-function kernel.
//!
//! All multivalued functions use the principal branch with
//! `arg(z)` in `(-pi, pi]`. A negative zero imaginary part is treated as
//! positive zero, so `log(-1 - 0i) = i*pi`.

mod digamma;
mod gamma;
mod hyper;
mod incomplete;

pub use digamma::{digamma, harmonic, polygamma};
pub use gamma::{gamma, gamma_ratio, log_gamma, pochhammer, rgamma};
pub use hyper::{pfq, pfq_regularized, PfqSum, PFQ_MAX_TERMS, PFQ_TOL};
pub use incomplete::{exp_integral_e1, lower_incomplete_gamma, regularized_q, upper_incomplete_gamma};

use crate::{Error, Result, Scalar};
use std::f64::consts::PI;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Absolute tolerance used to recognise integers in floating-point input.
pub const INT_TOL: f64 = 1e-12;

/// Principal argument in `(-pi, pi]`.
pub fn arg(z: Scalar) -> f64 {
    (z.im + 0.0).atan2(z.re)
}

/// Principal logarithm.
pub fn ln(z: Scalar) -> Result<Scalar> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::BranchPoint("log(0)".into()));
    }
    Ok(Scalar::new(z.norm().ln(), arg(z)))
}

/// Principal square root.
pub fn sqrt(z: Scalar) -> Scalar {
    Scalar::new(z.re, z.im + 0.0).sqrt()
}

/// Principal power `z^w`. Integer exponents are computed by repeated
/// multiplication so that e.g. `(-2)^3` is exactly `-8`.
pub fn pow(z: Scalar, w: Scalar) -> Result<Scalar> {
    if let Some(n) = as_int(w) {
        if n.abs() <= i32::MAX as i64 {
            if z == Scalar::new(0.0, 0.0) {
                return match n.signum() {
                    0 => Ok(Scalar::new(1.0, 0.0)),
                    1 => Ok(Scalar::new(0.0, 0.0)),
                    _ => Err(Error::BranchPoint("0 raised to a negative power".into())),
                };
            }
            return Ok(z.powi(n as i32));
        }
    }
    if z.re == 0.0 && z.im == 0.0 {
        return if w.re > 0.0 {
            Ok(Scalar::new(0.0, 0.0))
        } else {
            Err(Error::BranchPoint(format!("0^({w})")))
        };
    }
    Ok((w * ln(z)?).exp())
}

/// `Some(n)` when `z` is within [`INT_TOL`] of the integer `n`.
pub fn as_int(z: Scalar) -> Option<i64> {
    if z.im.abs() > INT_TOL || !z.re.is_finite() {
        return None;
    }
    let r = z.re.round();
    if (z.re - r).abs() <= INT_TOL * r.abs().max(1.0) && r.abs() < 9.0e15 {
        Some(r as i64)
    } else {
        None
    }
}

/// `Some(n)` when `z` is a nonpositive integer `n`, i.e. a pole of gamma.
pub fn as_nonpos_int(z: Scalar) -> Option<i64> {
    as_int(z).filter(|&n| n <= 0)
}

/// `sin(pi z)` with the argument reduced modulo 2 before scaling.
pub fn sin_pi(z: Scalar) -> Scalar {
    let n = z.re.round();
    let f = Scalar::new(z.re - n, z.im);
    let s = (f * PI).sin();
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

/// `cos(pi z)` with the argument reduced modulo 2 before scaling.
pub fn cos_pi(z: Scalar) -> Scalar {
    let n = z.re.round();
    let f = Scalar::new(z.re - n, z.im);
    let c = (f * PI).cos();
    if (n as i64).rem_euclid(2) == 0 {
        c
    } else {
        -c
    }
}

pub(crate) fn finite(z: Scalar, what: &'static str) -> Result<Scalar> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}
