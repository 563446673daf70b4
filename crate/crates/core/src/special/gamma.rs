use super::{as_int, as_nonpos_int, finite, ln, sin_pi};
use crate::{Error, Result, Scalar};
use std::f64::consts::PI;

// Lanczos approximation, g = 607/128, 14 terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_189e-5,
    4.652_362_892_704_858e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_048_8e-4,
    2.174_396_181_152_126_5e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_275e-5,
    -2.619_083_840_158_140_8e-5,
    3.689_918_265_953_162_5e-6,
];
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

fn pole(z: Scalar) -> Error {
    Error::Pole(format!("gamma({z})"))
}

/// `ln Gamma(z)` via Lanczos, valid for `Re z >= 0.5`.
fn lanczos_ln(z: Scalar) -> Scalar {
    let mut ser = Scalar::new(LANCZOS_C0, 0.0);
    let mut y = z;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    let t = z + (LANCZOS_G + 0.5);
    // Both logs stay on the principal sheet because Re t > 0 and Re ser > 0.
    (z + 0.5) * t.ln() - t + (ser * SQRT_2PI).ln() - z.ln()
}

fn factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// The gamma function.
///
/// Exact factorials are returned at positive integers up to 171. Poles at
/// `0, -1, -2, ...` are reported as [`Error::Pole`].
pub fn gamma(z: Scalar) -> Result<Scalar> {
    if as_nonpos_int(z).is_some() {
        return Err(pole(z));
    }
    if let Some(n) = as_int(z) {
        if (1..=171).contains(&n) {
            return Ok(Scalar::new(factorial(n as u32 - 1), 0.0));
        }
    }
    let v = if z.re >= 0.5 {
        let v = lanczos_ln(z).exp();
        if z.im == 0.0 {
            Scalar::new(v.re, 0.0)
        } else {
            v
        }
    } else {
        let g1 = gamma(Scalar::new(1.0, 0.0) - z)?;
        PI / (sin_pi(z) * g1)
    };
    finite(v, "gamma")
}

/// Reciprocal gamma, entire; zero at the poles of gamma.
pub fn rgamma(z: Scalar) -> Scalar {
    if as_nonpos_int(z).is_some() {
        return Scalar::new(0.0, 0.0);
    }
    if z.re >= 0.5 {
        return match gamma(z) {
            Ok(g) => g.inv(),
            Err(_) => (-lanczos_ln(z)).exp(),
        };
    }
    // 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi
    match gamma(Scalar::new(1.0, 0.0) - z) {
        Ok(g) => sin_pi(z) * g / PI,
        Err(_) => Scalar::new(f64::NAN, f64::NAN),
    }
}

/// `ln Gamma(z)` on the principal branch.
///
/// For `Re z >= 0.5` this is the analytic continuation from the positive
/// axis; for smaller real part the recurrence
/// `ln Gamma(z) = ln Gamma(z + 1) - ln z` is applied, which places the
/// branch cut along the negative real axis.
pub fn log_gamma(z: Scalar) -> Result<Scalar> {
    if as_nonpos_int(z).is_some() {
        return Err(pole(z));
    }
    if let Some(n) = as_int(z) {
        if (1..=171).contains(&n) {
            return Ok(Scalar::new(factorial(n as u32 - 1).ln(), 0.0));
        }
    }
    let mut acc = Scalar::new(0.0, 0.0);
    let mut w = z;
    while w.re < 0.5 {
        acc += ln(w)?;
        w += 1.0;
    }
    let mut v = lanczos_ln(w) - acc;
    if z.im == 0.0 && z.re > 0.0 {
        v.im = 0.0;
    }
    finite(v, "log_gamma")
}

/// `Gamma(num) / Gamma(den)` including limits at poles.
///
/// - pole in `den` only: `0`
/// - poles in both (nonpositive integers `-a`, `-b`): the limit along
///   `num + e, den + e`, namely `(-1)^(a-b) b! / a!`
/// - pole in `num` only: [`Error::Pole`]
pub fn gamma_ratio(num: Scalar, den: Scalar) -> Result<Scalar> {
    match (as_nonpos_int(num), as_nonpos_int(den)) {
        (Some(a), Some(b)) => {
            let sign = if (a - b).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let r = gamma_ratio(
                Scalar::new(1.0 - b as f64, 0.0),
                Scalar::new(1.0 - a as f64, 0.0),
            )?;
            Ok(r * sign)
        }
        (Some(_), None) => Err(Error::Pole(format!("gamma({num}) / gamma({den})"))),
        (None, Some(_)) => Ok(Scalar::new(0.0, 0.0)),
        (None, None) => {
            if num == den {
                return Ok(Scalar::new(1.0, 0.0));
            }
            if num.norm() < 150.0 && den.norm() < 150.0 {
                if let (Ok(a), Ok(b)) = (gamma(num), gamma(den)) {
                    if a.norm() < 1e300 && b.norm() > 1e-300 && b.norm() < 1e300 {
                        return finite(a / b, "gamma_ratio");
                    }
                }
            }
            finite((log_gamma(num)? - log_gamma(den)?).exp(), "gamma_ratio")
        }
    }
}

/// Rising factorial `(x)_n` for integer `n`.
///
/// `(x)_n = x (x+1) ... (x+n-1)` for `n > 0` and
/// `(x)_{-n} = 1 / ((x-1)(x-2)...(x-n))`.
pub fn pochhammer(x: Scalar, n: i64) -> Result<Scalar> {
    let mut p = Scalar::new(1.0, 0.0);
    if n >= 0 {
        for k in 0..n {
            p *= x + k as f64;
        }
        Ok(p)
    } else {
        for k in 1..=(-n) {
            let f = x - k as f64;
            if f == Scalar::new(0.0, 0.0) {
                return Err(Error::Pole(format!("pochhammer({x}, {n})")));
            }
            p *= f;
        }
        Ok(p.inv())
    }
}
