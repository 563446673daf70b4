use super::{as_int, as_nonpos_int, finite, EULER_GAMMA};
use crate::{Error, Result, Scalar};

// B_2, B_4, ..., B_20
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

fn factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Digamma function `psi(z) = Gamma'(z) / Gamma(z)`.
pub fn digamma(z: Scalar) -> Result<Scalar> {
    polygamma(0, z)
}

/// Polygamma function `psi^(m)(z)`.
pub fn polygamma(m: u32, z: Scalar) -> Result<Scalar> {
    if as_nonpos_int(z).is_some() {
        return Err(Error::Pole(format!("polygamma({m}, {z})")));
    }
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let mf = factorial(m);
    let target = 20.0 + m as f64;
    let mut acc = Scalar::new(0.0, 0.0);
    let mut w = z;
    // psi^(m)(w) = psi^(m)(w + 1) + (-1)^(m+1) m! / w^(m+1)
    while w.re < target {
        acc += sign * mf / w.powi(m as i32 + 1);
        w += 1.0;
    }
    let winv = w.inv();
    let w2 = winv * winv;
    let tail = if m == 0 {
        let mut s = w.ln() - 0.5 * winv;
        let mut p = w2;
        for (k, b) in BERNOULLI.iter().enumerate() {
            s -= b / (2.0 * (k as f64 + 1.0)) * p;
            p *= w2;
        }
        s
    } else {
        // (m-1)!/w^m + m!/(2 w^(m+1)) + sum B_2k (2k+m-1)!/((2k)! w^(2k+m))
        let wm = winv.powi(m as i32);
        let mut s = factorial(m - 1) * wm + 0.5 * mf * wm * winv;
        let mut p = wm * w2;
        for (k, b) in BERNOULLI.iter().enumerate() {
            let two_k = 2 * (k as u32 + 1);
            let c = b * (factorial(two_k + m - 1) / (factorial(two_k) * factorial(m - 1)));
            s += c * factorial(m - 1) * p;
            p *= w2;
        }
        sign * s
    };
    finite(acc + tail, "polygamma")
}

/// Harmonic number `H_s = gamma + psi(s + 1)`; an exact sum at
/// nonnegative integers.
pub fn harmonic(s: Scalar) -> Result<Scalar> {
    if let Some(n) = as_int(s) {
        if (0..=1_000_000).contains(&n) {
            let h: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
            return Ok(Scalar::new(h, 0.0));
        }
        if n < 0 {
            return Err(Error::Pole(format!("harmonic({s})")));
        }
    }
    Ok(digamma(s + 1.0)? + EULER_GAMMA)
}
