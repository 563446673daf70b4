use super::{as_nonpos_int, finite, gamma, ln, pow, EULER_GAMMA};
use crate::{Error, Result, Scalar};

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 5000;
const TINY: f64 = 1e-300;

fn zero() -> Scalar {
    Scalar::new(0.0, 0.0)
}

fn use_continued_fraction(a: Scalar, z: Scalar) -> bool {
    z.re > 0.0 && z.norm() > (a.re + 1.0).max(2.0)
}

/// Lower incomplete gamma `gamma(a, z) = int_0^z t^(a-1) e^(-t) dt` by its
/// power series. `a` must not be a nonpositive integer.
pub fn lower_incomplete_gamma(a: Scalar, z: Scalar) -> Result<Scalar> {
    if as_nonpos_int(a).is_some() {
        return Err(Error::Pole(format!("lower incomplete gamma at a = {a}")));
    }
    if z == zero() {
        return if a.re > 0.0 {
            Ok(zero())
        } else {
            Err(Error::Domain(format!("gamma({a}, 0) with Re a <= 0")))
        };
    }
    let za = pow(z, a)?;
    if z.re >= 0.0 {
        // z^a e^-z sum z^k / (a (a+1) ... (a+k))
        let mut term = a.inv();
        let mut sum = term;
        for k in 1..MAX_ITER {
            term *= z / (a + k as f64);
            sum += term;
            if term.norm() < EPS * sum.norm() {
                return finite(za * (-z).exp() * sum, "lower_incomplete_gamma");
            }
        }
    } else {
        // z^a sum (-z)^k / (k! (a+k))
        let mut p = Scalar::new(1.0, 0.0);
        let mut sum = a.inv();
        for k in 1..MAX_ITER {
            p *= -z / k as f64;
            let term = p / (a + k as f64);
            sum += term;
            if term.norm() < EPS * sum.norm() {
                return finite(za * sum, "lower_incomplete_gamma");
            }
        }
    }
    Err(Error::NoConvergence {
        terms: MAX_ITER,
        last_ratio: f64::NAN,
    })
}

// Modified Lentz evaluation of the Legendre continued fraction for Gamma(a, z).
fn upper_cf(a: Scalar, z: Scalar) -> Result<Scalar> {
    let tiny = Scalar::new(TINY, 0.0);
    let mut b = z + 1.0 - a;
    let mut c = Scalar::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..MAX_ITER {
        let i = i as f64;
        let an = -i * (Scalar::new(i, 0.0) - a);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = tiny;
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = tiny;
        }
        d = d.inv();
        let del = d * c;
        h *= del;
        if (del - 1.0).norm() < EPS {
            return finite((a * ln(z)? - z).exp() * h, "upper_incomplete_gamma");
        }
    }
    Err(Error::NoConvergence {
        terms: MAX_ITER,
        last_ratio: f64::NAN,
    })
}

/// Exponential integral `E1(z) = Gamma(0, z)`.
pub fn exp_integral_e1(z: Scalar) -> Result<Scalar> {
    if z == zero() {
        return Err(Error::Domain("E1(0)".into()));
    }
    if use_continued_fraction(zero(), z) {
        return upper_cf(zero(), z);
    }
    // -gamma - ln z - sum_{k>=1} (-z)^k / (k k!)
    let mut p = Scalar::new(1.0, 0.0);
    let mut sum = zero();
    for k in 1..MAX_ITER {
        p *= -z / k as f64;
        let term = p / k as f64;
        sum += term;
        if term.norm() < EPS * sum.norm().max(1e-300) {
            return finite(-EULER_GAMMA - ln(z)? - sum, "exp_integral_e1");
        }
    }
    Err(Error::NoConvergence {
        terms: MAX_ITER,
        last_ratio: f64::NAN,
    })
}

/// Upper incomplete gamma `Gamma(a, z) = int_z^inf t^(a-1) e^(-t) dt`.
///
/// Negative `a` is reached by the downward recurrence
/// `Gamma(a, z) = (Gamma(a+1, z) - z^a e^(-z)) / a` when `Re z > 0`.
pub fn upper_incomplete_gamma(a: Scalar, z: Scalar) -> Result<Scalar> {
    if z == zero() {
        return if a.re > 0.0 {
            gamma(a)
        } else {
            Err(Error::Domain(format!("Gamma({a}, 0) with Re a <= 0")))
        };
    }
    let ez = (-z).exp();
    if let Some(n) = as_nonpos_int(a) {
        let mut g = exp_integral_e1(z)?;
        for s in (n..0).rev() {
            let s = s as f64;
            g = (g - pow(z, Scalar::new(s, 0.0))? * ez) / s;
        }
        return finite(g, "upper_incomplete_gamma");
    }
    if a.re < 0.0 && z.re > 0.0 {
        let shift = (-a.re).ceil() as i64;
        let mut g = upper_incomplete_gamma(a + shift as f64, z)?;
        for k in (0..shift).rev() {
            let s = a + k as f64;
            g = (g - pow(z, s)? * ez) / s;
        }
        return finite(g, "upper_incomplete_gamma");
    }
    if use_continued_fraction(a, z) {
        upper_cf(a, z)
    } else {
        finite(gamma(a)? - lower_incomplete_gamma(a, z)?, "upper_incomplete_gamma")
    }
}

/// Regularized upper incomplete gamma `Q(a, z) = Gamma(a, z) / Gamma(a)`,
/// with `Q = 0` at nonpositive integer `a`.
pub fn regularized_q(a: Scalar, z: Scalar) -> Result<Scalar> {
    if as_nonpos_int(a).is_some() {
        return Ok(zero());
    }
    if z == zero() && a.re > 0.0 {
        return Ok(Scalar::new(1.0, 0.0));
    }
    finite(upper_incomplete_gamma(a, z)? / gamma(a)?, "regularized_q")
}
