use super::{Expr, Func};
use crate::series::heun_coeffs;
use crate::special::{self, pfq_regularized, pow, rgamma, EULER_GAMMA, PFQ_TOL};
use crate::{re, Error, Result, Scalar};

const MAX_TERMS: usize = 2000;

fn sum_until_small(mut term: impl FnMut(usize) -> Result<Scalar>) -> Result<Scalar> {
    let mut s = re(0.0);
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let t = term(k)?;
        s += t;
        if t.norm() <= 1e-17 * s.norm().max(1e-300) {
            small += 1;
            if small >= 3 {
                return Ok(s);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence { terms: MAX_TERMS, last_ratio: f64::NAN })
}

/// `func(params; x)` evaluated numerically at a point.
pub fn eval_call(func: Func, params: &[Scalar], x: Scalar) -> Result<Scalar> {
    if params.len() != func.n_params() {
        return Err(Error::Param(format!("{} takes {} parameter(s)", func.name(), func.n_params())));
    }
    let v = match func {
        Func::Exp => x.exp(),
        Func::Sin => x.sin(),
        Func::Cos => x.cos(),
        Func::Log => special::ln(x)?,
        Func::BesselJ => {
            let nu = params[0];
            pow(x / 2.0, nu)? * pfq_regularized(&[], &[nu + 1.0], -x * x / 4.0, PFQ_TOL)?.value
        }
        Func::BesselK0 => {
            // -(log(x/2) + gamma) I0(x) + sum_k H_k (x^2/4)^k / (k!)^2
            let i0 = special::pfq(&[], &[re(1.0)], x * x / 4.0, PFQ_TOL)?.value;
            let q = x * x / 4.0;
            let mut w = re(1.0);
            let mut h = 0.0;
            let tail = sum_until_small(|k| {
                if k > 0 {
                    let kf = k as f64;
                    w *= q / (kf * kf);
                    h += 1.0 / kf;
                }
                Ok(w * h)
            })?;
            -(special::ln(x / 2.0)? + EULER_GAMMA) * i0 + tail
        }
        Func::MittagLeffler => {
            let (a, b) = (params[0], params[1]);
            let mut xk = re(1.0);
            sum_until_small(|k| {
                if k > 0 {
                    xk *= x;
                }
                Ok(xk * rgamma(a * k as f64 + b))
            })?
        }
        Func::Heun => {
            let c = heun_coeffs(params[0], params[1], params[2], params[3], params[4], params[5], MAX_TERMS - 1)?;
            let mut xk = re(1.0);
            sum_until_small(|k| {
                if k > 0 {
                    xk *= x;
                }
                Ok(c[k] * xk)
            })?
        }
        Func::ExpSq => (x * x).exp(),
        Func::ReciprocalOnePlusZ => {
            if x == re(-1.0) {
                return Err(Error::Pole("1/(1+z) at z = -1".into()));
            }
            1.0 / (1.0 + x)
        }
    };
    special::finite(v, "expression")
}

/// Direct recursive evaluation at `z` with principal branches.
pub fn eval(e: &Expr, z: Scalar) -> Result<Scalar> {
    match e {
        Expr::Const(c) => Ok(*c),
        Expr::Z => Ok(z),
        Expr::Add(a, b) => Ok(eval(a, z)? + eval(b, z)?),
        Expr::Mul(a, b) => Ok(eval(a, z)? * eval(b, z)?),
        Expr::Neg(a) => Ok(-eval(a, z)?),
        Expr::Pow(a, c) => pow(eval(a, z)?, *c),
        Expr::Call { func, params, arg } => eval_call(*func, params, eval(arg, z)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn at(text: &str, z: f64) -> Scalar {
        eval(&parse(text).unwrap(), re(z)).unwrap()
    }

    #[test]
    fn elementary() {
        assert!((at("exp(z) - z - 1", 0.5) - re(0.5f64.exp() - 1.5)).norm() < 1e-15);
        assert!((at("sqrt(z)", 4.0) - re(2.0)).norm() < 1e-15);
        assert!((at("(1 + z)^-1", 0.25) - re(0.8)).norm() < 1e-15);
    }

    #[test]
    fn bessel_j_half_order() {
        // J_{1/2}(x) = sqrt(2/(pi x)) sin x
        let x = 1.3;
        let want = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin();
        assert!((at("bessel_j(0.5, z)", x) - re(want)).norm() < 1e-14);
    }

    #[test]
    fn bessel_k0_value() {
        // K_0(1) = 0.42102443824070833
        assert!((at("bessel_k0(z)", 1.0) - re(0.421_024_438_240_708_3)).norm() < 1e-14);
    }

    #[test]
    fn mittag_leffler_reduces_to_exp() {
        assert!((at("mittag_leffler(1, 1, z)", 0.7) - re(0.7f64.exp())).norm() < 1e-14);
    }

    #[test]
    fn heun_reduces_to_gauss() {
        // b = a c d and q = c + d - p + 1 turn the series into 2F1(c, d; p; z)
        let (a, c, d, p) = (2.0, 0.3, 0.7, 1.4);
        let text = format!("heun({a}, {}, {c}, {d}, {p}, {}, z)", a * c * d, c + d - p + 1.0);
        let z = 0.4;
        let want = special::pfq(&[re(c), re(d)], &[re(p)], re(z), 1e-16).unwrap().value;
        assert!((at(&text, z) - want).norm() < 1e-13);
    }
}
