use super::{ratio_f64, Argument, FoxH, GParams, Prefactor};
use crate::{re, Error, Result, Scalar};
use num_rational::Rational64;
use serde::Serialize;
use std::f64::consts::PI;

/// Parameters of
/// `1/Gamma(beta) int_0^z (z-t)^{beta-1} t^{alpha-1} G(w t^g, r | a; b) dt`
/// rewritten as `prefactor * G^{m,n}_{p,q}(argument | delta1, delta2; delta3, delta4)`
/// for positive integers `g` and `r`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrIntG {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub delta1: Vec<Scalar>,
    pub delta2: Vec<Scalar>,
    pub delta3: Vec<Scalar>,
    pub delta4: Vec<Scalar>,
    pub prefactor: Prefactor,
    pub argument: Argument,
}

impl FrIntG {
    /// The result as a classical [`GParams`] (argument map dropped).
    pub fn to_gparams(&self) -> GParams {
        let mut a = self.delta1.clone();
        a.extend_from_slice(&self.delta2);
        let mut b = self.delta3.clone();
        b.extend_from_slice(&self.delta4);
        GParams {
            m: self.m,
            n: self.n,
            p: self.p,
            q: self.q,
            a,
            b,
            w: self.argument.w,
            g: self.argument.g,
            r: Rational64::from_integer(1),
        }
    }
}

fn positive_int(x: Rational64, what: &str) -> Result<i64> {
    if x.is_integer() && *x.numer() > 0 {
        Ok(*x.numer())
    } else {
        Err(Error::Precondition(format!("{what} must be a positive integer, got {x}")))
    }
}

fn spread(c: &[Scalar], r: i64) -> Vec<Scalar> {
    let rf = r as f64;
    c.iter().flat_map(|&x| (0..r).map(move |i| (x + i as f64) / rf)).collect()
}

/// Riemann–Liouville integral of `t^{alpha-1} G(w t^g, r | a; b)` via the
/// Gauss multiplication formula. Orders become `(rm, rn+g, rp+g, rq+g)`.
pub fn frint_params(gp: &GParams, alpha: Scalar, beta: Scalar) -> Result<FrIntG> {
    let g = positive_int(gp.g, "g")?;
    let r = positive_int(gp.r, "r")?;
    let (m, n, p, q) = (gp.m, gp.n, gp.p, gp.q);
    let (gf, rf) = (g as f64, r as f64);

    let mut delta1: Vec<Scalar> = (1..=g).map(|j| (j as f64 - alpha) / gf).collect();
    delta1.extend(spread(&gp.a[..n], r));
    let delta2 = spread(&gp.a[n..], r);
    let delta3 = spread(&gp.b[..m], r);
    let mut delta4 = spread(&gp.b[m..], r);
    delta4.extend((1..=g).map(|j| (j as f64 - alpha - beta) / gf));

    let sum_b: Scalar = gp.b.iter().sum();
    let sum_a: Scalar = gp.a.iter().sum();
    let (pf, qf) = (p as f64, q as f64);
    let r_pow = sum_b - sum_a + (pf - qf) / 2.0 + 1.0;
    let coeff = (r_pow * rf.ln()).exp()
        / (2.0 * PI).powf((rf - 1.0) * (m as f64 + n as f64 - (pf + qf) / 2.0))
        / (beta * gf.ln()).exp();
    let ru = r as usize;
    let gu = g as usize;
    Ok(FrIntG {
        m: ru * m,
        n: ru * n + gu,
        p: ru * p + gu,
        q: ru * q + gu,
        delta1,
        delta2,
        delta3,
        delta4,
        prefactor: Prefactor { coeff, z_power: alpha + beta - 1.0, arg_power: re(0.0) },
        argument: Argument { w: gp.w / rf.powf(rf * (qf - pf)), g: gp.g },
    })
}

/// The same integral as a Fox H record:
/// `z^{alpha+beta-1} H^{m,n+1}_{p+1,q+1}(w^{1/r} z^{g/r} |
///   (1-alpha, g/r), (a, 1); (b, 1), (1-alpha-beta, g/r))`.
pub fn lf1_params(gp: &GParams, alpha: Scalar, beta: Scalar) -> Result<FoxH> {
    let rho = gp.g / gp.r;
    let one = Rational64::from_integer(1);
    let mut upper = vec![(1.0 - alpha, rho)];
    upper.extend(gp.a.iter().map(|&x| (x, one)));
    let mut lower: Vec<(Scalar, Rational64)> = gp.b.iter().map(|&x| (x, one)).collect();
    lower.push((1.0 - alpha - beta, rho));
    let w = crate::special::pow(gp.w, re(1.0 / ratio_f64(gp.r)))?;
    Ok(FoxH {
        m: gp.m,
        n: gp.n + 1,
        p: gp.p + 1,
        q: gp.q + 1,
        upper,
        lower,
        prefactor: Prefactor { coeff: re(1.0), z_power: alpha + beta - 1.0, arg_power: re(0.0) },
        argument: Argument { w, g: rho },
    })
}
