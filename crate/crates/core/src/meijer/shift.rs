use super::{ratio_f64, Argument, FoxH, GParams, Prefactor};
use crate::{re, Error, Result, Scalar};
use num_rational::Rational64;

/// Order-`alpha` differintegral of the classical `G^{m,n}_{p,q}(z | a; b)`:
/// `G^{m,n+1}_{p+1,q+1}(z | -alpha, a - alpha; b_1..b_m - alpha, 0, b_{m+1}.. - alpha)`.
pub fn fracdiff_shift(gp: &GParams, alpha: Scalar) -> Result<GParams> {
    if !gp.is_plain() {
        return Err(Error::Precondition(format!(
            "shift needs the classical function of plain z (w = 1, g = 1, r = 1), got w = {}, g = {}, r = {}",
            gp.w, gp.g, gp.r
        )));
    }
    let mut a = Vec::with_capacity(gp.p + 1);
    a.push(-alpha);
    a.extend(gp.a.iter().map(|&x| x - alpha));
    let mut b: Vec<Scalar> = gp.b.iter().map(|&x| x - alpha).collect();
    b.insert(gp.m, re(0.0));
    Ok(GParams { m: gp.m, n: gp.n + 1, p: gp.p + 1, q: gp.q + 1, a, b, w: gp.w, g: gp.g, r: gp.r })
}

/// Order-`alpha` differintegral of `G(c z^s, r1 | a; b)` (argument
/// coefficient `c = gp.w`, exponent `s = gp.g`, parameter `r1 = gp.r`) as a
/// Fox H record:
///
/// `r1 z^{-alpha} (c z^s)^{alpha/s} H^{m,n+1}_{p+1,q+1}(c z^s |
///   (-alpha, s), (a_i - (r1/s) alpha, r1); (b_j - (r1/s) alpha, r1), (0, s))`.
pub fn fracdiff_shift_general(gp: &GParams, alpha: Scalar) -> Result<FoxH> {
    let s = gp.g;
    if *s.numer() == 0 {
        return Err(Error::Param("argument exponent must be nonzero".into()));
    }
    let r1 = gp.r;
    let shift = alpha * ratio_f64(r1 / s);
    let mut upper = Vec::with_capacity(gp.p + 1);
    upper.push((-alpha, s));
    upper.extend(gp.a.iter().map(|&x| (x - shift, r1)));
    let mut lower: Vec<(Scalar, Rational64)> = gp.b.iter().map(|&x| (x - shift, r1)).collect();
    lower.push((re(0.0), s));
    Ok(FoxH {
        m: gp.m,
        n: gp.n + 1,
        p: gp.p + 1,
        q: gp.q + 1,
        upper,
        lower,
        prefactor: Prefactor { coeff: re(ratio_f64(r1)), z_power: -alpha, arg_power: alpha / ratio_f64(s) },
        argument: Argument { w: gp.w, g: s },
    })
}
