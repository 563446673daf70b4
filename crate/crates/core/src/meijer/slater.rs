use super::{ratio_f64, GParams};
use crate::special::{as_int, gamma, pfq_regularized, pow, rgamma, sin_pi, PFQ_TOL};
use crate::{re, Error, Result, Scalar};
use serde::Serialize;
use std::f64::consts::PI;

/// One residue series `coeff * y^{exponent} * pF~_{q-1}(upper; lower; x)`
/// with `y = w z^g` and `x = sign * y^{1/r}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlaterTerm {
    /// `A_k` with the lower gammas `Gamma(1 + b_k - b_j)` folded into the
    /// regularized series.
    pub coeff: Scalar,
    /// `b_k / r`.
    pub exponent: Scalar,
    pub upper: Vec<Scalar>,
    pub lower: Vec<Scalar>,
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlaterExpansion {
    pub value: Scalar,
    /// Argument of the hypergeometric series, `(-1)^{p-m-n} y^{1/r}`.
    pub series_arg: Scalar,
    pub terms: Vec<SlaterTerm>,
}

/// Value of `G^{m,n}_{p,q}(w z^g, r | a; b)` as the finite sum of left
/// residue series
///
/// `sum_k A_k y^{b_k/r} pF_{q-1}(1+b_k-a; 1+b_k-b*; (-1)^{p-m-n} y^{1/r})`.
///
/// Needs `p <= q` (with `|y^{1/r}| < 1` when `p = q`), no two of
/// `b_1..b_m` differing by an integer and a valid parameter set.
pub fn slater_expand(gp: &GParams, z: Scalar) -> Result<SlaterExpansion> {
    let (m, n, p, q) = (gp.m, gp.n, gp.p, gp.q);
    if p > q {
        return Err(Error::Precondition(format!("Slater expansion needs p <= q, got p = {p}, q = {q}")));
    }
    for j in 0..m {
        for k in j + 1..m {
            if as_int(gp.b[j] - gp.b[k]).is_some() {
                return Err(Error::Degenerate(format!(
                    "b_{} - b_{} = {} is an integer (logarithmic case)",
                    j + 1,
                    k + 1,
                    gp.b[j] - gp.b[k]
                )));
            }
        }
    }
    if !gp.is_valid() {
        return Err(Error::Degenerate("some a_k - b_j (k <= n, j <= m) is a positive integer".into()));
    }
    let inv_r = re(1.0 / ratio_f64(gp.r));
    let y = gp.argument(z)?;
    let sign = if (p as i64 - m as i64 - n as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let x = sign * pow(y, inv_r)?;

    let mut terms = Vec::with_capacity(m);
    let mut total = re(0.0);
    for k in 0..m {
        let bk = gp.b[k];
        let mut coeff = re(1.0);
        for j in 0..m {
            if j != k {
                // Gamma(b_j - b_k) Gamma(1 + b_k - b_j)
                coeff *= PI / sin_pi(gp.b[j] - bk);
            }
        }
        for j in 0..n {
            coeff *= gamma(1.0 + bk - gp.a[j])?;
        }
        for j in n..p {
            coeff *= rgamma(gp.a[j] - bk);
        }
        let upper: Vec<Scalar> = gp.a.iter().map(|&aj| 1.0 + bk - aj).collect();
        let lower: Vec<Scalar> = (0..q).filter(|&j| j != k).map(|j| 1.0 + bk - gp.b[j]).collect();
        let exponent = bk * inv_r;
        let value = if coeff == re(0.0) {
            re(0.0)
        } else {
            coeff * pow(y, exponent)? * pfq_regularized(&upper, &lower, x, PFQ_TOL)?.value
        };
        total += value;
        terms.push(SlaterTerm { coeff, exponent, upper, lower, value });
    }
    Ok(SlaterExpansion { value: total, series_arg: x, terms })
}

/// The Gauss multiplication rewrite of `Gamma(b + sign * r * zeta)`:
/// `(2 pi)^{(1-r)/2} r^{b + sign r zeta - 1/2} prod_j Gamma((b+j)/r + sign zeta)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussFactor {
    pub b: Scalar,
    pub r: u32,
    /// `+1` for `Gamma(b + r zeta)`, `-1` for `Gamma(b - r zeta)`.
    pub sign: i8,
    /// `(b + j) / r` for `j = 0..r`.
    pub shifts: Vec<Scalar>,
}

impl GaussFactor {
    /// `(2 pi)^{(1-r)/2} r^{b + sign r zeta - 1/2}`.
    pub fn prefactor(&self, zeta: Scalar) -> Scalar {
        let r = self.r as f64;
        let s = self.sign as f64;
        let e = self.b + s * r * zeta - 0.5;
        (2.0 * PI).powf((1.0 - r) / 2.0) * (e * r.ln()).exp()
    }

    /// The product side of the identity at `zeta`.
    pub fn eval(&self, zeta: Scalar) -> Result<Scalar> {
        let s = self.sign as f64;
        let mut v = self.prefactor(zeta);
        for &c in &self.shifts {
            v *= gamma(c + s * zeta)?;
        }
        Ok(v)
    }

    /// The left side `Gamma(b + sign r zeta)`.
    pub fn direct(&self, zeta: Scalar) -> Result<Scalar> {
        gamma(self.b + self.sign as f64 * self.r as f64 * zeta)
    }
}

fn gauss(b: Scalar, r: u32, sign: i8) -> Result<GaussFactor> {
    if r == 0 {
        return Err(Error::Param("Gauss multiplication needs r >= 1".into()));
    }
    let rf = r as f64;
    let shifts = (0..r).map(|j| (b + j as f64) / rf).collect();
    Ok(GaussFactor { b, r, sign, shifts })
}

/// Factorization of `Gamma(b + r zeta)`.
pub fn gauss_expand(b: Scalar, r: u32) -> Result<GaussFactor> {
    gauss(b, r, 1)
}

/// Factorization of `Gamma(b - r zeta)`.
pub fn gauss_expand_reflected(b: Scalar, r: u32) -> Result<GaussFactor> {
    gauss(b, r, -1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meijer::builtin_gform;

    fn bessel_j_taylor(nu: f64, x: f64) -> f64 {
        // independent: sum (-1)^k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)) by term recurrence
        let mut t = (x / 2.0).powf(nu) / gamma(re(nu + 1.0)).unwrap().re;
        let mut s = t;
        for k in 1..60 {
            let kf = k as f64;
            t *= -(x * x / 4.0) / (kf * (kf + nu));
            s += t;
        }
        s
    }

    #[test]
    fn exp_form() {
        let f = builtin_gform("exp", &[]).unwrap();
        for z in [0.3, 1.0, 2.0] {
            let v = f.eval(re(z)).unwrap();
            assert!((v - re(z.exp())).norm() < 1e-10 * z.exp(), "{z}");
        }
    }

    #[test]
    fn bessel_j_sq_form() {
        let f = builtin_gform("bessel_j_sq", &[re(1.0 / 3.0)]).unwrap();
        let v = f.eval(re(0.4)).unwrap();
        let want = bessel_j_taylor(1.0 / 3.0, 0.4);
        assert!((v - re(want)).norm() < 1e-12, "{v} vs {want}");
    }

    #[test]
    fn reciprocal_form() {
        let f = builtin_gform("reciprocal_one_plus_z", &[]).unwrap();
        let v = f.eval(re(0.25)).unwrap();
        assert!((v - re(0.8)).norm() < 1e-13);
    }

    #[test]
    fn bessel_k_form_matches_integral() {
        // K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt
        let nu = 0.4;
        let f = builtin_gform("bessel_k", &[re(nu)]).unwrap();
        for x in [0.5, 1.5] {
            let cfg = crate::quad::QuadConfig { abs_tol: 1e-14, rel_tol: 1e-13, max_intervals: 2000 };
            let want = crate::quad::integrate_to_infinity(|t| (-x * t.cosh()).exp() * (nu * t).cosh(), 0.0, cfg)
                .unwrap()
                .value;
            let v = f.eval(re(x)).unwrap();
            assert!((v - re(want)).norm() < 1e-10 * want, "{x}: {v} vs {want}");
        }
    }

    #[test]
    fn degenerate_b_pair() {
        let f = builtin_gform("bessel_k", &[re(0.0)]).unwrap();
        assert!(matches!(slater_expand(&f.params, re(1.0)), Err(Error::Degenerate(_))));
        let f = builtin_gform("bessel_k", &[re(2.0)]).unwrap();
        assert!(matches!(slater_expand(&f.params, re(1.0)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn p_greater_than_q_rejected() {
        let gp = GParams::classical(0, 1, vec![re(0.5)], vec![]).unwrap();
        assert!(matches!(slater_expand(&gp, re(1.0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn p_equals_q_outside_disk() {
        let f = builtin_gform("reciprocal_one_plus_z", &[]).unwrap();
        assert!(matches!(f.eval(re(1.5)), Err(Error::Divergence(_))));
    }

    #[test]
    fn shift_property_scales_by_power() {
        let c = Scalar::new(0.35, 0.1);
        for (name, params) in [
            ("exp", vec![]),
            ("bessel_j_sq", vec![re(0.3)]),
            ("bessel_j_half", vec![re(0.3)]),
            ("bessel_k", vec![re(0.3)]),
            ("reciprocal_one_plus_z", vec![]),
        ] {
            let f = builtin_gform(name, &params).unwrap();
            let z = re(0.45);
            let base = slater_expand(&f.params, z).unwrap().value;
            let shifted = slater_expand(&f.params.shifted(c), z).unwrap().value;
            let y = f.params.argument(z).unwrap();
            let factor = pow(y, c / ratio_f64(f.params.r)).unwrap();
            assert!((shifted - factor * base).norm() < 1e-9 * base.norm(), "{name}");
        }
    }

    #[test]
    fn gauss_r1_identity() {
        let gf = gauss_expand(re(0.3), 1).unwrap();
        assert_eq!(gf.shifts, vec![re(0.3)]);
        assert_eq!(gf.prefactor(Scalar::new(0.7, 0.2)), re(1.0));
    }

    #[test]
    fn gauss_r2_sample() {
        let gf = gauss_expand(re(0.3), 2).unwrap();
        let zeta = Scalar::new(0.7, 0.2);
        let lhs = gf.direct(zeta).unwrap();
        let rhs = gf.eval(zeta).unwrap();
        assert!((lhs - rhs).norm() / lhs.norm() < 1e-10);
    }

    #[test]
    fn gauss_reflected_g3() {
        let gf = gauss_expand_reflected(Scalar::new(2.1, -0.4), 3).unwrap();
        let zeta = Scalar::new(0.15, 0.3);
        let lhs = gf.direct(zeta).unwrap();
        let rhs = gf.eval(zeta).unwrap();
        assert!((lhs - rhs).norm() / lhs.norm() < 1e-10);
    }

    #[test]
    fn gauss_r0_rejected() {
        assert!(gauss_expand(re(1.0), 0).is_err());
    }
}
