use super::{chi, psi_p, ratio_f64, GParams};
use crate::special::{arg, pow};
use crate::{re, Error, Result, Scalar};
use serde::Serialize;
use std::f64::consts::PI;

const REAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    #[serde(rename = "p<q")]
    PLessQ,
    #[serde(rename = "p=q")]
    PEqualQ,
    #[serde(rename = "p=q+1")]
    PEqualQ1,
    #[serde(rename = "p=q+2")]
    PEqualQ2,
    #[serde(rename = "p>q+2")]
    PAboveQ2,
}

impl Branch {
    fn of(p: usize, q: usize) -> Self {
        match p as i64 - q as i64 {
            d if d < 0 => Branch::PLessQ,
            0 => Branch::PEqualQ,
            1 => Branch::PEqualQ1,
            2 => Branch::PEqualQ2,
            _ => Branch::PAboveQ2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Converges,
    Diverges,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    /// Part of the verdict.
    Active,
    /// Evaluated but superseded by a weaker condition.
    Annulled,
    /// Recorded for the trace only.
    Informational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceCheck {
    pub id: &'static str,
    pub condition: String,
    pub holds: bool,
    pub status: CheckStatus,
}

/// Trace of the convergence decision for
/// `1/Gamma(beta) int_0^z (z-t)^{beta-1} t^{alpha-1} G(w t^g, r | a; b) dt`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub branch: Branch,
    pub chi: Option<Scalar>,
    pub psi_p: Option<Scalar>,
    /// `Re alpha + (g/r) min_{k<=m} Re b_k`; `+inf` (JSON `null`) for `m = 0`.
    pub min: f64,
    /// Interior singular point `((-1)^{m+n-p} w^{-1/r})^{r/g}` when `p = q`.
    pub tau0: Option<Scalar>,
    pub checks: Vec<ConvergenceCheck>,
    pub verdict: Verdict,
}

fn is_real(x: Scalar) -> bool {
    x.im.abs() < REAL_TOL * (1.0 + x.norm())
}

fn sign_pow(e: i64) -> f64 {
    if e.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

struct Trace(Vec<ConvergenceCheck>);

impl Trace {
    fn push(&mut self, id: &'static str, condition: String, holds: bool, status: CheckStatus) {
        self.0.push(ConvergenceCheck { id, condition, holds, status });
    }
    fn active(&mut self, id: &'static str, condition: String, holds: bool) {
        self.push(id, condition, holds, CheckStatus::Active);
    }
}

/// Decides convergence of the Riemann–Liouville integral of
/// `t^{alpha-1} G(w t^g, r | a; b)` over `[0, z]` for `g/r > 0`.
///
/// The endpoint `t = 0` is governed by the leading terms of `G` at zero
/// (`min > 0` plus a row-specific condition when `p > q`), `t = z` by
/// `Re beta > 0`, and for `p = q` the point where `w^{1/r} t^{g/r}` reaches
/// `(-1)^{m+n-p}` adds a condition on `psi_p` when it lies on the segment.
/// If that point is `z` itself the weakened `Re(beta + psi_p) > 0` replaces
/// `Re beta > 0`.
///
/// The rewrite `(w t^g)^{-s/r} = (w^{1/r} t^{g/r})^{-s}` is not justified
/// on the branch cut, so `arg w = pi` with `r != 1` yields
/// [`Verdict::Undetermined`].
pub fn check_convergence(gp: &GParams, alpha: Scalar, beta: Scalar, z: Scalar) -> Result<ConvergenceReport> {
    let rho = gp.g / gp.r;
    if *rho.numer() <= 0 {
        return Err(Error::Unsupported(format!("convergence analysis needs g/r > 0, got {rho}")));
    }
    if z == re(0.0) {
        return Err(Error::Param("upper limit z must be nonzero".into()));
    }
    let rho_f = ratio_f64(rho);
    let (m, n, p, q) = (gp.m as i64, gp.n as i64, gp.p as i64, gp.q as i64);
    let branch = Branch::of(gp.p, gp.q);
    let chi = chi(gp);
    let psi = psi_p(gp);
    let min = gp.b[..gp.m].iter().map(|b| b.re).fold(f64::INFINITY, f64::min);
    let min = if min.is_finite() { alpha.re + rho_f * min } else { f64::INFINITY };
    let w_inv = pow(gp.w, re(-1.0 / ratio_f64(gp.r)))?;

    let mut t = Trace(Vec::new());
    let beta_pos = beta.re > 0.0;
    let min_check = |t: &mut Trace| t.active("min_pos", format!("min = {min} > 0"), min > 0.0);

    let mut tau0 = None;
    match branch {
        Branch::PLessQ => {
            t.active("re_beta_pos", format!("Re beta = {} > 0", beta.re), beta_pos);
            min_check(&mut t);
        }
        Branch::PEqualQ => {
            let psi = psi.expect("p = q");
            min_check(&mut t);
            let tau = pow(sign_pow(m + n - p) * w_inv, re(1.0 / rho_f))?;
            tau0 = Some(tau);
            let ratio = tau / z;
            let on_ray = is_real(ratio);
            t.push("tau0_real", format!("tau0 = {tau} on the ray of z"), on_ray, CheckStatus::Informational);
            let at_end = on_ray && (ratio.re - 1.0).abs() < REAL_TOL * (1.0 + ratio.norm());
            let inside = on_ray && !at_end && ratio.re > 0.0 && ratio.re < 1.0;
            if at_end {
                t.push("re_beta_pos", format!("Re beta = {} > 0", beta.re), beta_pos, CheckStatus::Annulled);
                let s = beta + psi;
                t.active("re_beta_psi_pos", format!("tau0 = z: Re(beta + psi_p) = {} > 0", s.re), s.re > 0.0);
            } else {
                t.active("re_beta_pos", format!("Re beta = {} > 0", beta.re), beta_pos);
                if inside {
                    t.active("re_psi_gt_m1", format!("0 < tau0 < z: Re psi_p = {} > -1", psi.re), psi.re > -1.0);
                }
            }
        }
        Branch::PEqualQ1 => {
            t.active("re_beta_pos", format!("Re beta = {} > 0", beta.re), beta_pos);
            min_check(&mut t);
            let v = sign_pow(q - m - n) * w_inv;
            t.active("exp_decays", format!("Re((-1)^(q-m-n) w^(-1/r)) = {} <= 0", v.re), v.re <= REAL_TOL);
        }
        Branch::PEqualQ2 => {
            t.active("re_beta_pos", format!("Re beta = {} > 0", beta.re), beta_pos);
            min_check(&mut t);
            let v = sign_pow(q - m - n - 1) * w_inv;
            let sqrt_real = is_real(v) && v.re >= 0.0;
            t.active("sqrt_real", format!("sqrt((-1)^(q-m-n-1) w^(-1/r)) real, radicand {v}"), sqrt_real);
            t.push("g_over_r_real", format!("g/r = {rho} real"), true, CheckStatus::Informational);
            let c = alpha / rho_f + chi.expect("p != q");
            t.active("cos_exponent", format!("Re(alpha r/g + chi) = {} < 1/2", c.re), c.re < 0.5);
        }
        Branch::PAboveQ2 => {
            t.active("re_beta_pos", format!("Re beta = {} > 0", beta.re), beta_pos);
            min_check(&mut t);
            // g/(r (q-p)) < 0 always holds here since g/r > 0
            let wr = pow(gp.w, re(1.0 / ratio_f64(gp.r)))?;
            let v = (p - q) as f64 * pow(-wr, re(1.0 / (q - p) as f64))?;
            t.active("root_exp_decays", format!("Re((p-q)(-w^(1/r))^(1/(q-p))) = {} <= 0", v.re), v.re <= REAL_TOL);
        }
    }

    let undetermined = (arg(gp.w) - PI).abs() == 0.0 && ratio_f64(gp.r) != 1.0;
    let verdict = if undetermined {
        Verdict::Undetermined
    } else if t.0.iter().filter(|c| c.status == CheckStatus::Active).all(|c| c.holds) {
        Verdict::Converges
    } else {
        Verdict::Diverges
    };
    Ok(ConvergenceReport { branch, chi, psi_p: psi, min, tau0, checks: t.0, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meijer::builtin_gform;
    use num_rational::Rational64;

    fn k0() -> GParams {
        builtin_gform("bessel_k", &[re(0.0)]).unwrap().params
    }

    fn report(gp: &GParams, a: f64, b: f64) -> ConvergenceReport {
        check_convergence(gp, re(a), re(b), re(1.0)).unwrap()
    }

    #[test]
    fn k0_rows() {
        let r = report(&k0(), 1.0, 0.5);
        assert_eq!(r.branch, Branch::PLessQ);
        assert_eq!(r.min, 1.0);
        assert_eq!(r.verdict, Verdict::Converges);
        assert_eq!(report(&k0(), -0.5, 0.5).verdict, Verdict::Diverges);
        assert_eq!(report(&k0(), 0.5, -0.5).verdict, Verdict::Diverges);
    }

    #[test]
    fn tau0_at_endpoint_weakens_beta() {
        // G^{1,1}_{1,1}(-t | 0; 0) = 1/(1 - t), singular at t = 1 = z
        let mut gp = builtin_gform("reciprocal_one_plus_z", &[]).unwrap().params;
        gp.w = re(-1.0);
        let r = report(&gp, 1.0, 1.5);
        assert_eq!(r.branch, Branch::PEqualQ);
        assert!((r.tau0.unwrap() - re(1.0)).norm() < 1e-15);
        let annulled = r.checks.iter().find(|c| c.id == "re_beta_pos").unwrap();
        assert_eq!(annulled.status, CheckStatus::Annulled);
        assert!(r.checks.iter().any(|c| c.id == "re_beta_psi_pos" && c.holds));
        assert_eq!(r.verdict, Verdict::Converges);
        assert_eq!(report(&gp, 1.0, 0.7).verdict, Verdict::Diverges);
    }

    #[test]
    fn tau0_inside_segment() {
        // 1/(1 - 2t) on [0, 1]: tau0 = 1/2, psi_p = -1 fails Re psi_p > -1
        let mut gp = builtin_gform("reciprocal_one_plus_z", &[]).unwrap().params;
        gp.w = re(-2.0);
        let r = report(&gp, 1.0, 1.0);
        assert!(r.checks.iter().any(|c| c.id == "re_psi_gt_m1" && !c.holds));
        assert_eq!(r.verdict, Verdict::Diverges);
        // (1 - 2t)^{-1/2}: a = 1/2, b = 0 gives psi_p = -1/2
        let gp = GParams::new(1, 1, vec![re(0.5)], vec![re(0.0)], re(-2.0), Rational64::from(1), Rational64::from(1)).unwrap();
        assert_eq!(report(&gp, 1.0, 1.0).verdict, Verdict::Converges);
    }

    #[test]
    fn tau0_off_segment() {
        let gp = builtin_gform("reciprocal_one_plus_z", &[]).unwrap().params;
        let r = report(&gp, 1.0, 1.0);
        assert!((r.tau0.unwrap() - re(-1.0)).norm() < 1e-15);
        assert!(r.checks.iter().all(|c| c.id != "re_psi_gt_m1"));
        assert_eq!(r.verdict, Verdict::Converges);
    }

    #[test]
    fn m_zero_min_is_infinite() {
        let gp = GParams::classical(0, 1, vec![re(0.5)], vec![re(0.2)]).unwrap();
        let r = report(&gp, -3.0, 1.0);
        assert_eq!(r.min, f64::INFINITY);
    }

    #[test]
    fn p_q_plus_one_exponential_sign() {
        // G^{0,1}_{1,0}(w t | a; -) = (w t)^{a-1} e^{-1/(w t)}
        let gp = GParams::new(0, 1, vec![re(0.5)], vec![], re(1.0), Rational64::from(1), Rational64::from(1)).unwrap();
        let r = report(&gp, 0.5, 1.0);
        assert_eq!(r.branch, Branch::PEqualQ1);
        assert_eq!(r.verdict, Verdict::Converges);
        let mut gp = gp;
        gp.w = re(-1.0);
        assert_eq!(report(&gp, 0.5, 1.0).verdict, Verdict::Diverges);
    }

    #[test]
    fn p_q_plus_two_row() {
        let gp = GParams::classical(0, 0, vec![re(0.5), re(0.5)], vec![]).unwrap();
        let r = report(&gp, 0.1, 1.0);
        assert_eq!(r.branch, Branch::PEqualQ2);
        assert!(r.checks.iter().any(|c| c.id == "cos_exponent"));
    }

    #[test]
    fn undetermined_on_cut() {
        let gp = GParams::new(1, 0, vec![], vec![re(0.0), re(0.0)], re(-0.5), Rational64::from(1), Rational64::new(1, 2)).unwrap();
        assert_eq!(report(&gp, 1.0, 1.0).verdict, Verdict::Undetermined);
    }

    #[test]
    fn negative_g_over_r_unsupported() {
        let mut gp = k0();
        gp.g = Rational64::from(-1);
        assert!(matches!(check_convergence(&gp, re(1.0), re(1.0), re(1.0)), Err(Error::Unsupported(_))));
    }
}
