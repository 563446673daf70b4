//! Exact rules for `d^alpha (z^lambda log^k z)`.
//!
//! With `G(e) = Gamma(lambda+1+e) / Gamma(lambda+1-alpha+e) = sum_{m>=-1} c_m e^m`
//! the finite-part differintegral is
//! `sum_{j=0}^{k+1} k!/j! c_{k-j} z^(lambda-alpha) log^j z`.
//! The Laurent coefficients are computed exactly at poles (as ratios of
//! finite products) and from polygamma values elsewhere.

use super::FracOrder;
use crate::special::{as_int, as_nonpos_int, gamma_ratio, polygamma, rgamma};
use crate::{Result, Scalar};

type Ps = Vec<Scalar>;

fn zero() -> Scalar {
    Scalar::new(0.0, 0.0)
}

fn ps_mul(a: &[Scalar], b: &[Scalar], len: usize) -> Ps {
    let mut out = vec![zero(); len];
    for (i, &x) in a.iter().enumerate().take(len) {
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

// exp of a series with zero constant term
fn ps_exp(a: &[Scalar], len: usize) -> Ps {
    let mut e = vec![zero(); len];
    e[0] = Scalar::new(1.0, 0.0);
    for n in 1..len {
        let mut s = zero();
        for k in 1..=n {
            if k < a.len() {
                s += a[k] * e[n - k] * k as f64;
            }
        }
        e[n] = s / n as f64;
    }
    e
}

// sum_{n>=1} psi^(n-1)(x) e^n / n!, the Taylor series of ln Gamma(x+e) - ln Gamma(x)
fn log_gamma_taylor(x: Scalar, len: usize) -> Result<Ps> {
    let mut out = vec![zero(); len];
    let mut fact = 1.0;
    for n in 1..len {
        fact *= n as f64;
        out[n] = polygamma(n as u32 - 1, x)? / fact;
    }
    Ok(out)
}

// prod_{j=1}^{a} (e - j)
fn falling_poly(a: i64) -> Ps {
    let mut p = vec![Scalar::new(1.0, 0.0)];
    for j in 1..=a {
        let mut q = vec![zero(); p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            q[i + 1] += c;
            q[i] -= c * j as f64;
        }
        p = q;
    }
    p
}

// 1 / prod_{j=1}^{a} (e - j) as a power series
fn inv_falling_poly(a: i64, len: usize) -> Ps {
    let mut out = vec![zero(); len];
    out[0] = Scalar::new(1.0, 0.0);
    for j in 1..=a {
        let jf = j as f64;
        // 1/(e - j) = -(1/j) sum (e/j)^n
        let geo: Ps = (0..len).map(|n| Scalar::new(-jf.powi(-(n as i32) - 1), 0.0)).collect();
        out = ps_mul(&out, &geo, len);
    }
    out
}

/// Laurent data `G(e) = e^shift * P(e)` with `P` a power series of length `len`.
fn laurent(lambda: Scalar, alpha: Scalar, len: usize) -> Result<(i32, Ps)> {
    let a = lambda + 1.0;
    let b = lambda + 1.0 - alpha;
    if let Some(n) = as_int(alpha).filter(|&n| n > 0) {
        // Gamma(lambda+1+e)/Gamma(lambda+1-n+e) = prod_{j=0}^{n-1} (lambda - j + e)
        let mut p = vec![Scalar::new(1.0, 0.0)];
        for j in 0..n {
            let r = lambda - j as f64;
            let mut q = vec![zero(); p.len() + 1];
            for (i, &c) in p.iter().enumerate() {
                q[i + 1] += c;
                q[i] += c * r;
            }
            p = q;
        }
        p.resize(len.max(p.len()), zero());
        p.truncate(len);
        return Ok((0, p));
    }
    let one_plus = |len| log_gamma_taylor(Scalar::new(1.0, 0.0), len);
    match (as_nonpos_int(a), as_nonpos_int(b)) {
        (None, None) => {
            let la = log_gamma_taylor(a, len)?;
            let lb = log_gamma_taylor(b, len)?;
            let d: Ps = la.iter().zip(&lb).map(|(x, y)| x - y).collect();
            let c0 = gamma_ratio(a, b)?;
            Ok((0, ps_exp(&d, len).into_iter().map(|x| x * c0).collect()))
        }
        (Some(na), Some(nb)) => {
            // Gamma(-A+e)/Gamma(-B+e) = prod_{j<=B}(e-j) / prod_{j<=A}(e-j)
            let num = falling_poly(-nb);
            let den = inv_falling_poly(-na, len);
            Ok((0, ps_mul(&num, &den, len)))
        }
        (Some(na), None) => {
            // e^-1 Gamma(1+e) / prod_{j<=A}(e-j) / Gamma(b+e)
            let g1 = ps_exp(&one_plus(len)?, len);
            let inv = inv_falling_poly(-na, len);
            let lb: Ps = log_gamma_taylor(b, len)?.into_iter().map(|x| -x).collect();
            let rb: Ps = ps_exp(&lb, len).into_iter().map(|x| x * rgamma(b)).collect();
            Ok((-1, ps_mul(&ps_mul(&g1, &inv, len), &rb, len)))
        }
        (None, Some(nb)) => {
            // e Gamma(a+e) prod_{j<=B}(e-j) / Gamma(1+e)
            let la = log_gamma_taylor(a, len)?;
            let l1 = one_plus(len)?;
            let d: Ps = la.iter().zip(&l1).map(|(x, y)| x - y).collect();
            let ga = crate::special::gamma(a)?;
            let g: Ps = ps_exp(&d, len).into_iter().map(|x| x * ga).collect();
            Ok((1, ps_mul(&g, &falling_poly(-nb), len)))
        }
    }
}

/// Coefficients of `z^(lambda-alpha) log^j z`, `j = 0..=k+1`, in
/// `d^alpha (z^lambda log^k z)` for `alpha` not a negative integer.
fn direct(lambda: Scalar, k: u32, alpha: Scalar) -> Result<Vec<Scalar>> {
    let k = k as usize;
    let len = k + 2;
    let (shift, p) = laurent(lambda, alpha, len)?;
    let c = |m: i64| -> Scalar {
        let idx = m - shift as i64;
        if idx < 0 || idx as usize >= p.len() {
            zero()
        } else {
            p[idx as usize]
        }
    };
    let out = (0..=k + 1)
        .map(|j| {
            // k!/j!
            let w = if j <= k { ((j + 1)..=k).fold(1.0, |acc, i| acc * i as f64) } else { 1.0 / (k + 1) as f64 };
            c(k as i64 - j as i64) * w
        })
        .collect();
    Ok(out)
}

/// Coefficients `[c_0, ..., c_{k'}]` of `z^(lambda-alpha) log^j z` in
/// `d^alpha (z^lambda log^k z)`.
///
/// Negative integer orders are evaluated as repeated integration of order
/// one, each step taking the finite part.
pub fn power_log_coeffs(lambda: Scalar, k: u32, alpha: &FracOrder) -> Result<Vec<Scalar>> {
    let a = alpha.alpha;
    if alpha.is_zero() {
        let mut v = vec![zero(); k as usize + 1];
        v[k as usize] = Scalar::new(1.0, 0.0);
        return Ok(v);
    }
    match as_int(a) {
        Some(n) if n < 0 => {
            let mut cur: Vec<Scalar> = {
                let mut v = vec![zero(); k as usize + 1];
                v[k as usize] = Scalar::new(1.0, 0.0);
                v
            };
            let mut mu = lambda;
            let minus_one = Scalar::new(-1.0, 0.0);
            for _ in 0..(-n) {
                let mut next = vec![zero(); cur.len() + 1];
                for (j, &cj) in cur.iter().enumerate() {
                    if cj == zero() {
                        continue;
                    }
                    for (i, v) in direct(mu, j as u32, minus_one)?.into_iter().enumerate() {
                        next[i] += cj * v;
                    }
                }
                cur = next;
                mu += 1.0;
            }
            Ok(trim(cur))
        }
        _ => Ok(trim(direct(lambda, k, a)?)),
    }
}

fn trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.len() > 1 && *v.last().unwrap() == zero() {
        v.pop();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{digamma, gamma, harmonic, EULER_GAMMA};

    fn r(x: f64) -> Scalar {
        Scalar::new(x, 0.0)
    }

    fn coeffs(l: f64, k: u32, a: f64) -> Vec<Scalar> {
        power_log_coeffs(r(l), k, &FracOrder::new(r(a))).unwrap()
    }

    fn close(a: &[Scalar], b: &[f64], tol: f64) -> bool {
        let n = a.len().max(b.len());
        (0..n).all(|i| {
            let x = a.get(i).copied().unwrap_or(zero());
            let y = r(b.get(i).copied().unwrap_or(0.0));
            (x - y).norm() <= tol * y.norm().max(1.0)
        })
    }

    #[test]
    fn series_helpers() {
        // exp(e) via ps_exp
        let e = ps_exp(&[zero(), r(1.0)], 6);
        assert!((e[5].re - 1.0 / 120.0).abs() < 1e-17);
        // 1/((e-1)(e-2)) * (e-1)(e-2) = 1
        let p = ps_mul(&falling_poly(2), &inv_falling_poly(2, 6), 6);
        assert!(close(&p, &[1.0], 1e-15));
    }

    #[test]
    fn log_derivative_is_reciprocal() {
        assert!(close(&coeffs(0.0, 1, 1.0), &[1.0], 0.0));
    }

    #[test]
    fn integral_of_log() {
        // int t log t = z^2 log z / 2 - z^2 / 4
        assert!(close(&coeffs(1.0, 1, -1.0), &[-0.25, 0.5], 1e-15));
    }

    #[test]
    fn reciprocal_integrates_to_log() {
        assert!(close(&coeffs(-1.0, 0, -1.0), &[0.0, 1.0], 0.0));
        assert!(close(&coeffs(-2.0, 0, -1.0), &[-1.0], 0.0));
    }

    #[test]
    fn log_of_constant_matches_digamma_form() {
        // d^a log z = z^-a (log z - gamma - psi(1-a)) / Gamma(1-a)
        for a in [0.5, -0.3, 1.7, -2.5] {
            let got = coeffs(0.0, 1, a);
            let g = rgamma(r(1.0 - a));
            let want0 = g * (-EULER_GAMMA - digamma(r(1.0 - a)).unwrap());
            assert!((got[0] - want0).norm() < 1e-13);
            assert!((got[1] - g).norm() < 1e-15);
        }
    }

    #[test]
    fn regular_log_case_matches_harmonic_form() {
        // Gamma(l+1)/Gamma(l+1-a) (H_l - H_{l-a} + log z)
        for (l, a) in [(0.7, 0.5), (2.0, -0.4), (1.3, 1.5)] {
            let got = coeffs(l, 1, a);
            let c = gamma_ratio(r(l + 1.0), r(l + 1.0 - a)).unwrap();
            let h = harmonic(r(l)).unwrap() - harmonic(r(l - a)).unwrap();
            assert!((got[0] - c * h).norm() < 1e-13);
            assert!((got[1] - c).norm() < 1e-14);
        }
    }

    #[test]
    fn pole_branch_log_term() {
        // lambda = -n, alpha non-integer: (-1)^(n-1) (psi(n) - psi(1-n-a) + log z) / ((n-1)! Gamma(1-n-a))
        for (n, a) in [(1i32, 0.5), (2, 0.5), (3, -0.7), (2, 1.3)] {
            let got = coeffs(-(n as f64), 0, a);
            let fact = (1..n).fold(1.0, |acc, k| acc * k as f64);
            let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
            let b = r(1.0 - n as f64 - a);
            let lead = r(sign / fact) / gamma(b).unwrap();
            assert!((got[1] - lead).norm() < 1e-14);
            let c0 = lead * (digamma(r(n as f64)).unwrap() - digamma(b).unwrap());
            assert!((got[0] - c0).norm() < 1e-13);
        }
    }

    // lambda = -n, k = 1:
    // (-1)^(lambda+1) / (2 Gamma(-lambda) Gamma(lambda-alpha+1)) *
    //   (log^2 z + pi^2/3 - psi'(lambda-alpha+1) - psi'(-lambda) + d (d + 2 log z)),
    // d = psi(-lambda) - psi(lambda-alpha+1)
    #[test]
    fn pole_branch_first_log_power() {
        use crate::special::polygamma;
        for (l, a) in [(-1.0, 0.5), (-2.0, 0.5), (-1.0, -0.3), (-3.0, 1.7)] {
            let got = coeffs(l, 1, a);
            let b = r(l - a + 1.0);
            let sign = if (l as i64 + 1).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let pre = r(sign / 2.0) / (gamma(r(-l)).unwrap() * gamma(b).unwrap());
            let d = digamma(r(-l)).unwrap() - digamma(b).unwrap();
            let pi2 = std::f64::consts::PI.powi(2);
            let c0 = pre * (pi2 / 3.0 - polygamma(1, b).unwrap() - polygamma(1, r(-l)).unwrap() + d * d);
            assert!((got[2] - pre).norm() < 1e-14);
            assert!((got[1] - pre * d * 2.0).norm() < 1e-13);
            assert!((got[0] - c0).norm() < 1e-12 * c0.norm().max(1.0), "{l} {a}");
        }
    }

    #[test]
    fn integer_branch_with_falling_product() {
        // (-1)^a (-lambda)_a for lambda < a, both integers
        let got = coeffs(-3.0, 0, 2.0);
        assert!(close(&got, &[12.0], 0.0));
        let got = coeffs(-5.0, 0, -2.0);
        assert!(close(&got, &[1.0 / 12.0], 1e-15));
    }

    #[test]
    fn repeated_integration_of_inverse_square() {
        let got = coeffs(-2.0, 0, -7.0);
        assert!(close(&got, &[137.0 / 7200.0, -1.0 / 120.0], 1e-14));
    }

    #[test]
    fn order_zero_is_identity() {
        assert_eq!(coeffs(0.3, 2, 0.0), vec![zero(), zero(), r(1.0)]);
    }

    // The coefficient of eps^k of G(eps) z^eps, computed from a finite
    // difference in lambda, reproduces the k = 2 rule.
    #[test]
    fn second_log_power_against_lambda_differences() {
        let (l, a) = (0.6, 0.4);
        let z: f64 = 1.7;
        let f = |x: f64| (gamma_ratio(r(x + 1.0), r(x + 1.0 - a)).unwrap() * z.powf(x - a)).re;
        let h = 1e-3;
        let d2 = (f(l + h) - 2.0 * f(l) + f(l - h)) / (h * h);
        let got = coeffs(l, 2, a);
        let lz = z.ln();
        let v = (got[0] + got[1] * lz + got[2] * lz * lz) * z.powf(l - a);
        assert!((v.re - d2).abs() < 1e-5 * d2.abs().max(1.0));
    }
}
