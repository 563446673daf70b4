//! Independent numerical oracles: Grünwald–Letnikov sums and finite-part
//! quadrature.

use crate::quad::{integrate, integrate_to_infinity, QuadConfig};
use crate::special::{as_nonpos_int, gamma_ratio};
use crate::{re, Error, Result};

/// Step, number of terms and evaluation point of a Grünwald–Letnikov sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlConfig {
    pub h: f64,
    pub n_terms: usize,
    pub x: f64,
}

impl GlConfig {
    /// Smallest `n_terms` covering `[0, x]`.
    pub fn covering(h: f64, x: f64) -> Self {
        let n = if h > 0.0 { (x / h).ceil() as usize } else { 0 };
        Self { h, n_terms: n, x }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0) || !self.h.is_finite() {
            return Err(Error::Step(format!("h = {}", self.h)));
        }
        let covered = self.h * self.n_terms as f64;
        if covered < self.x * (1.0 - 1e-12) {
            return Err(Error::Support { covered, x: self.x });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlResult {
    pub value: f64,
    /// `2 |GL(h) - GL(h/2)|`, the first-order step-halving estimate.
    pub error_estimate: f64,
    pub terms: usize,
}

// Neumaier compensated sum.
#[derive(Default)]
struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.c
    }
}

fn gl_sum(f: &impl Fn(f64) -> f64, x: f64, alpha: f64, h: f64, n: usize) -> f64 {
    let mut acc = Compensated::default();
    let mut w = 1.0;
    for k in 0..=n {
        if k > 0 {
            w *= 1.0 - (alpha + 1.0) / k as f64;
        }
        let t = x - k as f64 * h;
        // f is taken as zero on (-inf, 0]
        if t <= 0.0 {
            break;
        }
        acc.add(w * f(t));
    }
    acc.total() * h.powf(-alpha)
}

/// `h^-alpha sum_{k=0}^{n} (-1)^k C(alpha, k) f(x - k h)` with `f = 0` on
/// `(-inf, 0]`.
pub fn gl_differint(f: impl Fn(f64) -> f64, x: f64, alpha: f64, cfg: GlConfig) -> Result<GlResult> {
    cfg.validate()?;
    let v = gl_sum(&f, x, alpha, cfg.h, cfg.n_terms);
    let v2 = gl_sum(&f, x, alpha, cfg.h / 2.0, cfg.n_terms * 2);
    if !v.is_finite() {
        return Err(Error::NonFinite("gl_differint"));
    }
    Ok(GlResult { value: v, error_estimate: 2.0 * (v - v2).abs(), terms: cfg.n_terms + 1 })
}

/// `int_0^1 u^a (1-u)^b du` for `a, b > -1`, with the endpoint
/// singularities removed by `u = v^(1/(a+1))` and `1-u = w^(1/(b+1))`.
fn beta_integral(a: f64, b: f64) -> Result<f64> {
    let cfg = QuadConfig { abs_tol: 1e-16, rel_tol: 1e-14, max_intervals: 4000 };
    let pa = 1.0 / (a + 1.0);
    let pb = 1.0 / (b + 1.0);
    let left = integrate(|v| (1.0 - v.powf(pa)).powf(b), 0.0, 0.5f64.powf(a + 1.0), cfg)?.value * pa;
    let right = integrate(|w| (1.0 - w.powf(pb)).powf(a), 0.0, 0.5f64.powf(b + 1.0), cfg)?.value * pb;
    Ok(left + right)
}

/// Finite part of `int_0^z t^lambda (z-t)^(-alpha-1) dt` for `alpha < 0`.
///
/// With `n` the least nonnegative integer such that `lambda > -n-1`, the
/// kernel is split by `1/(z-t) = z^-1 sum_{k=1}^n (t/z)^(k-1) + (t/z)^n/(z-t)`;
/// the remainder integral converges and is computed numerically, the
/// other `n` pieces are beta integrals.
pub fn fp_power_integral(lambda: f64, alpha: f64, z: f64) -> Result<f64> {
    if !(alpha < 0.0) {
        return Err(Error::Precondition(format!("alpha = {alpha} must be negative")));
    }
    if !(z > 0.0) {
        return Err(Error::Precondition(format!("z = {z} must be positive")));
    }
    if as_nonpos_int(re(lambda + 1.0)).is_some() {
        return Err(Error::Precondition(format!("lambda = {lambda} is a negative integer")));
    }
    let mut n = 0usize;
    while lambda <= -(n as f64) - 1.0 {
        n += 1;
    }
    let a = lambda + n as f64;
    let b = -alpha - 1.0;
    let remainder = z.powf(-(n as f64)) * z.powf(a + b + 1.0) * beta_integral(a, b)?;
    let mut correction = 0.0;
    for k in 1..=n {
        let l = lambda + k as f64;
        // Gamma(1-alpha) Gamma(l) / Gamma(l + 1 - alpha)
        let c = gamma_ratio(re(l), re(l + 1.0 - alpha))?.re * crate::special::gamma(re(1.0 - alpha))?.re;
        correction += c;
    }
    Ok(remainder + correction * z.powf(lambda - alpha))
}

/// ε-sequence and the accepted extrapolated value of a finite-part integral.
#[derive(Debug, Clone, PartialEq)]
pub struct HadamardResult {
    pub value: f64,
    /// `(eps, J(eps))` for every cutoff evaluated.
    pub raw: Vec<(f64, f64)>,
    /// Richardson-extrapolated estimates, one per cutoff after the first.
    pub estimates: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct HadamardConfig {
    pub eps0: f64,
    pub max_halvings: usize,
    pub tol: f64,
}

impl Default for HadamardConfig {
    fn default() -> Self {
        Self { eps0: 1e-2, max_halvings: 24, tol: 1e-9 }
    }
}

/// Hadamard finite part of `int_0^inf x^-n f(x) dx` for `f` analytic at 0.
///
/// `derivs[k] = f^(k)(0)` for `k < n`. The cutoff integral
/// `J(eps) = int_eps^inf x^-n f - sum_{k<=n-2} eps^(k+1-n) f^(k)(0) / (k! (n-1-k)) +
/// log(eps) f^(n-1)(0) / (n-1)!` is a power series in `eps`, so halving `eps` and running a Richardson
/// table converges to the limit.
pub fn hadamard_fp_demo(f: impl Fn(f64) -> f64, derivs: &[f64], n: usize, cfg: HadamardConfig) -> Result<HadamardResult> {
    if n == 0 || derivs.len() < n {
        return Err(Error::Precondition(format!("need n >= 1 and {n} derivatives at 0")));
    }
    let qcfg = QuadConfig { abs_tol: 1e-15, rel_tol: 1e-13, max_intervals: 4000 };
    let nf = n as i32;
    let tail = integrate_to_infinity(|x| x.powi(-nf) * f(x), 1.0, qcfg)?.value;
    let fact = |k: usize| (1..=k).fold(1.0, |a, i| a * i as f64);
    let j = |eps: f64| -> Result<f64> {
        // x = e^s on [eps, 1]
        let head = integrate(|s| ((1 - nf) as f64 * s).exp() * f(s.exp()), eps.ln(), 0.0, qcfg)?.value;
        let mut v = head + tail;
        for (k, d) in derivs.iter().enumerate().take(n - 1) {
            v -= eps.powi(k as i32 + 1 - nf) * d / (fact(k) * (n - 1 - k) as f64);
        }
        Ok(v + eps.ln() * derivs[n - 1] / fact(n - 1))
    };
    let mut raw = Vec::new();
    let mut table: Vec<Vec<f64>> = Vec::new();
    let mut estimates = Vec::new();
    let mut eps = cfg.eps0;
    for i in 0..=cfg.max_halvings {
        let v = j(eps)?;
        raw.push((eps, v));
        let mut row = vec![v];
        for p in 1..=i {
            let s = 2f64.powi(p as i32);
            let prev = table[i - 1][p - 1];
            row.push(row[p - 1] + (row[p - 1] - prev) / (s - 1.0));
        }
        if i >= 1 {
            let best = *row.last().unwrap();
            estimates.push(best);
            if estimates.len() >= 2 {
                let d = (best - estimates[estimates.len() - 2]).abs();
                if d < cfg.tol * best.abs().max(1.0) {
                    return Ok(HadamardResult { value: best, raw, estimates });
                }
            }
        }
        table.push(row);
        eps /= 2.0;
    }
    Err(Error::Extrapolation(format!("no agreement to {} after {} halvings", cfg.tol, cfg.max_halvings)))
}
