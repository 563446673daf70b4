//! Truncated generalized power-logarithmic series
//! `sum c * z^(b+n) * log^k z`.

use crate::special::{self, as_int, gamma_ratio, harmonic, rgamma, EULER_GAMMA};
use crate::{Error, Result, Scalar};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Tolerance for treating two exponents as equal.
pub const EXPONENT_TOL: f64 = 1e-12;

/// One term `coeff * z^(base_exp + offset) * log^log_pow z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLogTerm {
    pub coeff: Scalar,
    #[serde(rename = "base")]
    pub base_exp: Scalar,
    pub offset: u32,
    #[serde(rename = "logpow")]
    pub log_pow: u32,
}

impl PowerLogTerm {
    pub fn new(coeff: Scalar, base_exp: Scalar, offset: u32, log_pow: u32) -> Self {
        Self { coeff, base_exp, offset, log_pow }
    }

    /// The full exponent `base_exp + offset`.
    pub fn exponent(&self) -> Scalar {
        self.base_exp + self.offset as f64
    }

    pub fn eval(&self, z: Scalar) -> Result<Scalar> {
        let e = self.exponent();
        if z == Scalar::new(0.0, 0.0) {
            return match as_int(e) {
                Some(n) if n >= 0 && self.log_pow == 0 => Ok(if n == 0 { self.coeff } else { Scalar::new(0.0, 0.0) }),
                _ => Err(Error::BranchPoint(format!("z^({e}) log^{} z at z = 0", self.log_pow))),
            };
        }
        let mut v = self.coeff * special::pow(z, e)?;
        if self.log_pow > 0 {
            v *= special::ln(z)?.powu(self.log_pow);
        }
        Ok(v)
    }

    fn same_key(&self, other: &Self) -> bool {
        self.offset == other.offset
            && self.log_pow == other.log_pow
            && (self.base_exp - other.base_exp).norm() <= EXPONENT_TOL * self.base_exp.norm().max(1.0)
    }

    fn order_key(&self, other: &Self) -> Ordering {
        let (a, b) = (self.exponent(), other.exponent());
        a.re.total_cmp(&b.re)
            .then(self.log_pow.cmp(&other.log_pow))
            .then(a.im.total_cmp(&b.im))
            .then(self.offset.cmp(&other.offset))
    }
}

/// A finite sum of [`PowerLogTerm`]s.
///
/// `truncation_order` is the largest offset known exactly; `None` marks an
/// exact finite expression such as a polynomial or a single power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLogSeries {
    pub terms: Vec<PowerLogTerm>,
    #[serde(rename = "order")]
    pub truncation_order: Option<u32>,
    #[serde(rename = "tag")]
    pub source_tag: String,
}

fn min_order(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl PowerLogSeries {
    pub fn new(terms: Vec<PowerLogTerm>, truncation_order: Option<u32>, tag: impl Into<String>) -> Self {
        Self { terms, truncation_order, source_tag: tag.into() }.normalize()
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new(), truncation_order: None, source_tag: "0".into() }
    }

    /// The exact single term `c * z^b`.
    pub fn monomial(c: Scalar, b: Scalar) -> Self {
        Self::new(vec![PowerLogTerm::new(c, b, 0, 0)], None, format!("({c})*z^({b})"))
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![PowerLogTerm::new(c, Scalar::new(0.0, 0.0), 0, 0)], None, format!("{c}"))
    }

    /// Merge duplicate keys, drop zero coefficients and terms beyond the
    /// truncation order, and sort by `(Re exponent, log power)`.
    pub fn normalize(mut self) -> Self {
        let mut out: Vec<PowerLogTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            if self.truncation_order.is_some_and(|n| t.offset > n) {
                continue;
            }
            match out.iter_mut().find(|u| u.same_key(&t)) {
                Some(u) => u.coeff += t.coeff,
                None => out.push(t),
            }
        }
        out.retain(|t| t.coeff != Scalar::new(0.0, 0.0));
        out.sort_by(|a, b| a.order_key(b));
        self.terms = out;
        self
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.source_tag = tag.into();
        self
    }

    pub fn eval(&self, z: Scalar) -> Result<Scalar> {
        let mut s = Scalar::new(0.0, 0.0);
        for t in &self.terms {
            s += t.eval(z)?;
        }
        special::finite(s, "series eval")
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::new(
            terms,
            min_order(self.truncation_order, other.truncation_order),
            format!("({})+({})", self.source_tag, other.source_tag),
        )
    }

    pub fn scale(&self, c: Scalar) -> Self {
        let terms = self.terms.iter().map(|t| PowerLogTerm { coeff: t.coeff * c, ..*t }).collect();
        Self::new(terms, self.truncation_order, format!("({c})*({})", self.source_tag))
    }

    pub fn neg(&self) -> Self {
        self.scale(Scalar::new(-1.0, 0.0))
    }

    /// Cauchy product: offsets and log powers add, base exponents add.
    pub fn multiply(&self, other: &Self) -> Self {
        let order = min_order(self.truncation_order, other.truncation_order);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let offset = a.offset + b.offset;
                if order.is_some_and(|n| offset > n) {
                    continue;
                }
                terms.push(PowerLogTerm::new(a.coeff * b.coeff, a.base_exp + b.base_exp, offset, a.log_pow + b.log_pow));
            }
        }
        Self::new(terms, order, format!("({})*({})", self.source_tag, other.source_tag))
    }

    /// Sum of coefficients of all terms with exponent `e` and log power `k`.
    pub fn coefficient(&self, e: Scalar, k: u32) -> Scalar {
        self.terms
            .iter()
            .filter(|t| t.log_pow == k && (t.exponent() - e).norm() <= EXPONENT_TOL * e.norm().max(1.0))
            .map(|t| t.coeff)
            .sum()
    }

    /// Terms regrouped by `(exponent, log power)`, ignoring how the exponent
    /// splits into base and offset.
    pub fn by_exponent(&self) -> Vec<(Scalar, u32, Scalar)> {
        let mut out: Vec<(Scalar, u32, Scalar)> = Vec::new();
        for t in &self.terms {
            let e = t.exponent();
            match out
                .iter_mut()
                .find(|(f, k, _)| *k == t.log_pow && (*f - e).norm() <= EXPONENT_TOL * e.norm().max(1.0))
            {
                Some(slot) => slot.2 += t.coeff,
                None => out.push((e, t.log_pow, t.coeff)),
            }
        }
        out
    }

    /// Largest coefficient difference between two series after grouping by
    /// exponent, relative to `max(1, |coefficient|)`.
    pub fn coefficient_distance(&self, other: &Self) -> f64 {
        let a = self.by_exponent();
        let b = other.by_exponent();
        let mut worst: f64 = 0.0;
        for (e, k, c) in &a {
            let d = other.coefficient(*e, *k);
            worst = worst.max((c - d).norm() / c.norm().max(d.norm()).max(1.0));
        }
        for (e, k, c) in &b {
            if a.iter().all(|(f, j, _)| j != k || (f - e).norm() > EXPONENT_TOL * e.norm().max(1.0)) {
                worst = worst.max(c.norm() / c.norm().max(1.0));
            }
        }
        worst
    }

    /// Rough bound on the omitted tail at `z`: the last retained offset
    /// group extrapolated geometrically from the two last groups.
    pub fn tail_estimate(&self, z: Scalar) -> f64 {
        let Some(_) = self.truncation_order else { return 0.0 };
        let offsets: Vec<u32> = {
            let mut o: Vec<u32> = self.terms.iter().map(|t| t.offset).collect();
            o.sort_unstable();
            o.dedup();
            o
        };
        let group = |n: u32| -> f64 {
            self.terms
                .iter()
                .filter(|t| t.offset == n)
                .map(|t| t.eval(z).map(|v| v.norm()).unwrap_or(f64::INFINITY))
                .sum()
        };
        match offsets.as_slice() {
            [] => 0.0,
            [only] => group(*only),
            [.., p, l] => {
                let (gp, gl) = (group(*p), group(*l));
                let r = if gp > 0.0 { gl / gp } else { 1.0 };
                if r < 1.0 {
                    gl * r / (1.0 - r)
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    pub fn max_log_pow(&self) -> u32 {
        self.terms.iter().map(|t| t.log_pow).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialization")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str::<Self>(s)
            .map(Self::normalize)
            .map_err(|e| Error::Param(format!("series JSON: {e}")))
    }
}

impl fmt::Display for PowerLogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*z^({})", t.coeff, t.exponent())?;
            if t.log_pow > 0 {
                write!(f, "*log(z)^{}", t.log_pow)?;
            }
        }
        if let Some(n) = self.truncation_order {
            write!(f, " + O(z^{n}+)")?;
        }
        Ok(())
    }
}

/// The function catalog with series expansions at the origin.
#[derive(Debug, Clone, PartialEq)]
pub enum Builder {
    Exp,
    Sin,
    Cos,
    Log,
    Power(Scalar),
    BesselJ(Scalar),
    BesselK0,
    /// `E_{alpha,beta}(lambda z^alpha)`
    MittagLeffler { alpha: Scalar, beta: Scalar, lambda: Scalar },
    Heun { a: Scalar, b: Scalar, c: Scalar, d: Scalar, p: Scalar, q: Scalar },
    ExpSq,
    ReciprocalOnePlusZ,
}

impl Builder {
    /// Look up a builder by name with positional parameters.
    pub fn from_name(name: &str, params: &[Scalar]) -> Result<Self> {
        let want = |n: usize| {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::Param(format!("{name} takes {n} parameter(s), got {}", params.len())))
            }
        };
        Ok(match name {
            "exp" => want(0).map(|_| Builder::Exp)?,
            "sin" => want(0).map(|_| Builder::Sin)?,
            "cos" => want(0).map(|_| Builder::Cos)?,
            "log" => want(0).map(|_| Builder::Log)?,
            "power" | "pow" => want(1).map(|_| Builder::Power(params[0]))?,
            "bessel_j" => want(1).map(|_| Builder::BesselJ(params[0]))?,
            "bessel_k0" => want(0).map(|_| Builder::BesselK0)?,
            "mittag_leffler" => {
                if params.len() == 2 {
                    Builder::MittagLeffler { alpha: params[0], beta: params[1], lambda: Scalar::new(1.0, 0.0) }
                } else {
                    want(3)?;
                    Builder::MittagLeffler { alpha: params[0], beta: params[1], lambda: params[2] }
                }
            }
            "heun" => {
                want(6)?;
                Builder::Heun { a: params[0], b: params[1], c: params[2], d: params[3], p: params[4], q: params[5] }
            }
            "exp_sq" => want(0).map(|_| Builder::ExpSq)?,
            "reciprocal_one_plus_z" => want(0).map(|_| Builder::ReciprocalOnePlusZ)?,
            other => return Err(Error::UnknownFunction(other.into())),
        })
    }

    /// Expansion with offsets up to `order` (for Mittag-Leffler: terms
    /// `k = 0..=order`).
    pub fn build(&self, order: u32) -> Result<PowerLogSeries> {
        let one = Scalar::new(1.0, 0.0);
        let zero = Scalar::new(0.0, 0.0);
        let r = |x: f64| Scalar::new(x, 0.0);
        let taylor = |coeffs: Vec<Scalar>, tag: &str| {
            let terms = coeffs.into_iter().enumerate().map(|(n, c)| PowerLogTerm::new(c, zero, n as u32, 0)).collect();
            PowerLogSeries::new(terms, Some(order), tag)
        };
        let fact = |n: u32| (1..=n).fold(1.0, |a, k| a * k as f64);
        Ok(match self {
            Builder::Exp => taylor((0..=order).map(|n| r(1.0 / fact(n))).collect(), "exp(z)"),
            Builder::Sin => taylor(
                (0..=order)
                    .map(|n| if n % 2 == 1 { r(if (n / 2) % 2 == 0 { 1.0 } else { -1.0 } / fact(n)) } else { zero })
                    .collect(),
                "sin(z)",
            ),
            Builder::Cos => taylor(
                (0..=order)
                    .map(|n| if n % 2 == 0 { r(if (n / 2) % 2 == 0 { 1.0 } else { -1.0 } / fact(n)) } else { zero })
                    .collect(),
                "cos(z)",
            ),
            Builder::Log => PowerLogSeries::new(vec![PowerLogTerm::new(one, zero, 0, 1)], None, "log(z)"),
            Builder::Power(l) => PowerLogSeries::new(vec![PowerLogTerm::new(one, *l, 0, 0)], None, format!("z^({l})")),
            Builder::BesselJ(nu) => {
                // sum (-1)^k / (k! Gamma(k+nu+1)) (z/2)^(2k+nu)
                let half_nu = special::pow(r(0.5), *nu)?;
                let mut terms = Vec::new();
                for k in 0..=(order / 2) {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    let c = sign * half_nu * 0.25f64.powi(k as i32) / fact(k) * rgamma(*nu + (k + 1) as f64);
                    terms.push(PowerLogTerm::new(c, *nu, 2 * k, 0));
                }
                PowerLogSeries::new(terms, Some(order), format!("bessel_j({nu}, z)"))
            }
            Builder::BesselK0 => {
                // -(log(z/2) + gamma) I0(z) + sum_{k>=1} H_k (z/2)^(2k) / (k!)^2
                let mut terms = Vec::new();
                for k in 0..=(order / 2) {
                    let w = 0.25f64.powi(k as i32) / (fact(k) * fact(k));
                    let h = harmonic(r(k as f64))?.re;
                    terms.push(PowerLogTerm::new(r(-w), zero, 2 * k, 1));
                    terms.push(PowerLogTerm::new(r(w * (std::f64::consts::LN_2 - EULER_GAMMA + h)), zero, 2 * k, 0));
                }
                PowerLogSeries::new(terms, Some(order), "bessel_k0(z)")
            }
            Builder::MittagLeffler { alpha, beta, lambda } => {
                let mut terms = Vec::new();
                let mut lk = one;
                for k in 0..=order {
                    terms.push(PowerLogTerm::new(lk * rgamma(*alpha * k as f64 + *beta), *alpha * k as f64, 0, 0));
                    lk *= *lambda;
                }
                PowerLogSeries::new(terms, Some(order), format!("mittag_leffler({alpha}, {beta}, {lambda}*z^{alpha})"))
            }
            Builder::Heun { a, b, c, d, p, q } => {
                let cs = heun_coeffs(*a, *b, *c, *d, *p, *q, order as usize)?;
                taylor(cs, &format!("heun({a}, {b}, {c}, {d}, {p}, {q}; z)"))
            }
            Builder::ExpSq => {
                let terms = (0..=(order / 2)).map(|n| PowerLogTerm::new(r(1.0 / fact(n)), zero, 2 * n, 0)).collect();
                PowerLogSeries::new(terms, Some(order), "exp(z^2)")
            }
            Builder::ReciprocalOnePlusZ => taylor(
                (0..=order).map(|n| r(if n % 2 == 0 { 1.0 } else { -1.0 })).collect(),
                "1/(1+z)",
            ),
        })
    }
}

/// Build a catalog series by name.
pub fn build(name: &str, params: &[Scalar], order: u32) -> Result<PowerLogSeries> {
    Builder::from_name(name, params)?.build(order)
}

/// Taylor coefficients of the Heun-type series from the three-term
/// recurrence `R_j c_j = -(P_{j-2} c_{j-2} + Q_{j-1} c_{j-1})` with
/// `P_j = (c+j)(d+j)`, `Q_j = -j(a(j+p+q-1) + c + d + j - q) - b`,
/// `R_j = a j (j+p-1)`.
pub fn heun_coeffs(a: Scalar, b: Scalar, c: Scalar, d: Scalar, p: Scalar, q: Scalar, n_max: usize) -> Result<Vec<Scalar>> {
    if a == Scalar::new(0.0, 0.0) {
        return Err(Error::Param("heun: a must be nonzero".into()));
    }
    let pj = |j: f64| (c + j) * (d + j);
    let qj = |j: f64| -j * (a * (p + q + j - 1.0) + c + d + j - q) - b;
    let rj = |j: f64| a * j * (p + j - 1.0);
    let mut out = vec![Scalar::new(1.0, 0.0)];
    for j in 1..=n_max {
        let jf = j as f64;
        let rr = rj(jf);
        if rr.norm() == 0.0 {
            return Err(Error::RecurrenceBreakdown(j));
        }
        let prev2 = if j >= 2 { out[j - 2] * pj(jf - 2.0) } else { Scalar::new(0.0, 0.0) };
        out.push(-(prev2 + out[j - 1] * qj(jf - 1.0)) / rr);
    }
    Ok(out)
}

/// `Gamma(k+1) / Gamma(k+1-alpha)`, the factor picked up by `z^k` under the
/// order-`alpha` differintegral.
pub fn power_factor(k: Scalar, alpha: Scalar) -> Result<Scalar> {
    gamma_ratio(k + 1.0, k + 1.0 - alpha)
}
