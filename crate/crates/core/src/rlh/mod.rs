//! The Riemann–Liouville–Hadamard differintegral `d^alpha / dz^alpha`.

mod closed;
mod diffconst;
mod power;
mod product;

pub use closed::{fracdiff_closed_form, ClosedForm, ClosedFormDescriptor};
pub use diffconst::{diffconst_fracdiff, DiffConstDerivative, DiffConstExpr, DiffConstKind};
pub use power::power_log_coeffs;
pub use product::{binomial, fracdiff_product};

use crate::series::{PowerLogSeries, PowerLogTerm};
use crate::special::{as_int, gamma};
use crate::{Result, Scalar};
use serde::{Deserialize, Serialize};

/// Which case of the operator definition an order falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderClass {
    Zero,
    PositiveInteger,
    NegativeInteger,
    PositiveNonInteger,
    NegativeNonInteger,
    Imaginary,
}

/// A differintegration order `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracOrder {
    pub alpha: Scalar,
}

impl FracOrder {
    pub fn new(alpha: Scalar) -> Self {
        Self { alpha }
    }

    pub fn real(alpha: f64) -> Self {
        Self::new(Scalar::new(alpha, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.alpha == Scalar::new(0.0, 0.0)
    }

    pub fn class(&self) -> OrderClass {
        if self.is_zero() {
            return OrderClass::Zero;
        }
        match as_int(self.alpha) {
            Some(n) if n > 0 => OrderClass::PositiveInteger,
            Some(n) if n < 0 => OrderClass::NegativeInteger,
            Some(_) => OrderClass::Zero,
            None if self.alpha.re > 0.0 => OrderClass::PositiveNonInteger,
            None if self.alpha.re < 0.0 => OrderClass::NegativeNonInteger,
            None => OrderClass::Imaginary,
        }
    }
}

impl From<f64> for FracOrder {
    fn from(a: f64) -> Self {
        Self::real(a)
    }
}

impl From<Scalar> for FracOrder {
    fn from(a: Scalar) -> Self {
        Self::new(a)
    }
}

/// The case of the power rule used for `d^alpha z^lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerBranch {
    /// `alpha = 0`
    Identity,
    /// `alpha, lambda` integers with `lambda < 0`, `lambda < alpha`:
    /// `(-1)^alpha (-lambda)_alpha`
    IntegerPole,
    /// negative integer `lambda` otherwise: a `log z` term appears
    Logarithmic,
    /// `Gamma(lambda+1) / Gamma(lambda+1-alpha)`
    GammaRatio,
}

pub fn power_branch(lambda: Scalar, alpha: &FracOrder) -> PowerBranch {
    if alpha.is_zero() {
        return PowerBranch::Identity;
    }
    match (as_int(lambda), as_int(alpha.alpha)) {
        (Some(l), Some(a)) if l < 0 && l < a => PowerBranch::IntegerPole,
        (Some(l), _) if l < 0 => PowerBranch::Logarithmic,
        _ => PowerBranch::GammaRatio,
    }
}

/// `d^alpha (z^lambda log^k z)` as an exact series.
pub fn fracdiff_power_log(lambda: Scalar, k: u32, alpha: impl Into<FracOrder>) -> Result<PowerLogSeries> {
    let alpha = alpha.into();
    let cs = power_log_coeffs(lambda, k, &alpha)?;
    let base = lambda - alpha.alpha;
    let terms = cs.into_iter().enumerate().map(|(j, c)| PowerLogTerm::new(c, base, 0, j as u32)).collect();
    let tag = if k == 0 {
        format!("d^({})[z^({lambda})]", alpha.alpha)
    } else {
        format!("d^({})[z^({lambda}) log^{k} z]", alpha.alpha)
    };
    Ok(PowerLogSeries::new(terms, None, tag))
}

/// `d^alpha z^lambda` as an exact series of one or two terms.
pub fn fracdiff_power(lambda: Scalar, alpha: impl Into<FracOrder>) -> Result<PowerLogSeries> {
    fracdiff_power_log(lambda, 0, alpha)
}

/// Human-readable form of `d^alpha z^lambda` in the gamma-ratio case, e.g.
/// `2*z^{1.5}/Γ(2.5)`.
pub fn power_form(lambda: Scalar, alpha: impl Into<FracOrder>) -> Result<String> {
    let alpha = alpha.into();
    let fmt = |z: Scalar| {
        if z.im == 0.0 {
            format!("{}", z.re)
        } else {
            format!("({z})")
        }
    };
    Ok(match power_branch(lambda, &alpha) {
        PowerBranch::GammaRatio => {
            let num = gamma(lambda + 1.0)?;
            format!("{}*z^{{{}}}/Γ({})", fmt(num), fmt(lambda - alpha.alpha), fmt(lambda + 1.0 - alpha.alpha))
        }
        _ => fracdiff_power(lambda, alpha)?.to_string(),
    })
}

/// Termwise differintegral of a series. Each term `c z^(b+n) log^k z`
/// maps to terms with base `b - alpha` and the same offset `n`, so the
/// truncation order carries over.
pub fn fracdiff_series(s: &PowerLogSeries, alpha: impl Into<FracOrder>) -> Result<PowerLogSeries> {
    let alpha = alpha.into();
    if alpha.is_zero() {
        return Ok(s.clone());
    }
    let mut terms = Vec::new();
    for t in &s.terms {
        let cs = power_log_coeffs(t.exponent(), t.log_pow, &alpha)?;
        for (j, c) in cs.into_iter().enumerate() {
            terms.push(PowerLogTerm::new(t.coeff * c, t.base_exp - alpha.alpha, t.offset, j as u32));
        }
    }
    Ok(PowerLogSeries::new(terms, s.truncation_order, format!("d^({})[{}]", alpha.alpha, s.source_tag)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::build;
    use crate::special::{gamma_ratio, rgamma};
    use proptest::prelude::*;

    fn r(x: f64) -> Scalar {
        Scalar::new(x, 0.0)
    }

    #[test]
    fn classes() {
        assert_eq!(FracOrder::real(0.0).class(), OrderClass::Zero);
        assert_eq!(FracOrder::real(3.0).class(), OrderClass::PositiveInteger);
        assert_eq!(FracOrder::real(-2.0).class(), OrderClass::NegativeInteger);
        assert_eq!(FracOrder::real(0.5).class(), OrderClass::PositiveNonInteger);
        assert_eq!(FracOrder::real(-0.5).class(), OrderClass::NegativeNonInteger);
        assert_eq!(FracOrder::new(Scalar::new(0.0, 1.0)).class(), OrderClass::Imaginary);
    }

    #[test]
    fn branches() {
        assert_eq!(power_branch(r(-3.0), &2.0.into()), PowerBranch::IntegerPole);
        assert_eq!(power_branch(r(-2.0), &0.5.into()), PowerBranch::Logarithmic);
        assert_eq!(power_branch(r(-1.0), &(-1.0).into()), PowerBranch::Logarithmic);
        assert_eq!(power_branch(r(2.0), &0.5.into()), PowerBranch::GammaRatio);
    }

    #[test]
    fn quadratic_and_square_root() {
        for a in [0.3, 0.5, -0.5, 1.5, 2.5] {
            let s = fracdiff_power(r(2.0), a).unwrap();
            let want = 2.0 * rgamma(r(3.0 - a));
            assert!((s.coefficient(r(2.0 - a), 0) - want).norm() < 1e-14);
            let s = fracdiff_power(r(0.5), a).unwrap();
            let want = std::f64::consts::PI.sqrt() / 2.0 * rgamma(r(1.5 - a));
            assert!((s.coefficient(r(0.5 - a), 0) - want).norm() < 1e-14);
        }
    }

    #[test]
    fn antiderivatives_of_negative_powers() {
        let s = fracdiff_power(r(-1.0), -1.0).unwrap();
        assert_eq!(s.terms, vec![PowerLogTerm::new(r(1.0), r(0.0), 0, 1)]);
        let s = fracdiff_power(r(-2.0), -1.0).unwrap();
        assert_eq!(s.terms, vec![PowerLogTerm::new(r(-1.0), r(-1.0), 0, 0)]);
    }

    // The log branch is the finite part of the gamma-ratio rule as lambda
    // approaches the pole: subtract the simple pole and extrapolate.
    #[test]
    fn log_branch_is_finite_part_limit() {
        let a = 0.5;
        let z: f64 = 1.3;
        let s = fracdiff_power(r(-2.0), a).unwrap();
        let got = s.eval(r(z)).unwrap().re;
        let residue = s.coefficient(r(-2.0 - a), 1).re;
        let fp = |e: f64| {
            let l = -2.0 + e;
            gamma_ratio(r(l + 1.0), r(l + 1.0 - a)).unwrap().re * z.powf(l - a) - residue * z.powf(-2.0 - a) / e
        };
        let (e1, e2) = (1e-4, 5e-5);
        let rich = 2.0 * fp(e2) - fp(e1);
        assert!((rich - got).abs() < 1e-7, "{rich} vs {got}");
    }

    #[test]
    fn golden_repeated_integrals() {
        let s = fracdiff_power(r(-2.0), -7.0).unwrap();
        assert!((s.coefficient(r(5.0), 0) - r(137.0 / 7200.0)).norm() < 1e-15);
        assert!((s.coefficient(r(5.0), 1) - r(-1.0 / 120.0)).norm() < 1e-15);
        let e = build("exp", &[], 30).unwrap();
        let d = fracdiff_series(&e, -3.0).unwrap();
        let fact = |n: u32| (1..=n).fold(1.0, |a, k| a * k as f64);
        assert_eq!(d.coefficient(r(0.0), 0), r(0.0));
        assert_eq!(d.coefficient(r(2.0), 0), r(0.0));
        for n in 3..=33u32 {
            assert!((d.coefficient(r(n as f64), 0).re - 1.0 / fact(n)).abs() < 1e-12 / fact(n).max(1.0) + 1e-30);
        }
    }

    #[test]
    fn power_form_text() {
        let f = power_form(r(2.0), 0.5).unwrap();
        assert_eq!(f, "2*z^{1.5}/Γ(2.5)");
    }

    #[test]
    fn mittag_leffler_eigenfunction() {
        let (a, l) = (0.5, 2.0);
        let e = build("mittag_leffler", &[r(a), r(1.0), r(l)], 15).unwrap();
        let d = fracdiff_series(&e, a).unwrap();
        let want = PowerLogSeries::monomial(rgamma(r(1.0 - a)), r(-a)).add(&e.scale(r(l)));
        for k in 0..15 {
            let ex = r(a * k as f64 - a);
            assert!((d.coefficient(ex, 0) - want.coefficient(ex, 0)).norm() < 1e-11);
        }
    }

    fn arb_series() -> impl Strategy<Value = PowerLogSeries> {
        prop::collection::vec((-2.0f64..2.0, 0u32..10, 0.05f64..0.95, 0u32..2), 1..6).prop_map(|v| {
            let terms = v.into_iter().map(|(c, n, b, k)| PowerLogTerm::new(r(c), r(b), n, k)).collect();
            PowerLogSeries::new(terms, Some(10), "arb")
        })
    }

    proptest! {
        #[test]
        fn order_zero_is_exact_identity(s in arb_series()) {
            prop_assert_eq!(fracdiff_series(&s, 0.0).unwrap(), s);
        }

        #[test]
        fn linearity(f in arb_series(), g in arb_series(), a in -2.0f64..2.0, b in -2.0f64..2.0, al in -1.9f64..1.9) {
            let lhs = fracdiff_series(&f.scale(r(a)).add(&g.scale(r(b))), al).unwrap();
            let rhs = fracdiff_series(&f, al).unwrap().scale(r(a)).add(&fracdiff_series(&g, al).unwrap().scale(r(b)));
            prop_assert!(lhs.coefficient_distance(&rhs) < 1e-13);
        }

        #[test]
        fn integer_orders_are_falling_factorials(l in -3.0f64..5.0, m in 1u32..5) {
            let s = fracdiff_power(r(l), m as f64).unwrap();
            let ff: f64 = (0..m).map(|j| l - j as f64).product();
            prop_assert!((s.coefficient(r(l - m as f64), 0).re - ff).abs() < 1e-13 * ff.abs().max(1.0));
        }
    }
}
