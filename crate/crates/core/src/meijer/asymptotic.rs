use super::GParams;
use crate::{re, Scalar};
use serde::{Deserialize, Serialize};

/// Singular points of `G^{m,n}_{p,q}(x)` in the variable `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Point {
    Zero,
    /// `x = (-1)^{m+n-p}`.
    Unit,
    Infinity,
}

/// Exponential arguments appearing in the leading terms.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExpArg {
    /// `exp(sign / x)`
    Reciprocal { sign: i8 },
    /// `exp(sign * x)`
    Linear { sign: i8 },
    /// `exp(factor * (-x)^{root})`
    Root { factor: i64, root: f64 },
}

/// One leading-order descriptor; each stands for a Big-O term.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Leading {
    /// `x^exponent`
    Power { exponent: Scalar },
    /// `x^exponent * exp(..)`
    PowerExp { exponent: Scalar, exp: ExpArg },
    /// `x^exponent * cos(2 sqrt(sign * x^{inverse ? -1 : 1}))`
    PowerCos { exponent: Scalar, sign: i8, inverse: bool },
    /// `(1 - sign * x)^exponent`
    UnitPower { exponent: Scalar, sign: i8 },
    /// `log(1 - sign * x)`
    UnitLog { sign: i8 },
    Const,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticClass {
    pub point: Point,
    pub leading_terms: Vec<Leading>,
}

fn parity(e: i64) -> i8 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `chi = (sum b - sum a + (p - q + 1)/2) / (q - p)`; `None` when `p = q`.
pub fn chi(gp: &GParams) -> Option<Scalar> {
    if gp.p == gp.q {
        return None;
    }
    let (p, q) = (gp.p as f64, gp.q as f64);
    let s: Scalar = gp.b.iter().sum::<Scalar>() - gp.a.iter().sum::<Scalar>();
    Some((s + (p - q + 1.0) / 2.0) / (q - p))
}

/// `psi_p = sum_{j<=p} (a_j - b_j) - 1`; `None` when `p != q`.
pub fn psi_p(gp: &GParams) -> Option<Scalar> {
    if gp.p != gp.q {
        return None;
    }
    Some(gp.a.iter().zip(&gp.b).map(|(a, b)| a - b).sum::<Scalar>() - 1.0)
}

/// Leading terms of `G^{m,n}_{p,q}(x)` near `point`.
pub fn asymptotic_class(gp: &GParams, point: Point) -> AsymptoticClass {
    let (m, n, p, q) = (gp.m as i64, gp.n as i64, gp.p as i64, gp.q as i64);
    let mut terms = Vec::new();
    match point {
        Point::Zero => {
            terms.extend(gp.b[..gp.m].iter().map(|&b| Leading::Power { exponent: b }));
            if let Some(c) = chi(gp) {
                match p - q {
                    1 => terms.push(Leading::PowerExp { exponent: c, exp: ExpArg::Reciprocal { sign: parity(q - m - n) } }),
                    2 => terms.push(Leading::PowerCos { exponent: c, sign: parity(q - m - n - 1), inverse: true }),
                    d if d >= 3 => terms.push(Leading::PowerExp {
                        exponent: c,
                        exp: ExpArg::Root { factor: p - q, root: 1.0 / (q - p) as f64 },
                    }),
                    _ => {}
                }
            }
        }
        Point::Unit => {
            terms.push(Leading::Const);
            if let Some(psi) = psi_p(gp) {
                let sign = parity(p - m - n);
                if psi == re(0.0) {
                    terms.push(Leading::UnitLog { sign });
                } else {
                    terms.push(Leading::UnitPower { exponent: psi, sign });
                }
            }
        }
        Point::Infinity => {
            terms.extend(gp.a[..gp.n].iter().map(|&a| Leading::Power { exponent: a - 1.0 }));
            if let Some(c) = chi(gp) {
                match q - p {
                    1 => terms.push(Leading::PowerExp { exponent: c, exp: ExpArg::Linear { sign: parity(p - m - n) } }),
                    2 => terms.push(Leading::PowerCos { exponent: c, sign: parity(p - m - n - 1), inverse: false }),
                    d if d >= 3 => terms.push(Leading::PowerExp {
                        exponent: c,
                        exp: ExpArg::Root { factor: q - p, root: 1.0 / (q - p) as f64 },
                    }),
                    _ => {}
                }
            }
        }
    }
    AsymptoticClass { point, leading_terms: terms }
}

impl Point {
    /// Location of the point for the given orders (`None` for infinity).
    pub fn location(self, gp: &GParams) -> Option<Scalar> {
        match self {
            Point::Zero => Some(re(0.0)),
            Point::Unit => Some(re(parity(gp.m as i64 + gp.n as i64 - gp.p as i64) as f64)),
            Point::Infinity => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meijer::builtin_gform;

    #[test]
    fn bessel_at_zero() {
        let nu = re(0.8);
        let f = builtin_gform("bessel_j_sq", &[nu]).unwrap();
        let c = asymptotic_class(&f.params, Point::Zero);
        assert_eq!(c.leading_terms, vec![Leading::Power { exponent: nu / 2.0 }]);
    }

    #[test]
    fn bessel_chi() {
        let f = builtin_gform("bessel_j_sq", &[re(0.8)]).unwrap();
        assert_eq!(chi(&f.params), Some(re(-0.25)));
    }

    #[test]
    fn bessel_at_infinity_is_oscillatory() {
        // q = p + 2 with m = 1, n = p = 0: cos(2 sqrt(x)) = cos(z)
        let f = builtin_gform("bessel_j_sq", &[re(0.8)]).unwrap();
        let c = asymptotic_class(&f.params, Point::Infinity);
        assert_eq!(c.leading_terms, vec![Leading::PowerCos { exponent: re(-0.25), sign: 1, inverse: false }]);
    }

    #[test]
    fn reciprocal_at_unit() {
        let f = builtin_gform("reciprocal_one_plus_z", &[]).unwrap();
        let c = asymptotic_class(&f.params, Point::Unit);
        assert_eq!(c.leading_terms, vec![Leading::Const, Leading::UnitPower { exponent: re(-1.0), sign: -1 }]);
        assert_eq!(Point::Unit.location(&f.params), Some(re(-1.0)));
    }

    #[test]
    fn unit_log_when_psi_zero() {
        let gp = GParams::classical(1, 1, vec![re(1.5)], vec![re(0.5)]).unwrap();
        let c = asymptotic_class(&gp, Point::Unit);
        assert_eq!(c.leading_terms[1], Leading::UnitLog { sign: -1 });
    }

    #[test]
    fn exp_at_infinity() {
        // e^{-x} = G^{1,0}_{0,1}(x | -; 0): q = p + 1, sign (-1)^{p-m-n} = -1
        let gp = GParams::classical(1, 0, vec![], vec![re(0.0)]).unwrap();
        let c = asymptotic_class(&gp, Point::Infinity);
        assert_eq!(c.leading_terms, vec![Leading::PowerExp { exponent: re(0.0), exp: ExpArg::Linear { sign: -1 } }]);
    }

    #[test]
    fn p_above_q_at_zero() {
        let gp = GParams::classical(0, 1, vec![re(0.5)], vec![]).unwrap();
        let c = asymptotic_class(&gp, Point::Zero);
        assert_eq!(c.leading_terms.len(), 1);
        assert!(matches!(c.leading_terms[0], Leading::PowerExp { exp: ExpArg::Reciprocal { sign: -1 }, .. }));
        let gp = GParams::classical(0, 0, vec![re(0.1), re(0.2), re(0.3)], vec![]).unwrap();
        let c = asymptotic_class(&gp, Point::Zero);
        assert!(matches!(c.leading_terms[0], Leading::PowerExp { exp: ExpArg::Root { factor: 3, .. }, .. }));
    }
}
