//! A tiny expression language in one variable `z`, compiled into
//! power-logarithmic series.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | number 'i' | 'i' | 'z' | '(' expr ')' | name '(' expr (',' expr)* ')'
//! ```
//!
//! Exponents and function parameters must reduce to constants. There is no
//! division; write `(1 + z)^-1`. Functions: `exp`, `sin`, `cos`, `log`,
//! `sqrt(x)`, `pow(x, c)`, `bessel_j(nu, x)`, `bessel_k0(x)`,
//! `mittag_leffler(alpha, beta, x)` (that is `E_{alpha,beta}(x)`),
//! `heun(a, b, c, d, p, q, x)`, `exp_sq(x)` and `reciprocal_one_plus_z(x)`.
//!
//! Parsing folds operations whose operands are all constants, so `2+3i`
//! and `-1` are single constants.

mod compile;
mod eval;
mod parser;

pub use compile::{compile, compile_str, DEFAULT_ORDER};
pub use eval::{eval, eval_call};
pub use parser::parse;

use crate::special::pow;
use crate::Scalar;
use std::fmt;

/// Functions callable from expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Log,
    BesselJ,
    BesselK0,
    MittagLeffler,
    Heun,
    ExpSq,
    ReciprocalOnePlusZ,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "log" => Func::Log,
            "bessel_j" => Func::BesselJ,
            "bessel_k0" => Func::BesselK0,
            "mittag_leffler" => Func::MittagLeffler,
            "heun" => Func::Heun,
            "exp_sq" => Func::ExpSq,
            "reciprocal_one_plus_z" => Func::ReciprocalOnePlusZ,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Log => "log",
            Func::BesselJ => "bessel_j",
            Func::BesselK0 => "bessel_k0",
            Func::MittagLeffler => "mittag_leffler",
            Func::Heun => "heun",
            Func::ExpSq => "exp_sq",
            Func::ReciprocalOnePlusZ => "reciprocal_one_plus_z",
        }
    }

    /// Number of constant parameters before the argument.
    pub fn n_params(self) -> usize {
        match self {
            Func::BesselJ => 1,
            Func::MittagLeffler => 2,
            Func::Heun => 6,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Scalar),
    Z,
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Scalar),
    Call { func: Func, params: Vec<Scalar>, arg: Box<Expr> },
}

impl Expr {
    pub fn constant(&self) -> Option<Scalar> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        match (a.constant(), b.constant()) {
            (Some(x), Some(y)) => Expr::Const(x + y),
            _ => Expr::Add(Box::new(a), Box::new(b)),
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        match (a.constant(), b.constant()) {
            (Some(x), Some(y)) => Expr::Const(x * y),
            _ => Expr::Mul(Box::new(a), Box::new(b)),
        }
    }

    pub fn neg(a: Expr) -> Expr {
        match a.constant() {
            Some(x) => Expr::Const(-x),
            None => Expr::Neg(Box::new(a)),
        }
    }

    /// `a^c`, folded when `a` is constant and the power is defined.
    pub fn pow(a: Expr, c: Scalar) -> Expr {
        if let Some(v) = a.constant().and_then(|x| pow(x, c).ok()).filter(|v| v.re.is_finite() && v.im.is_finite()) {
            return Expr::Const(v);
        }
        Expr::Pow(Box::new(a), c)
    }

    /// Rebuild bottom-up through the folding constructors; the parser
    /// output is always a fixed point of this map.
    pub fn folded(&self) -> Expr {
        match self {
            Expr::Const(_) | Expr::Z => self.clone(),
            Expr::Add(a, b) => Expr::add(a.folded(), b.folded()),
            Expr::Mul(a, b) => Expr::mul(a.folded(), b.folded()),
            Expr::Neg(a) => Expr::neg(a.folded()),
            Expr::Pow(a, c) => Expr::pow(a.folded(), *c),
            Expr::Call { func, params, arg } => Expr::Call { func: *func, params: params.clone(), arg: Box::new(arg.folded()) },
        }
    }
}

fn real_literal(f: &mut fmt::Formatter<'_>, x: f64, suffix: &str) -> fmt::Result {
    if x.is_sign_negative() && x != 0.0 {
        write!(f, "(-{}{suffix})", -x)
    } else {
        write!(f, "{}{suffix}", x.abs())
    }
}

fn literal(f: &mut fmt::Formatter<'_>, c: Scalar) -> fmt::Result {
    match (c.re != 0.0, c.im != 0.0) {
        (_, false) => real_literal(f, c.re, ""),
        (false, true) => real_literal(f, c.im, "i"),
        (true, true) => {
            write!(f, "(")?;
            real_literal(f, c.re, "")?;
            write!(f, " + ")?;
            real_literal(f, c.im, "i")?;
            write!(f, ")")
        }
    }
}

/// Fully parenthesized; `parse(&e.to_string())` returns `e` for folded
/// trees.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => literal(f, *c),
            Expr::Z => write!(f, "z"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Pow(a, c) => {
                write!(f, "({a} ^ ")?;
                literal(f, *c)?;
                write!(f, ")")
            }
            Expr::Call { func, params, arg } => {
                write!(f, "{}(", func.name())?;
                for p in params {
                    literal(f, *p)?;
                    write!(f, ", ")?;
                }
                write!(f, "{arg})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::re;
    use proptest::prelude::*;

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        prop_oneof![
            (-1e3f64..1e3).prop_map(re),
            ((-50f64..50.0), (-50f64..50.0)).prop_map(|(a, b)| Scalar::new(a, b)),
            (-5i32..6).prop_map(|k| re(k as f64)),
            (1e-9f64..1e-6).prop_map(re),
        ]
    }

    fn arb_func() -> impl Strategy<Value = Func> {
        prop_oneof![
            Just(Func::Exp),
            Just(Func::Sin),
            Just(Func::Cos),
            Just(Func::Log),
            Just(Func::BesselJ),
            Just(Func::BesselK0),
            Just(Func::MittagLeffler),
            Just(Func::Heun),
            Just(Func::ExpSq),
            Just(Func::ReciprocalOnePlusZ),
        ]
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![arb_scalar().prop_map(Expr::Const), Just(Expr::Z)];
        leaf.prop_recursive(5, 40, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                (inner.clone(), arb_scalar()).prop_map(|(a, c)| Expr::Pow(Box::new(a), c)),
                (arb_func(), proptest::collection::vec(arb_scalar(), 6), inner).prop_map(|(func, ps, a)| Expr::Call {
                    func,
                    params: ps[..func.n_params()].to_vec(),
                    arg: Box::new(a),
                }),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let e = e.folded();
            let text = e.to_string();
            let back = parse(&text).unwrap();
            prop_assert_eq!(back, e, "{}", text);
        }
    }

    #[test]
    fn literals() {
        assert_eq!(Expr::Const(Scalar::new(1.5, -2.0)).to_string(), "(1.5 + (-2i))");
        assert_eq!(Expr::Const(re(-3.0)).to_string(), "(-3)");
        assert_eq!(Expr::Const(Scalar::new(0.0, 1.0)).to_string(), "1i");
        assert_eq!(Expr::Const(re(0.0)).to_string(), "0");
    }
}
