use super::FracOrder;
use crate::special::{self, rgamma};
use crate::{Error, Result, Scalar};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// Piecewise-constant expressions whose value depends only on `arg z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffConstKind {
    /// `sqrt(z^2) / z`
    SqrtSqOverZ,
    /// `log(z^2) - 2 log z`
    LogSqMinus2Log,
}

/// `factor * kind(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffConstExpr {
    pub kind: DiffConstKind,
    pub factor: Scalar,
}

fn nonzero(z: Scalar) -> Result<()> {
    if z == Scalar::new(0.0, 0.0) {
        Err(Error::BranchPoint("differential constant at z = 0".into()))
    } else {
        Ok(())
    }
}

impl DiffConstKind {
    /// Value on the sector containing `z`.
    pub fn sector_value(self, z: Scalar) -> Result<Scalar> {
        nonzero(z)?;
        let t = special::arg(z);
        let right = t > -FRAC_PI_2 && t <= FRAC_PI_2;
        Ok(match self {
            DiffConstKind::SqrtSqOverZ => Scalar::new(if right { 1.0 } else { -1.0 }, 0.0),
            DiffConstKind::LogSqMinus2Log => {
                if right {
                    Scalar::new(0.0, 0.0)
                } else if t <= -FRAC_PI_2 {
                    Scalar::new(0.0, 2.0 * PI)
                } else {
                    Scalar::new(0.0, -2.0 * PI)
                }
            }
        })
    }

    /// Value from the defining expression with principal-branch functions.
    pub fn direct_value(self, z: Scalar) -> Result<Scalar> {
        nonzero(z)?;
        Ok(match self {
            DiffConstKind::SqrtSqOverZ => special::sqrt(z * z) / z,
            DiffConstKind::LogSqMinus2Log => special::ln(z * z)? - 2.0 * special::ln(z)?,
        })
    }
}

impl DiffConstExpr {
    pub fn new(kind: DiffConstKind) -> Self {
        Self { kind, factor: Scalar::new(1.0, 0.0) }
    }

    pub fn eval(&self, z: Scalar) -> Result<Scalar> {
        Ok(self.factor * self.kind.sector_value(z)?)
    }
}

/// `d^alpha` of a differential constant: the constant times
/// `z^-alpha / Gamma(1 - alpha)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffConstDerivative {
    pub expr: DiffConstExpr,
    pub alpha: Scalar,
    pub formula: String,
}

impl DiffConstDerivative {
    /// Piecewise evaluation by sector.
    pub fn eval(&self, z: Scalar) -> Result<Scalar> {
        if self.alpha == Scalar::new(0.0, 0.0) {
            return self.expr.eval(z);
        }
        let v = self.expr.eval(z)? * special::pow(z, -self.alpha)? * rgamma(Scalar::new(1.0, 0.0) - self.alpha);
        special::finite(v, "differential constant")
    }

    /// Evaluation of the carried expression
    /// `sqrt(z^2) z^(-alpha-1) / Gamma(1-alpha)` or
    /// `z^-alpha (log(-iz) + log(iz) - 2 log z) / Gamma(1-alpha)`.
    pub fn eval_direct(&self, z: Scalar) -> Result<Scalar> {
        nonzero(z)?;
        let a = self.alpha;
        let rg = rgamma(Scalar::new(1.0, 0.0) - a);
        let i = Scalar::new(0.0, 1.0);
        let v = match self.expr.kind {
            DiffConstKind::SqrtSqOverZ => special::sqrt(z * z) * special::pow(z, -a - 1.0)? * rg,
            DiffConstKind::LogSqMinus2Log => {
                let l = special::ln(-i * z)? + special::ln(i * z)? - 2.0 * special::ln(z)?;
                special::pow(z, -a)? * l * rg
            }
        };
        special::finite(self.expr.factor * v, "differential constant")
    }
}

pub fn diffconst_fracdiff(d: &DiffConstExpr, alpha: impl Into<FracOrder>) -> DiffConstDerivative {
    let a = alpha.into().alpha;
    let body = match d.kind {
        DiffConstKind::SqrtSqOverZ => format!("sqrt(z^2)*z^({})/Γ({})", -a - 1.0, 1.0 - a),
        DiffConstKind::LogSqMinus2Log => format!("z^({})*(log(-i*z) + log(i*z) - 2*log(z))/Γ({})", -a, 1.0 - a),
    };
    DiffConstDerivative { expr: *d, alpha: a, formula: format!("({})*{body}", d.factor) }
}
