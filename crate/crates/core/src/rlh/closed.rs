use super::{fracdiff_power, FracOrder};
use crate::special::{self, as_int, pfq_regularized, regularized_q, PFQ_TOL};
use crate::{Error, Result, Scalar};
use std::f64::consts::PI;

/// Functions with a closed-form differintegral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    Exp,
    Sin,
    Sqrt,
    Power(Scalar),
    ExpSq,
}

impl ClosedForm {
    pub fn from_name(name: &str, params: &[Scalar]) -> Result<Self> {
        match (name, params) {
            ("exp", []) => Ok(ClosedForm::Exp),
            ("sin", []) => Ok(ClosedForm::Sin),
            ("sqrt", []) => Ok(ClosedForm::Sqrt),
            ("power" | "pow", [b]) => Ok(ClosedForm::Power(*b)),
            ("exp_sq", []) => Ok(ClosedForm::ExpSq),
            ("exp" | "sin" | "sqrt" | "power" | "pow" | "exp_sq", _) => {
                Err(Error::Param(format!("wrong parameter count for {name}")))
            }
            _ => Err(Error::UnknownFunction(name.into())),
        }
    }
}

/// `d^alpha f` in closed form, evaluable at any `z` off the branch cut.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormDescriptor {
    pub form: ClosedForm,
    pub alpha: Scalar,
    pub formula: String,
}

fn nonneg_int(a: Scalar) -> Option<i64> {
    as_int(a).filter(|&n| n >= 0)
}

impl ClosedFormDescriptor {
    pub fn eval(&self, z: Scalar) -> Result<Scalar> {
        let a = self.alpha;
        let one = Scalar::new(1.0, 0.0);
        let v = match self.form {
            ClosedForm::Exp => match nonneg_int(a) {
                Some(_) => z.exp(),
                None => z.exp() * (one - regularized_q(-a, z)?),
            },
            ClosedForm::Sin => match nonneg_int(a) {
                Some(n) => (z + PI * n as f64 / 2.0).sin(),
                None => {
                    let f = pfq_regularized(&[one], &[one - a / 2.0, (3.0 - a) / 2.0], -z * z / 4.0, PFQ_TOL)?.value;
                    special::pow(Scalar::new(2.0, 0.0), a - 1.0)? * PI.sqrt() * special::pow(z, one - a)? * f
                }
            },
            ClosedForm::Sqrt => fracdiff_power(Scalar::new(0.5, 0.0), a)?.eval(z)?,
            ClosedForm::Power(b) => fracdiff_power(b, a)?.eval(z)?,
            ClosedForm::ExpSq => {
                let f = pfq_regularized(
                    &[Scalar::new(0.5, 0.0), one],
                    &[(one - a) / 2.0, one - a / 2.0],
                    z * z,
                    PFQ_TOL,
                )?
                .value;
                PI.sqrt() * special::pow(Scalar::new(2.0, 0.0), a)? * special::pow(z, -a)? * f
            }
        };
        special::finite(v, "closed form")
    }
}

/// Closed-form descriptor for `d^alpha` of a named function.
pub fn fracdiff_closed_form(name: &str, params: &[Scalar], alpha: impl Into<FracOrder>) -> Result<ClosedFormDescriptor> {
    let form = ClosedForm::from_name(name, params)?;
    let a = alpha.into().alpha;
    let n = |z: Scalar| {
        if z.im == 0.0 {
            format!("{}", z.re + 0.0)
        } else {
            format!("({z})")
        }
    };
    let formula = match form {
        ClosedForm::Exp => match nonneg_int(a) {
            Some(_) => "e^z".to_string(),
            None => format!("e^z*(1 - Q({}, z))", n(-a)),
        },
        ClosedForm::Sin => match nonneg_int(a) {
            Some(k) => format!("sin(z + {k}*pi/2)"),
            None => format!(
                "2^({am1})*sqrt(pi)*z^({oma})/(Γ({x})*Γ({y}))*1F2(1; {x}, {y}; -z^2/4)",
                am1 = n(a - 1.0),
                oma = n(1.0 - a),
                x = n(1.0 - a / 2.0),
                y = n((3.0 - a) / 2.0)
            ),
        },
        ClosedForm::Sqrt => format!("Γ(1.5)/Γ({})*z^({})", n(1.5 - a), n(0.5 - a)),
        ClosedForm::Power(b) => format!("Γ({})/Γ({})*z^({})", n(b + 1.0), n(b + 1.0 - a), n(b - a)),
        ClosedForm::ExpSq => format!(
            "sqrt(pi)*2^({})*z^({})/(Γ({x})*Γ({y}))*2F2(1/2, 1; {x}, {y}; z^2)",
            n(a),
            n(-a),
            x = n((1.0 - a) / 2.0),
            y = n(1.0 - a / 2.0)
        ),
    };
    Ok(ClosedFormDescriptor { form, alpha: a, formula })
}
