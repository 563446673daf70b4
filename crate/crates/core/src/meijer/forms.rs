use super::{slater_expand, GParams};
use crate::{re, Error, Result, Scalar};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

/// Names accepted by [`builtin_gform`].
pub const BUILTIN_FORMS: [&str; 5] = ["exp", "bessel_j_sq", "bessel_j_half", "bessel_k", "reciprocal_one_plus_z"];

/// A function written as `prefactor * G(w z^g, r | a; b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GForm {
    pub name: String,
    pub prefactor: Scalar,
    pub params: GParams,
}

impl GForm {
    /// Value through the Slater expansion.
    pub fn eval(&self, z: Scalar) -> Result<Scalar> {
        Ok(self.prefactor * slater_expand(&self.params, z)?.value)
    }
}

fn one_param(name: &str, params: &[Scalar]) -> Result<Scalar> {
    match params {
        [nu] => Ok(*nu),
        _ => Err(Error::Param(format!("{name} takes one parameter (nu), got {}", params.len()))),
    }
}

/// Meijer G representation of a catalog function.
///
/// - `exp`: `e^z = G^{1,0}_{0,1}(-z | -; 0)`
/// - `bessel_j_sq(nu)`: `J_nu(z) = G^{1,0}_{0,2}(z^2/4 | -; nu/2, -nu/2)`
/// - `bessel_j_half(nu)`: `J_nu(z) = G^{1,0}_{0,2}(z/2, 1/2 | -; nu/2, -nu/2)`
/// - `bessel_k(nu)`: `K_nu(z) = 1/2 G^{2,0}_{0,2}(z/2, 1/2 | -; nu/2, -nu/2)`
/// - `reciprocal_one_plus_z`: `1/(1+z) = G^{1,1}_{1,1}(z | 0; 0)`
pub fn builtin_gform(name: &str, params: &[Scalar]) -> Result<GForm> {
    let int = Rational64::from_integer;
    let half = Rational64::new(1, 2);
    let (prefactor, gp) = match name {
        "exp" => {
            if !params.is_empty() {
                return Err(Error::Param("exp takes no parameters".into()));
            }
            (re(1.0), GParams::new(1, 0, vec![], vec![re(0.0)], re(-1.0), int(1), int(1))?)
        }
        "bessel_j_sq" => {
            let nu = one_param(name, params)?;
            (re(1.0), GParams::new(1, 0, vec![], vec![nu / 2.0, -nu / 2.0], re(0.25), int(2), int(1))?)
        }
        "bessel_j_half" => {
            let nu = one_param(name, params)?;
            (re(1.0), GParams::new(1, 0, vec![], vec![nu / 2.0, -nu / 2.0], re(0.5), int(1), half)?)
        }
        "bessel_k" => {
            let nu = one_param(name, params)?;
            (re(0.5), GParams::new(2, 0, vec![], vec![nu / 2.0, -nu / 2.0], re(0.5), int(1), half)?)
        }
        "reciprocal_one_plus_z" => {
            if !params.is_empty() {
                return Err(Error::Param("reciprocal_one_plus_z takes no parameters".into()));
            }
            (re(1.0), GParams::classical(1, 1, vec![re(0.0)], vec![re(0.0)])?)
        }
        other => return Err(Error::UnknownForm(other.into())),
    };
    Ok(GForm { name: name.into(), prefactor, params: gp })
}
