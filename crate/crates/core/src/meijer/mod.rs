//! Parameter-level algebra of (generalized) Meijer G-functions.
//!
//! A [`GParams`] describes `G^{m,n}_{p,q}(w z^g, r | a; b)`. The extra
//! parameter `r` rescales the Mellin variable, so that
//! `G(x, r | a; b)` equals the classical `G(x^{1/r} | a; b)` with `x^{c/r}`
//! read as a single power. For `r = 1/2` this keeps formulas like
//! `J_nu(z) = G^{1,0}_{0,2}(z/2, 1/2 | -; nu/2, -nu/2)` valid in the whole
//! plane.
//!
//! Numeric values flow only through [`slater_expand`]; Fox H-function
//! results are parameter records.

mod asymptotic;
mod convergence;
mod forms;
mod frint;
mod shift;
mod slater;

pub use asymptotic::{asymptotic_class, chi, psi_p, AsymptoticClass, ExpArg, Leading, Point};
pub use convergence::{check_convergence, Branch, CheckStatus, ConvergenceCheck, ConvergenceReport, Verdict};
pub use forms::{builtin_gform, GForm, BUILTIN_FORMS};
pub use frint::{frint_params, lf1_params, FrIntG};
pub use shift::{fracdiff_shift, fracdiff_shift_general};
pub use slater::{gauss_expand, gauss_expand_reflected, slater_expand, GaussFactor, SlaterExpansion, SlaterTerm};

use crate::special::{as_int, pow};
use crate::{re, Error, Result, Scalar};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

/// Orders, parameter lists and argument map `w z^g` of a generalized
/// Meijer G-function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GParams {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
    pub w: Scalar,
    pub g: Rational64,
    pub r: Rational64,
}

impl GParams {
    /// A generalized G-function; checks shapes and normalizes `g`, `r`.
    pub fn new(
        m: usize,
        n: usize,
        a: Vec<Scalar>,
        b: Vec<Scalar>,
        w: Scalar,
        g: Rational64,
        r: Rational64,
    ) -> Result<Self> {
        let gp = Self { m, n, p: a.len(), q: b.len(), a, b, w, g, r };
        gp.validated()
    }

    /// Classical `G^{m,n}_{p,q}(z | a; b)`.
    pub fn classical(m: usize, n: usize, a: Vec<Scalar>, b: Vec<Scalar>) -> Result<Self> {
        Self::new(m, n, a, b, re(1.0), Rational64::from_integer(1), Rational64::from_integer(1))
    }

    /// Shape checks; returns the value with reduced rationals.
    pub fn validated(mut self) -> Result<Self> {
        if self.a.len() != self.p || self.b.len() != self.q {
            return Err(Error::Param(format!(
                "list lengths ({}, {}) do not match (p, q) = ({}, {})",
                self.a.len(),
                self.b.len(),
                self.p,
                self.q
            )));
        }
        if self.m > self.q || self.n > self.p {
            return Err(Error::Param(format!(
                "need m <= q and n <= p, got (m, n, p, q) = ({}, {}, {}, {})",
                self.m, self.n, self.p, self.q
            )));
        }
        if *self.g.denom() == 0 || *self.r.denom() == 0 || *self.r.numer() == 0 {
            return Err(Error::Param("g and r need nonzero denominators and r != 0".into()));
        }
        self.g = Rational64::new(*self.g.numer(), *self.g.denom());
        self.r = Rational64::new(*self.r.numer(), *self.r.denom());
        Ok(self)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let gp: Self = serde_json::from_str(s).map_err(|e| Error::Param(format!("GParams JSON: {e}")))?;
        gp.validated()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("GParams serializes")
    }

    /// False when some `a_k - b_j` (`k <= n`, `j <= m`) is a positive
    /// integer, i.e. a pole of `Gamma(b_j + s)` meets one of
    /// `Gamma(1 - a_k - s)`.
    pub fn is_valid(&self) -> bool {
        self.a[..self.n]
            .iter()
            .all(|&ak| self.b[..self.m].iter().all(|&bj| as_int(ak - bj).is_none_or(|d| d < 1)))
    }

    /// `r = 1`, `g = 1`, `w = 1`: the classical function of plain `z`.
    pub fn is_plain(&self) -> bool {
        self.r == Rational64::from_integer(1) && self.g == Rational64::from_integer(1) && self.w == re(1.0)
    }

    /// The argument `w z^g`.
    pub fn argument(&self, z: Scalar) -> Result<Scalar> {
        Ok(self.w * pow(z, re(ratio_f64(self.g)))?)
    }

    /// All parameters shifted by `c`.
    pub fn shifted(&self, c: Scalar) -> Self {
        let mut out = self.clone();
        out.a.iter_mut().for_each(|x| *x += c);
        out.b.iter_mut().for_each(|x| *x += c);
        out
    }
}

pub(crate) fn ratio_f64(x: Rational64) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// `coeff * z^{z_power} * (w z^g)^{arg_power}`, kept unexpanded since
/// `(w z^g)^c` and `w^c z^{gc}` differ off the principal sheet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prefactor {
    pub coeff: Scalar,
    pub z_power: Scalar,
    pub arg_power: Scalar,
}

impl Prefactor {
    pub fn eval(&self, z: Scalar, arg: &Argument) -> Result<Scalar> {
        Ok(self.coeff * pow(z, self.z_power)? * pow(arg.eval(z)?, self.arg_power)?)
    }
}

/// The argument map `z -> w z^g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Argument {
    pub w: Scalar,
    pub g: Rational64,
}

impl Argument {
    pub fn eval(&self, z: Scalar) -> Result<Scalar> {
        Ok(self.w * pow(z, re(ratio_f64(self.g)))?)
    }
}

/// Parameter record of a Fox H-function
/// `H^{m,n}_{p,q}(x | (a_i, A_i); (b_j, B_j))` with a prefactor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoxH {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub upper: Vec<(Scalar, Rational64)>,
    pub lower: Vec<(Scalar, Rational64)>,
    pub prefactor: Prefactor,
    pub argument: Argument,
}
