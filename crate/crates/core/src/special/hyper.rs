use super::{as_nonpos_int, finite, rgamma};
use crate::{Error, Result, Scalar};

/// Hard cap on the number of series terms.
pub const PFQ_MAX_TERMS: usize = 10_000;
/// Default relative stopping tolerance.
pub const PFQ_TOL: f64 = 1e-13;

/// Result of a hypergeometric summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfqSum {
    pub value: Scalar,
    /// `|last term| / |partial sum|` when summation stopped.
    pub achieved_tol: f64,
    pub terms: usize,
}

fn check_shape(p: usize, q: usize, z: Scalar) -> Result<()> {
    if z == Scalar::new(0.0, 0.0) {
        return Ok(());
    }
    if p > q + 1 {
        return Err(Error::Divergence(format!("{p}F{q} with z != 0")));
    }
    if p == q + 1 && z.norm() >= 1.0 {
        return Err(Error::Divergence(format!("{p}F{q} outside the unit disk (|z| = {})", z.norm())));
    }
    Ok(())
}

fn terminating_index(a: &[Scalar]) -> Option<usize> {
    a.iter().filter_map(|&x| as_nonpos_int(x)).map(|n| (-n) as usize).min()
}

struct Summation {
    sum: Scalar,
    small_run: u32,
}

impl Summation {
    fn push(&mut self, t: Scalar, tol: f64, past_transient: bool) -> Option<f64> {
        self.sum += t;
        let ratio = t.norm() / self.sum.norm().max(1e-300);
        if past_transient && ratio < tol {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        (self.small_run >= 2).then_some(ratio)
    }
}

/// Generalized hypergeometric series
/// `pFq(a; b; z) = sum_n prod (a_i)_n / prod (b_j)_n z^n / n!`.
pub fn pfq(a: &[Scalar], b: &[Scalar], z: Scalar, tol: f64) -> Result<PfqSum> {
    check_shape(a.len(), b.len(), z)?;
    if let Some(bj) = b.iter().find(|&&x| as_nonpos_int(x).is_some()) {
        return Err(Error::Pole(format!("lower parameter {bj} is a nonpositive integer")));
    }
    let stop = terminating_index(a);
    let mut term = Scalar::new(1.0, 0.0);
    let mut acc = Summation { sum: term, small_run: 0 };
    for n in 0..PFQ_MAX_TERMS {
        if stop == Some(n) {
            return Ok(PfqSum { value: finite(acc.sum, "pfq")?, achieved_tol: 0.0, terms: n + 1 });
        }
        let nf = n as f64;
        let mut f = z / (nf + 1.0);
        for &ai in a {
            f *= ai + nf;
        }
        for &bj in b {
            f /= bj + nf;
        }
        term *= f;
        let past = (nf + 1.0) > z.norm();
        if let Some(ratio) = acc.push(term, tol, past) {
            return Ok(PfqSum { value: finite(acc.sum, "pfq")?, achieved_tol: ratio, terms: n + 2 });
        }
    }
    Err(Error::NoConvergence {
        terms: PFQ_MAX_TERMS,
        last_ratio: term.norm() / acc.sum.norm(),
    })
}

/// Regularized series `pFq(a; b; z) / prod Gamma(b_j)`, defined also when some
/// `b_j` is a nonpositive integer.
pub fn pfq_regularized(a: &[Scalar], b: &[Scalar], z: Scalar, tol: f64) -> Result<PfqSum> {
    check_shape(a.len(), b.len(), z)?;
    let stop = terminating_index(a);
    // rg[j] = 1 / Gamma(b_j + n)
    let mut rg: Vec<Scalar> = b.iter().map(|&x| rgamma(x)).collect();
    // num = prod (a_i)_n z^n / n!
    let mut num = Scalar::new(1.0, 0.0);
    let first = num * rg.iter().product::<Scalar>();
    let mut acc = Summation { sum: first, small_run: 0 };
    let transient = b
        .iter()
        .filter_map(|&x| as_nonpos_int(x))
        .map(|n| (-n) as usize + 1)
        .max()
        .unwrap_or(0);
    let mut last = first;
    for n in 0..PFQ_MAX_TERMS {
        if stop == Some(n) {
            return Ok(PfqSum { value: finite(acc.sum, "pfq_regularized")?, achieved_tol: 0.0, terms: n + 1 });
        }
        let nf = n as f64;
        num *= z / (nf + 1.0);
        for &ai in a {
            num *= ai + nf;
        }
        for (r, &bj) in rg.iter_mut().zip(b) {
            *r = if *r == Scalar::new(0.0, 0.0) { rgamma(bj + nf + 1.0) } else { *r / (bj + nf) };
        }
        last = num * rg.iter().product::<Scalar>();
        let past = n + 1 >= transient && (nf + 1.0) > z.norm();
        if let Some(ratio) = acc.push(last, tol, past) {
            return Ok(PfqSum { value: finite(acc.sum, "pfq_regularized")?, achieved_tol: ratio, terms: n + 2 });
        }
    }
    Err(Error::NoConvergence {
        terms: PFQ_MAX_TERMS,
        last_ratio: last.norm() / acc.sum.norm(),
    })
}
