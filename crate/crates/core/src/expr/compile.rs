use super::{eval_call, parse, Expr, Func};
use crate::series::{Builder, PowerLogSeries, PowerLogTerm, EXPONENT_TOL};
use crate::special::{as_int, ln, pow, rgamma};
use crate::{re, Error, Result, Scalar};

/// Truncation order used when none is given.
pub const DEFAULT_ORDER: u32 = 30;

/// Largest expansion order requested from a catalog builder.
const MAX_BUILD: u32 = 2000;

fn unsupported(what: impl Into<String>) -> Error {
    Error::UnsupportedComposition(what.into())
}

/// Parse and compile in one step.
pub fn compile_str(text: &str, order: u32) -> Result<PowerLogSeries> {
    compile(&parse(text)?, order)
}

/// Compile an expression into a power-logarithmic series truncated at
/// offset `order`. Finite expressions stay exact.
///
/// Function calls accept a constant argument, a monomial `c z^k` with
/// `k > 0`, or (for `exp`, `sin`, `cos`) a constant plus such a monomial.
/// `reciprocal_one_plus_z(f)` is compiled as `(1 + f)^-1`. Powers `f^c`
/// need a single term, a nonnegative integer `c`, or a log-free `f` whose
/// exponents differ by integers. Substituting `c z^k` uses
/// `(c z^k)^e = c^e z^(k e)`.
pub fn compile(e: &Expr, order: u32) -> Result<PowerLogSeries> {
    Ok(go(e, order)?.with_tag(e.to_string()))
}

fn go(e: &Expr, order: u32) -> Result<PowerLogSeries> {
    Ok(match e {
        Expr::Const(c) => PowerLogSeries::constant(*c),
        Expr::Z => PowerLogSeries::monomial(re(1.0), re(1.0)),
        Expr::Add(a, b) => go(a, order)?.add(&go(b, order)?),
        Expr::Mul(a, b) => go(a, order)?.multiply(&go(b, order)?),
        Expr::Neg(a) => go(a, order)?.neg(),
        Expr::Pow(a, c) => power(&go(a, order)?, *c, order)?,
        Expr::Call { func, params, arg } => call(*func, params, &go(arg, order)?, order)?,
    })
}

/// `(c0, Some((c, k)))` for an exact `c0 + c z^k` with real `k`.
fn affine(s: &PowerLogSeries) -> Option<(Scalar, Option<(Scalar, f64)>)> {
    if s.truncation_order.is_some() || s.terms.iter().any(|t| t.log_pow > 0) {
        return None;
    }
    let mut c0 = re(0.0);
    let mut mono = None;
    for t in &s.terms {
        let e = t.exponent();
        if e.norm() <= EXPONENT_TOL {
            c0 += t.coeff;
        } else if e.im.abs() <= EXPONENT_TOL && mono.is_none() {
            mono = Some((t.coeff, e.re));
        } else {
            return None;
        }
    }
    Some((c0, mono))
}

fn call(func: Func, params: &[Scalar], arg: &PowerLogSeries, order: u32) -> Result<PowerLogSeries> {
    if func == Func::ReciprocalOnePlusZ {
        return power(&PowerLogSeries::constant(re(1.0)).add(arg), re(-1.0), order);
    }
    let Some((c0, mono)) = affine(arg) else {
        return Err(unsupported(format!("{}(...) of a non-monomial series", func.name())));
    };
    let Some((c, k)) = mono else {
        return Ok(PowerLogSeries::constant(eval_call(func, params, c0)?));
    };
    let valid_k = if func == Func::Log { k != 0.0 } else { k > 0.0 };
    if !valid_k {
        return Err(unsupported(format!("{}(c z^{k})", func.name())));
    }
    let sub = |f: Func| -> Result<PowerLogSeries> {
        let n_build = if f == Func::Log { 0 } else { (((order + 1) as f64 / k).ceil() as u32).min(MAX_BUILD) };
        substitute(&catalog(f, params, n_build)?, c, k, order)
    };
    if c0 == re(0.0) {
        return sub(func);
    }
    let (s, co) = match func {
        Func::Exp => return Ok(sub(Func::Exp)?.scale(c0.exp())),
        Func::Sin => (c0.cos(), c0.sin()),
        Func::Cos => (-c0.sin(), c0.cos()),
        _ => return Err(unsupported(format!("{}(a + c z^k) with a != 0", func.name()))),
    };
    // sin(x + a) = sin x cos a + cos x sin a, cos(x + a) = cos x cos a - sin x sin a
    Ok(sub(Func::Sin)?.scale(s).add(&sub(Func::Cos)?.scale(co)))
}

fn catalog(func: Func, params: &[Scalar], n: u32) -> Result<PowerLogSeries> {
    let builder = match func {
        Func::Exp => Builder::Exp,
        Func::Sin => Builder::Sin,
        Func::Cos => Builder::Cos,
        Func::Log => Builder::Log,
        Func::BesselJ => Builder::BesselJ(params[0]),
        Func::BesselK0 => Builder::BesselK0,
        Func::MittagLeffler => {
            let terms = (0..=n).map(|j| PowerLogTerm::new(rgamma(params[0] * j as f64 + params[1]), re(0.0), j, 0)).collect();
            return Ok(PowerLogSeries::new(terms, Some(n), ""));
        }
        Func::Heun => Builder::Heun { a: params[0], b: params[1], c: params[2], d: params[3], p: params[4], q: params[5] },
        Func::ExpSq => Builder::ExpSq,
        Func::ReciprocalOnePlusZ => Builder::ReciprocalOnePlusZ,
    };
    builder.build(n)
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `s(c z^k)` termwise, keeping offsets below `order + 1`.
fn substitute(s: &PowerLogSeries, c: Scalar, k: f64, order: u32) -> Result<PowerLogSeries> {
    let int_k = (k - k.round()).abs() <= EXPONENT_TOL;
    let ln_c = ln(c)?;
    let mut terms = Vec::new();
    for t in &s.terms {
        let scale = t.coeff * pow(c, t.exponent())?;
        let (offset, frac) = if int_k {
            (t.offset * k.round() as u32, 0.0)
        } else {
            let x = k * t.offset as f64;
            (x.floor() as u32, x - x.floor())
        };
        let base = t.base_exp * k + frac;
        // (ln c + k log z)^j
        for i in 0..=t.log_pow {
            let w = binomial(t.log_pow, i) * ln_c.powu(t.log_pow - i) * k.powi(i as i32);
            terms.push(PowerLogTerm::new(scale * w, base, offset, i));
        }
    }
    let trunc = match s.truncation_order {
        None => None,
        Some(n) => {
            let next = (k * (n + 1) as f64 + EXPONENT_TOL).floor() as i64;
            if next < 1 {
                return Err(unsupported(format!("argument exponent {k} too small for the build limit")));
            }
            Some(((next - 1) as u32).min(order))
        }
    };
    Ok(PowerLogSeries::new(terms, trunc, ""))
}

fn int_power(base: &PowerLogSeries, mut n: u64) -> PowerLogSeries {
    let mut acc = PowerLogSeries::constant(re(1.0));
    let mut sq = base.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.multiply(&sq);
        }
        n >>= 1;
        if n > 0 {
            sq = sq.multiply(&sq);
        }
    }
    acc
}

fn power(base: &PowerLogSeries, c: Scalar, order: u32) -> Result<PowerLogSeries> {
    if let Some(n) = as_int(c).filter(|&n| n >= 0) {
        return Ok(int_power(base, n as u64));
    }
    let Some(lead) = base.terms.first() else {
        return Err(Error::Domain(format!("zero raised to the power {c}")));
    };
    if base.terms.iter().any(|t| t.log_pow > 0) {
        return Err(unsupported(format!("non-integer power {c} of a series with logarithms")));
    }
    let e0 = lead.exponent();
    if base.terms.len() == 1 && base.truncation_order.is_none() {
        return Ok(PowerLogSeries::monomial(pow(lead.coeff, c)?, e0 * c));
    }
    // exponents relative to the lead must be nonnegative integers
    let mut u = Vec::with_capacity(base.terms.len());
    let mut shift = i64::MAX;
    for t in &base.terms {
        match as_int(t.exponent() - e0).filter(|&d| d >= 0) {
            Some(d) => {
                u.push((d as usize, t.coeff / lead.coeff));
                shift = shift.min(d - t.offset as i64);
            }
            None => return Err(unsupported(format!("power {c} of a series with non-integer exponent gaps"))),
        }
    }
    let n = match base.truncation_order {
        None => order,
        Some(t) => {
            let known = t as i64 + shift;
            if known < 0 {
                return Err(unsupported("power of a series with no known terms after the lead"));
            }
            (known as u32).min(order)
        }
    } as usize;
    let mut uk = vec![re(0.0); n + 1];
    for (d, v) in u {
        if d <= n {
            uk[d] += v;
        }
    }
    // (1 + sum u_k x^k)^c = sum d_n x^n with
    // n d_n = sum_{k=1..n} ((c + 1) k - n) u_k d_{n-k}
    let mut d = vec![re(0.0); n + 1];
    d[0] = re(1.0);
    for m in 1..=n {
        let mut s = re(0.0);
        for k in 1..=m {
            s += ((c + 1.0) * k as f64 - m as f64) * uk[k] * d[m - k];
        }
        d[m] = s / m as f64;
    }
    let lead_c = pow(lead.coeff, c)?;
    let terms = d.into_iter().enumerate().map(|(m, v)| PowerLogTerm::new(lead_c * v, e0 * c, m as u32, 0)).collect();
    Ok(PowerLogSeries::new(terms, Some(n as u32), ""))
}
