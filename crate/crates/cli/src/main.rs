//! `fracdiff`: command-line front end for the differintegration engine.

use clap::{Parser, Subcommand, ValueEnum};
use fracdiff_core::expr::{compile, eval, parse, Expr, Func, DEFAULT_ORDER};
use fracdiff_core::gl::{gl_differint, GlConfig};
use fracdiff_core::meijer::{
    asymptotic_class, check_convergence, chi, fracdiff_shift, fracdiff_shift_general, frint_params, psi_p, FoxH,
    FrIntG, GParams, Leading, Point,
};
use fracdiff_core::rlh::{fracdiff_closed_form, fracdiff_power, fracdiff_series, power_branch, power_form, FracOrder, PowerBranch};
use fracdiff_core::series::PowerLogSeries;
use fracdiff_core::{re, Error, Scalar};
use serde::Serialize;
use serde_json::Value;
use std::process::ExitCode;

const DEFAULT_H: f64 = 1e-3;
const DEFAULT_COMPARE_TOL: f64 = 1e-2;

#[derive(Parser)]
#[command(name = "fracdiff", version, about = "Fractional differintegrals of arbitrary complex order")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compile an expression to a power-logarithmic series, optionally
    /// differintegrated termwise.
    Series {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        terms: u32,
    },
    /// d^alpha z^lambda.
    Power {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Grünwald–Letnikov sum of a real expression at a real point.
    Gl {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = DEFAULT_H)]
        h: f64,
        /// Number of terms; defaults to covering [0, at].
        #[arg(long)]
        n: Option<usize>,
    },
    /// Series route against the Grünwald–Letnikov sum and, where one is
    /// known, a closed form.
    Compare {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        terms: u32,
        #[arg(long, default_value_t = DEFAULT_H)]
        h: f64,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Parameters of the order-alpha differintegral of a G-function.
    MeijerShift {
        #[arg(long)]
        params: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Parameters of the Riemann–Liouville integral of t^(alpha-1) G(w t^g).
    MeijerFrint {
        #[arg(long)]
        params: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Convergence decision for that integral.
    MeijerCheck {
        #[arg(long)]
        params: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Upper integration limit.
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        at: String,
    },
    /// Leading asymptotic classes at 0, the unit point and infinity.
    MeijerAsym {
        #[arg(long)]
        params: String,
    },
    /// Closed-form differintegral of exp, sin, sqrt, pow or exp_sq.
    ClosedForm {
        name: String,
        /// Exponent for `pow`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Numeric(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

#[derive(Serialize)]
struct SeriesOut {
    expr: String,
    alpha: Option<Scalar>,
    series: PowerLogSeries,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail_estimate: Option<f64>,
}

#[derive(Serialize)]
struct PowerOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<Scalar>,
    form: String,
    branch: PowerBranch,
    series: PowerLogSeries,
}

#[derive(Serialize)]
struct GlOut {
    value: Scalar,
    error_estimate: f64,
    terms: usize,
    h: f64,
}

#[derive(Serialize)]
struct CompareOut {
    expr: String,
    alpha: f64,
    at: f64,
    series: Scalar,
    tail_estimate: f64,
    gl: Scalar,
    gl_error_estimate: f64,
    reference: Option<Scalar>,
    reference_form: Option<String>,
    series_error: Option<f64>,
    gl_error: Option<f64>,
    series_gl_diff: f64,
    tolerance: f64,
    agree: bool,
}

#[derive(Serialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
enum ShiftOut {
    MeijerG(GParams),
    FoxH(FoxH),
}

#[derive(Serialize)]
struct FrintOut {
    frint: FrIntG,
    params: GParams,
}

#[derive(Serialize)]
struct AsymPoint {
    point: Point,
    location: Option<Scalar>,
    leading_terms: Vec<Leading>,
}

#[derive(Serialize)]
struct AsymOut {
    chi: Option<Scalar>,
    psi_p: Option<Scalar>,
    points: Vec<AsymPoint>,
}

#[derive(Serialize)]
struct ClosedOut {
    name: String,
    alpha: Scalar,
    formula: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<Scalar>,
}

#[derive(Serialize)]
struct Diagnostic<'a> {
    error: &'a str,
    message: String,
}

/// Complex literal such as `2`, `-0.5`, `1+2i` or `3i`.
fn scalar(flag: &str, text: &str) -> Outcome<Scalar> {
    match parse(text) {
        Ok(Expr::Const(c)) => Ok(c),
        Ok(_) => Err(Failure::Usage(format!("--{flag}: `{text}` is not a constant"))),
        Err(e) => Err(Failure::Usage(format!("--{flag}: {e}"))),
    }
}

fn real(flag: &str, text: &str) -> Outcome<f64> {
    let c = scalar(flag, text)?;
    if c.im != 0.0 {
        return Err(Failure::Usage(format!("--{flag} must be real, got {c}")));
    }
    Ok(c.re)
}

fn expression(text: &str) -> Outcome<Expr> {
    parse(text).map_err(|e| Failure::Usage(e.to_string()))
}

fn read_params(path: &str) -> Outcome<GParams> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("--params {path}: {e}")))?;
    GParams::from_json(&text).map_err(|e| Failure::Usage(format!("--params {path}: {e}")))
}

fn tolerance() -> Outcome<f64> {
    match std::env::var("FRACDIFF_TOL") {
        Err(_) => Ok(DEFAULT_COMPARE_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(Failure::Usage(format!("FRACDIFF_TOL must be a positive number, got `{s}`"))),
        },
    }
}

fn gl_value(e: &Expr, x: f64, alpha: f64, h: f64, n: Option<usize>) -> Outcome<fracdiff_core::gl::GlResult> {
    let f = |t: f64| eval(e, re(t)).map(|v| v.re).unwrap_or(f64::NAN);
    let mut cfg = GlConfig::covering(h, x);
    if let Some(n) = n {
        cfg.n_terms = n;
    }
    Ok(gl_differint(f, x, alpha, cfg)?)
}

/// Closed form for expressions that are exactly one catalog entry of `z`.
fn reference(e: &Expr) -> Option<(&'static str, Vec<Scalar>)> {
    match e {
        Expr::Call { func, arg, .. } if **arg == Expr::Z => match func {
            Func::Exp => Some(("exp", vec![])),
            Func::Sin => Some(("sin", vec![])),
            Func::ExpSq => Some(("exp_sq", vec![])),
            _ => None,
        },
        Expr::Pow(base, c) if **base == Expr::Z => Some(("pow", vec![*c])),
        Expr::Z => Some(("pow", vec![re(1.0)])),
        _ => None,
    }
}

fn run(cmd: Cmd) -> Outcome<Value> {
    let v = match cmd {
        Cmd::Series { expr, alpha, at, terms } => {
            let e = expression(&expr)?;
            let mut s = compile(&e, terms)?;
            let alpha = alpha.map(|a| scalar("alpha", &a)).transpose()?;
            if let Some(a) = alpha {
                s = fracdiff_series(&s, a)?;
            }
            let z = at.map(|z| scalar("at", &z)).transpose()?;
            let value = z.map(|z| s.eval(z)).transpose()?;
            let tail_estimate = z.map(|z| s.tail_estimate(z));
            serde_json::to_value(SeriesOut { expr: e.to_string(), alpha, series: s, value, tail_estimate })
        }
        Cmd::Power { lambda, alpha, at } => {
            let l = scalar("lambda", &lambda)?;
            let a = FracOrder::new(scalar("alpha", &alpha)?);
            let s = fracdiff_power(l, a)?;
            let value = at.map(|z| scalar("at", &z)).transpose()?.map(|z| s.eval(z)).transpose()?;
            serde_json::to_value(PowerOut { value, form: power_form(l, a)?, branch: power_branch(l, &a), series: s })
        }
        Cmd::Gl { expr, alpha, at, h, n } => {
            let e = expression(&expr)?;
            let x = real("at", &at)?;
            let r = gl_value(&e, x, real("alpha", &alpha)?, h, n)?;
            serde_json::to_value(GlOut { value: re(r.value), error_estimate: r.error_estimate, terms: r.terms, h })
        }
        Cmd::Compare { expr, alpha, at, terms, h, n } => {
            let tol = tolerance()?;
            let e = expression(&expr)?;
            let (a, x) = (real("alpha", &alpha)?, real("at", &at)?);
            let d = fracdiff_series(&compile(&e, terms)?, a)?;
            let series = d.eval(re(x))?;
            let gl = gl_value(&e, x, a, h, n)?;
            let closed = match reference(&e) {
                Some((name, ps)) => Some(fracdiff_closed_form(name, &ps, a)?),
                None => None,
            };
            let reference = closed.as_ref().map(|c| c.eval(re(x))).transpose()?;
            let diff = (series - gl.value).norm();
            serde_json::to_value(CompareOut {
                expr: e.to_string(),
                alpha: a,
                at: x,
                series,
                tail_estimate: d.tail_estimate(re(x)),
                gl: re(gl.value),
                gl_error_estimate: gl.error_estimate,
                reference,
                reference_form: closed.map(|c| c.formula),
                series_error: reference.map(|r| (series - r).norm()),
                gl_error: reference.map(|r| (gl.value - r).norm()),
                series_gl_diff: diff,
                tolerance: tol,
                agree: diff <= tol * series.norm().max(1.0),
            })
        }
        Cmd::MeijerShift { params, alpha } => {
            let gp = read_params(&params)?;
            let a = scalar("alpha", &alpha)?;
            let out =
                if gp.is_plain() { ShiftOut::MeijerG(fracdiff_shift(&gp, a)?) } else { ShiftOut::FoxH(fracdiff_shift_general(&gp, a)?) };
            serde_json::to_value(out)
        }
        Cmd::MeijerFrint { params, alpha, beta } => {
            let gp = read_params(&params)?;
            let f = frint_params(&gp, scalar("alpha", &alpha)?, scalar("beta", &beta)?)?;
            let params = f.to_gparams();
            serde_json::to_value(FrintOut { frint: f, params })
        }
        Cmd::MeijerCheck { params, alpha, beta, at } => {
            let gp = read_params(&params)?;
            let r = check_convergence(&gp, scalar("alpha", &alpha)?, scalar("beta", &beta)?, scalar("at", &at)?)?;
            serde_json::to_value(r)
        }
        Cmd::MeijerAsym { params } => {
            let gp = read_params(&params)?;
            let points = [Point::Zero, Point::Unit, Point::Infinity]
                .into_iter()
                .map(|p| AsymPoint { point: p, location: p.location(&gp), leading_terms: asymptotic_class(&gp, p).leading_terms })
                .collect();
            serde_json::to_value(AsymOut { chi: chi(&gp), psi_p: psi_p(&gp), points })
        }
        Cmd::ClosedForm { name, lambda, alpha, at } => {
            let ps = lambda.map(|l| scalar("lambda", &l)).transpose()?.into_iter().collect::<Vec<_>>();
            let c = fracdiff_closed_form(&name, &ps, scalar("alpha", &alpha)?).map_err(|e| match e {
                Error::UnknownFunction(_) | Error::Param(_) => Failure::Usage(e.to_string()),
                e => Failure::Numeric(e),
            })?;
            let value = at.map(|z| scalar("at", &z)).transpose()?.map(|z| c.eval(z)).transpose()?;
            serde_json::to_value(ClosedOut { name, alpha: c.alpha, formula: c.formula, value })
        }
    };
    Ok(v.expect("output serializes"))
}

fn text_lines(v: &Value, prefix: &str, out: &mut Vec<String>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| text_lines(x, &key(k), out)),
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            xs.iter().enumerate().for_each(|(i, x)| text_lines(x, &key(&i.to_string()), out))
        }
        _ => out.push(format!("{prefix}: {v}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(v) => {
            match cli.format {
                Format::Json => println!("{v}"),
                Format::Text => {
                    let mut lines = Vec::new();
                    text_lines(&v, "", &mut lines);
                    println!("{}", lines.join("\n"));
                }
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(message)) => {
            eprintln!("{}", serde_json::to_string(&Diagnostic { error: "usage", message }).unwrap());
            ExitCode::from(2)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("{}", serde_json::to_string(&Diagnostic { error: e.kind(), message: e.to_string() }).unwrap());
            ExitCode::from(3)
        }
    }
}
