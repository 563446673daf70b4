use super::{fracdiff_series, FracOrder};
use crate::series::PowerLogSeries;
use crate::special::as_int;
use crate::{Result, Scalar};

/// Generalized binomial coefficient `alpha (alpha-1) ... (alpha-k+1) / k!`.
pub fn binomial(alpha: Scalar, k: u32) -> Scalar {
    let mut c = Scalar::new(1.0, 0.0);
    for i in 0..k {
        c *= (alpha - i as f64) / (i + 1) as f64;
    }
    c
}

/// Generalized Leibniz rule
/// `d^alpha (f g) = sum_k binom(alpha, k) d^(alpha-k) f * g^(k)`.
///
/// For nonnegative integer `alpha` the sum is finite; otherwise it is cut
/// after `k_max`.
pub fn fracdiff_product(f: &PowerLogSeries, g: &PowerLogSeries, alpha: impl Into<FracOrder>, k_max: u32) -> Result<PowerLogSeries> {
    let alpha = alpha.into();
    let top = match as_int(alpha.alpha) {
        Some(n) if n >= 0 => n as u32,
        _ => k_max,
    };
    let mut acc = PowerLogSeries::zero();
    acc.truncation_order = min_defined(f.truncation_order, g.truncation_order);
    for k in 0..=top {
        let c = binomial(alpha.alpha, k);
        if c == Scalar::new(0.0, 0.0) {
            continue;
        }
        let df = fracdiff_series(f, alpha.alpha - k as f64)?;
        let dg = fracdiff_series(g, k as f64)?;
        if dg.terms.is_empty() {
            continue;
        }
        acc = acc.add(&df.multiply(&dg).scale(c));
    }
    Ok(acc.with_tag(format!("d^({})[({})*({})]", alpha.alpha, f.source_tag, g.source_tag)))
}

fn min_defined(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}
