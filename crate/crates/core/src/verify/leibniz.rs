//! Product and composition rules for incomplete differintegrals.

use num_complex::Complex64;

use super::report::{format_complex, CheckReport};
use crate::error::{Error, Result};
use crate::operators::{lower_differint, upper_differint, CutRatio, Form, FunctionSpec, Order, Side, Smoothness};
use crate::quadrature::QuadConfig;
use crate::specfun::{composite_derivatives, faa_di_bruno_derivative, gamma_ratio, generalized_binomial, reciprocal_gamma, MAX_PARTITION_ORDER};

pub const MAX_MONOMIAL: u32 = 6;
pub const MAX_SERIES_TERMS: usize = 30;
pub const DEFAULT_LEIBNIZ_TERMS: usize = 25;
pub const DEFAULT_CHAIN_TERMS: usize = 20;

fn quad() -> QuadConfig {
    QuadConfig::default().with_tolerances(1e-14, 1e-12)
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Lower => "lower",
        Side::Upper => "upper",
    }
}

fn apply(f: &FunctionSpec, mu: Complex64, x: f64, y: CutRatio, side: Side) -> Result<Complex64> {
    let order = Order::new(mu)?;
    let q = quad();
    let r = match side {
        Side::Lower => lower_differint(f, order, x, y, Form::Auto, &q)?,
        Side::Upper => upper_differint(f, order, x, y, Form::Auto, &q)?,
    };
    Ok(r.value)
}

/// `D^μ[tⁿ f] = Σ_k C(n,k) x^{n−k} (−1)^k Γ(k−μ)/Γ(−μ) D^{μ−k}[f]`.
pub fn leibniz_monomial_check(f: &FunctionSpec, n: u32, mu: Complex64, x: f64, y: CutRatio, side: Side) -> Result<CheckReport> {
    if n == 0 || n > MAX_MONOMIAL {
        return Err(Error::domain(format!("monomial degree must lie in 1..={MAX_MONOMIAL}, got {n}")));
    }
    let product = FunctionSpec::monomial(n).product(f);
    let lhs = apply(&product, mu, x, y, side)?;
    let mut rhs = Complex64::new(0.0, 0.0);
    let mut binom = 1.0;
    for k in 0..=n as usize {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = apply(f, mu - k as f64, x, y, side)? * gamma_ratio(mu, k) * x.powi(n as i32 - k as i32);
        rhs += term * (binom * sign);
        binom = binom * (n as usize - k) as f64 / (k + 1) as f64;
    }
    Ok(CheckReport::new(format!("leibniz-monomial-{}", side_name(side)), lhs, rhs, 1e-8)
        .with_param("f", f.label())
        .with_param("n", n)
        .with_param("mu", format_complex(mu))
        .with_param("x", x)
        .with_param("y", y.get()))
}

/// Geometric extrapolation of the tail from the last three terms.
fn tail_estimate(terms: &[Complex64]) -> f64 {
    let n = terms.len();
    if n < 3 {
        return terms.iter().map(|t| t.norm()).sum();
    }
    let (a, b, c) = (terms[n - 3].norm(), terms[n - 2].norm(), terms[n - 1].norm());
    let ratio = if b > 0.0 { c / b } else { 0.0 }.max(if a > 0.0 { b / a } else { 0.0 });
    if ratio < 1.0 {
        c * ratio / (1.0 - ratio)
    } else {
        a + b + c
    }
}

fn series_report(name: String, lhs: Complex64, terms: &[Complex64], tolerance: f64, requested: usize) -> CheckReport {
    let rhs: Complex64 = terms.iter().sum();
    let tail = tail_estimate(terms);
    let effective = tolerance.max(10.0 * tail / lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE));
    CheckReport::relative_only(name, lhs, rhs, effective)
        .with_param("K", requested)
        .with_param("tail", format!("{tail:.3e}"))
}

/// Truncated product rule `D^μ[fg] ≈ Σ_{k<=K} C(μ,k) D^{μ−k}[f] g^{(k)}(x)`.
///
/// `g` must be tagged analytic and supply `K` derivatives. Passes when the
/// relative discrepancy is within `max(tolerance, 10·tail)`.
#[allow(clippy::too_many_arguments)]
pub fn leibniz_series_check(
    f: &FunctionSpec,
    g: &FunctionSpec,
    mu: Complex64,
    x: f64,
    y: CutRatio,
    side: Side,
    terms: usize,
    tolerance: f64,
) -> Result<CheckReport> {
    if terms > MAX_SERIES_TERMS {
        return Err(Error::Limit(format!("at most {MAX_SERIES_TERMS} series terms, got {terms}")));
    }
    if g.smoothness() != Smoothness::Analytic || g.supplied_derivatives() < terms {
        return Err(Error::AnalyticityRequired(format!(
            "{} must be analytic with {terms} derivative callbacks",
            g.label()
        )));
    }
    let lhs = apply(&f.product(g), mu, x, y, side)?;
    let mut series = Vec::with_capacity(terms + 1);
    for k in 0..=terms {
        let gk = g.derivative(k)?(x);
        series.push(generalized_binomial(mu, k) * apply(f, mu - k as f64, x, y, side)? * gk);
    }
    Ok(series_report(format!("leibniz-series-{}", side_name(side)), lhs, &series, tolerance, terms)
        .with_param("f", f.label())
        .with_param("g", g.label())
        .with_param("mu", format_complex(mu))
        .with_param("x", x)
        .with_param("y", y.get()))
}

/// Truncated chain rule
/// `D^μ[f∘g] ≈ Σ_{k<=K} C(μ,k) c_k x^{k−μ} (f∘g)^{(k)}(x)` with
/// `c_k = (1 − (1−y)^{k−μ})/Γ(1+k−μ)` (lower) or `(1−y)^{k−μ}/Γ(1+k−μ)` (upper).
///
/// `(f∘g)^{(k)}` comes from the partition sum up to the partition guard and
/// from the Bell-polynomial recurrence beyond it.
#[allow(clippy::too_many_arguments)]
pub fn chain_rule_check(
    outer: &FunctionSpec,
    inner: &FunctionSpec,
    mu: Complex64,
    x: f64,
    y: CutRatio,
    side: Side,
    terms: usize,
    tolerance: f64,
) -> Result<CheckReport> {
    if terms > MAX_SERIES_TERMS {
        return Err(Error::Limit(format!("at most {MAX_SERIES_TERMS} series terms, got {terms}")));
    }
    if outer.supplied_derivatives() < terms || inner.supplied_derivatives() < terms {
        return Err(Error::AnalyticityRequired(format!(
            "{} and {} need {terms} derivative callbacks",
            outer.label(),
            inner.label()
        )));
    }
    let composite = FunctionSpec::compose(outer, inner);
    let lhs = apply(&composite, mu, x, y, side)?;
    let u = inner.eval(x).re;
    let f_at: Vec<Complex64> = (1..=terms).map(|r| outer.derivative(r).map(|d| d(u))).collect::<Result<_>>()?;
    let g_at: Vec<Complex64> = (1..=terms).map(|j| inner.derivative(j).map(|d| d(x))).collect::<Result<_>>()?;
    let bell = composite_derivatives(&f_at, &g_at, terms)?;
    let one_minus_y = 1.0 - y.get();
    let mut series = Vec::with_capacity(terms + 1);
    for k in 0..=terms {
        let p = k as f64 - mu;
        let cut = (p * one_minus_y.ln()).exp();
        let c = match side {
            Side::Lower => 1.0 - cut,
            Side::Upper => cut,
        } * reciprocal_gamma(1.0 + p);
        let dk = match k {
            0 => outer.eval(u),
            k if k <= MAX_PARTITION_ORDER => faa_di_bruno_derivative(&f_at, &g_at, k)?,
            k => bell[k - 1],
        };
        series.push(generalized_binomial(mu, k) * c * (p * x.ln()).exp() * dk);
    }
    Ok(series_report(format!("chain-rule-{}", side_name(side)), lhs, &series, tolerance, terms)
        .with_param("f", outer.label())
        .with_param("g", inner.label())
        .with_param("mu", format_complex(mu))
        .with_param("x", x)
        .with_param("y", y.get()))
}
