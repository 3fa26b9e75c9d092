use num_complex::Complex64;

use super::{check_point, quad_failure, CutRatio, Form, FunctionSpec, Order, Regime};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_endpoint_power, Endpoint, QuadConfig, QuadResult};
use crate::specfun::reciprocal_gamma;

fn xpow(x: f64, p: Complex64) -> Complex64 {
    (p * x.ln()).exp()
}

fn zero() -> QuadResult {
    QuadResult::exact(Complex64::new(0.0, 0.0))
}

/// Lower incomplete differintegral `(1/Γ(−μ)) ∫₀^{yx} (x−t)^{−μ−1} f(t) dt`.
///
/// Valid for every complex `μ`: the kernel never reaches its singularity
/// because `t <= yx < x`. Nonnegative integer orders give exactly 0.
pub fn lower_differint(
    f: &FunctionSpec,
    order: Order,
    x: f64,
    y: CutRatio,
    form: Form,
    quad: &QuadConfig,
) -> Result<QuadResult> {
    check_point(f, x)?;
    lower_raw(f, order.mu(), x, y.get(), form, quad)
}

pub(crate) fn lower_raw(
    f: &FunctionSpec,
    mu: Complex64,
    x: f64,
    y: f64,
    form: Form,
    quad: &QuadConfig,
) -> Result<QuadResult> {
    let rg = reciprocal_gamma(-mu);
    if rg == Complex64::new(0.0, 0.0) {
        return Ok(zero());
    }
    let s = -mu - 1.0;
    let r = match form.resolve() {
        Form::Form2 => integrate(|u: f64| f.eval(u * x) * (s * (1.0 - u).ln()).exp(), 0.0, y, quad)
            .map(|r| r.scaled(rg * xpow(x, -mu))),
        Form::Form3 => integrate(|w: f64| f.eval(y * w * x) * (s * (1.0 - w * y).ln()).exp(), 0.0, 1.0, quad)
            .map(|r| r.scaled(rg * xpow(x, -mu) * y)),
        _ => integrate(|t: f64| f.eval(t) * (s * (x - t).ln()).exp(), 0.0, y * x, quad).map(|r| r.scaled(rg)),
    };
    r.map_err(quad_failure("lower differintegral"))
}

/// Upper incomplete integral `(1/Γ(−μ)) ∫_{yx}^x (x−t)^{−μ−1} f(t) dt`, `Re(μ) < 0`.
pub fn upper_incomplete_integral(
    f: &FunctionSpec,
    order: Order,
    x: f64,
    y: CutRatio,
    form: Form,
    quad: &QuadConfig,
) -> Result<QuadResult> {
    check_point(f, x)?;
    if order.regime() != Regime::Integral {
        return Err(Error::domain(format!("upper incomplete integral needs Re(mu) < 0, got {}", order.mu())));
    }
    upper_integral_raw(f, order.mu(), x, y.get(), form, quad)
}

pub(crate) fn upper_integral_raw(
    f: &FunctionSpec,
    mu: Complex64,
    x: f64,
    y: f64,
    form: Form,
    quad: &QuadConfig,
) -> Result<QuadResult> {
    let rg = reciprocal_gamma(-mu);
    let s = -mu - 1.0;
    let r = match form.resolve() {
        Form::Form2 => integrate_endpoint_power(|u: f64| f.eval(u * x), s, y, 1.0, Endpoint::Upper, quad)
            .map(|r| r.scaled(rg * xpow(x, -mu))),
        Form::Form3 => {
            integrate_endpoint_power(|v: f64| f.eval((1.0 - v) * x), s, 0.0, 1.0 - y, Endpoint::Lower, quad)
                .map(|r| r.scaled(rg * xpow(x, -mu)))
        }
        _ => integrate_endpoint_power(|t: f64| f.eval(t), s, y * x, x, Endpoint::Upper, quad).map(|r| r.scaled(rg)),
    };
    r.map_err(quad_failure("upper incomplete integral"))
}

/// Upper incomplete derivative, `Re(μ) >= 0`: the classical operator based
/// at `a = xy`, expanded as boundary terms at `a` plus an upper integral of
/// `f^{(n)}` of order `μ − n`.
pub fn upper_incomplete_derivative(
    f: &FunctionSpec,
    order: Order,
    x: f64,
    y: CutRatio,
    form: Form,
    quad: &QuadConfig,
) -> Result<QuadResult> {
    check_point(f, x)?;
    let n = order
        .n()
        .ok_or_else(|| Error::domain(format!("upper incomplete derivative needs Re(mu) >= 0, got {}", order.mu())))?;
    upper_derivative_raw(f, order.mu(), n, x, y.get(), form, quad)
}

fn upper_derivative_raw(
    f: &FunctionSpec,
    mu: Complex64,
    n: usize,
    x: f64,
    y: f64,
    form: Form,
    quad: &QuadConfig,
) -> Result<QuadResult> {
    let a = x * y;
    let boundary = boundary_terms(f, mu, n, a, x)?;
    let fn_spec = f.derivative_spec(n)?;
    let tail = upper_integral_raw(&fn_spec, mu - n as f64, x, y, form, quad)?;
    Ok(tail.shifted(boundary))
}

/// `Σ_{k<n} f^{(k)}(a) (x−a)^{k−μ} / Γ(k+1−μ)`.
fn boundary_terms(f: &FunctionSpec, mu: Complex64, n: usize, a: f64, x: f64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let rg = reciprocal_gamma(k as f64 + 1.0 - mu);
        if rg == Complex64::new(0.0, 0.0) {
            continue;
        }
        let dk = f.derivative(k)?(a);
        if !(dk.re.is_finite() && dk.im.is_finite()) {
            return Err(Error::NonFiniteIntegrand(a));
        }
        acc += dk * xpow(x - a, k as f64 - mu) * rg;
    }
    Ok(acc)
}

/// Upper operator in either regime.
pub fn upper_differint(
    f: &FunctionSpec,
    order: Order,
    x: f64,
    y: CutRatio,
    form: Form,
    quad: &QuadConfig,
) -> Result<QuadResult> {
    match order.regime() {
        Regime::Integral => upper_incomplete_integral(f, order, x, y, form, quad),
        Regime::Derivative => upper_incomplete_derivative(f, order, x, y, form, quad),
    }
}

/// Classical Riemann–Liouville differintegral based at `a`.
///
/// Integral orders use the weakly singular kernel directly; derivative
/// orders use boundary terms at `a` plus an integral of `f^{(n)}`.
pub fn classical_rl(f: &FunctionSpec, order: Order, a: f64, x: f64, quad: &QuadConfig) -> Result<QuadResult> {
    check_point(f, x)?;
    if !(a >= 0.0 && a < x) {
        return Err(Error::domain(format!("classical operator needs 0 <= a < x, got a = {a}, x = {x}")));
    }
    let mu = order.mu();
    let (boundary, g, nu) = match order.n() {
        None => (Complex64::new(0.0, 0.0), f.clone(), mu),
        Some(n) => (boundary_terms(f, mu, n, a, x)?, f.derivative_spec(n)?, mu - n as f64),
    };
    let rg = reciprocal_gamma(-nu);
    integrate_endpoint_power(|t: f64| g.eval(t), -nu - 1.0, a, x, Endpoint::Upper, quad)
        .map(|r| r.scaled(rg).shifted(boundary))
        .map_err(quad_failure("classical differintegral"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::specfun::{gamma, incomplete_beta};

    fn y(v: f64) -> CutRatio {
        CutRatio::new(v).unwrap()
    }

    fn tight() -> QuadConfig {
        QuadConfig::default().with_tolerances(1e-14, 1e-13)
    }

    #[test]
    fn first_integral_of_one() {
        let one = FunctionSpec::constant(c64(1.0));
        let mu = Order::real(-1.0).unwrap();
        let r = lower_differint(&one, mu, 1.0, y(0.5), Form::Auto, &tight()).unwrap();
        assert!((r.value - 0.5).norm() < 1e-13);
        let c = classical_rl(&one, mu, 0.0, 1.7, &tight()).unwrap();
        assert!((c.value - 1.7).norm() < 1e-13);
    }

    #[test]
    fn integer_derivative_order_is_zero() {
        let f = FunctionSpec::exp(c64(1.0));
        for m in 0..4 {
            let r = lower_differint(&f, Order::real(m as f64).unwrap(), 1.3, y(0.4), Form::Form2, &tight()).unwrap();
            assert_eq!(r.value, c64(0.0));
        }
    }

    #[test]
    fn power_function_oracle() {
        // mpmath: B_{0.5}(1.5, 0.5)/Γ(0.5)
        let f = FunctionSpec::power(c64(0.5));
        let mu = Order::real(-0.5).unwrap();
        for form in [Form::Form1, Form::Form2, Form::Form3] {
            let r = lower_differint(&f, mu, 1.0, y(0.5), form, &tight()).unwrap();
            assert!((r.value - 0.161_018_670_952_500_86).norm() < 1e-12, "{form:?}");
        }
    }

    #[test]
    fn upper_constant_function() {
        let one = FunctionSpec::constant(c64(1.0));
        let (x, yv): (f64, f64) = (1.3, 0.3);
        for mu in [c64(-0.4), c64(-1.7), Complex64::new(-0.5, 0.4)] {
            let expect = ((-mu) * (1.0 - yv).ln()).exp() * ((-mu) * f64::ln(x)).exp() * reciprocal_gamma(1.0 - mu);
            for form in [Form::Form1, Form::Form2, Form::Form3] {
                let r = upper_incomplete_integral(&one, Order::new(mu).unwrap(), x, y(yv), form, &tight()).unwrap();
                assert!((r.value - expect).norm() < 1e-11 * expect.norm(), "{mu} {form:?}");
            }
        }
    }

    #[test]
    fn upper_derivative_at_zero_order_reproduces_f() {
        let f = FunctionSpec::sin();
        let r = upper_incomplete_derivative(&f, Order::real(0.0).unwrap(), 1.1, y(0.3), Form::Auto, &tight()).unwrap();
        assert!((r.value - 1.1f64.sin()).norm() < 1e-12);
    }

    #[test]
    fn upper_derivative_of_power() {
        // continued closed form B_{1−y}(−μ, λ+1)/Γ(−μ) x^{λ−μ} written through
        // the complete beta minus the lower part
        let (lambda, mu, x, yv) = (2.5, 0.4, 0.8, 0.5);
        let f = FunctionSpec::power(c64(lambda));
        let r = upper_incomplete_derivative(&f, Order::real(mu).unwrap(), x, y(yv), Form::Auto, &tight()).unwrap();
        let full = gamma(c64(lambda + 1.0)).unwrap() * reciprocal_gamma(c64(lambda + 1.0 - mu));
        let low = incomplete_beta(yv, c64(lambda + 1.0), c64(-mu)).unwrap() * reciprocal_gamma(c64(-mu));
        let expect = (full - low) * x.powf(lambda - mu);
        assert!((r.value - expect).norm() < 1e-11 * expect.norm());
    }

    #[test]
    fn missing_derivative_is_reported() {
        let f = FunctionSpec::new(|t: f64| c64(t.cos()), 2.0, Smoothness::LInfinity);
        let r = upper_incomplete_derivative(&f, Order::real(0.5).unwrap(), 1.0, y(0.5), Form::Auto, &tight());
        assert!(matches!(r, Err(Error::MissingDerivatives(1))));
    }

    #[test]
    fn classical_exponential_at_derivative_order() {
        // D^μ e^t at a = 0 equals x^{−μ} Σ x^n / Γ(n+1−μ)
        let x: f64 = 0.9;
        let mu = c64(0.6);
        let expect: Complex64 = (0..40).map(|n| reciprocal_gamma(n as f64 + 1.0 - mu) * x.powi(n)).sum::<Complex64>()
            * x.powf(-0.6);
        let r = classical_rl(&FunctionSpec::exp(c64(1.0)), Order::new(mu).unwrap(), 0.0, x, &tight()).unwrap();
        assert!((r.value - expect).norm() < 1e-11 * expect.norm());
    }

    use super::super::Smoothness;
}
