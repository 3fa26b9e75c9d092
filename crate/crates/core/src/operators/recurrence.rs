use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::differint::{lower_raw, upper_integral_raw};
use super::{check_point, fd_first_derivative, CutRatio, Form, FunctionSpec, Order, Side};
use crate::error::{Error, Result};
use crate::quadrature::QuadConfig;
use crate::specfun::reciprocal_gamma;

pub const MAX_RECURRENCE_DEPTH: usize = 4;

/// Default finite-difference step as a fraction of `x`.
pub const DEFAULT_FD_RATIO: f64 = 1e-3;

fn inner_quad(quad: &QuadConfig) -> QuadConfig {
    quad.with_tolerances(quad.abs_tol.min(1e-14), quad.rel_tol.min(1e-13))
}

fn xpow(x: f64, p: Complex64) -> Complex64 {
    (p * x.ln()).exp()
}

/// Derivative built by the order recurrence
/// `D^μ = d/dx D^{μ−1} ∓ y(1−y)^{−μ} x^{−μ} f(xy) / Γ(1−μ)`
/// (minus for the lower side, plus for the upper side), applied until the
/// order reaches the integral regime. Each `d/dx` is a central difference
/// with three Richardson levels at step `fd_ratio·x` (default
/// [`DEFAULT_FD_RATIO`]).
pub fn recurrence_derivative(
    side: Side,
    f: &FunctionSpec,
    order: Order,
    x: f64,
    y: CutRatio,
    fd_ratio: Option<f64>,
    quad: &QuadConfig,
) -> Result<Complex64> {
    check_point(f, x)?;
    let depth = order
        .n()
        .ok_or_else(|| Error::domain(format!("recurrence needs Re(mu) >= 0, got {}", order.mu())))?;
    if depth > MAX_RECURRENCE_DEPTH {
        return Err(Error::DepthExceeded { depth, limit: MAX_RECURRENCE_DEPTH });
    }
    let ratio = fd_ratio.unwrap_or(DEFAULT_FD_RATIO);
    if !(ratio > 0.0 && ratio < 0.25) {
        return Err(Error::domain(format!("finite-difference ratio must lie in (0, 0.25), got {ratio}")));
    }
    recurse(side, f, order.mu(), x, y.get(), ratio, &inner_quad(quad))
}

fn recurse(side: Side, f: &FunctionSpec, mu: Complex64, x: f64, y: f64, ratio: f64, quad: &QuadConfig) -> Result<Complex64> {
    if mu.re < 0.0 {
        let r = match side {
            Side::Lower => lower_raw(f, mu, x, y, Form::Form1, quad)?,
            Side::Upper => upper_integral_raw(f, mu, x, y, Form::Form1, quad)?,
        };
        return Ok(r.value);
    }
    let d = fd_first_derivative(|xp| recurse(side, f, mu - 1.0, xp, y, ratio, quad), x, ratio * x)?;
    let corr = xpow(1.0 - y, -mu) * xpow(x, -mu) * f.eval(x * y) * reciprocal_gamma(1.0 - mu) * y;
    Ok(match side {
        Side::Lower => d - corr,
        Side::Upper => d + corr,
    })
}

/// The four composition laws between integer differentiation and
/// incomplete integrals of order `ν`, `Re(ν) > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompositionIdentity {
    /// `d/dx I^ν[f; y]`
    DLower,
    /// `I^ν[f′; y]`
    LowerD,
    /// `d/dx I^ν{f; y}`
    DUpper,
    /// `I^ν{f′; y}`
    UpperD,
}

impl CompositionIdentity {
    pub const ALL: [CompositionIdentity; 4] =
        [CompositionIdentity::DLower, CompositionIdentity::LowerD, CompositionIdentity::DUpper, CompositionIdentity::UpperD];

    pub fn name(self) -> &'static str {
        match self {
            CompositionIdentity::DLower => "d-lower",
            CompositionIdentity::LowerD => "lower-d",
            CompositionIdentity::DUpper => "d-upper",
            CompositionIdentity::UpperD => "upper-d",
        }
    }
}

/// Both sides of a composition identity, each from its own numerical path.
///
/// `nu` is the integration order. The left side differentiates by finite
/// differences (d-first identities) or integrates `f′` (derivative-first);
/// the right side is the boundary term plus the integral of order `ν − 1`.
pub fn composition_lhs_rhs(
    identity: CompositionIdentity,
    f: &FunctionSpec,
    nu: Complex64,
    x: f64,
    y: CutRatio,
    quad: &QuadConfig,
) -> Result<(Complex64, Complex64)> {
    check_point(f, x)?;
    if !(nu.re > 1.0) {
        return Err(Error::domain(format!("composition identities need Re(nu) > 1, got {nu}")));
    }
    let quad = inner_quad(quad);
    let yv = y.get();
    let boundary = xpow(x, nu - 1.0) * reciprocal_gamma(nu);
    let cut = xpow(1.0 - yv, nu - 1.0);
    let h = DEFAULT_FD_RATIO * x;
    let lower = |g: &FunctionSpec, mu: Complex64, xp: f64| lower_raw(g, mu, xp, yv, Form::Form1, &quad).map(|r| r.value);
    let upper =
        |g: &FunctionSpec, mu: Complex64, xp: f64| upper_integral_raw(g, mu, xp, yv, Form::Form1, &quad).map(|r| r.value);
    let fxy = f.eval(x * yv);
    match identity {
        CompositionIdentity::DLower => {
            let lhs = fd_first_derivative(|xp| lower(f, -nu, xp), x, h)?;
            let rhs = boundary * cut * fxy * yv + lower(f, 1.0 - nu, x)?;
            Ok((lhs, rhs))
        }
        CompositionIdentity::LowerD => {
            let fp = f.derivative_spec(1)?;
            let lhs = lower(&fp, -nu, x)?;
            let rhs = boundary * (cut * fxy - f.eval(0.0)) + lower(f, 1.0 - nu, x)?;
            Ok((lhs, rhs))
        }
        CompositionIdentity::DUpper => {
            let lhs = fd_first_derivative(|xp| upper(f, -nu, xp), x, h)?;
            let rhs = -boundary * cut * fxy * yv + upper(f, 1.0 - nu, x)?;
            Ok((lhs, rhs))
        }
        CompositionIdentity::UpperD => {
            let fp = f.derivative_spec(1)?;
            let lhs = upper(&fp, -nu, x)?;
            let rhs = -boundary * cut * fxy + upper(f, 1.0 - nu, x)?;
            Ok((lhs, rhs))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::operators::{lower_differint, upper_incomplete_derivative};

    fn y(v: f64) -> CutRatio {
        CutRatio::new(v).unwrap()
    }

    #[test]
    fn lower_recurrence_at_zero_order_vanishes() {
        let f = FunctionSpec::exp(c64(1.0));
        let r = recurrence_derivative(Side::Lower, &f, Order::real(0.0).unwrap(), 1.2, y(0.4), None, &QuadConfig::default())
            .unwrap();
        assert!(r.norm() < 1e-9);
    }

    #[test]
    fn recurrence_matches_direct_paths() {
        let quad = QuadConfig::default().with_tolerances(1e-14, 1e-13);
        let f = FunctionSpec::power(c64(1.5));
        for mu in [0.3, 1.4] {
            let order = Order::real(mu).unwrap();
            let low = lower_differint(&f, order, 0.9, y(0.5), Form::Auto, &quad).unwrap().value;
            let rec = recurrence_derivative(Side::Lower, &f, order, 0.9, y(0.5), None, &quad).unwrap();
            assert!((low - rec).norm() < 1e-6 * low.norm(), "lower {mu}: {low} vs {rec}");
            let up = upper_incomplete_derivative(&f, order, 0.9, y(0.5), Form::Auto, &quad).unwrap().value;
            let rec = recurrence_derivative(Side::Upper, &f, order, 0.9, y(0.5), None, &quad).unwrap();
            assert!((up - rec).norm() < 1e-6 * up.norm(), "upper {mu}: {up} vs {rec}");
        }
    }

    #[test]
    fn depth_guard() {
        let f = FunctionSpec::sin();
        let r = recurrence_derivative(Side::Upper, &f, Order::real(4.2).unwrap(), 1.0, y(0.5), None, &QuadConfig::default());
        assert!(matches!(r, Err(Error::DepthExceeded { depth: 5, limit: 4 })));
    }

    #[test]
    fn all_identities_on_a_quadratic() {
        let f = FunctionSpec::monomial(2);
        for id in CompositionIdentity::ALL {
            let (lhs, rhs) = composition_lhs_rhs(id, &f, c64(2.5), 1.0, y(0.5), &QuadConfig::default()).unwrap();
            assert!((lhs - rhs).norm() < 1e-7 * lhs.norm().max(1e-3), "{id:?}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn composition_needs_order_above_one() {
        let f = FunctionSpec::sin();
        assert!(composition_lhs_rhs(CompositionIdentity::DLower, &f, c64(0.8), 1.0, y(0.5), &QuadConfig::default())
            .is_err());
    }
}
