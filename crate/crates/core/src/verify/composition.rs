//! Integer-derivative/incomplete-integral composition identities.

use num_complex::Complex64;

use super::report::{format_complex, CheckReport};
use crate::closedforms::{power_lower, power_upper};
use crate::error::Result;
use crate::operators::{composition_lhs_rhs, CompositionIdentity, CutRatio, FunctionSpec};
use crate::quadrature::QuadConfig;
use crate::specfun::reciprocal_gamma;

pub const COMPOSITION_TOLERANCE: f64 = 1e-5;
pub const EXACT_TOLERANCE: f64 = 1e-10;

pub fn composition_orders() -> Vec<Complex64> {
    [1.2, 2.3, 2.5].into_iter().map(|v| Complex64::new(v, 0.0)).collect()
}

/// Both sides of every identity for each integration order `ν` in `orders`.
pub fn composition_theorem_suite(f: &FunctionSpec, orders: &[Complex64], x: f64, y: CutRatio) -> Result<Vec<CheckReport>> {
    let quad = QuadConfig::default();
    let mut out = Vec::new();
    for &nu in orders {
        for id in CompositionIdentity::ALL {
            let (lhs, rhs) = composition_lhs_rhs(id, f, nu, x, y, &quad)?;
            out.push(
                CheckReport::relative_only(format!("composition-{}", id.name()), lhs, rhs, COMPOSITION_TOLERANCE)
                    .with_param("f", f.label())
                    .with_param("nu", format_complex(nu))
                    .with_param("x", x)
                    .with_param("y", y.get()),
            );
        }
    }
    Ok(out)
}

/// The four identities on `t^λ`, both sides from power-law closed forms.
pub fn composition_power_reductions(lambda: f64, nu: Complex64, x: f64, y: CutRatio) -> Result<Vec<CheckReport>> {
    let l = Complex64::new(lambda, 0.0);
    let yv = y.get();
    let xpow = |p: Complex64| (p * x.ln()).exp();
    let boundary = xpow(nu - 1.0) * reciprocal_gamma(nu) * ((nu - 1.0) * (1.0 - yv).ln()).exp();
    let fxy = (x * yv).powf(lambda);
    let f0 = if lambda == 0.0 { 1.0 } else { 0.0 };
    let mut out = Vec::new();
    for id in CompositionIdentity::ALL {
        let (lhs, rhs) = match id {
            CompositionIdentity::DLower => (
                (l + nu) * power_lower(l, -nu, 1.0, y)? * xpow(l + nu - 1.0),
                boundary * fxy * yv + power_lower(l, 1.0 - nu, x, y)?,
            ),
            CompositionIdentity::LowerD => (
                l * power_lower(l - 1.0, -nu, x, y)?,
                boundary * fxy - xpow(nu - 1.0) * reciprocal_gamma(nu) * f0 + power_lower(l, 1.0 - nu, x, y)?,
            ),
            CompositionIdentity::DUpper => (
                (l + nu) * power_upper(l, -nu, 1.0, y)? * xpow(l + nu - 1.0),
                -boundary * fxy * yv + power_upper(l, 1.0 - nu, x, y)?,
            ),
            CompositionIdentity::UpperD => (
                l * power_upper(l - 1.0, -nu, x, y)?,
                -boundary * fxy + power_upper(l, 1.0 - nu, x, y)?,
            ),
        };
        out.push(
            CheckReport::new(format!("composition-exact-{}", id.name()), lhs, rhs, EXACT_TOLERANCE)
                .with_param("lambda", lambda)
                .with_param("nu", format_complex(nu))
                .with_param("x", x)
                .with_param("y", yv),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn sine_at_two_point_three() {
        let y = CutRatio::new(0.5).unwrap();
        for r in composition_theorem_suite(&FunctionSpec::sin(), &[c64(2.3)], 1.0, y).unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn power_reductions_are_exact() {
        let y = CutRatio::new(0.5).unwrap();
        for nu in composition_orders() {
            for r in composition_power_reductions(1.5, nu, 0.8, y).unwrap() {
                assert!(r.passed && r.abs_err < 1e-12, "{r:?}");
            }
        }
    }
}
