//! Semigroup and inversion failures of the incomplete operators on `t^λ`.
//!
//! Each failure report comes with a cross-path report (the nested operator
//! computed once from beta products and once numerically) and a sanity
//! report showing the classical identity holds once the cut is removed.

use num_complex::Complex64;

use super::report::CheckReport;
use crate::closedforms::{classical_power, power_lower, power_upper};
use crate::error::Result;
use crate::operators::{
    lower_differint, lower_raw, upper_incomplete_derivative, upper_incomplete_integral, upper_integral_raw, CutRatio,
    Form, FunctionSpec, Order, Smoothness,
};
use crate::quadrature::QuadConfig;
use crate::specfun::beta;

pub const FAILURE_MARGIN: f64 = 1e-3;
pub const CROSS_PATH_TOLERANCE: f64 = 1e-7;
pub const SANITY_TOLERANCE: f64 = 1e-8;
/// Point at which nested operators are compared.
pub const EVAL_X: f64 = 0.8;

/// `(λ, μ, ν, y)` for the semigroup reports.
pub const SEMIGROUP_PARAMS: (f64, f64, f64, f64) = (0.5, 0.4, 0.6, 0.5);
/// `(λ, μ, y)` for the inversion reports.
pub const INVERSION_PARAMS: (f64, f64, f64) = (1.0, 0.5, 0.5);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemigroupKind {
    LowerIntegral,
    LowerDerivative,
    UpperIntegral,
    UpperDerivative,
}

impl SemigroupKind {
    pub const ALL: [SemigroupKind; 4] = [
        SemigroupKind::LowerIntegral,
        SemigroupKind::LowerDerivative,
        SemigroupKind::UpperIntegral,
        SemigroupKind::UpperDerivative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemigroupKind::LowerIntegral => "lower-integral",
            SemigroupKind::LowerDerivative => "lower-derivative",
            SemigroupKind::UpperIntegral => "upper-integral",
            SemigroupKind::UpperDerivative => "upper-derivative",
        }
    }

    fn upper(self) -> bool {
        matches!(self, SemigroupKind::UpperIntegral | SemigroupKind::UpperDerivative)
    }

    fn sign(self) -> f64 {
        match self {
            SemigroupKind::LowerIntegral | SemigroupKind::UpperIntegral => -1.0,
            _ => 1.0,
        }
    }
}

fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn quad() -> QuadConfig {
    QuadConfig::default().with_tolerances(1e-14, 1e-12)
}

fn closed(upper: bool, lambda: f64, mu: f64, x: f64, y: CutRatio) -> Result<Complex64> {
    if upper {
        power_upper(c(lambda), c(mu), x, y)
    } else {
        power_lower(c(lambda), c(mu), x, y)
    }
}

/// `t ↦ op(t^λ)(t)` as a function, evaluated numerically on demand.
fn inner_operator(lambda: f64, mu: f64, y: f64, upper: bool) -> FunctionSpec {
    let f = FunctionSpec::power(c(lambda));
    let q = quad();
    FunctionSpec::new(
        move |t: f64| {
            if t <= 0.0 {
                return c(0.0);
            }
            let r = if upper {
                upper_integral_raw(&f, c(mu), t, y, Form::Form1, &q)
            } else {
                lower_raw(&f, c(mu), t, y, Form::Form1, &q)
            };
            r.map(|r| r.value).unwrap_or(c(f64::NAN))
        },
        f64::INFINITY,
        Smoothness::L1,
    )
    .with_label(format!("inner(t^{lambda})"))
}

/// The nested operator `op^μ op^ν t^λ` at `x`, computed numerically.
fn nested_numeric(kind: SemigroupKind, lambda: f64, mu: f64, nu: f64, x: f64, y: CutRatio) -> Result<Complex64> {
    let s = kind.sign();
    let q = quad();
    if kind == SemigroupKind::UpperDerivative {
        // Homogeneity: the inner derivative is c·t^{λ−ν}.
        let f = FunctionSpec::power(c(lambda));
        let c1 = upper_incomplete_derivative(&f, Order::real(nu)?, 1.0, y, Form::Auto, &q)?.value;
        let g = FunctionSpec::power(c(lambda - nu));
        return Ok(c1 * upper_incomplete_derivative(&g, Order::real(mu)?, x, y, Form::Auto, &q)?.value);
    }
    let g = inner_operator(lambda, s * nu, y.get(), kind.upper());
    let r = if kind.upper() {
        upper_integral_raw(&g, c(s * mu), x, y.get(), Form::Form1, &q)?
    } else {
        lower_raw(&g, c(s * mu), x, y.get(), Form::Form1, &q)?
    };
    Ok(r.value)
}

/// Semigroup failure for one kind. Returns the expected-fail report, the
/// cross-path report and the `y → 1` sanity report.
pub fn semigroup_failure_report(kind: SemigroupKind, lambda: f64, mu: f64, nu: f64, y: CutRatio) -> Result<Vec<CheckReport>> {
    let s = kind.sign();
    let x = EVAL_X;
    let upper = kind.upper();
    let nested = closed(upper, lambda, s * nu, 1.0, y)? * closed(upper, lambda - s * nu, s * mu, x, y)?;
    let combined = closed(upper, lambda, s * (mu + nu), x, y)?;
    let numeric = nested_numeric(kind, lambda, mu, nu, x, y)?;
    let (sanity_l, sanity_r) = if s < 0.0 {
        let (l1, m, n) = (c(lambda + 1.0), c(mu), c(nu));
        (beta(l1, n)? * beta(l1 + n, m)?, beta(l1, m + n)? * beta(m, n)?)
    } else {
        (
            classical_power(c(lambda), c(nu), 1.0)? * classical_power(c(lambda - nu), c(mu), x)?,
            classical_power(c(lambda), c(mu + nu), x)?,
        )
    };
    let tag = |r: CheckReport| {
        r.with_param("kind", kind.name())
            .with_param("lambda", lambda)
            .with_param("mu", mu)
            .with_param("nu", nu)
            .with_param("y", y.get())
            .with_param("x", x)
    };
    Ok(vec![
        tag(CheckReport::relative_only("semigroup", nested, combined, FAILURE_MARGIN).expect_fail()),
        tag(CheckReport::new("semigroup-cross-path", nested, numeric, CROSS_PATH_TOLERANCE)),
        tag(CheckReport::new("semigroup-complete-limit", sanity_l, sanity_r, SANITY_TOLERANCE)),
    ])
}

/// `D^μ I^μ t^λ / t^λ` against 1 on one side, with cross-path and sanity reports.
pub fn inversion_failure_report(upper: bool, lambda: f64, mu: f64, y: CutRatio) -> Result<Vec<CheckReport>> {
    let x = EVAL_X;
    let q = quad();
    let xl = x.powf(lambda);
    let ratio = closed(upper, lambda, -mu, 1.0, y)? * closed(upper, lambda + mu, mu, x, y)? / xl;
    let numeric = if upper {
        let f = FunctionSpec::power(c(lambda));
        let c1 = upper_incomplete_integral(&f, Order::real(-mu)?, 1.0, y, Form::Auto, &q)?.value;
        let g = FunctionSpec::power(c(lambda + mu));
        c1 * upper_incomplete_derivative(&g, Order::real(mu)?, x, y, Form::Auto, &q)?.value
    } else {
        let g = inner_operator(lambda, -mu, y.get(), false);
        lower_differint(&g, Order::real(mu)?, x, y, Form::Form1, &q)?.value
    } / xl;
    let classical = classical_power(c(lambda), c(-mu), 1.0)? * classical_power(c(lambda + mu), c(mu), x)? / xl;
    let side = if upper { "upper" } else { "lower" };
    let tag = |r: CheckReport| {
        r.with_param("side", side).with_param("lambda", lambda).with_param("mu", mu).with_param("y", y.get()).with_param("x", x)
    };
    Ok(vec![
        tag(CheckReport::relative_only("inversion", ratio, c(1.0), FAILURE_MARGIN).expect_fail()),
        tag(CheckReport::new("inversion-cross-path", ratio, numeric, CROSS_PATH_TOLERANCE)),
        tag(CheckReport::new("inversion-complete-limit", classical, c(1.0), SANITY_TOLERANCE)),
    ])
}

/// All counterexample reports at the designated parameters.
pub fn designated_counterexamples() -> Result<Vec<CheckReport>> {
    let (lambda, mu, nu, y) = SEMIGROUP_PARAMS;
    let y = CutRatio::new(y)?;
    let mut out = Vec::new();
    for kind in SemigroupKind::ALL {
        out.extend(semigroup_failure_report(kind, lambda, mu, nu, y)?);
    }
    let (lambda, mu, y) = INVERSION_PARAMS;
    let y = CutRatio::new(y)?;
    for upper in [false, true] {
        out.extend(inversion_failure_report(upper, lambda, mu, y)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_integral_semigroup_fails_genuinely() {
        let (lambda, mu, nu, y) = SEMIGROUP_PARAMS;
        let r = semigroup_failure_report(SemigroupKind::LowerIntegral, lambda, mu, nu, CutRatio::new(y).unwrap()).unwrap();
        assert!(!r[0].passed && r[0].rel_err > FAILURE_MARGIN, "{:?}", r[0]);
        assert!(r[1].passed, "{:?}", r[1]);
        assert!(r[2].passed, "{:?}", r[2]);
    }

    #[test]
    fn inversion_fails_on_both_sides() {
        let (lambda, mu, y) = INVERSION_PARAMS;
        for upper in [false, true] {
            let r = inversion_failure_report(upper, lambda, mu, CutRatio::new(y).unwrap()).unwrap();
            assert!(r.iter().all(|r| r.as_expected()), "{r:?}");
        }
    }
}
