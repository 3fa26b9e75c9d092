//! Behaviour of the incomplete integrals as the order tends to 0⁺.

use num_complex::Complex64;

use super::report::CheckReport;
use crate::error::{Error, Result};
use crate::operators::{lower_differint, upper_incomplete_integral, CutRatio, Form, FunctionSpec, Order};
use crate::quadrature::QuadConfig;

pub const DEFAULT_MU_SEQUENCE: [f64; 4] = [0.1, 0.03, 0.01, 0.003];
pub const LIMIT_TOLERANCE: f64 = 1e-2;

/// For each side: one report on the final error (lower → 0, upper → f(x))
/// and one counting monotonicity violations over the last three errors.
pub fn check_zero_order_limits(f: &FunctionSpec, x: f64, y: CutRatio, mu_sequence: &[f64]) -> Result<Vec<CheckReport>> {
    if mu_sequence.len() < 3 {
        return Err(Error::domain("order sequence needs at least three entries"));
    }
    if mu_sequence.windows(2).any(|w| !(w[1] < w[0])) || mu_sequence.iter().any(|&m| !(m > 0.0)) {
        return Err(Error::domain("order sequence must be positive and strictly decreasing"));
    }
    let quad = QuadConfig::default().with_tolerances(1e-14, 1e-12);
    let target_upper = f.eval(x);
    let mut lower_vals = Vec::new();
    let mut upper_vals = Vec::new();
    for &mu in mu_sequence {
        let order = Order::real(-mu)?;
        lower_vals.push(lower_differint(f, order, x, y, Form::Auto, &quad)?.value);
        upper_vals.push(upper_incomplete_integral(f, order, x, y, Form::Auto, &quad)?.value);
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut out = Vec::new();
    for (side, vals, target) in [("lower", &lower_vals, zero), ("upper", &upper_vals, target_upper)] {
        let errs: Vec<f64> = vals.iter().map(|v| (v - target).norm()).collect();
        let tail = &errs[errs.len() - 3..];
        let violations = tail.windows(2).filter(|w| !(w[1] < w[0])).count();
        let last = *vals.last().unwrap();
        let tag = |r: CheckReport| {
            r.with_param("f", f.label())
                .with_param("x", x)
                .with_param("y", y.get())
                .with_param("mu", mu_sequence.last().unwrap())
        };
        out.push(tag(CheckReport::new(format!("limit-{side}"), last, target, LIMIT_TOLERANCE)));
        out.push(tag(CheckReport::new(
            format!("limit-{side}-monotone"),
            Complex64::new(violations as f64, 0.0),
            zero,
            0.0,
        )
        .with_param("errors", errs.iter().map(|e| format!("{e:.3e}")).collect::<Vec<_>>().join("/"))));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn constant_and_sine() {
        let y = CutRatio::new(0.5).unwrap();
        for f in [FunctionSpec::constant(c64(1.0)), FunctionSpec::sin()] {
            for r in check_zero_order_limits(&f, 1.0, y, &DEFAULT_MU_SEQUENCE).unwrap() {
                assert!(r.passed, "{r:?}");
            }
        }
    }

    #[test]
    fn rejects_bad_sequences() {
        let f = FunctionSpec::sin();
        let y = CutRatio::new(0.5).unwrap();
        assert!(check_zero_order_limits(&f, 1.0, y, &[0.1, 0.2, 0.01]).is_err());
        assert!(check_zero_order_limits(&f, 1.0, y, &[0.1, 0.01]).is_err());
    }
}
