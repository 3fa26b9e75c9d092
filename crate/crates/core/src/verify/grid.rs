//! Operator identities over the standard parameter grid.

use num_complex::Complex64;

use super::report::{format_complex, CheckReport};
use crate::closedforms::{power_lower, power_upper};
use crate::error::Result;
use crate::operators::{
    classical_rl, lower_differint, recurrence_derivative, upper_differint, upper_incomplete_derivative, CutRatio,
    Form, FunctionSpec, Order, Side,
};
use crate::quadrature::QuadConfig;

pub(crate) fn tight() -> QuadConfig {
    QuadConfig::default().with_tolerances(1e-14, 1e-12)
}

/// `t^0.5`, `e^t` and `sin t`.
pub fn standard_functions() -> Vec<FunctionSpec> {
    vec![
        FunctionSpec::power(Complex64::new(0.5, 0.0)).with_label("t^0.5"),
        FunctionSpec::exp(Complex64::new(1.0, 0.0)).with_label("exp"),
        FunctionSpec::sin(),
    ]
}

pub fn standard_orders() -> Vec<Complex64> {
    vec![
        Complex64::new(-0.3, 0.0),
        Complex64::new(-1.5, 0.0),
        Complex64::new(-2.7, 0.0),
        Complex64::new(-0.5, 0.4),
    ]
}

pub const STANDARD_X: [f64; 3] = [0.3, 1.0, 2.0];
pub const STANDARD_Y: [f64; 3] = [0.1, 0.5, 0.9];

/// One grid point.
#[derive(Debug, Clone)]
pub struct GridPoint {
    pub f: FunctionSpec,
    pub mu: Complex64,
    pub x: f64,
    pub y: f64,
}

impl GridPoint {
    fn tag(&self, r: CheckReport) -> CheckReport {
        r.with_param("f", self.f.label())
            .with_param("mu", format_complex(self.mu))
            .with_param("x", self.x)
            .with_param("y", self.y)
    }
}

/// Functions × orders × x × y.
pub fn standard_grid() -> Vec<GridPoint> {
    let mut out = Vec::new();
    for f in standard_functions() {
        for mu in standard_orders() {
            for x in STANDARD_X {
                for y in STANDARD_Y {
                    out.push(GridPoint { f: f.clone(), mu, x, y });
                }
            }
        }
    }
    out
}

/// Forms 2 and 3 against form 1 on both sides, relative tolerance 1e−8.
pub fn form_equivalence(p: &GridPoint) -> Result<Vec<CheckReport>> {
    let quad = tight();
    let order = Order::new(p.mu)?;
    let y = CutRatio::new(p.y)?;
    let mut out = Vec::new();
    for side in [Side::Lower, Side::Upper] {
        let eval = |form| match side {
            Side::Lower => lower_differint(&p.f, order, p.x, y, form, &quad),
            Side::Upper => upper_differint(&p.f, order, p.x, y, form, &quad),
        };
        let reference = eval(Form::Form1)?.value;
        for (form, label) in [(Form::Form2, "2"), (Form::Form3, "3")] {
            let v = eval(form)?.value;
            let name = match side {
                Side::Lower => "forms-lower",
                Side::Upper => "forms-upper",
            };
            out.push(p.tag(CheckReport::relative_only(name, v, reference, 1e-8).with_param("form", label)));
        }
    }
    Ok(out)
}

/// Lower plus upper against the classical operator based at 0.
pub fn additivity(f: &FunctionSpec, mu: Complex64, x: f64, y: f64) -> Result<CheckReport> {
    let quad = tight();
    let order = Order::new(mu)?;
    let cut = CutRatio::new(y)?;
    let lower = lower_differint(f, order, x, cut, Form::Auto, &quad)?.value;
    let upper = upper_differint(f, order, x, cut, Form::Auto, &quad)?.value;
    let classical = classical_rl(f, order, 0.0, x, &quad)?.value;
    let p = GridPoint { f: f.clone(), mu, x, y };
    Ok(p.tag(CheckReport::relative_only("additivity", lower + upper, classical, 1e-7)))
}

/// Additivity on the standard grid plus derivative orders on polynomials.
pub fn additivity_cases() -> Vec<GridPoint> {
    let mut cases = standard_grid();
    for f in [FunctionSpec::monomial(2), FunctionSpec::monomial(3)] {
        for mu in [0.5, 1.5] {
            for x in STANDARD_X {
                for y in STANDARD_Y {
                    cases.push(GridPoint { f: f.clone(), mu: Complex64::new(mu, 0.0), x, y });
                }
            }
        }
    }
    cases
}

pub const CLOSED_FORM_LAMBDAS: [f64; 4] = [0.0, 0.5, 1.0, 2.5];

pub fn closed_form_orders() -> Vec<Complex64> {
    vec![
        Complex64::new(-1.5, 0.0),
        Complex64::new(-0.3, 0.0),
        Complex64::new(0.4, 0.0),
        Complex64::new(1.3, 0.0),
        Complex64::new(-0.5, 0.4),
    ]
}

/// Both operators on `t^λ` against the power-law closed forms.
pub fn closed_form_concordance(lambda: f64, mu: Complex64, x: f64, y: f64) -> Result<Vec<CheckReport>> {
    let quad = tight();
    let order = Order::new(mu)?;
    let cut = CutRatio::new(y)?;
    let l = Complex64::new(lambda, 0.0);
    let f = FunctionSpec::power(l);
    let lower = lower_differint(&f, order, x, cut, Form::Auto, &quad)?.value;
    let upper = upper_differint(&f, order, x, cut, Form::Auto, &quad)?.value;
    let tag = |r: CheckReport| {
        r.with_param("lambda", lambda).with_param("mu", format_complex(mu)).with_param("x", x).with_param("y", y)
    };
    Ok(vec![
        tag(CheckReport::new("closed-form-lower", lower, power_lower(l, mu, x, cut)?, 1e-8)),
        tag(CheckReport::new("closed-form-upper", upper, power_upper(l, mu, x, cut)?, 1e-8)),
    ])
}

/// Direct derivative formulas against the order recurrences.
pub fn derivative_paths(f: &FunctionSpec, mu: f64, x: f64, y: f64) -> Result<Vec<CheckReport>> {
    let quad = tight();
    let order = Order::real(mu)?;
    let cut = CutRatio::new(y)?;
    let lower = lower_differint(f, order, x, cut, Form::Auto, &quad)?.value;
    let lower_rec = recurrence_derivative(Side::Lower, f, order, x, cut, None, &quad)?;
    let upper = upper_incomplete_derivative(f, order, x, cut, Form::Auto, &quad)?.value;
    let upper_rec = recurrence_derivative(Side::Upper, f, order, x, cut, None, &quad)?;
    let tag = |r: CheckReport| r.with_param("f", f.label()).with_param("mu", mu).with_param("x", x).with_param("y", y);
    Ok(vec![
        tag(CheckReport::new("recurrence-lower", lower, lower_rec, 1e-5)),
        tag(CheckReport::new("recurrence-upper", upper, upper_rec, 1e-5)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_size() {
        assert_eq!(standard_grid().len(), 108);
        assert_eq!(additivity_cases().len(), 108 + 36);
    }

    #[test]
    fn one_point_of_each_check() {
        let p = &standard_grid()[50];
        for r in form_equivalence(p).unwrap() {
            assert!(r.passed, "{r:?}");
        }
        assert!(additivity(&p.f, p.mu, p.x, p.y).unwrap().passed);
        for r in closed_form_concordance(0.5, Complex64::new(1.3, 0.0), 1.0, 0.5).unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }
}
