//! Lower and upper incomplete Riemann–Liouville differintegrals.
//!
//! A single [`Order`] carries the differentiation order `μ` throughout:
//! `Re(μ) < 0` is an integral of order `−μ`, `Re(μ) >= 0` a derivative.
//! The lower operator integrates over `[0, yx]`, the upper one over
//! `[yx, x]`; their sum is the classical operator based at 0.

mod differint;
mod function;
mod recurrence;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{QuadConfig, QuadResult};

pub use differint::{classical_rl, lower_differint, upper_differint, upper_incomplete_derivative, upper_incomplete_integral};
pub use function::{Callback, FunctionSpec, Smoothness, BUILTIN_DERIVATIVES};
pub use recurrence::{
    composition_lhs_rhs, recurrence_derivative, CompositionIdentity, DEFAULT_FD_RATIO, MAX_RECURRENCE_DEPTH,
};

pub(crate) use differint::{lower_raw, upper_integral_raw};
pub(crate) use function::fd_first_derivative;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    Integral,
    Derivative,
}

/// Differentiation order `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Order(Complex64);

impl Order {
    pub fn new(mu: Complex64) -> Result<Self> {
        if mu.re.is_finite() && mu.im.is_finite() {
            Ok(Self(mu))
        } else {
            Err(Error::domain(format!("order must be finite, got {mu}")))
        }
    }

    /// Real differentiation order.
    pub fn real(mu: f64) -> Result<Self> {
        Self::new(Complex64::new(mu, 0.0))
    }

    /// Integration order `ν`, stored as `μ = −ν`.
    pub fn integral(nu: Complex64) -> Result<Self> {
        Self::new(-nu)
    }

    pub fn mu(self) -> Complex64 {
        self.0
    }

    pub fn regime(self) -> Regime {
        if self.0.re < 0.0 {
            Regime::Integral
        } else {
            Regime::Derivative
        }
    }

    /// `⌊Re μ⌋ + 1` in the derivative regime.
    pub fn n(self) -> Option<usize> {
        match self.regime() {
            Regime::Integral => None,
            Regime::Derivative => Some(self.0.re.floor() as usize + 1),
        }
    }

    /// `μ + k`.
    pub fn shifted(self, k: f64) -> Self {
        Self(self.0 + k)
    }
}

/// Cut ratio `y`, strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct CutRatio(f64);

impl CutRatio {
    pub fn new(y: f64) -> Result<Self> {
        if y > 0.0 && y < 1.0 {
            Ok(Self(y))
        } else {
            Err(Error::domain(format!("cut ratio must lie in (0, 1), got {y}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

/// Which of the three equivalent integral representations to use.
///
/// `Form1` integrates in `t`, `Form2` in `u = t/x`, `Form3` in the variable
/// that maps the cut interval onto `[0, 1]` (lower) or `[0, 1−y]` (upper).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    #[default]
    Auto,
    Form1,
    Form2,
    Form3,
}

impl Form {
    pub(crate) fn resolve(self) -> Form {
        match self {
            Form::Auto => Form::Form1,
            other => other,
        }
    }
}

/// One operator evaluation.
#[derive(Debug, Clone)]
pub struct EvalRequest {
    pub f: FunctionSpec,
    pub order: Order,
    pub x: f64,
    pub y: CutRatio,
    pub side: Side,
    pub form: Form,
    pub quad: QuadConfig,
}

impl EvalRequest {
    pub fn new(f: FunctionSpec, order: Order, x: f64, y: CutRatio, side: Side) -> Self {
        Self { f, order, x, y, side, form: Form::Auto, quad: QuadConfig::default() }
    }

    pub fn with_form(mut self, form: Form) -> Self {
        self.form = form;
        self
    }

    pub fn with_quad(mut self, quad: QuadConfig) -> Self {
        self.quad = quad;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_point(&self.f, self.x)?;
        self.quad.validate()
    }

    pub fn evaluate(&self) -> Result<QuadResult> {
        match self.side {
            Side::Lower => lower_differint(&self.f, self.order, self.x, self.y, self.form, &self.quad),
            Side::Upper => upper_differint(&self.f, self.order, self.x, self.y, self.form, &self.quad),
        }
    }
}

pub(crate) fn check_point(f: &FunctionSpec, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("evaluation point must be positive, got {x}")));
    }
    if x > f.domain_bound() {
        return Err(Error::domain(format!("x = {x} exceeds the domain bound {}", f.domain_bound())));
    }
    Ok(())
}

/// Wraps an exhausted quadrature budget into an operator-level failure.
pub(crate) fn quad_failure(what: &str) -> impl FnOnce(Error) -> Error + '_ {
    move |e| match e {
        Error::BudgetExceeded { best } => Error::QuadratureFailure(format!(
            "{what}: best value {} with error estimate {:e}",
            best.value, best.err_estimate
        )),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn order_classification() {
        assert_eq!(Order::real(-0.3).unwrap().regime(), Regime::Integral);
        assert_eq!(Order::real(0.0).unwrap().n(), Some(1));
        assert_eq!(Order::real(1.4).unwrap().n(), Some(2));
        assert_eq!(Order::new(Complex64::new(0.0, 0.5)).unwrap().n(), Some(1));
        assert_eq!(Order::integral(c64(2.0)).unwrap().mu(), c64(-2.0));
        assert!(Order::real(f64::NAN).is_err());
    }

    #[test]
    fn cut_ratio_is_open_interval() {
        assert!(CutRatio::new(0.0).is_err());
        assert!(CutRatio::new(1.0).is_err());
        assert_eq!(CutRatio::new(0.25).unwrap().get(), 0.25);
    }

    #[test]
    fn request_validation() {
        let f = FunctionSpec::sin().with_bound(2.0);
        let y = CutRatio::new(0.5).unwrap();
        let mu = Order::real(-0.5).unwrap();
        assert!(EvalRequest::new(f.clone(), mu, 2.5, y, Side::Lower).validate().is_err());
        assert!(EvalRequest::new(f.clone(), mu, 0.0, y, Side::Lower).validate().is_err());
        assert!(EvalRequest::new(f.clone(), mu, 2.5, y, Side::Lower).evaluate().is_err());
        assert!(EvalRequest::new(f, mu, 1.0, y, Side::Lower).validate().is_ok());
    }
}
