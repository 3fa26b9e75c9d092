//! Adaptive integration of complex-valued integrands over real intervals.
//!
//! [`integrate`] is a global adaptive Gauss–Kronrod (7/15) scheme with
//! bisection. [`integrate_endpoint_power`] handles integrands of the form
//! `smooth(t)·|t − e|^σ` with an algebraic singularity at one endpoint `e`
//! and complex exponent `Re(σ) > −1`.

mod endpoint;
mod gauss_kronrod;
mod legendre;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use endpoint::{integrate_endpoint_power, Endpoint};
pub use gauss_kronrod::integrate;
pub use legendre::{gauss_legendre, gauss_legendre_unit};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Polynomial degree used for the smooth factor on the singular slice.
    pub singular_taylor_order: usize,
    /// Initial width of the singular slice, as a fraction of the interval.
    pub singular_split: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            singular_taylor_order: 8,
            singular_split: 0.1,
        }
    }
}

impl QuadConfig {
    /// Same limits with both tolerances replaced.
    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> crate::Result<()> {
        let ok = self.abs_tol > 0.0
            && self.rel_tol > 0.0
            && self.max_subdivisions >= 1
            && self.singular_split > 0.0
            && self.singular_split < 1.0;
        if ok {
            Ok(())
        } else {
            Err(crate::Error::domain(format!("invalid quadrature configuration {self:?}")))
        }
    }

    pub(crate) fn target(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: Complex64,
    /// Absolute error estimate.
    pub err_estimate: f64,
    pub n_evals: usize,
    pub converged: bool,
}

impl QuadResult {
    pub fn exact(value: Complex64) -> Self {
        Self { value, err_estimate: 0.0, n_evals: 0, converged: true }
    }

    /// Multiplies the value and error estimate by a constant factor.
    pub fn scaled(self, factor: Complex64) -> Self {
        Self { value: self.value * factor, err_estimate: self.err_estimate * factor.norm(), ..self }
    }

    /// Sum of two independent results.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            err_estimate: self.err_estimate + other.err_estimate,
            n_evals: self.n_evals + other.n_evals,
            converged: self.converged && other.converged,
        }
    }

    /// Adds a value known without quadrature error.
    pub fn shifted(self, offset: Complex64) -> Self {
        Self { value: self.value + offset, ..self }
    }
}
