//! Numerical engine for lower and upper incomplete Riemann–Liouville
//! fractional differintegrals of complex order.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: complex gamma, incomplete gamma and beta functions,
//!   incomplete Gauss hypergeometric functions, Faà di Bruno partitions.
//! * [`quadrature`]: adaptive Gauss–Kronrod integration of complex
//!   integrands, plus a product rule for algebraic endpoint singularities.
//! * [`operators`]: the incomplete operators themselves (three integral
//!   forms per side, direct and recurrence derivatives) and the classical
//!   Riemann–Liouville reference operator.
//! * [`closedforms`]: closed-form values for power, exponential and
//!   hypergeometric-type test functions.
//! * [`verify`]: identity, bound, limit and counterexample checks that
//!   produce serialisable reports.
//!
//! Orders follow a single convention throughout: an [`Order`] carries the
//! *differentiation* order `mu`, so `Re(mu) < 0` is a fractional integral
//! of order `-mu` and `Re(mu) >= 0` is a fractional derivative.

pub mod closedforms;
pub mod error;
pub mod operators;
pub mod par;
pub mod quadrature;
pub mod specfun;
pub mod verify;

pub use num_complex::Complex64;

pub use error::{Error, Result};

pub use operators::{CutRatio, EvalRequest, Form, FunctionSpec, Order, Side, Smoothness};
pub use quadrature::{QuadConfig, QuadResult};

/// Shorthand for a real number promoted to [`Complex64`].
#[inline]
pub fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
