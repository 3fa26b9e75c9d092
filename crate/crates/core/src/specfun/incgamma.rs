//! Lower and upper incomplete gamma functions of complex order.

use num_complex::Complex64;

use super::gamma::gamma;
use crate::error::{Error, Result};

const MAX_ITER: usize = 10_000;
const EPS: f64 = 1e-17;
const TINY: f64 = 1e-300;

fn check(nu: Complex64, x: f64) -> Result<()> {
    if !(nu.re > 0.0) {
        return Err(Error::domain(format!("incomplete gamma needs Re(nu) > 0, got {nu}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("incomplete gamma needs finite x >= 0, got {x}")));
    }
    Ok(())
}

/// γ(ν, x) by its power series.
fn lower_series(nu: Complex64, x: f64) -> Result<Complex64> {
    let mut term = 1.0 / nu;
    let mut sum = term;
    for n in 1..MAX_ITER {
        term *= x / (nu + n as f64);
        sum += term;
        if term.norm() <= EPS * sum.norm() {
            let prefactor = (nu * x.ln() - x).exp();
            return Ok(prefactor * sum);
        }
    }
    Err(Error::Overflow(format!("γ series did not converge for nu = {nu}, x = {x}")))
}

/// Γ(ν, x) by the Legendre continued fraction (modified Lentz).
fn upper_fraction(nu: Complex64, x: f64) -> Result<Complex64> {
    let mut b = Complex64::new(x + 1.0, 0.0) - nu;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let i = i as f64;
        let an = -i * (Complex64::new(i, 0.0) - nu);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() <= EPS {
            return Ok((nu * x.ln() - x).exp() * h);
        }
    }
    Err(Error::Overflow(format!("Γ continued fraction did not converge for nu = {nu}, x = {x}")))
}

/// Lower incomplete gamma γ(ν, x) = ∫₀ˣ t^{ν−1} e^{−t} dt, `Re(ν) > 0`, `x >= 0`.
///
/// Power series below `x = Re(ν) + 1`, complement of the continued fraction above.
pub fn lower_incomplete_gamma(nu: Complex64, x: f64) -> Result<Complex64> {
    check(nu, x)?;
    if x == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if x < nu.re + 1.0 {
        lower_series(nu, x)
    } else {
        Ok(gamma(nu)? - upper_fraction(nu, x)?)
    }
}

/// Upper incomplete gamma Γ(ν, x) = ∫ₓ^∞ t^{ν−1} e^{−t} dt, `Re(ν) > 0`, `x >= 0`.
pub fn upper_incomplete_gamma(nu: Complex64, x: f64) -> Result<Complex64> {
    check(nu, x)?;
    if x == 0.0 {
        return gamma(nu);
    }
    if x < nu.re + 1.0 {
        Ok(gamma(nu)? - lower_series(nu, x)?)
    } else {
        upper_fraction(nu, x)
    }
}
