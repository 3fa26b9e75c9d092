//! Incomplete beta function with an unrestricted second parameter.

use num_complex::Complex64;

use super::gamma::beta;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadConfig};

const MAX_TERMS: usize = 200_000;

/// y^a Σ (1−b)_n yⁿ / (n! (a+n)): converges for 0 <= y < 1 and any b.
fn beta_series(y: f64, a: Complex64, b: Complex64) -> Result<Complex64> {
    if y == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let one_minus_b = 1.0 - b;
    let mut coeff = Complex64::new(1.0, 0.0);
    let mut sum = 1.0 / a;
    let mut quiet = 0;
    for n in 1..MAX_TERMS {
        let nf = n as f64;
        coeff *= (one_minus_b + (nf - 1.0)) * (y / nf);
        let term = coeff / (a + nf);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum * (a * y.ln()).exp());
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Overflow(format!("incomplete beta series did not converge at y = {y}")))
}

/// B_y(a, b) = ∫₀^y t^{a−1}(1−t)^{b−1} dt.
///
/// Requires `0 <= y <= 1` and `Re(a) > 0`. For `y < 1` the parameter `b` is
/// unrestricted because the factor `(1−t)^{b−1}` stays bounded on `[0, y]`;
/// `y = 1` additionally needs `Re(b) > 0` and returns the complete beta.
pub fn incomplete_beta(y: f64, a: Complex64, b: Complex64) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::domain(format!("incomplete beta needs 0 <= y <= 1, got {y}")));
    }
    if !(a.re > 0.0) {
        return Err(Error::domain(format!("incomplete beta needs Re(a) > 0, got {a}")));
    }
    if y == 1.0 {
        if !(b.re > 0.0) {
            return Err(Error::domain(format!("complete beta needs Re(b) > 0, got {b}")));
        }
        return beta(a, b);
    }
    if y <= 0.5 {
        return beta_series(y, a, b);
    }
    if b.re > 0.0 {
        // B_y(a,b) = B(a,b) − B_{1−y}(b,a)
        return Ok(beta(a, b)? - beta_series(1.0 - y, b, a)?);
    }
    // Re(b) <= 0 and y > 1/2: series up to 1/2, then the bounded integrand.
    let head = beta_series(0.5, a, b)?;
    let am1 = a - 1.0;
    let bm1 = b - 1.0;
    let cfg = QuadConfig { abs_tol: 1e-15, rel_tol: 1e-13, ..QuadConfig::default() };
    let tail = integrate(
        |t: f64| (am1 * t.ln()).exp() * (bm1 * (1.0 - t).ln()).exp(),
        0.5,
        y,
        &cfg,
    )?;
    Ok(head + tail.value)
}
