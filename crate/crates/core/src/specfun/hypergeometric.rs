//! Gauss hypergeometric function and its incomplete (truncated Euler
//! integral) variants.

use num_complex::Complex64;

use super::gamma::{gamma, reciprocal_gamma};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_endpoint_power, Endpoint, QuadConfig};

/// Which part of the Euler integral over `[0, 1]` is kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypergeometricKind {
    /// `[0, y]`
    Lower,
    /// `[y, 1]`
    Upper,
}

/// ₂F₁(a, b; c; x) by its Gauss series, `|x| < 1`.
pub fn gauss_2f1_series(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    if !(x.abs() < 1.0) {
        return Err(Error::domain(format!("Gauss series needs |x| < 1, got {x}")));
    }
    if super::gamma::nonpositive_integer(c).is_some() {
        return Err(Error::domain(format!("c = {c} is a nonpositive integer")));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for n in 0..100_000 {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Overflow(format!("Gauss series did not converge at x = {x}")))
}

/// Incomplete Gauss hypergeometric function
/// `(1/B(b, c−b)) ∫ u^{b−1}(1−u)^{c−b−1}(1−ux)^{−a} du` over `[0, y]`
/// (lower) or `[y, 1]` (upper).
///
/// Requires `Re(b) > 0`, `|x| < 1`, `0 < y < 1`; the upper kind also needs
/// `Re(c−b) > 0` for the integral to converge at `u = 1`.
pub fn incomplete_gauss_2f1(
    kind: HypergeometricKind,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    y: f64,
    x: f64,
) -> Result<Complex64> {
    if !(b.re > 0.0) {
        return Err(Error::domain(format!("incomplete 2F1 needs Re(b) > 0, got {b}")));
    }
    if !(x.abs() < 1.0) {
        return Err(Error::domain(format!("incomplete 2F1 needs |x| < 1, got {x}")));
    }
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::domain(format!("incomplete 2F1 needs 0 < y < 1, got {y}")));
    }
    let cmb = c - b;
    if kind == HypergeometricKind::Upper && !(cmb.re > 0.0) {
        return Err(Error::domain(format!("upper incomplete 2F1 needs Re(c-b) > 0, got {cmb}")));
    }
    // 1/B(b, c−b) = Γ(c) / (Γ(b) Γ(c−b))
    let norm = gamma(c)? * reciprocal_gamma(b) * reciprocal_gamma(cmb);
    Ok(norm * euler_integral(kind, a, b, c, y, x)?)
}

/// `∫ u^{b−1}(1−u)^{c−b−1}(1−ux)^{−a} du` over the chosen part of `[0, 1]`,
/// without normalisation.
pub(crate) fn euler_integral(
    kind: HypergeometricKind,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    y: f64,
    x: f64,
) -> Result<Complex64> {
    let cmb = c - b;
    let cfg = QuadConfig { abs_tol: 1e-15, rel_tol: 1e-13, ..QuadConfig::default() };
    let integral = match kind {
        HypergeometricKind::Lower => {
            let smooth = move |u: f64| {
                ((cmb - 1.0) * (1.0 - u).ln()).exp() * (-a * (1.0 - u * x).ln()).exp()
            };
            integrate_endpoint_power(smooth, b - 1.0, 0.0, y, Endpoint::Lower, &cfg)?
        }
        HypergeometricKind::Upper => {
            let smooth =
                move |u: f64| ((b - 1.0) * u.ln()).exp() * (-a * (1.0 - u * x).ln()).exp();
            integrate_endpoint_power(smooth, cmb - 1.0, y, 1.0, Endpoint::Upper, &cfg)?
        }
    };
    Ok(integral.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::specfun::{beta, incomplete_beta};

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn series_known_values() {
        // 2F1(1,1;2;x) = −ln(1−x)/x
        let x = 0.4;
        let v = gauss_2f1_series(c64(1.0), c64(1.0), c64(2.0), x).unwrap();
        assert!(rel(v, c64(-(1.0f64 - x).ln() / x)) < 1e-14);
    }

    #[test]
    fn kinds_add_up_to_complete() {
        let (a, b, c) = (c64(0.7), c64(1.2), c64(2.4));
        let lo = incomplete_gauss_2f1(HypergeometricKind::Lower, a, b, c, 0.5, 0.3).unwrap();
        let up = incomplete_gauss_2f1(HypergeometricKind::Upper, a, b, c, 0.5, 0.3).unwrap();
        let full = gauss_2f1_series(a, b, c, 0.3).unwrap();
        assert!(rel(lo + up, full) < 1e-12);
        // mpmath quad oracles, 40 digits
        assert!(rel(lo, c64(0.530_786_460_350_290_0)) < 1e-12);
        assert!(rel(up, c64(0.595_896_458_729_759_8)) < 1e-12);
        assert!(rel(full, c64(1.126_682_919_080_049_8)) < 1e-14);
    }

    #[test]
    fn zero_argument_reduces_to_beta_ratio() {
        let (a, b, c, y) = (c64(0.7), Complex64::new(0.6, 0.2), c64(2.1), 0.35);
        let v = incomplete_gauss_2f1(HypergeometricKind::Lower, a, b, c, y, 0.0).unwrap();
        let expect = incomplete_beta(y, b, c - b).unwrap() / beta(b, c - b).unwrap();
        assert!(rel(v, expect) < 1e-12);
    }

    #[test]
    fn rejects_divergent_upper() {
        let r = incomplete_gauss_2f1(
            HypergeometricKind::Upper,
            c64(0.5),
            c64(1.0),
            c64(0.8),
            0.5,
            0.2,
        );
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}
