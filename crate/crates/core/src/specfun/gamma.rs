//! Complex gamma function via the Lanczos approximation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

// Godfrey's coefficients for g = 607/128, 15 terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Returns `Some(n)` when `z` is exactly the nonpositive integer `-n`.
pub(crate) fn nonpositive_integer(z: Complex64) -> Option<u64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        Some((-z.re) as u64)
    } else {
        None
    }
}

/// `sin(pi z)` with the real part reduced modulo 2 so integers hit exact zeros.
pub(crate) fn sin_pi(z: Complex64) -> Complex64 {
    let r = z.re.rem_euclid(2.0);
    let (s, c) = if r == 0.0 || r == 1.0 {
        (0.0, if r == 0.0 { 1.0 } else { -1.0 })
    } else if r == 0.5 {
        (1.0, 0.0)
    } else if r == 1.5 {
        (-1.0, 0.0)
    } else {
        (PI * r).sin_cos()
    };
    let b = PI * z.im;
    Complex64::new(s * b.cosh(), c * b.sinh())
}

/// ln Γ(z) for Re(z) >= 0.5. Not branch-corrected: only its exponential
/// is meaningful.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let t = z + LANCZOS_G + 0.5;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += *c / (z + (k - 1) as f64 + 1.0);
    }
    // Γ(z) = Γ(z+1)/z, with the series written for argument z.
    (z + 0.5) * t.ln() - t + LN_SQRT_2PI + series.ln() - z.ln()
}

/// Γ(z) for complex `z`.
///
/// Uses the Lanczos approximation on `Re(z) >= 0.5` and the reflection
/// formula elsewhere.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(format!("gamma of non-finite argument {z}")));
    }
    if nonpositive_integer(z).is_some() {
        return Err(Error::Pole(z.re));
    }
    let value = if z.re >= 0.5 {
        if z.im == 0.0 && z.re == z.re.round() && z.re <= 171.0 {
            // exact factorials for small positive integers
            Complex64::new(factorial((z.re - 1.0) as u64), 0.0)
        } else {
            ln_gamma_right(z).exp()
        }
    } else {
        let s = sin_pi(z);
        let g = ln_gamma_right(1.0 - z).exp();
        PI / (s * g)
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("|Γ({z})| exceeds the representable range")))
    }
}

/// 1/Γ(z), an entire function: exactly zero at `0, -1, -2, …`.
pub fn reciprocal_gamma(z: Complex64) -> Complex64 {
    if nonpositive_integer(z).is_some() {
        return Complex64::new(0.0, 0.0);
    }
    if z.re >= 0.5 {
        let v = (-ln_gamma_right(z)).exp();
        if z.im == 0.0 {
            Complex64::new(v.re, 0.0)
        } else {
            v
        }
    } else {
        // 1/Γ(z) = sin(πz) Γ(1-z) / π
        sin_pi(z) * ln_gamma_right(1.0 - z).exp() / PI
    }
}

/// Complete beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta(a: Complex64, b: Complex64) -> Result<Complex64> {
    let num = gamma(a)? * gamma(b)?;
    Ok(num * reciprocal_gamma(a + b))
}

pub(crate) fn factorial(n: u64) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn classical_values() {
        assert_eq!(gamma(c64(1.0)).unwrap(), c64(1.0));
        assert!(rel(gamma(c64(0.5)).unwrap(), c64(PI.sqrt())) < 1e-14);
        assert!(rel(gamma(c64(5.0)).unwrap(), c64(24.0)) < 1e-15);
        assert!(rel(gamma(c64(-0.5)).unwrap(), c64(-2.0 * PI.sqrt())) < 1e-14);
    }

    #[test]
    fn complex_value_matches_high_precision_oracle() {
        // mpmath, 40 digits
        let expect = Complex64::new(0.774_762_104_551_083_7, 0.707_631_204_379_592_6);
        assert!(rel(gamma(Complex64::new(2.5, 1.0)).unwrap(), expect) < 1e-13);
    }

    #[test]
    fn large_arguments_keep_twelve_digits() {
        // Γ(50) = 49!
        let g = gamma(c64(50.5)).unwrap();
        let by_recurrence = gamma(c64(49.5)).unwrap() * 49.5;
        assert!(rel(g, by_recurrence) < 1e-12);
        assert!(rel(gamma(c64(50.0)).unwrap(), c64(factorial(49))) < 1e-12);
    }

    #[test]
    fn poles_and_overflow() {
        assert!(matches!(gamma(c64(0.0)), Err(Error::Pole(_))));
        assert!(matches!(gamma(c64(-3.0)), Err(Error::Pole(_))));
        assert!(matches!(gamma(c64(200.5)), Err(Error::Overflow(_))));
    }

    #[test]
    fn reciprocal_zeros() {
        assert_eq!(reciprocal_gamma(c64(0.0)), c64(0.0));
        assert_eq!(reciprocal_gamma(c64(-3.0)), c64(0.0));
        assert!(rel(reciprocal_gamma(c64(0.5)), c64(1.0 / PI.sqrt())) < 1e-14);
        let z = Complex64::new(-2.3, 0.7);
        assert!(rel(reciprocal_gamma(z) * gamma(z).unwrap(), c64(1.0)) < 1e-13);
    }

    #[test]
    fn recurrence_holds_in_the_complex_plane() {
        for &(re, im) in &[(0.3, 0.2), (-1.7, 2.0), (3.1, -4.0), (-4.4, 0.0)] {
            let z = Complex64::new(re, im);
            let lhs = gamma(z + 1.0).unwrap();
            let rhs = z * gamma(z).unwrap();
            assert!(rel(lhs, rhs) < 1e-13, "z = {z}");
        }
    }
}
