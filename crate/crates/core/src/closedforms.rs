//! Closed-form values of incomplete and classical differintegrals for
//! power, exponential and `t^{λ−1}(1−t)^{−α}` test functions.
//!
//! Every function here is analytic in the order `μ`; where the textbook
//! incomplete-beta expression only converges for `Re(μ) < 0`, an entire
//! series or the complete-minus-lower split takes over.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::CutRatio;
use crate::specfun::{
    euler_integral, gamma, gauss_2f1_series, incomplete_beta, incomplete_gauss_2f1, lower_incomplete_gamma, nonpositive_integer,
    reciprocal_gamma, HypergeometricKind,
};

fn xpow(x: f64, p: Complex64) -> Complex64 {
    (p * x.ln()).exp()
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("evaluation point must be positive, got {x}")))
    }
}

/// Exponents of the power-law test functions `t^λ` and `t^{λ−1}(1−t)^{−α}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawParams {
    pub lambda: Complex64,
    pub alpha: Complex64,
}

impl PowerLawParams {
    /// Parameters for `t^λ`, `Re(λ) > −1`.
    pub fn power(lambda: Complex64) -> Result<Self> {
        if !(lambda.re > -1.0) {
            return Err(Error::domain(format!("power law needs Re(lambda) > -1, got {lambda}")));
        }
        Ok(Self { lambda, alpha: Complex64::new(0.0, 0.0) })
    }

    /// Parameters for `t^{λ−1}(1−t)^{−α}`, `Re(λ) > 0`.
    pub fn power2(lambda: Complex64, alpha: Complex64) -> Result<Self> {
        if !(lambda.re > 0.0) {
            return Err(Error::domain(format!("hypergeometric power law needs Re(lambda) > 0, got {lambda}")));
        }
        Ok(Self { lambda, alpha })
    }
}

/// `B_z(a, b)/Γ(a)` as the entire series
/// `z^a Σ (1−b)_n (a)_n z^n / (n! Γ(a+n+1))`, valid for every `a` and `0 < z < 1`.
fn beta_over_gamma(z: f64, a: Complex64, b: Complex64) -> Result<Complex64> {
    if let Some(m) = nonpositive_integer(a) {
        // Only the n = m term survives.
        let mut poch_b = Complex64::new(1.0, 0.0);
        let mut poch_a = Complex64::new(1.0, 0.0);
        for k in 0..m {
            poch_b *= (1.0 - b + k as f64) / (k as f64 + 1.0);
            poch_a *= a + k as f64;
        }
        return Ok(poch_b * poch_a * z.powi(m as i32) * xpow(z, a));
    }
    let mut term = reciprocal_gamma(a + 1.0);
    let mut sum = term;
    let mut quiet = 0;
    for n in 1..100_000 {
        let nf = n as f64;
        term *= (nf - b) * (a + nf - 1.0) * z / (nf * (a + nf));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() || term.norm() == 0.0 {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum * xpow(z, a));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Overflow(format!("entire beta series did not converge at z = {z}")))
}

/// Lower incomplete differintegral of `t^λ`:
/// `B_y(λ+1, −μ)/Γ(−μ) · x^{λ−μ}`, any `μ`.
pub fn power_lower(lambda: Complex64, mu: Complex64, x: f64, y: CutRatio) -> Result<Complex64> {
    PowerLawParams::power(lambda)?;
    check_x(x)?;
    let rg = reciprocal_gamma(-mu);
    if rg == Complex64::new(0.0, 0.0) {
        return Ok(rg);
    }
    Ok(incomplete_beta(y.get(), lambda + 1.0, -mu)? * rg * xpow(x, lambda - mu))
}

/// Upper incomplete differintegral of `t^λ`:
/// `B_{1−y}(−μ, λ+1)/Γ(−μ) · x^{λ−μ}`, continued to all `μ`.
pub fn power_upper(lambda: Complex64, mu: Complex64, x: f64, y: CutRatio) -> Result<Complex64> {
    PowerLawParams::power(lambda)?;
    check_x(x)?;
    let z = 1.0 - y.get();
    let b = if mu.re < 0.0 {
        incomplete_beta(z, -mu, lambda + 1.0)? * reciprocal_gamma(-mu)
    } else {
        beta_over_gamma(z, -mu, lambda + 1.0)?
    };
    Ok(b * xpow(x, lambda - mu))
}

/// Lower incomplete differintegral of the constant 1:
/// `(1 − (1−y)^{−μ}) x^{−μ} / Γ(1−μ)`.
pub fn constant_lower(mu: Complex64, x: f64, y: CutRatio) -> Result<Complex64> {
    check_x(x)?;
    Ok((1.0 - xpow(1.0 - y.get(), -mu)) * xpow(x, -mu) * reciprocal_gamma(1.0 - mu))
}

/// Upper incomplete differintegral of the constant 1:
/// `(1−y)^{−μ} x^{−μ} / Γ(1−μ)`.
pub fn constant_upper(mu: Complex64, x: f64, y: CutRatio) -> Result<Complex64> {
    check_x(x)?;
    Ok(xpow(1.0 - y.get(), -mu) * xpow(x, -mu) * reciprocal_gamma(1.0 - mu))
}

/// Classical differintegral of `e^{αt}` based at 0.
///
/// Uses `α^μ e^{αx} γ(−μ, αx)/Γ(−μ)` for real `α > 0` and `Re(μ) < 0`, and
/// otherwise the equivalent entire series `x^{−μ} Σ (αx)^n / Γ(n+1−μ)`.
pub fn classical_exp(alpha: Complex64, mu: Complex64, x: f64) -> Result<Complex64> {
    check_x(x)?;
    if alpha == Complex64::new(0.0, 0.0) {
        return Err(Error::domain("exponential rate must be nonzero"));
    }
    if alpha.im == 0.0 && alpha.re > 0.0 && mu.re < 0.0 {
        let ax = alpha.re * x;
        return Ok(xpow(alpha.re, mu) * ax.exp() * lower_incomplete_gamma(-mu, ax)? * reciprocal_gamma(-mu));
    }
    let ax = alpha * x;
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for n in 0..10_000 {
        if n > 0 {
            power *= ax;
        }
        let term = power * reciprocal_gamma(n as f64 + 1.0 - mu);
        sum += term;
        if n as f64 > ax.norm() && term.norm() <= 1e-17 * sum.norm() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum * xpow(x, -mu));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Overflow(format!("exponential series did not converge at x = {x}")))
}

/// Classical differintegral of `t^α` based at 0:
/// `x^{α−μ} B(−μ, α+1)/Γ(−μ)` for `Re(μ) < 0`, continued as
/// `Γ(α+1)/Γ(α+1−μ) · x^{α−μ}`.
pub fn classical_power(alpha: Complex64, mu: Complex64, x: f64) -> Result<Complex64> {
    PowerLawParams::power(alpha)?;
    check_x(x)?;
    let coeff = if mu.re < 0.0 {
        incomplete_beta(1.0, -mu, alpha + 1.0)? * reciprocal_gamma(-mu)
    } else {
        gamma(alpha + 1.0)? * reciprocal_gamma(alpha + 1.0 - mu)
    };
    Ok(coeff * xpow(x, alpha - mu))
}

fn check_power2(x: f64) -> Result<()> {
    check_x(x)?;
    if x < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("hypergeometric power law needs 0 < x < 1, got {x}")))
    }
}

/// Lower incomplete differintegral of `t^{λ−1}(1−t)^{−α}`:
/// `Γ(λ)/Γ(λ−μ) x^{λ−μ−1} ₂F₁(α, [λ, λ−μ; y]; x)`.
pub fn power2_lower(lambda: Complex64, alpha: Complex64, mu: Complex64, x: f64, y: CutRatio) -> Result<Complex64> {
    PowerLawParams::power2(lambda, alpha)?;
    check_power2(x)?;
    let scale = xpow(x, lambda - mu - 1.0);
    if mu.re < 0.0 {
        let f = incomplete_gauss_2f1(HypergeometricKind::Lower, alpha, lambda, lambda - mu, y.get(), x)?;
        Ok(gamma(lambda)? * reciprocal_gamma(lambda - mu) * scale * f)
    } else {
        // the gamma prefactors collapse to 1/Γ(−μ), which stays finite
        let rg = reciprocal_gamma(-mu);
        if rg == Complex64::new(0.0, 0.0) {
            return Ok(rg);
        }
        Ok(rg * scale * euler_integral(HypergeometricKind::Lower, alpha, lambda, lambda - mu, y.get(), x)?)
    }
}

/// Upper incomplete differintegral of `t^{λ−1}(1−t)^{−α}`:
/// `Γ(λ)/Γ(λ−μ) x^{λ−μ−1} ₂F₁(α, {λ, λ−μ; y}; x)`; derivative orders use
/// the complete function minus the lower part.
pub fn power2_upper(lambda: Complex64, alpha: Complex64, mu: Complex64, x: f64, y: CutRatio) -> Result<Complex64> {
    PowerLawParams::power2(lambda, alpha)?;
    check_power2(x)?;
    let prefactor = gamma(lambda)? * reciprocal_gamma(lambda - mu) * xpow(x, lambda - mu - 1.0);
    if mu.re < 0.0 {
        let f = incomplete_gauss_2f1(HypergeometricKind::Upper, alpha, lambda, lambda - mu, y.get(), x)?;
        Ok(prefactor * f)
    } else {
        let full = prefactor * gauss_2f1_series(alpha, lambda, lambda - mu, x)?;
        Ok(full - power2_lower(lambda, alpha, mu, x, y)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn y(v: f64) -> CutRatio {
        CutRatio::new(v).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn quadrature_oracles() {
        // mpmath quad at 40 digits
        let v = power_lower(c64(0.5), c64(-0.5), 1.0, y(0.5)).unwrap();
        assert!(rel(v, c64(0.161_018_670_952_500_86)) < 1e-13);
        let v = classical_exp(c64(2.0), c64(-0.5), 0.7).unwrap();
        assert!(rel(v, c64(2.597_160_323_299_582_6)) < 1e-12);
        let v = power2_lower(c64(1.2), c64(0.7), c64(-0.4), 0.3, y(0.5)).unwrap();
        assert!(rel(v, c64(0.104_399_502_075_739_75)) < 1e-12);
        let v = power2_upper(c64(1.2), c64(0.7), c64(-0.4), 0.3, y(0.5)).unwrap();
        assert!(rel(v, c64(0.495_611_300_878_181_6)) < 1e-12);
    }

    #[test]
    fn first_integrals() {
        let x = 0.8;
        let e = classical_exp(c64(1.0), c64(-1.0), x).unwrap();
        assert!(rel(e, c64(f64::exp(x) - 1.0)) < 1e-13);
        let p = classical_power(c64(1.5), c64(-1.0), x).unwrap();
        assert!(rel(p, c64(f64::powf(x, 2.5) / 2.5)) < 1e-13);
    }

    #[test]
    fn exponential_branches_agree() {
        let mu = c64(-0.7);
        let a = classical_exp(c64(1.3), mu, 1.1).unwrap();
        // a nonzero imaginary part, however tiny, forces the series branch
        let b = classical_exp(Complex64::new(1.3, 1e-300), mu, 1.1).unwrap();
        assert!(rel(a, b) < 1e-13);
    }

    #[test]
    fn constant_case_matches_power() {
        for mu in [c64(-0.6), c64(0.3), Complex64::new(-0.5, 0.4), c64(1.7)] {
            let l = power_lower(c64(0.0), mu, 1.3, y(0.3)).unwrap();
            assert!(rel(l, constant_lower(mu, 1.3, y(0.3)).unwrap()) < 1e-12, "{mu}");
            let u = power_upper(c64(0.0), mu, 1.3, y(0.3)).unwrap();
            assert!(rel(u, constant_upper(mu, 1.3, y(0.3)).unwrap()) < 1e-12, "{mu}");
        }
    }

    #[test]
    fn sides_assemble_classical() {
        for mu in [c64(-1.5), c64(-0.3), c64(0.4), c64(1.3), Complex64::new(-0.5, 0.4)] {
            for lambda in [0.0, 0.5, 2.5] {
                let l = power_lower(c64(lambda), mu, 0.7, y(0.6)).unwrap();
                let u = power_upper(c64(lambda), mu, 0.7, y(0.6)).unwrap();
                let c = classical_power(c64(lambda), mu, 0.7).unwrap();
                assert!(rel(l + u, c) < 1e-12, "{lambda} {mu}");
            }
        }
    }

    #[test]
    fn upper_branches_continue_each_other() {
        // entire series against the incomplete beta just inside the integral regime
        let mu = c64(-0.2);
        let z = 0.4;
        let direct = incomplete_beta(z, -mu, c64(1.5)).unwrap() * reciprocal_gamma(-mu);
        assert!(rel(beta_over_gamma(z, -mu, c64(1.5)).unwrap(), direct) < 1e-13);
    }

    #[test]
    fn integer_derivative_of_power() {
        // d/dx x^{2.5} = 2.5 x^{1.5}, all of it on the upper side
        let x: f64 = 0.9;
        assert_eq!(power_lower(c64(2.5), c64(1.0), x, y(0.5)).unwrap(), c64(0.0));
        let u = power_upper(c64(2.5), c64(1.0), x, y(0.5)).unwrap();
        assert!(rel(u, c64(2.5 * x.powf(1.5))) < 1e-13);
    }

    #[test]
    fn hypergeometric_forms_sum_and_reduce() {
        let (lambda, alpha, x) = (c64(1.2), c64(0.7), 0.3);
        for mu in [c64(-0.4), c64(0.6)] {
            let l = power2_lower(lambda, alpha, mu, x, y(0.5)).unwrap();
            let u = power2_upper(lambda, alpha, mu, x, y(0.5)).unwrap();
            let full = gamma(lambda).unwrap()
                * reciprocal_gamma(lambda - mu)
                * xpow(x, lambda - mu - 1.0)
                * gauss_2f1_series(alpha, lambda, lambda - mu, x).unwrap();
            assert!(rel(l + u, full) < 1e-12);
        }
        // α = 0 reduces to t^{λ−1}
        let mu = c64(-0.4);
        let l = power2_lower(lambda, c64(0.0), mu, x, y(0.5)).unwrap();
        assert!(rel(l, power_lower(lambda - 1.0, mu, x, y(0.5)).unwrap()) < 1e-12);
        let u = power2_upper(lambda, c64(0.0), mu, x, y(0.5)).unwrap();
        assert!(rel(u, power_upper(lambda - 1.0, mu, x, y(0.5)).unwrap()) < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(power_lower(c64(-1.5), c64(-0.5), 1.0, y(0.5)).is_err());
        assert!(power2_lower(c64(1.2), c64(0.7), c64(-0.4), 1.2, y(0.5)).is_err());
        assert!(classical_exp(c64(0.0), c64(-0.4), 1.0).is_err());
    }
}
