//! User functions on `[0, b]` together with their derivative callbacks.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::specfun::composite_derivatives;

pub type Callback = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// Derivatives supplied by the builtin constructors.
pub const BUILTIN_DERIVATIVES: usize = 32;

/// Declared regularity class of a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    /// Integrable on `[0, y·b]` only.
    L1OnCut,
    L1,
    LInfinity,
    /// `n` times continuously differentiable; enables finite-difference
    /// fallback up to order `n` when no derivative callback is supplied.
    C(usize),
    /// Analytic; enables finite-difference fallback at every order.
    Analytic,
}

impl Smoothness {
    fn allows_fd(self, k: usize) -> bool {
        match self {
            Smoothness::C(n) => k <= n,
            Smoothness::Analytic => true,
            _ => false,
        }
    }
}

/// A complex-valued function on `[0, domain_bound]`.
#[derive(Clone)]
pub struct FunctionSpec {
    value: Callback,
    derivs: Vec<Callback>,
    domain_bound: f64,
    smoothness: Smoothness,
    label: String,
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSpec")
            .field("label", &self.label)
            .field("derivs", &self.derivs.len())
            .field("domain_bound", &self.domain_bound)
            .field("smoothness", &self.smoothness)
            .finish()
    }
}

fn powc(t: f64, p: Complex64) -> Complex64 {
    if t == 0.0 {
        return if p == Complex64::new(0.0, 0.0) {
            Complex64::new(1.0, 0.0)
        } else if p.re > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        };
    }
    (p * t.ln()).exp()
}

impl FunctionSpec {
    pub fn new<F>(value: F, domain_bound: f64, smoothness: Smoothness) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            value: Arc::new(value),
            derivs: Vec::new(),
            domain_bound,
            smoothness,
            label: "custom".into(),
        }
    }

    /// Attaches derivative callbacks f′, f″, … in order.
    pub fn with_derivs(mut self, derivs: Vec<Callback>) -> Self {
        self.derivs = derivs;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_bound(mut self, domain_bound: f64) -> Self {
        self.domain_bound = domain_bound;
        self
    }

    pub fn with_smoothness(mut self, smoothness: Smoothness) -> Self {
        self.smoothness = smoothness;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain_bound(&self) -> f64 {
        self.domain_bound
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn supplied_derivatives(&self) -> usize {
        self.derivs.len()
    }

    #[inline]
    pub fn eval(&self, t: f64) -> Complex64 {
        (self.value)(t)
    }

    pub fn value_fn(&self) -> Callback {
        self.value.clone()
    }

    /// The `k`-th derivative: a supplied callback, or a Richardson
    /// finite-difference approximation when the smoothness tag opts in.
    pub fn derivative(&self, k: usize) -> Result<Callback> {
        if k == 0 {
            return Ok(self.value.clone());
        }
        if let Some(d) = self.derivs.get(k - 1) {
            return Ok(d.clone());
        }
        if self.smoothness.allows_fd(k) {
            // differentiate the highest supplied derivative numerically
            let base_order = self.derivs.len();
            let base = if base_order == 0 { self.value.clone() } else { self.derivs[base_order - 1].clone() };
            let steps = k - base_order;
            let scale = self.domain_bound.min(1.0).max(1e-3);
            return Ok(Arc::new(move |t| fd_derivative(&*base, t, steps, scale)));
        }
        Err(Error::MissingDerivatives(k))
    }

    /// The derivative as a standalone function with shifted derivative list.
    pub fn derivative_spec(&self, k: usize) -> Result<FunctionSpec> {
        let value = self.derivative(k)?;
        let derivs = self.derivs.iter().skip(k).cloned().collect();
        let smoothness = match self.smoothness {
            Smoothness::C(n) if n >= k => Smoothness::C(n - k),
            Smoothness::Analytic => Smoothness::Analytic,
            _ => Smoothness::L1,
        };
        Ok(FunctionSpec {
            value,
            derivs,
            domain_bound: self.domain_bound,
            smoothness,
            label: format!("d{k}[{}]", self.label),
        })
    }

    /// Spot-checks every supplied derivative against central differences of
    /// the next lower one at three pseudo-random points in `[0.1b, 0.9b]`.
    pub fn validate_derivs(&self, seed: u64) -> Result<()> {
        let b = if self.domain_bound.is_finite() { self.domain_bound } else { 2.0 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points: Vec<f64> = (0..3).map(|_| rng.gen_range(0.1 * b..0.9 * b)).collect();
        let h = 1e-5 * b;
        for (k, d) in self.derivs.iter().enumerate() {
            let lower: &Callback = if k == 0 { &self.value } else { &self.derivs[k - 1] };
            for &t in &points {
                let fd = (lower(t + h) - lower(t - h)) / (2.0 * h);
                let exact = d(t);
                let err = (fd - exact).norm();
                if err > 1e-4 * exact.norm().max(1.0) {
                    return Err(Error::domain(format!(
                        "derivative {} of {} fails the finite-difference check at t = {t}",
                        k + 1,
                        self.label
                    )));
                }
            }
        }
        Ok(())
    }

    // ---- builtins -------------------------------------------------------

    /// The constant function `c`.
    pub fn constant(c: Complex64) -> Self {
        let derivs: Vec<Callback> = (0..BUILTIN_DERIVATIVES)
            .map(|_| Arc::new(|_t: f64| Complex64::new(0.0, 0.0)) as Callback)
            .collect();
        FunctionSpec::new(move |_| c, f64::INFINITY, Smoothness::Analytic)
            .with_derivs(derivs)
            .with_label(format!("const({c})"))
    }

    /// `t^λ`, analytic on `(0, ∞)`.
    pub fn power(lambda: Complex64) -> Self {
        let derivs: Vec<Callback> = (1..=BUILTIN_DERIVATIVES)
            .map(|k| {
                let coeff = (0..k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (lambda - j as f64));
                let p = lambda - k as f64;
                Arc::new(move |t: f64| {
                    if coeff == Complex64::new(0.0, 0.0) {
                        coeff
                    } else {
                        coeff * powc(t, p)
                    }
                }) as Callback
            })
            .collect();
        let smoothness = if lambda.re >= 0.0 { Smoothness::LInfinity } else { Smoothness::L1 };
        FunctionSpec::new(move |t| powc(t, lambda), f64::INFINITY, smoothness)
            .with_derivs(derivs)
            .with_label(format!("power({lambda})"))
    }

    /// `t^n` for a nonnegative integer `n`.
    pub fn monomial(n: u32) -> Self {
        FunctionSpec::power(Complex64::new(n as f64, 0.0))
            .with_smoothness(Smoothness::Analytic)
            .with_label(format!("t^{n}"))
    }

    /// `e^{αt}`.
    pub fn exp(alpha: Complex64) -> Self {
        let derivs: Vec<Callback> = (1..=BUILTIN_DERIVATIVES)
            .map(|k| {
                let ak = alpha.powi(k as i32);
                Arc::new(move |t: f64| ak * (alpha * t).exp()) as Callback
            })
            .collect();
        FunctionSpec::new(move |t| (alpha * t).exp(), f64::INFINITY, Smoothness::Analytic)
            .with_derivs(derivs)
            .with_label(format!("exp({alpha})"))
    }

    /// `sin t`.
    pub fn sin() -> Self {
        let derivs: Vec<Callback> = (1..=BUILTIN_DERIVATIVES)
            .map(|k| {
                let shift = k as f64 * std::f64::consts::FRAC_PI_2;
                Arc::new(move |t: f64| Complex64::new((t + shift).sin(), 0.0)) as Callback
            })
            .collect();
        FunctionSpec::new(|t: f64| Complex64::new(t.sin(), 0.0), f64::INFINITY, Smoothness::Analytic)
            .with_derivs(derivs)
            .with_label("sin")
    }

    /// `(1 − t)^{−α}` on `[0, 1)`.
    pub fn one_minus_power(alpha: Complex64) -> Self {
        let derivs: Vec<Callback> = (1..=BUILTIN_DERIVATIVES)
            .map(|k| {
                let coeff = (0..k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (alpha + j as f64));
                let p = -alpha - k as f64;
                Arc::new(move |t: f64| coeff * powc(1.0 - t, p)) as Callback
            })
            .collect();
        FunctionSpec::new(move |t: f64| powc(1.0 - t, -alpha), 1.0, Smoothness::Analytic)
            .with_derivs(derivs)
            .with_label(format!("(1-t)^-{alpha}"))
    }

    /// `t^{λ−1}(1 − t)^{−α}` on `[0, 1)`.
    pub fn power2(lambda: Complex64, alpha: Complex64) -> Self {
        FunctionSpec::power(lambda - 1.0)
            .product(&FunctionSpec::one_minus_power(alpha))
            .with_bound(1.0)
            .with_label(format!("power2({lambda},{alpha})"))
    }

    /// Pointwise product with derivatives from the integer Leibniz rule.
    pub fn product(&self, other: &FunctionSpec) -> FunctionSpec {
        let n = self.derivs.len().min(other.derivs.len());
        let lhs: Vec<Callback> = std::iter::once(self.value.clone()).chain(self.derivs.iter().take(n).cloned()).collect();
        let rhs: Vec<Callback> = std::iter::once(other.value.clone()).chain(other.derivs.iter().take(n).cloned()).collect();
        let derivs: Vec<Callback> = (1..=n)
            .map(|k| {
                let lhs = lhs.clone();
                let rhs = rhs.clone();
                Arc::new(move |t: f64| {
                    let mut binom = 1.0;
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in 0..=k {
                        acc += lhs[j](t) * rhs[k - j](t) * binom;
                        binom = binom * (k - j) as f64 / (j + 1) as f64;
                    }
                    acc
                }) as Callback
            })
            .collect();
        let (f, g) = (self.value.clone(), other.value.clone());
        let smoothness = match (self.smoothness, other.smoothness) {
            (Smoothness::Analytic, Smoothness::Analytic) => Smoothness::Analytic,
            (Smoothness::C(a), Smoothness::C(b)) => Smoothness::C(a.min(b)),
            (Smoothness::C(a), Smoothness::Analytic) | (Smoothness::Analytic, Smoothness::C(a)) => Smoothness::C(a),
            (Smoothness::LInfinity, Smoothness::LInfinity) => Smoothness::LInfinity,
            _ => Smoothness::L1,
        };
        FunctionSpec {
            value: Arc::new(move |t| f(t) * g(t)),
            derivs,
            domain_bound: self.domain_bound.min(other.domain_bound),
            smoothness,
            label: format!("{}*{}", self.label, other.label),
        }
    }

    /// Composition `outer ∘ inner` with derivatives from Faà di Bruno's
    /// formula in Bell-polynomial form.
    ///
    /// `outer` must supply derivatives as functions of its argument; the
    /// inner function is taken to be real-valued.
    pub fn compose(outer: &FunctionSpec, inner: &FunctionSpec) -> FunctionSpec {
        let n = outer.derivs.len().min(inner.derivs.len());
        let derivs: Vec<Callback> = (1..=n)
            .map(|k| {
                let fo: Vec<Callback> = outer.derivs.iter().take(k).cloned().collect();
                let gi: Vec<Callback> = inner.derivs.iter().take(k).cloned().collect();
                let inner_value = inner.value.clone();
                Arc::new(move |t: f64| {
                    let u = inner_value(t).re;
                    let f_at: Vec<Complex64> = fo.iter().map(|d| d(u)).collect();
                    let g_at: Vec<Complex64> = gi.iter().map(|d| d(t)).collect();
                    composite_derivatives(&f_at, &g_at, k).map(|v| v[k - 1]).unwrap_or(Complex64::new(f64::NAN, 0.0))
                }) as Callback
            })
            .collect();
        let (f, g) = (outer.value.clone(), inner.value.clone());
        FunctionSpec {
            value: Arc::new(move |t| f(g(t).re)),
            derivs,
            domain_bound: inner.domain_bound,
            smoothness: Smoothness::Analytic,
            label: format!("{}o{}", outer.label, inner.label),
        }
    }

    /// `α·f + β·g`.
    pub fn linear_combination(alpha: Complex64, f: &FunctionSpec, beta: Complex64, g: &FunctionSpec) -> FunctionSpec {
        let n = f.derivs.len().min(g.derivs.len());
        let derivs: Vec<Callback> = (0..n)
            .map(|k| {
                let (df, dg) = (f.derivs[k].clone(), g.derivs[k].clone());
                Arc::new(move |t: f64| alpha * df(t) + beta * dg(t)) as Callback
            })
            .collect();
        let (fv, gv) = (f.value.clone(), g.value.clone());
        FunctionSpec {
            value: Arc::new(move |t| alpha * fv(t) + beta * gv(t)),
            derivs,
            domain_bound: f.domain_bound.min(g.domain_bound),
            smoothness: if f.smoothness == g.smoothness { f.smoothness } else { Smoothness::L1 },
            label: format!("{alpha}*{}+{beta}*{}", f.label, g.label),
        }
    }
}

/// k-th derivative by central differences with three Richardson levels.
pub(crate) fn fd_derivative<F: Fn(f64) -> Complex64 + ?Sized>(f: &F, t: f64, k: usize, scale: f64) -> Complex64 {
    if k == 0 {
        return f(t);
    }
    let base = scale * 1e-2 * (k as f64).sqrt().max(1.0);
    richardson(|h| central_difference(f, t, k, h), base, 3)
}

fn central_difference<F: Fn(f64) -> Complex64 + ?Sized>(f: &F, t: f64, k: usize, h: f64) -> Complex64 {
    // Δ^k with nodes t + (j − k/2)h
    let mut acc = Complex64::new(0.0, 0.0);
    let mut binom = 1.0;
    for j in 0..=k {
        let sign = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
        acc += f(t + (j as f64 - k as f64 / 2.0) * h) * (sign * binom);
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    acc / h.powi(k as i32)
}

/// Richardson extrapolation in h² over `levels` halvings of `h`.
pub(crate) fn richardson<D: Fn(f64) -> Complex64>(d: D, h: f64, levels: usize) -> Complex64 {
    let mut table: Vec<Complex64> = (0..levels).map(|i| d(h / 2f64.powi(i as i32))).collect();
    for m in 1..levels {
        let factor = 4f64.powi(m as i32);
        for i in (m..levels).rev() {
            table[i] = (table[i] * factor - table[i - 1]) / (factor - 1.0);
        }
    }
    table[levels - 1]
}

/// First derivative of `g` at `x` by 3-level Richardson central differences.
pub(crate) fn fd_first_derivative<G>(g: G, x: f64, h: f64) -> Result<Complex64>
where
    G: Fn(f64) -> Result<Complex64>,
{
    let mut levels = Vec::with_capacity(3);
    for i in 0..3 {
        let hi = h / 2f64.powi(i);
        levels.push((g(x + hi)? - g(x - hi)?) / (2.0 * hi));
    }
    Ok(richardson(|hh| levels[(h / hh).log2().round() as usize], h, 3))
}
