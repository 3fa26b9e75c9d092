//! Pole-free gamma ratios, generalized binomials, and Faà di Bruno sums.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::gamma::factorial;
use crate::error::{Error, Result};

/// Largest order accepted by the partition enumeration.
pub const MAX_PARTITION_ORDER: usize = 16;

/// Γ(−μ+k)/Γ(−μ) as the product ∏_{j<k} (−μ+j).
pub fn gamma_ratio(mu: Complex64, k: usize) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (j as f64 - mu))
}

/// binom(μ, k) = (−1)^k Γ(−μ+k) / (Γ(−μ) k!).
pub fn generalized_binomial(mu: Complex64, k: usize) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (mu - j as f64) / (j + 1) as f64)
}

/// A multiplicity vector (r_1, …, r_k) with Σ j·r_j = k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Self {
        Self { parts }
    }

    /// Multiplicities `r_j`, index 0 holding `r_1`.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of blocks r = Σ r_j.
    pub fn r(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Weighted size k = Σ j·r_j.
    pub fn k(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, r)| (i + 1) * r).sum()
    }

    /// k!/∏ (r_j! (j!)^{r_j}).
    pub fn faa_di_bruno_coefficient(&self) -> f64 {
        let denom: f64 = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, &r)| factorial(r as u64) * factorial((i + 1) as u64).powi(r as i32))
            .product();
        factorial(self.k() as u64) / denom
    }
}

/// Every (r_1, …, r_k) with Σ j·r_j = k, in decreasing lexicographic order.
pub fn faa_di_bruno_partitions(k: usize) -> Result<Vec<Partition>> {
    if k == 0 {
        return Err(Error::domain("partition order must be positive"));
    }
    if k > MAX_PARTITION_ORDER {
        return Err(Error::Limit(format!("partition order {k} exceeds {MAX_PARTITION_ORDER}")));
    }
    let mut out = Vec::new();
    let mut current = vec![0; k];
    fill(0, k, &mut current, &mut out);
    Ok(out)
}

fn fill(index: usize, remaining: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if index == current.len() {
        if remaining == 0 {
            out.push(Partition::new(current.clone()));
        }
        return;
    }
    let j = index + 1;
    for r in (0..=remaining / j).rev() {
        current[index] = r;
        fill(index + 1, remaining - r * j, current, out);
    }
    current[index] = 0;
}

/// Partitions of `k` grouped by their block count `r`.
pub fn partitions_by_blocks(k: usize) -> Result<BTreeMap<usize, Vec<Partition>>> {
    let mut grouped: BTreeMap<usize, Vec<Partition>> = BTreeMap::new();
    for p in faa_di_bruno_partitions(k)? {
        grouped.entry(p.r()).or_default().push(p);
    }
    Ok(grouped)
}

/// d^k/dx^k f(g(x)) from the derivatives of the outer and inner functions.
///
/// `f_derivs[r-1]` is f^{(r)}(g(x)) and `g_derivs[j-1]` is g^{(j)}(x); both
/// need at least `k` entries.
pub fn faa_di_bruno_derivative(
    f_derivs: &[Complex64],
    g_derivs: &[Complex64],
    k: usize,
) -> Result<Complex64> {
    if f_derivs.len() < k || g_derivs.len() < k {
        return Err(Error::Arity(format!(
            "order {k} needs {k} derivatives of each function, got {} and {}",
            f_derivs.len(),
            g_derivs.len()
        )));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for p in faa_di_bruno_partitions(k)? {
        let mut term = f_derivs[p.r() - 1] * p.faa_di_bruno_coefficient();
        for (i, &r) in p.parts().iter().enumerate() {
            if r > 0 {
                term *= g_derivs[i].powi(r as i32);
            }
        }
        total += term;
    }
    Ok(total)
}

/// Derivatives 1..=k of f(g(x)) through the Bell-polynomial recurrence
/// `B_{n,j} = Σ_i C(n−1, i−1) g^{(i)} B_{n−i, j−1}`.
///
/// Agrees with [`faa_di_bruno_derivative`] but needs no partition list, so
/// it is not subject to [`MAX_PARTITION_ORDER`].
pub fn composite_derivatives(f_derivs: &[Complex64], g_derivs: &[Complex64], k: usize) -> Result<Vec<Complex64>> {
    if f_derivs.len() < k || g_derivs.len() < k {
        return Err(Error::Arity(format!(
            "order {k} needs {k} derivatives of each function, got {} and {}",
            f_derivs.len(),
            g_derivs.len()
        )));
    }
    let zero = Complex64::new(0.0, 0.0);
    // bell[n][j] = B_{n,j}
    let mut bell = vec![vec![zero; k + 1]; k + 1];
    bell[0][0] = Complex64::new(1.0, 0.0);
    let mut binom = vec![vec![0.0; k + 1]; k + 1];
    for n in 0..=k {
        binom[n][0] = 1.0;
        for i in 1..=n {
            binom[n][i] = binom[n - 1][i - 1] + if i < n { binom[n - 1][i] } else { 0.0 };
        }
    }
    for n in 1..=k {
        for j in 1..=n {
            let mut acc = zero;
            for i in 1..=(n - j + 1) {
                acc += g_derivs[i - 1] * bell[n - i][j - 1] * binom[n - 1][i - 1];
            }
            bell[n][j] = acc;
        }
    }
    Ok((1..=k).map(|n| (1..=n).map(|j| f_derivs[j - 1] * bell[n][j]).sum()).collect())
}
