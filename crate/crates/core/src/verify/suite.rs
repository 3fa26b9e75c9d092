//! Named verification suites.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::bounds::{check_norm_bounds, random_draws};
use super::composition::{composition_orders, composition_power_reductions, composition_theorem_suite};
use super::counter::{inversion_failure_report, semigroup_failure_report, SemigroupKind, INVERSION_PARAMS, SEMIGROUP_PARAMS};
use super::grid::{
    additivity, additivity_cases, closed_form_concordance, closed_form_orders, derivative_paths, form_equivalence,
    standard_grid, CLOSED_FORM_LAMBDAS, STANDARD_X, STANDARD_Y,
};
use super::leibniz::{chain_rule_check, leibniz_monomial_check, leibniz_series_check, DEFAULT_CHAIN_TERMS, DEFAULT_LEIBNIZ_TERMS};
use super::limits::{check_zero_order_limits, DEFAULT_MU_SEQUENCE};
use super::report::{CheckReport, Report};
use crate::error::{Error, Result};
use crate::operators::{CutRatio, FunctionSpec, Side};
use crate::par::Execution;

pub const BOUND_DRAWS: usize = 20;
pub const BOUND_SEED: u64 = 0x1f2e_3d4c;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Forms,
    Bounds,
    Limits,
    Leibniz,
    Chain,
    Counterexamples,
    Composition,
}

impl Suite {
    /// The individual suites that `All` expands to.
    pub const INDIVIDUAL: [Suite; 7] = [
        Suite::Forms,
        Suite::Bounds,
        Suite::Limits,
        Suite::Leibniz,
        Suite::Chain,
        Suite::Counterexamples,
        Suite::Composition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Forms => "forms",
            Suite::Bounds => "bounds",
            Suite::Limits => "limits",
            Suite::Leibniz => "leibniz",
            Suite::Chain => "chain",
            Suite::Counterexamples => "counterexamples",
            Suite::Composition => "composition",
        }
    }

    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::INDIVIDUAL.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::INDIVIDUAL)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown suite '{s}'")))
    }
}

type Task = Box<dyn Fn() -> Result<Vec<Report>> + Send + Sync>;

fn task<F, R>(f: F) -> Task
where
    F: Fn() -> Result<R> + Send + Sync + 'static,
    R: IntoIterator,
    R::Item: Into<Report>,
{
    Box::new(move || f().map(|rs| rs.into_iter().map(Into::into).collect()))
}

fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn cut(y: f64) -> CutRatio {
    CutRatio::new(y).expect("suite cut ratios lie in (0, 1)")
}

fn forms_tasks() -> Vec<Task> {
    let mut tasks = Vec::new();
    for p in standard_grid() {
        tasks.push(task(move || form_equivalence(&p)));
    }
    for lambda in CLOSED_FORM_LAMBDAS {
        for mu in closed_form_orders() {
            for x in STANDARD_X {
                for y in STANDARD_Y {
                    tasks.push(task(move || closed_form_concordance(lambda, mu, x, y)));
                }
            }
        }
    }
    for p in additivity_cases() {
        tasks.push(task(move || additivity(&p.f, p.mu, p.x, p.y).map(|r| [r])));
    }
    for f in [FunctionSpec::power(c(1.5)).with_label("t^1.5"), FunctionSpec::exp(c(1.0)).with_label("exp")] {
        for mu in [0.3, 0.7, 1.4] {
            for (x, y) in [(0.5, 0.3), (1.2, 0.7)] {
                let f = f.clone();
                tasks.push(task(move || derivative_paths(&f, mu, x, y)));
            }
        }
    }
    tasks
}

fn bounds_tasks() -> Vec<Task> {
    let mut tasks = Vec::new();
    for which in 1..=5u8 {
        let draws = random_draws(which, BOUND_DRAWS, BOUND_SEED).expect("bound items are 1..=5");
        for d in draws {
            tasks.push(task(move || check_norm_bounds(&d.f, d.mu, d.b, cut(d.y), which).map(|r| [r])));
        }
    }
    for which in [4u8, 5] {
        for (mu, y, b) in [(0.5, 0.3, 1.0), (1.7, 0.6, 2.0)] {
            tasks.push(task(move || {
                let one = FunctionSpec::constant(c(1.0));
                let r = check_norm_bounds(&one, mu, b, cut(y), which)?;
                let eq = CheckReport::new(
                    format!("bound-{which}-equality"),
                    c(r.measured_norm),
                    c(r.bound_value),
                    1e-6,
                )
                .with_param("f", "const(1)")
                .with_param("mu", mu)
                .with_param("b", b)
                .with_param("y", y);
                Ok(vec![Report::from(r), Report::from(eq)])
            }));
        }
    }
    tasks
}

fn limits_tasks() -> Vec<Task> {
    [FunctionSpec::constant(c(1.0)), FunctionSpec::sin(), FunctionSpec::exp(c(1.0)).with_label("exp")]
        .into_iter()
        .map(|f| task(move || check_zero_order_limits(&f, 1.0, cut(0.5), &DEFAULT_MU_SEQUENCE)))
        .collect()
}

fn leibniz_tasks() -> Vec<Task> {
    let mut tasks = Vec::new();
    let cases = [
        (FunctionSpec::constant(c(1.0)), c(-0.5)),
        (FunctionSpec::exp(c(1.0)).with_label("exp"), c(-0.7)),
        (FunctionSpec::power(c(0.5)).with_label("t^0.5"), c(0.4)),
        (FunctionSpec::sin(), Complex64::new(-0.5, 0.4)),
    ];
    for (f, mu) in cases {
        for n in 1..=3 {
            for side in [Side::Lower, Side::Upper] {
                let f = f.clone();
                tasks.push(task(move || leibniz_monomial_check(&f, n, mu, 1.0, cut(0.5), side).map(|r| [r])));
            }
        }
    }
    for side in [Side::Lower, Side::Upper] {
        tasks.push(task(move || {
            let f = FunctionSpec::power(c(0.7)).with_label("t^0.7");
            let g = FunctionSpec::exp(c(1.0)).with_label("exp");
            leibniz_series_check(&f, &g, c(-0.6), 1.0, cut(0.5), side, DEFAULT_LEIBNIZ_TERMS, 1e-6).map(|r| [r])
        }));
    }
    tasks
}

fn chain_tasks() -> Vec<Task> {
    [Side::Lower, Side::Upper]
        .into_iter()
        .map(|side| {
            task(move || {
                let outer = FunctionSpec::exp(c(1.0)).with_label("exp");
                let inner = FunctionSpec::monomial(2);
                chain_rule_check(&outer, &inner, c(-0.5), 0.6, cut(0.5), side, DEFAULT_CHAIN_TERMS, 1e-5).map(|r| [r])
            })
        })
        .collect()
}

fn counterexample_tasks() -> Vec<Task> {
    let mut tasks = Vec::new();
    for kind in SemigroupKind::ALL {
        let (lambda, mu, nu, y) = SEMIGROUP_PARAMS;
        tasks.push(task(move || semigroup_failure_report(kind, lambda, mu, nu, cut(y))));
    }
    for upper in [false, true] {
        let (lambda, mu, y) = INVERSION_PARAMS;
        tasks.push(task(move || inversion_failure_report(upper, lambda, mu, cut(y))));
    }
    tasks
}

fn composition_tasks() -> Vec<Task> {
    let mut tasks = Vec::new();
    let functions = [FunctionSpec::monomial(2), FunctionSpec::sin(), FunctionSpec::exp(c(1.0)).with_label("exp")];
    for f in functions {
        for nu in composition_orders() {
            let f = f.clone();
            tasks.push(task(move || composition_theorem_suite(&f, &[nu], 1.0, cut(0.5))));
        }
    }
    for nu in composition_orders() {
        tasks.push(task(move || composition_power_reductions(1.5, nu, 0.8, cut(0.5))));
    }
    tasks
}

fn tasks(suite: Suite) -> Vec<Task> {
    match suite {
        Suite::All => Suite::INDIVIDUAL.into_iter().flat_map(tasks).collect(),
        Suite::Forms => forms_tasks(),
        Suite::Bounds => bounds_tasks(),
        Suite::Limits => limits_tasks(),
        Suite::Leibniz => leibniz_tasks(),
        Suite::Chain => chain_tasks(),
        Suite::Counterexamples => counterexample_tasks(),
        Suite::Composition => composition_tasks(),
    }
}

/// Runs a suite. Reports come back in a fixed order independent of the
/// execution mode; the first numerical error aborts the run.
pub fn run_suite(suite: Suite, exec: Execution) -> Result<Vec<Report>> {
    let results = exec.map(&tasks(suite), |t| t());
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::INDIVIDUAL.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn chain_suite_sequential_equals_parallel() {
        let a = run_suite(Suite::Chain, Execution::Sequential).unwrap();
        let b = run_suite(Suite::Chain, Execution::available()).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(Report::as_expected));
    }
}
