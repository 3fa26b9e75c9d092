//! Executable checks of operator identities, bounds, limits and
//! counterexamples, producing serialisable reports.

mod bounds;
mod composition;
mod counter;
mod grid;
mod leibniz;
mod limits;
mod report;
mod suite;

pub use bounds::{check_norm_bounds, random_draws, BoundDraw, BoundItem, BOUND_TOLERANCE, L1_NODES, L1_PANELS, LINF_SAMPLES};
pub use composition::{
    composition_orders, composition_power_reductions, composition_theorem_suite, COMPOSITION_TOLERANCE, EXACT_TOLERANCE,
};
pub use counter::{
    designated_counterexamples, inversion_failure_report, semigroup_failure_report, SemigroupKind, CROSS_PATH_TOLERANCE,
    EVAL_X, FAILURE_MARGIN, INVERSION_PARAMS, SANITY_TOLERANCE, SEMIGROUP_PARAMS,
};
pub use grid::{
    additivity, additivity_cases, closed_form_concordance, closed_form_orders, derivative_paths, form_equivalence,
    standard_functions, standard_grid, standard_orders, GridPoint, CLOSED_FORM_LAMBDAS, STANDARD_X, STANDARD_Y,
};
pub use leibniz::{
    chain_rule_check, leibniz_monomial_check, leibniz_series_check, DEFAULT_CHAIN_TERMS, DEFAULT_LEIBNIZ_TERMS,
    MAX_MONOMIAL, MAX_SERIES_TERMS,
};
pub use limits::{check_zero_order_limits, DEFAULT_MU_SEQUENCE, LIMIT_TOLERANCE};
pub use report::{
    format_complex, format_real, to_csv, to_jsonl, BoundReport, CheckReport, Polarity, Record, Report, CSV_HEADER,
};
pub use suite::{run_suite, Suite, BOUND_DRAWS, BOUND_SEED};
