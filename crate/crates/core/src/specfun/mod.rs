//! Complex special functions behind every closed form in the crate.

mod beta;
mod combinatorics;
mod gamma;
mod hypergeometric;
mod incgamma;

pub use beta::incomplete_beta;
pub use combinatorics::{
    composite_derivatives, faa_di_bruno_derivative, faa_di_bruno_partitions, gamma_ratio, generalized_binomial,
    partitions_by_blocks, Partition, MAX_PARTITION_ORDER,
};
pub use gamma::{beta, gamma, reciprocal_gamma};
pub use hypergeometric::{gauss_2f1_series, incomplete_gauss_2f1, HypergeometricKind};
pub(crate) use hypergeometric::euler_integral;
pub use incgamma::{lower_incomplete_gamma, upper_incomplete_gamma};

#[allow(unused_imports)]
pub(crate) use gamma::{factorial, nonpositive_integer};
