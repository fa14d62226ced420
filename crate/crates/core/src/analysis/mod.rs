//! Ground truth for the verifier's error behavior: exact enumeration of the
//! false-accept probability, Monte Carlo estimates of it, and generators for
//! instances with a controlled difference structure.

mod empirical;
mod exact;
mod generate;
mod profile;
pub mod stats;

pub use empirical::{count_accepts, empirical_false_accept_rate, EmpiricalRate};
pub use exact::{
    exact_false_accept_probability, exact_false_accept_probability_with_budget, max_dimension,
    sample_space_size, DEFAULT_BUDGET,
};
pub use generate::{generate_instance, InstanceSpec, Mode, ENTRY_BOUND};
pub use profile::{difference_profile, DifferenceProfile};

use crate::error::{Error, Result};
use crate::matrix::{matmul, Matrix};
use crate::rational::Rational;
use crate::sampling::DiscreteDistribution;

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub exact_fap: Option<Rational>,
    pub empirical: Option<EmpiricalRate>,
    /// `p_max` of the distribution.
    pub per_iteration_bound: Rational,
    pub instance_profile: DifferenceProfile,
}

/// What [`analyze`] should compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalyzeOptions {
    /// Enumerate exactly under this budget.
    pub exact_budget: Option<u64>,
    /// `(trials, seed)` for a Monte Carlo estimate.
    pub empirical: Option<(u64, u64)>,
}

/// Exact and/or empirical analysis of one instance in a single report.
pub fn analyze(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    d: &DiscreteDistribution,
    opts: AnalyzeOptions,
) -> Result<ErrorReport> {
    let e = matmul(a, b)?.checked_sub(c)?;
    let profile = profile::profile_of_difference(&e)?;
    if profile.is_equal() {
        return Err(Error::InstanceActuallyEqual);
    }
    let exact_fap = match opts.exact_budget {
        Some(budget) => Some(exact_false_accept_probability_with_budget(
            a, b, c, d, budget,
        )?),
        None => None,
    };
    let empirical = match opts.empirical {
        Some((0, _)) => return Err(Error::ConfigInvalid("trials must be at least 1".into())),
        Some((trials, seed)) => Some(EmpiricalRate::from_counts(
            count_accepts(a, b, c, d, trials, seed)?,
            trials,
        )),
        None => None,
    };
    Ok(ErrorReport {
        exact_fap,
        empirical,
        per_iteration_bound: d.p_max(),
        instance_profile: profile,
    })
}
