use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::SeededRng;
use crate::sampling::{sample_vector, DiscreteDistribution};
use crate::verifier::{freivalds_iteration, Check};

use super::profile::difference_profile;
use super::stats::{wilson_interval, Z_99};
use super::ErrorReport;

/// Measured single-iteration accept rate.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalRate {
    pub hits: u64,
    pub trials: u64,
    pub rate: f64,
    /// Wilson 99% interval.
    pub ci99: (f64, f64),
}

impl EmpiricalRate {
    pub fn from_counts(hits: u64, trials: u64) -> Self {
        EmpiricalRate {
            hits,
            trials,
            rate: hits as f64 / trials as f64,
            ci99: wilson_interval(hits, trials, Z_99),
        }
    }

    pub fn contains(&self, p: f64) -> bool {
        self.ci99.0 <= p && p <= self.ci99.1
    }
}

/// Counts single iterations that accept, trial `t` drawing from stream `(seed, t)`.
pub fn count_accepts(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    d: &DiscreteDistribution,
    trials: u64,
    seed: u64,
) -> Result<u64> {
    let n = a.rows();
    let mut hits = 0;
    for t in 0..trials {
        let mut rng = SeededRng::stream(seed, t);
        let r = sample_vector(d, n, a.ring(), &mut rng)?;
        if freivalds_iteration(a, b, c, &r)? == Check::Agree {
            hits += 1;
        }
    }
    Ok(hits)
}

/// Monte Carlo estimate of the false-accept probability.
pub fn empirical_false_accept_rate(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    d: &DiscreteDistribution,
    trials: u64,
    seed: u64,
) -> Result<ErrorReport> {
    if trials == 0 {
        return Err(Error::ConfigInvalid("trials must be at least 1".into()));
    }
    let profile = difference_profile(a, b, c)?;
    if profile.is_equal() {
        return Err(Error::InstanceActuallyEqual);
    }
    let hits = count_accepts(a, b, c, d, trials, seed)?;
    Ok(ErrorReport {
        exact_fap: None,
        empirical: Some(EmpiricalRate::from_counts(hits, trials)),
        per_iteration_bound: d.p_max(),
        instance_profile: profile,
    })
}
