//! Randomized verification of matrix products.
//!
//! Checking a claimed product `C = AB` by recomputing `AB` costs `n^3`
//! multiplications. Drawing a random vector `r` and comparing `A(Br)` with
//! `Cr` costs `3n^2` and never rejects a correct product; an incorrect one
//! survives a single round with probability at most the largest point mass
//! of the distribution `r` is drawn from.
//!
//! ```
//! use freivalds::{generate_instance, verify, DiscreteDistribution, InstanceSpec, Mode,
//!     RingSpec, Verdict, VerifyConfig};
//!
//! let spec = InstanceSpec::new(16, RingSpec::Int64Checked, Mode::Equal, 1);
//! let (a, b, c) = generate_instance(&spec)?;
//! let cfg = VerifyConfig::new(10, 7, DiscreteDistribution::uniform_binary());
//! match verify(&a, &b, &c, &cfg)? {
//!     Verdict::Accept { error_bound } => assert_eq!(error_bound.to_string(), "1/1024"),
//!     Verdict::Reject { .. } => unreachable!("correct products are never rejected"),
//! }
//! # Ok::<(), freivalds::Error>(())
//! ```

pub mod analysis;
pub mod error;
pub mod format;
pub mod matrix;
pub mod rational;
pub mod ring;
pub mod rng;
pub mod sampling;
pub mod verifier;

pub use analysis::{
    analyze, difference_profile, empirical_false_accept_rate, exact_false_accept_probability,
    generate_instance, AnalyzeOptions, DifferenceProfile, EmpiricalRate, ErrorReport,
    InstanceSpec, Mode,
};
pub use error::{Error, Result};
pub use matrix::{column, mat_vec, matmul, mats_equal, Matrix, OpCount, Vector};
pub use rational::Rational;
pub use ring::{PrimeModulus, RingSpec};
pub use rng::SeededRng;
pub use sampling::{sample_vector, DiscreteDistribution, DistSpec};
pub use verifier::{freivalds_iteration, recheck_witness, verify, Check, Verdict, VerifyConfig};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/rings-and-matrices.md")]
    mod rings_and_matrices {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/verifying.md")]
    mod verifying {}
    #[doc = include_str!("../../../book/src/error-analysis.md")]
    mod error_analysis {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
