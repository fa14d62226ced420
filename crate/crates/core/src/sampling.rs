//! Finite discrete distributions with exact probabilities, and seeded
//! sampling of random vectors whose components are i.i.d.
//!
//! Sampling is inverse-CDF on one 64-bit word per component. Each cumulative
//! probability is scaled to 2^64 and floored, so every point mass is honored
//! to within 2^-64.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::matrix::Vector;
use crate::rational::Rational;
use crate::ring::RingSpec;
use crate::rng::SeededRng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteDistribution {
    support: Vec<i64>,
    probs: Vec<Rational>,
    // thresholds[i] = floor(P[index <= i] * 2^64); the last one is exactly 2^64.
    thresholds: Vec<u128>,
}

impl DiscreteDistribution {
    /// General constructor. Probabilities must be positive and sum to exactly 1.
    pub fn new(support: Vec<i64>, probs: Vec<Rational>) -> Result<Self> {
        if support.len() != probs.len() {
            return Err(Error::ConfigInvalid(format!(
                "{} support values but {} probabilities",
                support.len(),
                probs.len()
            )));
        }
        if support.len() < 2 {
            return Err(Error::SupportTooSmall(support.len()));
        }
        let mut seen = HashSet::new();
        for &v in &support {
            if !seen.insert(v) {
                return Err(Error::DuplicateSupport(v));
            }
        }
        if let Some(p) = probs.iter().find(|p| !p.is_positive()) {
            return Err(Error::InvalidProbability(p.to_string()));
        }
        let total: Rational = probs.iter().sum();
        if total != Rational::one() {
            return Err(Error::InvalidProbability(format!(
                "probabilities sum to {total}"
            )));
        }

        let scale = BigInt::one() << 64;
        let mut cumulative = Rational::zero();
        let mut thresholds = Vec::with_capacity(probs.len());
        for p in &probs {
            cumulative = &cumulative + p;
            let scaled: BigInt = (cumulative.numer() * &scale) / cumulative.denom();
            thresholds.push(scaled.to_u128().expect("cumulative mass is at most 1"));
        }
        Ok(DiscreteDistribution {
            support,
            probs,
            thresholds,
        })
    }

    /// Uniform on `{0, 1}`.
    pub fn uniform_binary() -> Self {
        let half = Rational::new(1, 2).unwrap();
        DiscreteDistribution::new(vec![0, 1], vec![half.clone(), half]).unwrap()
    }

    /// `{0, 1}` with `P[1] = p`, for `0 < p < 1`.
    pub fn bernoulli(p: Rational) -> Result<Self> {
        if !p.is_positive() || p >= Rational::one() {
            return Err(Error::InvalidProbability(p.to_string()));
        }
        let q = &Rational::one() - &p;
        DiscreteDistribution::new(vec![0, 1], vec![q, p])
    }

    /// Equal mass on each of `values`.
    pub fn uniform_support(values: &[i64]) -> Result<Self> {
        let s = values.len();
        if s < 2 {
            return Err(Error::SupportTooSmall(s));
        }
        let mass = Rational::new(1, s as i64).unwrap();
        DiscreteDistribution::new(values.to_vec(), vec![mass; s])
    }

    /// Uniform over every element of a prime field.
    pub fn full_field(ring: RingSpec) -> Result<Self> {
        let p = ring.modulus().ok_or_else(|| {
            Error::ConfigInvalid("the full-field distribution needs a prime-field ring".into())
        })?;
        let values: Vec<i64> = (0..p as i64).collect();
        DiscreteDistribution::uniform_support(&values)
    }

    pub fn support(&self) -> &[i64] {
        &self.support
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Largest point mass: the per-iteration false-accept bound.
    pub fn p_max(&self) -> Rational {
        self.probs.iter().max().cloned().expect("support is nonempty")
    }

    /// Fails unless every support value is an element of `ring`.
    pub fn validate_for(&self, ring: RingSpec) -> Result<()> {
        for &v in &self.support {
            ring.check(v)?;
        }
        Ok(())
    }

    /// Index into the support of one draw.
    #[inline]
    pub fn sample_index(&self, rng: &mut SeededRng) -> usize {
        let u = rng.next_u64() as u128;
        self.thresholds.partition_point(|&t| t <= u)
    }

    #[inline]
    pub fn sample(&self, rng: &mut SeededRng) -> i64 {
        self.support[self.sample_index(rng)]
    }
}

/// `n` i.i.d. draws from `d`, as a vector over `ring`.
pub fn sample_vector(
    d: &DiscreteDistribution,
    n: usize,
    ring: RingSpec,
    rng: &mut SeededRng,
) -> Result<Vector> {
    d.validate_for(ring)?;
    let data = (0..n).map(|_| d.sample(rng)).collect();
    Ok(Vector::from_raw(ring, data))
}

/// Textual distribution selector: `u01`, `bern:<num>/<den>`,
/// `usup:<v1,v2,...>` or `field`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistSpec {
    UniformBinary,
    Bernoulli(Rational),
    UniformSupport(Vec<i64>),
    FullField,
}

impl DistSpec {
    pub fn build(&self, ring: RingSpec) -> Result<DiscreteDistribution> {
        let d = match self {
            DistSpec::UniformBinary => DiscreteDistribution::uniform_binary(),
            DistSpec::Bernoulli(p) => DiscreteDistribution::bernoulli(p.clone())?,
            DistSpec::UniformSupport(v) => DiscreteDistribution::uniform_support(v)?,
            DistSpec::FullField => DiscreteDistribution::full_field(ring)?,
        };
        d.validate_for(ring)?;
        Ok(d)
    }
}

impl FromStr for DistSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::ConfigInvalid(format!("distribution {s:?}: {why}"));
        match s.split_once(':') {
            None if s == "u01" => Ok(DistSpec::UniformBinary),
            None if s == "field" => Ok(DistSpec::FullField),
            Some(("bern", p)) => {
                if !p.contains('/') {
                    return Err(bad("expected bern:<num>/<den>"));
                }
                Ok(DistSpec::Bernoulli(p.parse()?))
            }
            Some(("usup", vals)) => vals
                .split(',')
                .map(|v| v.trim().parse::<i64>().map_err(|_| bad("bad support value")))
                .collect::<Result<Vec<_>>>()
                .map(DistSpec::UniformSupport),
            _ => Err(bad("expected u01, bern:<num>/<den>, usup:<v1,...> or field")),
        }
    }
}

impl fmt::Display for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistSpec::UniformBinary => f.write_str("u01"),
            DistSpec::Bernoulli(p) => write!(f, "bern:{p}"),
            DistSpec::UniformSupport(v) => {
                let vals: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "usup:{}", vals.join(","))
            }
            DistSpec::FullField => f.write_str("field"),
        }
    }
}
