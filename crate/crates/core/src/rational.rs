//! Exact rational numbers in lowest terms, backed by `num-rational`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidProbability(format!("{numer}/0")));
        }
        Ok(Rational(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_integer(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn pow(&self, exp: u32) -> Rational {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Nearest `f64`; huge numerators and denominators are scaled first.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub(crate) fn inner(&self) -> &BigRational {
        &self.0
    }

    pub(crate) fn from_big(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    /// Always `num/den`, including integers (`1/1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidProbability(format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, r| &acc + r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = Rational::new(6, -8).unwrap();
        assert_eq!(r.to_string(), "-3/4");
        assert_eq!(Rational::one().to_string(), "1/1");
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn arithmetic_and_order() {
        let half = Rational::new(1, 2).unwrap();
        let third: Rational = "1/3".parse().unwrap();
        assert_eq!((&half + &third).to_string(), "5/6");
        assert_eq!((&half - &third).to_string(), "1/6");
        assert_eq!(half.pow(20).to_string(), "1/1048576");
        assert!(third < half);
        assert_eq!("4".parse::<Rational>().unwrap(), Rational::from_integer(4));
        assert!("1/0".parse::<Rational>().is_err());
    }
}
