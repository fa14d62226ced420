//! Exact scalar rings: checked 64-bit integers and small prime fields.
//!
//! Scalars are carried as `i64` in both cases. Prime-field elements are kept
//! reduced to `[0, p)`; integer arithmetic reports overflow instead of
//! wrapping. Both rings are integral domains, which is what the error bounds
//! of the verifier rely on.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A prime modulus below 2^32, checked by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub const MAX: u64 = 1 << 32;

    pub fn new(p: u64) -> Result<Self> {
        if !(2..Self::MAX).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The ring matrix entries live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// Signed 64-bit integers; overflow is an error.
    Int64Checked,
    /// Integers modulo a prime.
    PrimeField(PrimeModulus),
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        PrimeModulus::new(p).map(RingSpec::PrimeField)
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingSpec::Int64Checked => None,
            RingSpec::PrimeField(p) => Some(p.get()),
        }
    }

    pub fn contains(&self, v: i64) -> bool {
        match self {
            RingSpec::Int64Checked => true,
            RingSpec::PrimeField(p) => v >= 0 && (v as u64) < p.get(),
        }
    }

    pub fn check(&self, v: i64) -> Result<i64> {
        if self.contains(v) {
            Ok(v)
        } else {
            Err(Error::ValueOutsideRing {
                value: v,
                ring: self.to_string(),
            })
        }
    }

    /// Maps an arbitrary integer into the ring (identity for `Int64Checked`).
    pub fn reduce(&self, v: i64) -> i64 {
        match self {
            RingSpec::Int64Checked => v,
            RingSpec::PrimeField(p) => v.rem_euclid(p.get() as i64),
        }
    }

    pub fn add(&self, a: i64, b: i64) -> Option<i64> {
        match self {
            RingSpec::Int64Checked => a.checked_add(b),
            RingSpec::PrimeField(p) => Some(((a as u64 + b as u64) % p.get()) as i64),
        }
    }

    pub fn sub(&self, a: i64, b: i64) -> Option<i64> {
        match self {
            RingSpec::Int64Checked => a.checked_sub(b),
            RingSpec::PrimeField(p) => Some(((a as u64 + p.get() - b as u64) % p.get()) as i64),
        }
    }

    pub fn mul(&self, a: i64, b: i64) -> Option<i64> {
        match self {
            RingSpec::Int64Checked => a.checked_mul(b),
            RingSpec::PrimeField(p) => Some(((a as u64 * b as u64) % p.get()) as i64),
        }
    }

    /// Inner product of two equal-length slices.
    ///
    /// Over a prime field the accumulation is done in `u128` and reduced once,
    /// since each product is below 2^64.
    pub fn dot(&self, xs: &[i64], ys: &[i64]) -> Option<i64> {
        debug_assert_eq!(xs.len(), ys.len());
        match self {
            RingSpec::Int64Checked => {
                let mut acc: i64 = 0;
                for (&x, &y) in xs.iter().zip(ys) {
                    acc = acc.checked_add(x.checked_mul(y)?)?;
                }
                Some(acc)
            }
            RingSpec::PrimeField(p) => {
                let mut acc: u128 = 0;
                for (&x, &y) in xs.iter().zip(ys) {
                    acc += (x as u64 * y as u64) as u128;
                }
                Some((acc % p.get() as u128) as i64)
            }
        }
    }

    pub(crate) fn mismatch(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Int64Checked => f.write_str("int64"),
            RingSpec::PrimeField(p) => write!(f, "zp {}", p.get()),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    /// Accepts `int64` or `zp <p>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            message: format!("unknown ring {s:?}, expected `int64` or `zp <p>`"),
        };
        let mut words = s.split_whitespace();
        match (words.next(), words.next(), words.next()) {
            (Some("int64"), None, None) => Ok(RingSpec::Int64Checked),
            (Some("zp"), Some(p), None) => {
                let p: u64 = p.parse().map_err(|_| bad())?;
                RingSpec::prime_field(p)
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_by_trial_division() {
        let primes: Vec<u64> = (0..60).filter(|&p| is_prime(p)).collect();
        assert_eq!(
            primes,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(4_294_967_291));
        assert!(PrimeModulus::new(1).is_err());
        assert!(PrimeModulus::new(9).is_err());
        assert!(PrimeModulus::new(1 << 32).is_err());
    }

    #[test]
    fn int64_overflow_is_reported() {
        let r = RingSpec::Int64Checked;
        assert_eq!(r.mul(i64::MAX, 2), None);
        assert_eq!(r.add(i64::MAX, 1), None);
        assert_eq!(r.dot(&[i64::MAX, 1], &[1, 1]), None);
        assert_eq!(r.dot(&[3, -4], &[5, 6]), Some(-9));
    }

    #[test]
    fn field_ops_stay_reduced() {
        let r = RingSpec::prime_field(5).unwrap();
        assert_eq!(r.add(4, 4), Some(3));
        assert_eq!(r.sub(1, 4), Some(2));
        assert_eq!(r.mul(4, 4), Some(1));
        assert_eq!(r.dot(&[4, 4], &[4, 4]), Some(2));
        assert_eq!(r.reduce(-1), 4);
        let big = RingSpec::prime_field(4_294_967_291).unwrap();
        let x = 4_294_967_290;
        assert_eq!(big.dot(&[x; 8], &[x; 8]), Some(8));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("int64".parse::<RingSpec>().unwrap(), RingSpec::Int64Checked);
        let z = "zp 7".parse::<RingSpec>().unwrap();
        assert_eq!(z.to_string(), "zp 7");
        assert_eq!("zp 8".parse::<RingSpec>().unwrap_err().kind(), "InvalidModulus");
        assert!("float".parse::<RingSpec>().is_err());
    }
}
