//! Exhaustive false-accept probability.
//!
//! With `E = AB - C`, an iteration accepts exactly when `E r = 0`. Columns of
//! `E` that are identically zero cannot influence that, and their components
//! integrate out to probability 1, so only the nonzero columns are walked.
//! A vector's probability depends only on how many components took each
//! support value, so accepted vectors are tallied by that histogram and the
//! exact rational sum is formed once at the end.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{matmul, Matrix};
use crate::rational::Rational;
use crate::ring::RingSpec;
use crate::sampling::DiscreteDistribution;

/// Default cap on `s^n`, the size of the sample space.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// `s^n`, saturating.
pub fn sample_space_size(support: usize, n: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc.saturating_mul(support as u128);
    }
    acc
}

/// Largest `n` with `s^n <= budget`.
pub fn max_dimension(support: usize, budget: u64) -> usize {
    let mut n = 0;
    while sample_space_size(support, n + 1) <= budget as u128 {
        n += 1;
    }
    n
}

/// `P[A(Br) = Cr]` over `r ~ d^n`, exactly, for an instance with `AB != C`.
pub fn exact_false_accept_probability(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    d: &DiscreteDistribution,
) -> Result<Rational> {
    exact_false_accept_probability_with_budget(a, b, c, d, DEFAULT_BUDGET)
}

pub fn exact_false_accept_probability_with_budget(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    d: &DiscreteDistribution,
    budget: u64,
) -> Result<Rational> {
    let n = c.cols();
    if !a.is_square() || !b.is_square() || !c.is_square() || a.rows() != n || b.rows() != n {
        return Err(Error::DimensionMismatch("expected three n x n matrices".into()));
    }
    d.validate_for(c.ring())?;
    let needed = sample_space_size(d.len(), n);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let e = matmul(a, b)?.checked_sub(c)?;
    fap_of_difference(&e, d)
}

pub(crate) fn fap_of_difference(e: &Matrix, d: &DiscreteDistribution) -> Result<Rational> {
    let ring = e.ring();
    let live_cols: Vec<usize> = (0..e.cols())
        .filter(|&j| (0..e.rows()).any(|i| e.get(i, j) != 0))
        .collect();
    if live_cols.is_empty() {
        return Err(Error::InstanceActuallyEqual);
    }
    let live_rows: Vec<usize> = (0..e.rows())
        .filter(|&i| e.row(i).iter().any(|&v| v != 0))
        .collect();
    // cols[t][i] = E[live_rows[i], live_cols[t]]
    let cols: Vec<Vec<i64>> = live_cols
        .iter()
        .map(|&j| live_rows.iter().map(|&i| e.get(i, j)).collect())
        .collect();

    let tallies = tally_accepting_histograms(ring, &cols, d.support())?;

    let mut total = BigRational::zero();
    for (hist, count) in tallies {
        let mut term = BigRational::from_integer(BigInt::from(count));
        for (p, &k) in d.probs().iter().zip(&hist) {
            term *= num_traits::pow(p.inner().clone(), k as usize);
        }
        total += term;
    }
    Ok(Rational::from_big(total))
}

/// Walks every assignment of support indices to the given columns with an
/// odometer, maintaining `sum_t support[digit_t] * cols[t]` incrementally.
/// Returns, per support-index histogram, how many assignments give zero.
fn tally_accepting_histograms(
    ring: RingSpec,
    cols: &[Vec<i64>],
    support: &[i64],
) -> Result<HashMap<Vec<u32>, u64>> {
    let m = cols.len();
    let len = cols[0].len();
    let s = support.len();
    let overflow = |row| Error::IntegerOverflow {
        op: "exact enumeration",
        row,
        col: 0,
    };

    let mut acc = vec![0i64; len];
    for col in cols {
        for (i, (slot, &x)) in acc.iter_mut().zip(col).enumerate() {
            let term = ring.mul(support[0], x).ok_or_else(|| overflow(i))?;
            *slot = ring.add(*slot, term).ok_or_else(|| overflow(i))?;
        }
    }
    let mut nonzero = acc.iter().filter(|&&v| v != 0).count();
    let mut digits = vec![0usize; m];
    let mut hist = vec![0u32; s];
    hist[0] = m as u32;
    let mut tallies: HashMap<Vec<u32>, u64> = HashMap::new();

    // Support differences between consecutive indices, and from last back to first.
    let step: Vec<i64> = (0..s)
        .map(|k| ring.sub(support[(k + 1) % s], support[k]))
        .collect::<Option<_>>()
        .ok_or_else(|| overflow(0))?;

    loop {
        if nonzero == 0 {
            match tallies.get_mut(&hist[..]) {
                Some(c) => *c += 1,
                None => {
                    tallies.insert(hist.clone(), 1);
                }
            }
        }
        // Advance the odometer.
        let mut t = 0;
        loop {
            if t == m {
                return Ok(tallies);
            }
            let old = digits[t];
            let new = if old + 1 == s { 0 } else { old + 1 };
            digits[t] = new;
            hist[old] -= 1;
            hist[new] += 1;
            let delta = step[old];
            for (i, (slot, &x)) in acc.iter_mut().zip(&cols[t]).enumerate() {
                if x == 0 {
                    continue;
                }
                let before = *slot != 0;
                let term = ring.mul(delta, x).ok_or_else(|| overflow(i))?;
                *slot = ring.add(*slot, term).ok_or_else(|| overflow(i))?;
                let after = *slot != 0;
                if before != after {
                    if after {
                        nonzero += 1;
                    } else {
                        nonzero -= 1;
                    }
                }
            }
            if new != 0 {
                break;
            }
            t += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Vector;
    use crate::verifier::{freivalds_iteration, Check};

    /// Reference: every vector of `support^n`, checked by the verifier itself,
    /// with its probability formed as a product of point masses.
    fn brute_force(a: &Matrix, b: &Matrix, c: &Matrix, d: &DiscreteDistribution) -> Rational {
        let n = a.rows();
        let s = d.len();
        let mut total = Rational::zero();
        for code in 0..s.pow(n as u32) {
            let mut idx = Vec::with_capacity(n);
            let mut rest = code;
            for _ in 0..n {
                idx.push(rest % s);
                rest /= s;
            }
            let r = Vector::new(a.ring(), idx.iter().map(|&k| d.support()[k]).collect()).unwrap();
            if freivalds_iteration(a, b, c, &r).unwrap() == Check::Agree {
                let p = idx
                    .iter()
                    .fold(Rational::one(), |acc, &k| &acc * &d.probs()[k]);
                total = &total + &p;
            }
        }
        total
    }

    fn int(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_rows(RingSpec::Int64Checked, rows).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn single_column_is_one_half() {
        let i = Matrix::identity(RingSpec::Int64Checked, 4);
        let c = i.with_entry(0, 2, 3).unwrap().with_entry(3, 2, -1).unwrap();
        let u = DiscreteDistribution::uniform_binary();
        assert_eq!(exact_false_accept_probability(&i, &i, &c, &u).unwrap(), q(1, 2));
        assert_eq!(brute_force(&i, &i, &c, &u), q(1, 2));
        let b = DiscreteDistribution::bernoulli(q(1, 10)).unwrap();
        assert_eq!(exact_false_accept_probability(&i, &i, &c, &b).unwrap(), q(9, 10));
    }

    #[test]
    fn cancelling_columns() {
        // E has columns [1,1] and [-1,-1]; r accepts iff r0 == r1.
        let i = Matrix::identity(RingSpec::Int64Checked, 2);
        let c = int(&[vec![0, 1], vec![-1, 2]]);
        let e = matmul(&i, &i).unwrap().checked_sub(&c).unwrap();
        assert_eq!(e, int(&[vec![1, -1], vec![1, -1]]));
        let u = DiscreteDistribution::uniform_binary();
        assert_eq!(exact_false_accept_probability(&i, &i, &c, &u).unwrap(), q(1, 2));
        let b = DiscreteDistribution::bernoulli(q(1, 4)).unwrap();
        // (3/4)^2 + (1/4)^2
        assert_eq!(exact_false_accept_probability(&i, &i, &c, &b).unwrap(), q(5, 8));
        let t = DiscreteDistribution::uniform_support(&[0, 1, 2]).unwrap();
        assert_eq!(exact_false_accept_probability(&i, &i, &c, &t).unwrap(), q(1, 3));
    }

    #[test]
    fn matches_brute_force_on_small_instances() {
        let z5 = RingSpec::prime_field(5).unwrap();
        let a = Matrix::from_rows(z5, &[vec![1, 2, 3], vec![0, 4, 1], vec![2, 2, 0]]).unwrap();
        let b = Matrix::from_rows(z5, &[vec![3, 0, 1], vec![1, 1, 4], vec![0, 2, 2]]).unwrap();
        let ab = matmul(&a, &b).unwrap();
        let c = ab
            .with_entry(0, 0, (ab.get(0, 0) + 1) % 5)
            .unwrap()
            .with_entry(1, 2, (ab.get(1, 2) + 3) % 5)
            .unwrap();
        for d in [
            DiscreteDistribution::uniform_binary(),
            DiscreteDistribution::bernoulli(q(3, 4)).unwrap(),
            DiscreteDistribution::uniform_support(&[1, 3, 4]).unwrap(),
            DiscreteDistribution::full_field(z5).unwrap(),
        ] {
            let exact = exact_false_accept_probability(&a, &b, &c, &d).unwrap();
            assert_eq!(exact, brute_force(&a, &b, &c, &d), "{d:?}");
            assert!(exact <= d.p_max());
        }
    }

    #[test]
    fn errors() {
        let i = Matrix::identity(RingSpec::Int64Checked, 3);
        let u = DiscreteDistribution::uniform_binary();
        assert_eq!(
            exact_false_accept_probability(&i, &i, &i, &u).unwrap_err(),
            Error::InstanceActuallyEqual
        );
        let big = Matrix::identity(RingSpec::Int64Checked, 40);
        let c = big.with_entry(0, 0, 2).unwrap();
        assert_eq!(
            exact_false_accept_probability(&big, &big, &c, &u).unwrap_err().kind(),
            "BudgetExceeded"
        );
        assert_eq!(max_dimension(2, DEFAULT_BUDGET), 24);
        assert_eq!(max_dimension(3, DEFAULT_BUDGET), 15);
    }
}
