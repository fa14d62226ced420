use crate::error::Result;
use crate::matrix::{matmul, Matrix};
use crate::ring::RingSpec;

/// Where `AB` and `C` disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceProfile {
    /// Columns `j` with `column(AB, j) != column(C, j)`, ascending.
    pub differing_columns: Vec<usize>,
    pub differing_entries: usize,
    /// Rank of `AB - C`; `None` when it could not be computed exactly.
    pub difference_rank: Option<usize>,
}

impl DifferenceProfile {
    pub fn is_equal(&self) -> bool {
        self.differing_columns.is_empty()
    }

    pub fn y_size(&self) -> usize {
        self.differing_columns.len()
    }

    /// Coarse structural label: `equal`, `single-entry`, `single-column`,
    /// `rank-one` or `general`.
    pub fn kind(&self) -> &'static str {
        if self.is_equal() {
            "equal"
        } else if self.differing_entries == 1 {
            "single-entry"
        } else if self.differing_columns.len() == 1 {
            "single-column"
        } else if self.difference_rank == Some(1) {
            "rank-one"
        } else {
            "general"
        }
    }
}

/// Computes `D = AB` with the cubic oracle and compares it to `C`.
pub fn difference_profile(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<DifferenceProfile> {
    let d = matmul(a, b)?;
    profile_of_difference(&d.checked_sub(c)?)
}

pub(crate) fn profile_of_difference(e: &Matrix) -> Result<DifferenceProfile> {
    let differing_columns = (0..e.cols())
        .filter(|&j| (0..e.rows()).any(|i| e.get(i, j) != 0))
        .collect();
    let differing_entries = e.as_slice().iter().filter(|&&v| v != 0).count();
    Ok(DifferenceProfile {
        differing_columns,
        differing_entries,
        difference_rank: rank(e),
    })
}

fn rank(e: &Matrix) -> Option<usize> {
    match e.ring() {
        RingSpec::PrimeField(p) => Some(rank_mod_p(e, p.get())),
        RingSpec::Int64Checked => rank_bareiss(e),
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn rank_mod_p(e: &Matrix, p: u64) -> usize {
    let (rows, cols) = (e.rows(), e.cols());
    let mut m: Vec<u64> = e.as_slice().iter().map(|&v| v as u64).collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        for k in 0..cols {
            m.swap(pivot * cols + k, rank * cols + k);
        }
        let inv = pow_mod(m[rank * cols + col], p - 2, p);
        for r in rank + 1..rows {
            let f = m[r * cols + col] * inv % p;
            if f == 0 {
                continue;
            }
            for k in col..cols {
                let sub = f * m[rank * cols + k] % p;
                m[r * cols + k] = (m[r * cols + k] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

// Fraction-free elimination; gives up on i128 overflow.
fn rank_bareiss(e: &Matrix) -> Option<usize> {
    let (rows, cols) = (e.rows(), e.cols());
    let mut m: Vec<i128> = e.as_slice().iter().map(|&v| v as i128).collect();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        for k in 0..cols {
            m.swap(pivot * cols + k, rank * cols + k);
        }
        let piv = m[rank * cols + col];
        for r in rank + 1..rows {
            let f = m[r * cols + col];
            for k in col..cols {
                let v = piv
                    .checked_mul(m[r * cols + k])?
                    .checked_sub(f.checked_mul(m[rank * cols + k])?)?;
                m[r * cols + k] = v / prev;
            }
        }
        prev = piv;
        rank += 1;
    }
    Some(rank)
}
