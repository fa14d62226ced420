//! The Monte Carlo product check.
//!
//! One iteration draws `r`, computes `A(Br)` and `Cr` with three
//! matrix-vector products and compares them. `AB` is never formed. A correct
//! product always passes; an incorrect one passes a single iteration with
//! probability at most `p_max` of the sampling distribution, so `k`
//! independent iterations leave an error bound of `p_max^k`.
//!
//! `verify` evaluates iterations in blocks of [`ITERATION_BLOCK`] so each
//! matrix row is loaded once per block instead of once per iteration. Within
//! a block the smallest failing iteration is reported, so verdicts are the
//! same as running the iterations one by one; on rejection the multiplication
//! count includes the rest of that block.

use crate::error::{Error, Result};
use crate::matrix::{mat_vec_block_counted, mat_vec_counted, Matrix, OpCount, Vector};
use crate::rational::Rational;
use crate::ring::RingSpec;
use crate::rng::SeededRng;
use crate::sampling::{sample_vector, DiscreteDistribution};

/// Iterations evaluated together by [`verify`].
pub const ITERATION_BLOCK: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub iterations: u32,
    pub seed: u64,
    pub distribution: DiscreteDistribution,
}

impl VerifyConfig {
    pub fn new(iterations: u32, seed: u64, distribution: DiscreteDistribution) -> Self {
        VerifyConfig {
            iterations,
            seed,
            distribution,
        }
    }

    fn validate(&self, ring: RingSpec) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::ConfigInvalid("iterations must be at least 1".into()));
        }
        self.distribution
            .validate_for(ring)
            .map_err(|e| Error::ConfigInvalid(e.to_string()))
    }

    /// The vector iteration `j` samples for an `n`-dimensional instance.
    pub fn iteration_vector(&self, ring: RingSpec, n: usize, j: u32) -> Result<Vector> {
        let mut rng = SeededRng::stream(self.seed, j as u64);
        sample_vector(&self.distribution, n, ring, &mut rng)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every iteration agreed. `error_bound` is `p_max^k`.
    Accept { error_bound: Rational },
    /// `A(B witness) != C witness`, first differing at `mismatch_row`.
    Reject {
        witness: Vector,
        witness_iteration: u32,
        mismatch_row: usize,
    },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept { .. })
    }
}

/// Result of one fingerprint comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Agree,
    Mismatch { row: usize },
}

fn check_square(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<usize> {
    a.ring().mismatch(&b.ring())?;
    a.ring().mismatch(&c.ring())?;
    let n = a.rows();
    for (name, m) in [("A", a), ("B", b), ("C", c)] {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{name} is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(n)
}

/// Compares `A(Br)` with `Cr`.
pub fn freivalds_iteration(a: &Matrix, b: &Matrix, c: &Matrix, r: &Vector) -> Result<Check> {
    freivalds_iteration_counted(a, b, c, r, &mut OpCount::default())
}

pub fn freivalds_iteration_counted(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    r: &Vector,
    ops: &mut OpCount,
) -> Result<Check> {
    check_square(a, b, c)?;
    let br = mat_vec_counted(b, r, ops)?;
    let abr = mat_vec_counted(a, &br, ops)?;
    let cr = mat_vec_counted(c, r, ops)?;
    Ok(match first_difference(&abr, &cr) {
        None => Check::Agree,
        Some(row) => Check::Mismatch { row },
    })
}

/// Runs up to `cfg.iterations` iterations, stopping at the first mismatch.
pub fn verify(a: &Matrix, b: &Matrix, c: &Matrix, cfg: &VerifyConfig) -> Result<Verdict> {
    verify_counted(a, b, c, cfg, &mut OpCount::default())
}

pub fn verify_counted(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    cfg: &VerifyConfig,
    ops: &mut OpCount,
) -> Result<Verdict> {
    let n = check_square(a, b, c)?;
    let ring = a.ring();
    cfg.validate(ring)?;
    let mut start = 0;
    while start < cfg.iterations {
        let end = cfg.iterations.min(start + ITERATION_BLOCK);
        let rs = (start..end)
            .map(|j| cfg.iteration_vector(ring, n, j))
            .collect::<Result<Vec<_>>>()?;
        let mismatch = match block_mismatch(a, b, c, &rs, ops) {
            Ok(found) => found,
            // An error may come from an iteration after a rejecting one, so
            // replay the block in order to get the sequential outcome.
            Err(_) => sequential_mismatch(a, b, c, &rs, ops)?,
        };
        if let Some((offset, row)) = mismatch {
            return Ok(Verdict::Reject {
                witness: rs[offset].clone(),
                witness_iteration: start + offset as u32,
                mismatch_row: row,
            });
        }
        start = end;
    }
    Ok(Verdict::Accept {
        error_bound: cfg.distribution.p_max().pow(cfg.iterations),
    })
}

fn first_difference(x: &Vector, y: &Vector) -> Option<usize> {
    x.as_slice()
        .iter()
        .zip(y.as_slice())
        .position(|(p, q)| p != q)
}

fn block_mismatch(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    rs: &[Vector],
    ops: &mut OpCount,
) -> Result<Option<(usize, usize)>> {
    let brs = mat_vec_block_counted(b, rs, ops)?;
    let abrs = mat_vec_block_counted(a, &brs, ops)?;
    let crs = mat_vec_block_counted(c, rs, ops)?;
    Ok(abrs
        .iter()
        .zip(&crs)
        .enumerate()
        .find_map(|(t, (x, y))| first_difference(x, y).map(|row| (t, row))))
}

fn sequential_mismatch(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    rs: &[Vector],
    ops: &mut OpCount,
) -> Result<Option<(usize, usize)>> {
    for (t, r) in rs.iter().enumerate() {
        if let Check::Mismatch { row } = freivalds_iteration_counted(a, b, c, r, ops)? {
            return Ok(Some((t, row)));
        }
    }
    Ok(None)
}

/// Independently confirms a rejection: true iff `A(Bw)` and `Cw` differ at `row`.
pub fn recheck_witness(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    witness: &Vector,
    row: usize,
) -> Result<bool> {
    check_square(a, b, c)?;
    let abr = crate::matrix::mat_vec(a, &crate::matrix::mat_vec(b, witness)?)?;
    let cr = crate::matrix::mat_vec(c, witness)?;
    if row >= abr.len() {
        return Err(Error::IndexOutOfRange {
            index: row,
            len: abr.len(),
        });
    }
    Ok(abr.as_slice()[row] != cr.as_slice()[row])
}
