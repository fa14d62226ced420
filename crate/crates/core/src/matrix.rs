//! Dense row-major matrices and vectors over a [`RingSpec`].
//!
//! `matmul` is the cubic deterministic baseline; `mat_vec` is the quadratic
//! primitive the verifier is assembled from. The `_counted` variants add the
//! number of scalar multiplications performed to an [`OpCount`].

use crate::error::{Error, Result};
use crate::ring::RingSpec;

/// Tally of scalar multiplications.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCount {
    pub mults: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    ring: RingSpec,
    data: Vec<i64>,
}

impl Vector {
    pub fn new(ring: RingSpec, data: Vec<i64>) -> Result<Self> {
        for &v in &data {
            ring.check(v)?;
        }
        Ok(Vector { ring, data })
    }

    pub fn zeros(ring: RingSpec, len: usize) -> Self {
        Vector {
            ring,
            data: vec![0; len],
        }
    }

    /// The `i`-th standard basis vector of length `len`.
    pub fn unit(ring: RingSpec, len: usize, i: usize) -> Result<Self> {
        if i >= len {
            return Err(Error::IndexOutOfRange { index: i, len });
        }
        let mut data = vec![0; len];
        data[i] = 1;
        Ok(Vector { ring, data })
    }

    pub(crate) fn from_raw(ring: RingSpec, data: Vec<i64>) -> Self {
        Vector { ring, data }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn checked_add(&self, other: &Vector) -> Result<Vector> {
        self.ring.mismatch(&other.ring)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .enumerate()
            .map(|(i, (&x, &y))| {
                self.ring.add(x, y).ok_or(Error::IntegerOverflow {
                    op: "vector add",
                    row: i,
                    col: 0,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Vector::from_raw(self.ring, data))
    }

    pub fn scale(&self, alpha: i64) -> Result<Vector> {
        self.ring.check(alpha)?;
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                self.ring.mul(alpha, x).ok_or(Error::IntegerOverflow {
                    op: "vector scale",
                    row: i,
                    col: 0,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Vector::from_raw(self.ring, data))
    }
}

/// Immutable dense matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    ring: RingSpec,
    data: Vec<i64>,
    // Largest entry magnitude; lets integer kernels skip per-step overflow checks
    // when no partial sum can exceed i64::MAX.
    max_abs: u64,
}

impl Matrix {
    /// Builds a matrix from row-major data; every entry must be valid in `ring`.
    pub fn new(rows: usize, cols: usize, ring: RingSpec, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &v in &data {
            ring.check(v)?;
        }
        Ok(Matrix::from_raw(rows, cols, ring, data))
    }

    pub fn from_rows(ring: RingSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(rows.len(), cols, ring, rows.concat())
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Matrix::from_raw(n, n, ring, data)
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, ring: RingSpec, data: Vec<i64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        let max_abs = max_abs(&data);
        Matrix {
            rows,
            cols,
            ring,
            data,
            max_abs,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[i64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    /// Returns a copy with one entry replaced.
    pub fn with_entry(&self, row: usize, col: usize, value: i64) -> Result<Matrix> {
        if row >= self.rows {
            return Err(Error::IndexOutOfRange {
                index: row,
                len: self.rows,
            });
        }
        if col >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: col,
                len: self.cols,
            });
        }
        self.ring.check(value)?;
        let mut data = self.data.clone();
        data[row * self.cols + col] = value;
        Ok(Matrix::from_raw(self.rows, self.cols, self.ring, data))
    }

    /// Entrywise `self - other`.
    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        same_shape(self, other)?;
        let mut data = Vec::with_capacity(self.data.len());
        for (idx, (&x, &y)) in self.data.iter().zip(&other.data).enumerate() {
            data.push(self.ring.sub(x, y).ok_or(Error::IntegerOverflow {
                op: "matrix sub",
                row: idx / self.cols,
                col: idx % self.cols,
            })?);
        }
        Ok(Matrix::from_raw(self.rows, self.cols, self.ring, data))
    }
}

fn max_abs(data: &[i64]) -> u64 {
    data.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
}

/// True when `terms` products of magnitudes up to `x` and `y` cannot overflow.
fn sum_fits(terms: usize, x: u64, y: u64) -> bool {
    (terms as u128) * (x as u128) * (y as u128) <= i64::MAX as u128
}

fn same_shape(a: &Matrix, b: &Matrix) -> Result<()> {
    a.ring.mismatch(&b.ring)?;
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(())
}

/// Exact product `a * b` by the schoolbook method.
pub fn matmul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    matmul_counted(a, b, &mut OpCount::default())
}

pub fn matmul_counted(a: &Matrix, b: &Matrix, ops: &mut OpCount) -> Result<Matrix> {
    a.ring.mismatch(&b.ring)?;
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let (n, inner, m) = (a.rows, a.cols, b.cols);
    let mut out = vec![0i64; n * m];
    match a.ring {
        RingSpec::Int64Checked if sum_fits(inner, a.max_abs, b.max_abs) => {
            for i in 0..n {
                let acc = &mut out[i * m..(i + 1) * m];
                for k in 0..inner {
                    let aik = a.data[i * inner + k];
                    let brow = &b.data[k * m..(k + 1) * m];
                    for (slot, &bkj) in acc.iter_mut().zip(brow) {
                        *slot = slot.wrapping_add(aik.wrapping_mul(bkj));
                    }
                    ops.mults += m as u64;
                }
            }
        }
        RingSpec::Int64Checked => {
            for i in 0..n {
                let acc = &mut out[i * m..(i + 1) * m];
                for k in 0..inner {
                    let aik = a.data[i * inner + k];
                    let brow = &b.data[k * m..(k + 1) * m];
                    for (j, (slot, &bkj)) in acc.iter_mut().zip(brow).enumerate() {
                        *slot = aik
                            .checked_mul(bkj)
                            .and_then(|p| slot.checked_add(p))
                            .ok_or(Error::IntegerOverflow {
                                op: "matmul",
                                row: i,
                                col: j,
                            })?;
                    }
                    ops.mults += m as u64;
                }
            }
        }
        RingSpec::PrimeField(p) => {
            let p = p.get() as u128;
            let mut acc = vec![0u128; m];
            for i in 0..n {
                acc.iter_mut().for_each(|v| *v = 0);
                for k in 0..inner {
                    let aik = a.data[i * inner + k] as u64;
                    let brow = &b.data[k * m..(k + 1) * m];
                    for (slot, &bkj) in acc.iter_mut().zip(brow) {
                        *slot += (aik * bkj as u64) as u128;
                    }
                    ops.mults += m as u64;
                }
                for (dst, &v) in out[i * m..(i + 1) * m].iter_mut().zip(&acc) {
                    *dst = (v % p) as i64;
                }
            }
        }
    }
    Ok(Matrix::from_raw(n, m, a.ring, out))
}

/// `x * r`, one inner product per row.
pub fn mat_vec(x: &Matrix, r: &Vector) -> Result<Vector> {
    mat_vec_counted(x, r, &mut OpCount::default())
}

pub fn mat_vec_counted(x: &Matrix, r: &Vector, ops: &mut OpCount) -> Result<Vector> {
    x.ring.mismatch(&r.ring)?;
    if x.cols != r.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix times vector of length {}",
            x.rows,
            x.cols,
            r.len()
        )));
    }
    let mut out = Vec::with_capacity(x.rows);
    if x.ring == RingSpec::Int64Checked && sum_fits(x.cols, x.max_abs, max_abs(&r.data)) {
        for i in 0..x.rows {
            let v = x
                .row(i)
                .iter()
                .zip(&r.data)
                .fold(0i64, |acc, (&a, &b)| acc.wrapping_add(a.wrapping_mul(b)));
            ops.mults += x.cols as u64;
            out.push(v);
        }
        return Ok(Vector::from_raw(x.ring, out));
    }
    for i in 0..x.rows {
        let v = x
            .ring
            .dot(x.row(i), &r.data)
            .ok_or(Error::IntegerOverflow {
                op: "mat_vec",
                row: i,
                col: 0,
            })?;
        ops.mults += x.cols as u64;
        out.push(v);
    }
    Ok(Vector::from_raw(x.ring, out))
}

/// `x * r` for several vectors at once, each row of `x` read once for all of them.
///
/// Results and multiplication counts equal those of calling [`mat_vec_counted`]
/// per vector; only the memory access order differs.
pub fn mat_vec_block_counted(x: &Matrix, rs: &[Vector], ops: &mut OpCount) -> Result<Vec<Vector>> {
    for r in rs {
        x.ring.mismatch(&r.ring)?;
        if x.cols != r.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                x.rows,
                x.cols,
                r.len()
            )));
        }
    }
    let fast = match x.ring {
        RingSpec::Int64Checked => rs
            .iter()
            .all(|r| sum_fits(x.cols, x.max_abs, max_abs(&r.data))),
        RingSpec::PrimeField(_) => true,
    };
    if !fast {
        return rs.iter().map(|r| mat_vec_counted(x, r, ops)).collect();
    }
    let mut outs: Vec<Vec<i64>> = rs.iter().map(|_| Vec::with_capacity(x.rows)).collect();
    for i in 0..x.rows {
        let row = x.row(i);
        for (out, r) in outs.iter_mut().zip(rs) {
            let v = match x.ring {
                RingSpec::Int64Checked => row
                    .iter()
                    .zip(&r.data)
                    .fold(0i64, |acc, (&a, &b)| acc.wrapping_add(a.wrapping_mul(b))),
                RingSpec::PrimeField(_) => x.ring.dot(row, &r.data).expect("field dot"),
            };
            out.push(v);
        }
        ops.mults += (x.cols * rs.len()) as u64;
    }
    Ok(outs
        .into_iter()
        .map(|d| Vector::from_raw(x.ring, d))
        .collect())
}

pub fn mats_equal(a: &Matrix, b: &Matrix) -> Result<bool> {
    same_shape(a, b)?;
    Ok(a.data == b.data)
}

/// Copy of column `i`.
pub fn column(x: &Matrix, i: usize) -> Result<Vector> {
    if i >= x.cols {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: x.cols,
        });
    }
    let data = (0..x.rows).map(|row| x.data[row * x.cols + i]).collect();
    Ok(Vector::from_raw(x.ring, data))
}
