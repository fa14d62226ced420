//! Instance generators with controlled difference structure.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{matmul, Matrix};
use crate::ring::RingSpec;
use crate::rng::SeededRng;

use super::profile::difference_profile;

/// Integer entries of A and B (and random C) are drawn from `[-ENTRY_BOUND, ENTRY_BOUND]`.
pub const ENTRY_BOUND: i64 = 1 << 8;
const RANK_ONE_BOUND: i64 = 16;
const MAX_REROLLS: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `C = AB`.
    Equal,
    /// One entry of `AB` changed.
    SingleEntry,
    /// One column of `AB` changed in at least one entry.
    SingleColumn,
    /// `C = AB + u v^T` with `u`, `v` nonzero.
    RankOne,
    /// `C` independent of `A` and `B`, and not equal to `AB`.
    DenseRandom,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::Equal,
        Mode::SingleEntry,
        Mode::SingleColumn,
        Mode::RankOne,
        Mode::DenseRandom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Equal => "equal",
            Mode::SingleEntry => "single-entry",
            Mode::SingleColumn => "single-column",
            Mode::RankOne => "rank-one",
            Mode::DenseRandom => "dense-random",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::ConfigInvalid(format!("unknown mode {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub n: usize,
    pub ring: RingSpec,
    pub mode: Mode,
    pub seed: u64,
    /// For `RankOne`: how many entries of `v` are nonzero (random in `1..=n` if unset).
    pub rank_one_columns: Option<usize>,
}

impl InstanceSpec {
    pub fn new(n: usize, ring: RingSpec, mode: Mode, seed: u64) -> Self {
        InstanceSpec {
            n,
            ring,
            mode,
            seed,
            rank_one_columns: None,
        }
    }

    pub fn with_rank_one_columns(mut self, columns: usize) -> Self {
        self.rank_one_columns = Some(columns);
        self
    }
}

fn random_entry(ring: RingSpec, rng: &mut SeededRng, bound: i64) -> i64 {
    match ring.modulus() {
        None => rng.range_i64(-bound, bound),
        Some(p) => rng.below(p) as i64,
    }
}

fn random_nonzero(ring: RingSpec, rng: &mut SeededRng, bound: i64) -> i64 {
    match ring.modulus() {
        None => {
            let v = rng.range_i64(1, bound);
            if rng.next_u64() & 1 == 0 {
                v
            } else {
                -v
            }
        }
        Some(p) => 1 + rng.below(p - 1) as i64,
    }
}

fn random_matrix(ring: RingSpec, n: usize, rng: &mut SeededRng) -> Matrix {
    let data = (0..n * n)
        .map(|_| random_entry(ring, rng, ENTRY_BOUND))
        .collect();
    Matrix::from_raw(n, n, ring, data)
}

fn add_at(ring: RingSpec, data: &mut [i64], idx: usize, delta: i64, n: usize) -> Result<()> {
    data[idx] = ring.add(data[idx], delta).ok_or(Error::IntegerOverflow {
        op: "generate",
        row: idx / n,
        col: idx % n,
    })?;
    Ok(())
}

/// Builds `(A, B, C)` for `spec`; the mode's contract is checked against the
/// matmul oracle before returning.
pub fn generate_instance(spec: &InstanceSpec) -> Result<(Matrix, Matrix, Matrix)> {
    let n = spec.n;
    if n == 0 {
        return Err(Error::ConfigInvalid("n must be at least 1".into()));
    }
    if let Some(k) = spec.rank_one_columns {
        if k == 0 || k > n {
            return Err(Error::ConfigInvalid(format!(
                "rank-one column count {k} not in 1..={n}"
            )));
        }
    }
    let ring = spec.ring;
    for attempt in 0..MAX_REROLLS {
        let mut rng = SeededRng::stream(spec.seed, attempt);
        let a = random_matrix(ring, n, &mut rng);
        let b = random_matrix(ring, n, &mut rng);
        let ab = matmul(&a, &b)?;
        let mut c = ab.as_slice().to_vec();
        let mut expected_cols: Option<Vec<usize>> = None;

        match spec.mode {
            Mode::Equal => {}
            Mode::SingleEntry => {
                let idx = rng.below((n * n) as u64) as usize;
                add_at(ring, &mut c, idx, random_nonzero(ring, &mut rng, ENTRY_BOUND), n)?;
            }
            Mode::SingleColumn => {
                let j = rng.below(n as u64) as usize;
                for i in 0..n {
                    let delta = random_entry(ring, &mut rng, ENTRY_BOUND);
                    add_at(ring, &mut c, i * n + j, delta, n)?;
                }
            }
            Mode::RankOne => {
                let u: Vec<i64> = (0..n)
                    .map(|_| random_entry(ring, &mut rng, RANK_ONE_BOUND))
                    .collect();
                let k = spec
                    .rank_one_columns
                    .unwrap_or_else(|| 1 + rng.below(n as u64) as usize);
                // Partial Fisher-Yates for k distinct columns.
                let mut cols: Vec<usize> = (0..n).collect();
                for t in 0..k {
                    let pick = t + rng.below((n - t) as u64) as usize;
                    cols.swap(t, pick);
                }
                let mut chosen = cols[..k].to_vec();
                chosen.sort_unstable();
                let mut v = vec![0i64; n];
                for &j in &chosen {
                    v[j] = random_nonzero(ring, &mut rng, RANK_ONE_BOUND);
                }
                for (i, &ui) in u.iter().enumerate() {
                    for (j, &vj) in v.iter().enumerate() {
                        let uv = ring.mul(ui, vj).expect("small factors");
                        add_at(ring, &mut c, i * n + j, uv, n)?;
                    }
                }
                expected_cols = Some(chosen);
            }
            Mode::DenseRandom => {
                for slot in c.iter_mut() {
                    *slot = random_entry(ring, &mut rng, ENTRY_BOUND);
                }
            }
        }

        let c = Matrix::from_raw(n, n, ring, c);
        let profile = difference_profile(&a, &b, &c)?;
        let ok = match spec.mode {
            Mode::Equal => profile.is_equal(),
            Mode::SingleEntry => profile.differing_entries == 1,
            Mode::SingleColumn => profile.y_size() == 1,
            Mode::RankOne => {
                expected_cols.as_deref() == Some(&profile.differing_columns[..])
                    && profile.difference_rank == Some(1)
            }
            Mode::DenseRandom => !profile.is_equal(),
        };
        if ok {
            return Ok((a, b, c));
        }
    }
    Err(Error::Internal(format!(
        "could not satisfy {} contract in {MAX_REROLLS} attempts",
        spec.mode
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::mats_equal;

    #[test]
    fn equal_mode_is_a_correct_product() {
        for seed in 0..5 {
            let (a, b, c) =
                generate_instance(&InstanceSpec::new(6, RingSpec::Int64Checked, Mode::Equal, seed))
                    .unwrap();
            assert!(mats_equal(&matmul(&a, &b).unwrap(), &c).unwrap());
        }
    }

    #[test]
    fn rank_one_with_three_columns() {
        let z5 = RingSpec::prime_field(5).unwrap();
        for ring in [RingSpec::Int64Checked, z5] {
            for seed in 0..10 {
                let spec = InstanceSpec::new(7, ring, Mode::RankOne, seed).with_rank_one_columns(3);
                let (a, b, c) = generate_instance(&spec).unwrap();
                let p = difference_profile(&a, &b, &c).unwrap();
                assert_eq!(p.y_size(), 3);
                assert_eq!(p.difference_rank, Some(1));
            }
        }
    }

    #[test]
    fn field_entries_are_reduced() {
        let z5 = RingSpec::prime_field(5).unwrap();
        for mode in Mode::ALL {
            let (a, b, c) = generate_instance(&InstanceSpec::new(6, z5, mode, 11)).unwrap();
            for m in [a, b, c] {
                assert!(m.as_slice().iter().all(|&v| (0..5).contains(&v)));
            }
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let spec = InstanceSpec::new(5, RingSpec::Int64Checked, Mode::DenseRandom, 3);
        assert_eq!(generate_instance(&spec).unwrap(), generate_instance(&spec).unwrap());
    }

    #[test]
    fn mode_names_round_trip() {
        for m in Mode::ALL {
            assert_eq!(m.name().parse::<Mode>().unwrap(), m);
        }
        assert!("rank-two".parse::<Mode>().is_err());
    }

    #[test]
    fn bad_specs() {
        let spec = InstanceSpec::new(0, RingSpec::Int64Checked, Mode::Equal, 0);
        assert!(generate_instance(&spec).is_err());
        let spec = InstanceSpec::new(3, RingSpec::Int64Checked, Mode::RankOne, 0).with_rank_one_columns(4);
        assert!(generate_instance(&spec).is_err());
    }
}
