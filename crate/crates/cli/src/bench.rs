//! Wall-clock comparison of the cubic recomputation check against the
//! quadratic randomized check.
//!
//! Each size gets one `Equal` instance over `int64`, so every Freivalds run
//! performs all `k` iterations. Times are medians over `repeats` samples; a
//! sample repeats the call back to back until it spans at least
//! [`MIN_SAMPLE`] and reports the mean per call. Scalar-operation counts come
//! from the counting kernels rather than timers.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use freivalds::matrix::matmul_counted;
use freivalds::verifier::verify_counted;
use freivalds::{
    generate_instance, mats_equal, DiscreteDistribution, Error, InstanceSpec, Mode, OpCount,
    Result, RingSpec, VerifyConfig,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Deterministic,
    Freivalds,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Deterministic => "deterministic",
            Method::Freivalds => "freivalds",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub method: Method,
    /// Iterations, Freivalds only.
    pub k: Option<u32>,
    /// Median wall time in seconds.
    pub wall_time: f64,
    pub scalar_ops: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DoublingRatio {
    pub method: Method,
    pub from_n: usize,
    pub to_n: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchTable {
    pub records: Vec<BenchRecord>,
    pub doubling: Vec<DoublingRatio>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub k: u32,
    pub repeats: usize,
    pub seed: u64,
}

/// Shortest span one timing sample may cover.
pub const MIN_SAMPLE: Duration = Duration::from_millis(50);

/// Median per-call seconds of `f` over `repeats` samples, with the op count
/// of a single call.
fn time_calls<F>(repeats: usize, mut f: F) -> Result<(f64, u64)>
where
    F: FnMut(&mut OpCount) -> Result<()>,
{
    let mut ops = OpCount::default();
    let start = Instant::now();
    f(&mut ops)?;
    let once = start.elapsed();
    let calls = if once >= MIN_SAMPLE {
        1
    } else {
        (MIN_SAMPLE.as_secs_f64() / once.as_secs_f64().max(1e-9)).ceil() as u32
    };
    let mut times = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let mut scratch = OpCount::default();
        let start = Instant::now();
        for _ in 0..calls {
            f(&mut scratch)?;
        }
        times.push(start.elapsed().as_secs_f64() / calls as f64);
    }
    Ok((median(times), ops.mults))
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchTable> {
    if cfg.sizes.is_empty() || cfg.sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::ConfigInvalid("sizes must be nonempty and ascending".into()));
    }
    if cfg.repeats == 0 || cfg.k == 0 {
        return Err(Error::ConfigInvalid("k and repeats must be at least 1".into()));
    }
    let verify_cfg = VerifyConfig::new(cfg.k, cfg.seed, DiscreteDistribution::uniform_binary());
    let mut records = Vec::new();
    for &n in &cfg.sizes {
        let spec = InstanceSpec::new(n, RingSpec::Int64Checked, Mode::Equal, cfg.seed);
        let (a, b, c) = generate_instance(&spec)?;

        let (wall_time, scalar_ops) = time_calls(cfg.repeats, |ops| {
            let ab = matmul_counted(&a, &b, ops)?;
            if !mats_equal(&ab, &c)? {
                return Err(Error::Internal("benchmark instance is not a correct product".into()));
            }
            Ok(())
        })?;
        records.push(BenchRecord {
            n,
            method: Method::Deterministic,
            k: None,
            wall_time,
            scalar_ops,
        });

        let (wall_time, scalar_ops) = time_calls(cfg.repeats, |ops| {
            if !verify_counted(&a, &b, &c, &verify_cfg, ops)?.is_accept() {
                return Err(Error::Internal("correct product was rejected".into()));
            }
            Ok(())
        })?;
        records.push(BenchRecord {
            n,
            method: Method::Freivalds,
            k: Some(cfg.k),
            wall_time,
            scalar_ops,
        });
    }

    let mut doubling = Vec::new();
    for method in [Method::Deterministic, Method::Freivalds] {
        let rows: Vec<&BenchRecord> = records.iter().filter(|r| r.method == method).collect();
        for w in rows.windows(2) {
            if w[1].n == 2 * w[0].n {
                doubling.push(DoublingRatio {
                    method,
                    from_n: w[0].n,
                    to_n: w[1].n,
                    ratio: w[1].wall_time / w[0].wall_time,
                });
            }
        }
    }
    Ok(BenchTable { records, doubling })
}

impl BenchTable {
    /// `n,method,k,wall_ms,scalar_ops`; `k` is empty for the deterministic rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,method,k,wall_ms,scalar_ops\n");
        for r in &self.records {
            let k = r.k.map(|k| k.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{:.3},{}",
                r.n,
                r.method.name(),
                k,
                r.wall_time * 1e3,
                r.scalar_ops
            );
        }
        out
    }

    pub fn ratio(&self, method: Method, from_n: usize) -> Option<f64> {
        self.doubling
            .iter()
            .find(|d| d.method == method && d.from_n == from_n)
            .map(|d| d.ratio)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bench_counts_ops() {
        let cfg = BenchConfig {
            sizes: vec![8, 16, 32],
            k: 3,
            repeats: 3,
            seed: 1,
        };
        let table = run_bench(&cfg).unwrap();
        assert_eq!(table.records.len(), 6);
        for r in &table.records {
            let n = r.n as u64;
            match r.method {
                Method::Deterministic => assert_eq!(r.scalar_ops, n * n * n),
                Method::Freivalds => assert_eq!(r.scalar_ops, 3 * 3 * n * n),
            }
        }
        assert_eq!(table.doubling.len(), 4);
        let csv = table.to_csv();
        assert!(csv.starts_with("n,method,k,wall_ms,scalar_ops\n8,deterministic,,"));
        assert!(csv.lines().any(|l| l.starts_with("32,freivalds,3,") && l.ends_with(",9216")));
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = BenchConfig {
            sizes: vec![16, 8],
            k: 1,
            repeats: 1,
            seed: 0,
        };
        assert!(run_bench(&cfg).is_err());
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
