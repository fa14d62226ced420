//! Binomial confidence machinery.

/// Two-sided standard normal quantile for 99% coverage.
pub const Z_99: f64 = 2.575_829_303_548_900_4;

/// Wilson score interval for `hits` successes in `trials`.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    assert!(trials > 0);
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Central acceptance region `[lo, hi]` for a Binomial(`trials`, `p`) count:
/// `P[X < lo] <= alpha/2` and `P[X > hi] <= alpha/2`, from the exact pmf.
pub fn binomial_interval(trials: u64, p: f64, alpha: f64) -> (u64, u64) {
    assert!((0.0..=1.0).contains(&p));
    if p == 0.0 {
        return (0, 0);
    }
    if p == 1.0 {
        return (trials, trials);
    }
    let n = trials as usize;
    let mut log_pmf = Vec::with_capacity(n + 1);
    let mut cur = trials as f64 * (1.0 - p).ln();
    let odds = (p / (1.0 - p)).ln();
    log_pmf.push(cur);
    for x in 0..n {
        cur += ((n - x) as f64 / (x + 1) as f64).ln() + odds;
        log_pmf.push(cur);
    }
    let peak = log_pmf.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_pmf.iter().map(|l| (l - peak).exp()).collect();
    let total: f64 = weights.iter().sum();

    let tail = alpha / 2.0 * total;
    let mut lo = 0;
    let mut below = 0.0;
    while lo < n && below + weights[lo] <= tail {
        below += weights[lo];
        lo += 1;
    }
    let mut hi = n;
    let mut above = 0.0;
    while hi > 0 && above + weights[hi] <= tail {
        above += weights[hi];
        hi -= 1;
    }
    (lo as u64, hi as u64)
}
