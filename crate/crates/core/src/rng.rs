//! SplitMix64 and per-iteration stream derivation.
//!
//! Every random vector the verifier draws comes from `SeededRng::stream(seed, j)`,
//! so iteration `j` sees the same vector regardless of which other iterations ran.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of stream `j` under master seed `seed`.
#[inline]
pub fn stream_seed(seed: u64, j: u64) -> u64 {
    mix64(seed ^ mix64(j.wrapping_add(GOLDEN_GAMMA)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeededRng {
    state: u64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { state: seed }
    }

    /// Independent generator for stream `j`.
    pub fn stream(seed: u64, j: u64) -> Self {
        SeededRng::new(stream_seed(seed, j))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in `0..bound` by rejection; `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let width = (hi as i128 - lo as i128 + 1) as u128;
        if width > u64::MAX as u128 {
            return self.next_u64() as i64;
        }
        (lo as i128 + self.below(width as u64) as i128) as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_stream() {
        // Reference outputs of SplitMix64 seeded with 1234567.
        let mut rng = SeededRng::new(1234567);
        let got: Vec<u64> = (0..5).map(|_| rng.next_u64()).collect();
        assert_eq!(
            got,
            [
                6457827717110365317,
                3203168211198807973,
                9817491932198370423,
                4593380528125082431,
                16408922859458223821,
            ]
        );
    }

    #[test]
    fn streams_differ_and_repeat() {
        let a: Vec<u64> = {
            let mut r = SeededRng::stream(7, 3);
            (0..4).map(|_| r.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut r = SeededRng::stream(7, 3);
            (0..4).map(|_| r.next_u64()).collect()
        };
        let c: Vec<u64> = {
            let mut r = SeededRng::stream(7, 4);
            (0..4).map(|_| r.next_u64()).collect()
        };
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn bounded_draws() {
        let mut rng = SeededRng::new(0);
        for _ in 0..1000 {
            let v = rng.range_i64(-256, 256);
            assert!((-256..=256).contains(&v));
        }
        assert_eq!(rng.range_i64(5, 5), 5);
    }
}
