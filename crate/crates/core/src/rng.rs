//! SplitMix64, the pseudorandom generator behind every sampled
//! representation. The state advance and output mix are fixed so that a seed
//! reproduces the same samples in any implementation.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `0..range` by rejection of the biased tail.
    pub fn below(&mut self, range: u64) -> u64 {
        assert!(range > 0, "empty range");
        // 2^64 mod range
        let rem = (u64::MAX % range + 1) % range;
        if rem == 0 {
            return self.next_u64() % range;
        }
        let limit = 0u64.wrapping_sub(rem);
        loop {
            let x = self.next_u64();
            if x < limit {
                return x % range;
            }
        }
    }

    /// Uniform integer in `[-bound, bound]`.
    pub fn symmetric(&mut self, bound: u64) -> i64 {
        let span = 2 * bound + 1;
        self.below(span) as i64 - bound as i64
    }
}
