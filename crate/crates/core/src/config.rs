/// Limits and knobs shared by every search routine.
///
/// All randomness is derived from `seed`, so two runs with the same config
/// produce the same witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest divisor count `divisors` will enumerate.
    pub max_divisors: usize,
    /// Largest subset-sum target (after complementing) handled by the bitset engine.
    pub bitset_limit: u64,
    /// Largest value count handled by the meet-in-the-middle engine.
    pub mitm_limit: usize,
    /// Randomized restarts of the greedy fallback.
    pub restarts: u32,
    pub seed: u64,
    /// Residual below which a greedy attempt is finished off by an exact bitset pass.
    pub finish_limit: u64,
    /// Run the single deterministic greedy pass before the complete engines.
    pub greedy_probe: bool,
}

pub const DEFAULT_MAX_DIVISORS: usize = 1 << 20;
pub const DEFAULT_BITSET_LIMIT: u64 = 1 << 26;
pub const DEFAULT_MITM_LIMIT: usize = 44;
pub const DEFAULT_RESTARTS: u32 = 64;
pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const DEFAULT_FINISH_LIMIT: u64 = 1 << 16;

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_divisors: DEFAULT_MAX_DIVISORS,
            bitset_limit: DEFAULT_BITSET_LIMIT,
            mitm_limit: DEFAULT_MITM_LIMIT,
            restarts: DEFAULT_RESTARTS,
            seed: DEFAULT_SEED,
            finish_limit: DEFAULT_FINISH_LIMIT,
            greedy_probe: true,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: u32) -> Self {
        self.restarts = restarts;
        self
    }

    /// Only the randomized restarts: no greedy probe, bitset or
    /// meet-in-the-middle engine.
    pub fn randomized_only(mut self) -> Self {
        self.greedy_probe = false;
        self.bitset_limit = 0;
        self.mitm_limit = 0;
        self
    }

    pub fn with_max_divisors(mut self, cap: usize) -> Self {
        self.max_divisors = cap;
        self
    }
}
