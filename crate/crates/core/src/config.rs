use serde::{Deserialize, Serialize};

/// Default limit on the number of items an exhaustive scan may visit.
pub const DEFAULT_CAP: u64 = 1 << 24;

pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

pub const DEFAULT_SAMPLES: usize = 1000;

/// Environment variable that overrides the enumeration cap.
pub const CAP_ENV: &str = "CAYLEY_CAP";

/// Knobs shared by every enumeration and verification routine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub cap: u64,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cap: DEFAULT_CAP,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl RunConfig {
    /// Defaults with the cap taken from `CAYLEY_CAP` when it parses.
    pub fn from_env() -> Self {
        let mut cfg = RunConfig::default();
        if let Some(cap) = std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            cfg.cap = cap;
        }
        cfg
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap.max(1);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}
