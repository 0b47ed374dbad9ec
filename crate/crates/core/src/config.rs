//! Search limits and run settings shared by solvers and checks.

use serde::{Deserialize, Serialize};

pub const DEFAULT_GROUP_CAP: u64 = 64;
pub const DEFAULT_ORACLE_LEN_CAP: u64 = 14;
pub const GROUP_CAP_ENV: &str = "ZSLAB_GROUP_CAP";

/// Size limits: `group_cap` bounds `|G|`, `oracle_len_cap` bounds `|S|` for
/// labeled factorization counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub group_cap: u64,
    pub oracle_len_cap: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_cap: DEFAULT_GROUP_CAP,
            oracle_len_cap: DEFAULT_ORACLE_LEN_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub group_cap: u64,
    pub oracle_len_cap: u64,
    /// Worker threads for solvers; `1` runs everything on the caller.
    pub threads: usize,
    /// Seed for sampled conjecture checks.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            group_cap: DEFAULT_GROUP_CAP,
            oracle_len_cap: DEFAULT_ORACLE_LEN_CAP,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed: 0,
        }
    }
}

impl Config {
    pub fn caps(&self) -> Caps {
        Caps {
            group_cap: self.group_cap,
            oracle_len_cap: self.oracle_len_cap,
        }
    }

    pub fn single_threaded() -> Self {
        Config {
            threads: 1,
            ..Config::default()
        }
    }

    /// Applies `ZSLAB_GROUP_CAP` if set to a positive integer.
    pub fn with_env(mut self) -> Self {
        if let Some(cap) = std::env::var(GROUP_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&c| c >= 1)
        {
            self.group_cap = cap;
        }
        self
    }
}
