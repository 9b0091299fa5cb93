use hlx_core::exactnum::is_prime;
use hlx_core::meataxe::{MeatAxeConfig, DEFAULT_BRUTE_BOUND};
use serde::{Deserialize, Serialize};

use crate::error::{HlxError, Result};

pub const BRUTE_ENV: &str = "HLX_MAX_BRUTE";

/// Settings shared by every command; echoed into each report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub p: Option<u64>,
    pub ext_degree: u32,
    pub seed: u64,
    pub kmax: Option<u32>,
    pub rwindow: Option<i64>,
    pub brute_bound: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { p: None, ext_degree: 1, seed: 0, kmax: None, rwindow: None, brute_bound: DEFAULT_BRUTE_BOUND as u64 }
    }
}

impl RunConfig {
    /// Default config with the brute-force bound taken from the environment.
    pub fn from_env() -> Result<Self> {
        let mut c = RunConfig::default();
        if let Ok(s) = std::env::var(BRUTE_ENV) {
            c.brute_bound = s.trim().parse().map_err(|_| HlxError::usage(format!("{BRUTE_ENV}={s:?} is not a number")))?;
        }
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.p {
            if !is_prime(p) {
                return Err(HlxError::usage(format!("--p {p} is not prime")));
            }
        }
        if !(1..=4).contains(&self.ext_degree) {
            return Err(HlxError::usage("--ext-degree must lie in 1..=4"));
        }
        if matches!(self.rwindow, Some(r) if r < 0) {
            return Err(HlxError::usage("--rwindow must be nonnegative"));
        }
        Ok(())
    }

    /// MeatAxe settings for one instance; `salt` separates instances of a grid.
    pub fn meataxe(&self, salt: u64) -> MeatAxeConfig {
        MeatAxeConfig {
            seed: self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15),
            brute_bound: self.brute_bound as u128,
            radius: self.rwindow,
            ..MeatAxeConfig::default()
        }
    }
}
