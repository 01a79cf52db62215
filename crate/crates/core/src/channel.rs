//! BPSK over AWGN for the all-zero codeword.
//!
//! Each trial draws from its own ChaCha8 stream: the key is derived from the
//! 64-bit seed and the stream id is the trial index, so trial `t` sees the
//! same noise no matter how trials are scheduled. Gaussian samples come from
//! `rand_distr::StandardNormal` (ziggurat) scaled by `sigma`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    /// Noise standard deviation (linear).
    pub sigma: f64,
    pub seed: u64,
}

impl ChannelConfig {
    pub fn new(sigma: f64, seed: u64) -> Result<Self> {
        let cfg = Self { sigma, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sigma.is_finite() && self.sigma > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "sigma must be positive, got {}",
                self.sigma
            )))
        }
    }
}

/// Channel output `y_i = x_i + z_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReceivedVector {
    pub samples: Vec<f64>,
}

impl ReceivedVector {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Independent RNG for one trial.
pub fn trial_rng(seed: u64, stream_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_index);
    rng
}

/// Sends the all-zero codeword (every symbol maps to `x = 2·0 − 1 = −1`).
pub fn transmit_all_zero(n: usize, cfg: &ChannelConfig, stream_index: u64) -> ReceivedVector {
    assert!(n >= 1, "code length must be positive");
    let mut rng = trial_rng(cfg.seed, stream_index);
    let samples = (0..n)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            -1.0 + cfg.sigma * z
        })
        .collect();
    ReceivedVector { samples }
}

/// Channel LLRs `2·y/σ²`; positive values favour bit 1.
pub fn initial_llr(y: &ReceivedVector, sigma: f64) -> Vec<f64> {
    assert!(sigma > 0.0, "sigma must be positive");
    let scale = 2.0 / (sigma * sigma);
    y.samples.iter().map(|&v| scale * v).collect()
}
