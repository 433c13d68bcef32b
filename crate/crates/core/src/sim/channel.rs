use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// BPSK over AWGN at a given `Eb/N0`, with `σ² = 1 / (2·R·10^(Eb/N0 / 10))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub ebno_db: f64,
    pub rate: f64,
    pub master_seed: u64,
}

impl ChannelConfig {
    pub fn new(ebno_db: f64, rate: f64, master_seed: u64) -> Result<Self> {
        if !(rate > 0.0 && rate <= 1.0) || !ebno_db.is_finite() {
            return Err(Error::Consistency(format!(
                "invalid channel: rate {rate}, Eb/N0 {ebno_db} dB"
            )));
        }
        Ok(ChannelConfig {
            ebno_db,
            rate,
            master_seed,
        })
    }

    pub fn noise_var(&self) -> f64 {
        1.0 / (2.0 * self.rate * 10f64.powf(self.ebno_db / 10.0))
    }

    pub fn sigma(&self) -> f64 {
        self.noise_var().sqrt()
    }
}

/// `+1` for bit 0, `-1` for bit 1.
#[inline]
pub fn bpsk(bit: u8) -> f64 {
    1.0 - 2.0 * f64::from(bit)
}

/// Channel LLRs `2r/σ²` for `r = bpsk(c) + σ·z`.
pub fn llrs_from_noise(bits: &[u8], noise: &[f64], sigma: f64) -> Vec<f64> {
    let scale = 2.0 / (sigma * sigma);
    bits.iter()
        .zip(noise)
        .map(|(&b, &z)| scale * (bpsk(b) + sigma * z))
        .collect()
}

/// Standard normal samples, one per bit.
pub fn standard_noise<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

/// Sends `bits` through the channel and returns the LLRs.
pub fn transmit<R: Rng + ?Sized>(bits: &[u8], config: &ChannelConfig, rng: &mut R) -> Vec<f64> {
    let noise = standard_noise(bits.len(), rng);
    llrs_from_noise(bits, &noise, config.sigma())
}
