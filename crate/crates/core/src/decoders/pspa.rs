//! Sum-product decoding over automorphism-permuted copies of the channel LLRs.
//!
//! A failed SPA run is retried on `ρ(y)` for randomly drawn automorphisms
//! `ρ`. Since `ρ` maps the code onto itself, a valid result on the permuted
//! input pulls back through `ρ^(-1)` to a codeword. If every run fails, the
//! pulled-back soft outputs are summed and hard-decided.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::spa::{hard_decisions, DecodeResult, SpaDecoder};
use crate::automorphism::{apply_map, unapply_map, AutomorphismGroup};
use crate::bits::BitMatrix;
use crate::error::Result;
use crate::rs::{build_poly_parity_matrix, CodeSpec};

/// Which soft output of a failed run enters the final sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Combine {
    /// Sum the full posteriors of all runs.
    #[default]
    Posterior,
    /// Sum the extrinsic parts (posterior minus input) and add the channel once.
    Extrinsic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PspaConfig {
    pub max_iters: usize,
    /// Number of decoding attempts on permuted inputs.
    pub max_perms: usize,
    pub combine: Combine,
    /// Count the initial unpermuted run against `max_perms`.
    pub count_initial_run: bool,
    /// Leave the identity mapping out of the sampling pool.
    pub exclude_identity: bool,
}

impl Default for PspaConfig {
    fn default() -> Self {
        PspaConfig {
            max_iters: 30,
            max_perms: 10,
            combine: Combine::Posterior,
            count_initial_run: false,
            exclude_identity: true,
        }
    }
}

impl PspaConfig {
    fn permuted_runs(&self) -> usize {
        if self.count_initial_run {
            self.max_perms.saturating_sub(1)
        } else {
            self.max_perms
        }
    }
}

#[derive(Debug, Clone)]
pub struct PspaDecoder {
    spa: SpaDecoder,
    pool: Vec<Vec<u32>>,
    config: PspaConfig,
}

impl PspaDecoder {
    /// Samples from every element of `group`, less the identity if configured.
    pub fn new(h: &BitMatrix, group: &AutomorphismGroup, config: PspaConfig) -> Self {
        let identity: Vec<u32> = (0..(group.m() * group.n()) as u32).collect();
        let mut pool: Vec<Vec<u32>> = group.elements().map(|p| p.index_map(group.n())).collect();
        pool.sort();
        pool.dedup();
        if config.exclude_identity {
            pool.retain(|map| *map != identity);
        }
        Self::with_maps(h, pool, config)
    }

    /// Samples from an explicit list of index maps.
    pub fn with_maps(h: &BitMatrix, pool: Vec<Vec<u32>>, config: PspaConfig) -> Self {
        PspaDecoder {
            spa: SpaDecoder::new(h),
            pool,
            config,
        }
    }

    pub fn config(&self) -> &PspaConfig {
        &self.config
    }

    pub fn spa(&self) -> &SpaDecoder {
        &self.spa
    }

    pub fn pool_size(&self) -> usize {
        self.pool.len()
    }

    pub fn decode_seeded(&self, channel: &[f64], seed: u64) -> Result<DecodeResult> {
        self.decode(channel, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn decode<R: Rng + ?Sized>(&self, channel: &[f64], rng: &mut R) -> Result<DecodeResult> {
        let max_iters = self.config.max_iters;
        let first = self.spa.decode(channel, max_iters)?;
        if first.valid {
            return Ok(first);
        }
        let soft = |posterior: Vec<f64>| -> Vec<f64> {
            match self.config.combine {
                Combine::Posterior => posterior,
                Combine::Extrinsic => posterior.iter().zip(channel).map(|(p, c)| p - c).collect(),
            }
        };
        let mut iterations = first.iterations_used;
        let mut sum = soft(first.posterior);

        let draws = self.config.permuted_runs().min(self.pool.len());
        let picks = index::sample(rng, self.pool.len(), draws);
        for (used, k) in picks.iter().enumerate() {
            let map = &self.pool[k];
            let run = self.spa.decode(&apply_map(map, channel), max_iters)?;
            iterations += run.iterations_used;
            let posterior = unapply_map(map, &run.posterior);
            if run.valid {
                return Ok(DecodeResult {
                    bits: unapply_map(map, &run.bits),
                    valid: true,
                    iterations_used: iterations,
                    posterior,
                    permutations_used: used + 1,
                });
            }
            for (s, p) in sum.iter_mut().zip(soft(posterior)) {
                *s += p;
            }
        }
        if self.config.combine == Combine::Extrinsic {
            for (s, c) in sum.iter_mut().zip(channel) {
                *s += c;
            }
        }
        let bits = hard_decisions(&sum);
        let valid = self.spa.graph().is_satisfied(&bits);
        Ok(DecodeResult {
            bits,
            valid,
            iterations_used: iterations,
            posterior: sum,
            permutations_used: draws,
        })
    }
}

/// One-shot PSPA over the idempotent-shift parity matrix of `spec`.
pub fn pspa_decode(
    spec: &CodeSpec,
    group: &AutomorphismGroup,
    channel: &[f64],
    max_iters: usize,
    max_perms: usize,
    seed: u64,
) -> Result<DecodeResult> {
    let h = build_poly_parity_matrix(spec)?.expand();
    let config = PspaConfig {
        max_iters,
        max_perms,
        ..PspaConfig::default()
    };
    PspaDecoder::new(&h, group, config).decode_seeded(channel, seed)
}
