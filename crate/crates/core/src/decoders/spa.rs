use serde::{Deserialize, Serialize};

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// Magnitude bound on messages entering a check node.
pub const LLR_CLIP: f64 = 30.0;

/// Largest `|Π tanh|` passed to `atanh`.
const TANH_GUARD: f64 = 1.0 - 1e-15;

/// Output of one decoding attempt. Positive LLRs favor bit 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodeResult {
    pub bits: Vec<u8>,
    /// The hard decisions satisfy every check of the decoding matrix.
    pub valid: bool,
    pub iterations_used: usize,
    pub posterior: Vec<f64>,
    /// Permuted decoding runs performed (PSPA only).
    pub permutations_used: usize,
}

/// Hard decision with ties to 0.
#[inline]
pub fn hard_decision(llr: f64) -> u8 {
    u8::from(llr < 0.0)
}

pub fn hard_decisions(llr: &[f64]) -> Vec<u8> {
    llr.iter().map(|&x| hard_decision(x)).collect()
}

/// Tanner graph of a binary parity-check matrix in edge-list form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    vars: usize,
    /// Edges of check `c` are `check_start[c]..check_start[c + 1]`.
    check_start: Vec<usize>,
    edge_var: Vec<u32>,
}

impl TannerGraph {
    pub fn new(h: &BitMatrix) -> Self {
        let mut check_start = vec![0];
        let mut edge_var = Vec::new();
        for row in h.rows() {
            edge_var.extend(row.iter_ones().map(|v| v as u32));
            check_start.push(edge_var.len());
        }
        TannerGraph {
            vars: h.ncols(),
            check_start,
            edge_var,
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn checks(&self) -> usize {
        self.check_start.len() - 1
    }

    pub fn edges(&self) -> usize {
        self.edge_var.len()
    }

    fn check_edges(&self, c: usize) -> std::ops::Range<usize> {
        self.check_start[c]..self.check_start[c + 1]
    }

    /// Every check has even parity on `bits`.
    pub fn is_satisfied(&self, bits: &[u8]) -> bool {
        (0..self.checks()).all(|c| {
            self.edge_var[self.check_edges(c)]
                .iter()
                .fold(0u8, |acc, &v| acc ^ bits[v as usize])
                == 0
        })
    }
}

/// Flooding-schedule sum-product decoder.
#[derive(Debug, Clone)]
pub struct SpaDecoder {
    graph: TannerGraph,
}

/// Decoder settings shared by SPA and PSPA.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaConfig {
    pub max_iters: usize,
}

impl Default for SpaConfig {
    fn default() -> Self {
        SpaConfig { max_iters: 30 }
    }
}

impl SpaDecoder {
    pub fn new(h: &BitMatrix) -> Self {
        SpaDecoder {
            graph: TannerGraph::new(h),
        }
    }

    pub fn graph(&self) -> &TannerGraph {
        &self.graph
    }

    /// Runs up to `max_iters` iterations, stopping as soon as the hard
    /// decisions satisfy every check. The channel decisions are tested first,
    /// so a clean input costs zero iterations.
    pub fn decode(&self, channel: &[f64], max_iters: usize) -> Result<DecodeResult> {
        let g = &self.graph;
        if channel.len() != g.vars {
            return Err(Error::LengthMismatch {
                expected: g.vars,
                got: channel.len(),
            });
        }
        let mut posterior = channel.to_vec();
        let mut bits = hard_decisions(&posterior);
        if g.is_satisfied(&bits) {
            return Ok(DecodeResult {
                bits,
                valid: true,
                iterations_used: 0,
                posterior,
                permutations_used: 0,
            });
        }

        let mut v2c: Vec<f64> = g.edge_var.iter().map(|&v| channel[v as usize]).collect();
        let mut c2v = vec![0.0f64; g.edges()];
        let mut tanhs = Vec::new();
        let mut suffix = Vec::new();

        for iter in 1..=max_iters {
            for c in 0..g.checks() {
                let range = g.check_edges(c);
                tanhs.clear();
                tanhs.extend(
                    v2c[range.clone()]
                        .iter()
                        .map(|&x| (0.5 * x.clamp(-LLR_CLIP, LLR_CLIP)).tanh()),
                );
                // Products excluding each edge via suffix and running prefix.
                suffix.clear();
                suffix.resize(tanhs.len() + 1, 1.0);
                for k in (0..tanhs.len()).rev() {
                    suffix[k] = suffix[k + 1] * tanhs[k];
                }
                let mut prefix = 1.0;
                for (k, e) in range.enumerate() {
                    let prod = (prefix * suffix[k + 1]).clamp(-TANH_GUARD, TANH_GUARD);
                    c2v[e] = 2.0 * prod.atanh();
                    prefix *= tanhs[k];
                }
            }
            posterior.copy_from_slice(channel);
            for (e, &v) in g.edge_var.iter().enumerate() {
                posterior[v as usize] += c2v[e];
            }
            for (e, &v) in g.edge_var.iter().enumerate() {
                v2c[e] = posterior[v as usize] - c2v[e];
            }
            bits = hard_decisions(&posterior);
            if g.is_satisfied(&bits) {
                return Ok(DecodeResult {
                    bits,
                    valid: true,
                    iterations_used: iter,
                    posterior,
                    permutations_used: 0,
                });
            }
        }
        Ok(DecodeResult {
            bits,
            valid: false,
            iterations_used: max_iters,
            posterior,
            permutations_used: 0,
        })
    }
}

/// One-shot SPA over `h`.
pub fn spa_decode(h: &BitMatrix, channel: &[f64], max_iters: usize) -> Result<DecodeResult> {
    SpaDecoder::new(h).decode(channel, max_iters)
}
