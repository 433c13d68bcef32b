//! The exponent matrix `b_{ij}` of dual vectors with one zero block.
//!
//! Row `i` is a dual vector of the triple-parity image code whose block `i`
//! vanishes and whose every other block `j` is a single shift
//! `θ(x)·x^(b_{ij})`. Such a row is unique up to a common cyclic shift of all
//! blocks, so only the differences `b_{ij} - b_{ik}` carry information.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::code::CodeSpec;
use super::parity::build_poly_parity_matrix;
use crate::bits::{BitMatrix, BitVec};
use crate::error::{Error, Result};
use crate::ring::RingPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MMatrix {
    m: usize,
    n: usize,
    theta: RingPoly,
    b: Vec<Vec<Option<usize>>>,
}

/// Row-major exponent table with `None` on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentTable(pub Vec<Vec<Option<usize>>>);

impl MMatrix {
    pub fn from_exponents(n: usize, theta: RingPoly, b: Vec<Vec<Option<usize>>>) -> Self {
        MMatrix {
            m: b.len(),
            n,
            theta,
            b,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> &RingPoly {
        &self.theta
    }

    /// `b_{ij}` for 0-based `i != j`.
    #[inline]
    pub fn b(&self, i: usize, j: usize) -> usize {
        self.b[i][j].expect("diagonal of the M-matrix is undefined")
    }

    pub fn exponent(&self, i: usize, j: usize) -> Option<usize> {
        self.b[i][j]
    }

    pub fn table(&self) -> ExponentTable {
        ExponentTable(self.b.clone())
    }

    /// Off-diagonal exponents of row `i` minus its first off-diagonal exponent.
    pub fn row_differences(&self, i: usize) -> Vec<usize> {
        row_differences(&self.b[i], self.n)
    }

    /// Row `i` shifted by `r`, expanded to a binary dual vector.
    pub fn dual_vector(&self, i: usize, r: usize) -> BitVec {
        let m = self.m;
        let mut v = BitVec::zeros(m * self.n);
        for j in (0..m).filter(|&j| j != i) {
            for pos in self
                .theta
                .shift((self.b(i, j) + r) as i64)
                .coeffs()
                .iter_ones()
            {
                v.set(pos * m + j, true);
            }
        }
        v
    }
}

/// Differences of a row's off-diagonal exponents relative to the first one.
pub fn row_differences(row: &[Option<usize>], n: usize) -> Vec<usize> {
    let vals: Vec<usize> = row.iter().flatten().copied().collect();
    vals.iter().map(|&v| (v + n - vals[0]) % n).collect()
}

/// Solves for each row of the M-matrix inside the dual space.
///
/// For row `i` the dual vectors `xᵀH` with vanishing block `i` form a
/// subspace, found as the null space of the block-`i` columns of `H`. The
/// subspace is enumerated in Gray-code order until an element whose other
/// blocks are all pure shifts of `θ` turns up. Each row is returned shifted so
/// its first off-diagonal exponent is 0.
pub fn compute_m_matrix(spec: &CodeSpec) -> Result<MMatrix> {
    if spec.parity() != 3 {
        return Err(Error::UnsupportedParity(spec.parity()));
    }
    let m = spec.m();
    let n = spec.n();
    let theta = build_poly_parity_matrix(spec)?.theta().clone();
    let h = spec.standard_binary_parity();
    let rows = h.nrows();

    // blocks[r][k]: block k of dual row r as an n-bit vector.
    let blocks: Vec<Vec<BitVec>> = h
        .rows()
        .iter()
        .map(|row| {
            (0..m)
                .map(|k| BitVec::from_indices(n, (0..n).filter(|&j| row.get(j * m + k))))
                .collect()
        })
        .collect();
    let shifts: HashMap<BitVec, usize> = (0..n)
        .map(|k| (theta.shift(k as i64).coeffs().clone(), k))
        .collect();
    let theta_weight = theta.weight();

    let mut b = vec![vec![None; m]; m];
    for i in 0..m {
        // Conditions: Σ_r x_r·blocks[r][i][j] = 0 for every j.
        let mut cond = BitMatrix::new(rows);
        for j in 0..n {
            cond.push_row(BitVec::from_indices(
                rows,
                (0..rows).filter(|&r| blocks[r][i].get(j)),
            ));
        }
        let basis = cond.nullspace();
        let gens: Vec<Vec<BitVec>> = basis
            .rows()
            .iter()
            .map(|x| {
                let mut acc = vec![BitVec::zeros(n); m];
                for r in x.iter_ones() {
                    for (a, blk) in acc.iter_mut().zip(&blocks[r]) {
                        a.xor_assign(blk);
                    }
                }
                acc
            })
            .collect();

        let mut cur = vec![BitVec::zeros(n); m];
        let mut found = None;
        for step in 1u64..(1u64 << gens.len()) {
            let flip = step.trailing_zeros() as usize;
            for (c, g) in cur.iter_mut().zip(&gens[flip]) {
                c.xor_assign(g);
            }
            let exps: Option<Vec<Option<usize>>> = (0..m)
                .map(|k| {
                    if k == i {
                        Some(None)
                    } else if cur[k].count_ones() != theta_weight {
                        None
                    } else {
                        shifts.get(&cur[k]).map(|&e| Some(e))
                    }
                })
                .collect();
            if let Some(e) = exps {
                found = Some(e);
                break;
            }
        }
        let row = found.ok_or(Error::Structure { row: i })?;
        let first = row.iter().flatten().copied().next().expect("m >= 2");
        b[i] = row
            .into_iter()
            .map(|e| e.map(|v| (v + n - first) % n))
            .collect();
    }
    Ok(MMatrix { m, n, theta, b })
}
