//! Exhaustive oracle over every `(σ, l, a_2, …, a_m)` with `a_1 = 0`.
//!
//! A map is an automorphism iff it sends every dual row `h` into the dual
//! code, i.e. `G·ρ(h) = 0` for the generator basis `G`. The image of `h` is
//! the XOR of its blocks, each moved independently, so `G·ρ(h)` is the XOR of
//! precomputed per-block contributions indexed by (dual row, source block,
//! target block, `l`, shift). No relation between the shifts is assumed.

use super::group::{AutomorphismGroup, InvarianceChecker};
use super::perm::Permutation;
use super::search::permutations_lex;
use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::rs::CodeSpec;

/// Largest `m` accepted by [`brute_force_group`].
pub const BRUTE_FORCE_MAX_M: usize = 5;

struct Tables {
    m: usize,
    n: usize,
    words: usize,
    data: Vec<u64>,
    /// A dual row with support in every block, scanned first.
    lead: usize,
}

impl Tables {
    fn build(spec: &CodeSpec) -> Self {
        let (m, n) = (spec.m(), spec.n());
        let g = spec.generator_basis();
        let words = g.nrows().div_ceil(64);
        // Column k of G, packed.
        let gcols: Vec<Vec<u64>> = (0..spec.bit_len())
            .map(|k| {
                let mut w = vec![0u64; words];
                for (r, row) in g.rows().iter().enumerate() {
                    if row.get(k) {
                        w[r / 64] |= 1 << (r % 64);
                    }
                }
                w
            })
            .collect();
        let h = spec.standard_binary_parity();
        let duals = h.nrows();
        let mut data = vec![0u64; duals * m * m * m * n * words];
        // Rows of the all-ones check are fixed by every map and prune nothing.
        let lead = (0..duals)
            .find(|&r| {
                (0..m).all(|i| (0..n).any(|j| h.get(r, j * m + i)))
                    && (0..n).any(|j| !h.get(r, j * m))
            })
            .expect("a dual row touches every block");
        for (r, row) in h.rows().iter().enumerate() {
            for i in 0..m {
                let support: Vec<usize> = (0..n).filter(|&j| row.get(j * m + i)).collect();
                for t in 0..m {
                    for l in 0..m {
                        let mult = (1usize << l) % n;
                        for a in 0..n {
                            let off = Self::offset(m, n, words, r, i, t, l, a);
                            let slot = &mut data[off..off + words];
                            for &j in &support {
                                let dst = ((j * mult + a) % n) * m + t;
                                for (s, c) in slot.iter_mut().zip(&gcols[dst]) {
                                    *s ^= c;
                                }
                            }
                        }
                    }
                }
            }
        }
        Tables {
            m,
            n,
            words,
            data,
            lead,
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn offset(
        m: usize,
        n: usize,
        words: usize,
        r: usize,
        i: usize,
        t: usize,
        l: usize,
        a: usize,
    ) -> usize {
        ((((r * m + i) * m + t) * m + l) * n + a) * words
    }

    fn entry(&self, r: usize, i: usize, t: usize, l: usize, a: usize) -> &[u64] {
        let off = Self::offset(self.m, self.n, self.words, r, i, t, l, a);
        &self.data[off..off + self.words]
    }

    fn row_vanishes(&self, r: usize, sigma: &[usize], l: usize, a: &[usize]) -> bool {
        let mut acc = vec![0u64; self.words];
        for i in 0..self.m {
            for (x, y) in acc.iter_mut().zip(self.entry(r, i, sigma[i], l, a[i])) {
                *x ^= y;
            }
        }
        acc.iter().all(|&w| w == 0)
    }
}

/// Ground-truth automorphism group within the `(σ, a, l)` family for `m <= 5`.
pub fn brute_force_group(spec: &CodeSpec) -> Result<AutomorphismGroup> {
    let (m, n) = (spec.m(), spec.n());
    if m > BRUTE_FORCE_MAX_M {
        return Err(Error::TooLarge {
            m,
            limit: BRUTE_FORCE_MAX_M,
        });
    }
    let tables = Tables::build(spec);
    let duals = spec.parity() * m;
    let words = tables.words;
    let checker = InvarianceChecker::new(spec);
    let lead = tables.lead;
    let mut found = Vec::new();

    for sigma in permutations_lex(m) {
        for l in 0..m {
            // partial[i]: contribution of blocks 0..=i of the lead dual row.
            let mut partial = vec![vec![0u64; words]; m];
            partial[0].copy_from_slice(tables.entry(lead, 0, sigma[0], l, 0));
            let mut a = vec![0usize; m];
            let last = m - 1;
            // Odometer over a_2..a_{m-1}; the innermost shift is scanned.
            'outer: loop {
                for i in 1..last {
                    let (lo, hi) = partial.split_at_mut(i);
                    for ((d, p), e) in hi[0]
                        .iter_mut()
                        .zip(&lo[i - 1])
                        .zip(tables.entry(lead, i, sigma[i], l, a[i]))
                    {
                        *d = p ^ e;
                    }
                }
                let acc = &partial[last - 1];
                for al in 0..n {
                    if tables.entry(lead, last, sigma[last], l, al) == acc.as_slice() {
                        a[last] = al;
                        if (0..duals).all(|r| tables.row_vanishes(r, &sigma, l, &a)) {
                            let p = Permutation::new(sigma.clone(), a.clone(), l, n)?;
                            if checker.check(&p) {
                                found.push(p);
                            }
                        }
                    }
                }
                // Advance a_2..a_{m-1}, lowest index fastest.
                let mut k = 1;
                loop {
                    if k >= last {
                        break 'outer;
                    }
                    a[k] += 1;
                    if a[k] < n {
                        break;
                    }
                    a[k] = 0;
                    k += 1;
                }
            }
        }
    }
    Ok(AutomorphismGroup::from_classes(spec, found))
}

/// Whether every element of `group` maps each of `words` to a codeword.
pub fn maps_codewords(
    checker: &InvarianceChecker,
    group: &AutomorphismGroup,
    words: &[BitVec],
) -> bool {
    group.elements().all(|p| {
        let map = p.index_map(group.n());
        words.iter().all(|w| checker.mapped_syndrome(&map, w) == 0)
    })
}
