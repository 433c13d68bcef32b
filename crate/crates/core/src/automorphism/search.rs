//! Search over `[i, j] ↦ [σ(i), j·2^l + a_i]` driven by the M-matrix.
//!
//! Applying such a map to M-matrix row `r` yields a vector whose block `σ(r)`
//! vanishes and whose block `σ(j)` is `θ(x)·x^(2^l·b_{rj} + a_j)`. For an
//! automorphism this must again be row `σ(r)` up to a common shift `Δ`:
//!
//! ```text
//! 2^l·b_{rj} + a_j - b_{σ(r),σ(j)} = Δ_r   for every j ≠ r.
//! ```
//!
//! Fixing `a_1 = 0` and choosing `(σ, l, a_2)` determines `Δ_1` and with it
//! the rest of `a`. The remaining rows give a cheap necessary test, and the
//! survivors go through the definitive codeword check.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::group::{AutomorphismGroup, InvarianceChecker};
use super::perm::Permutation;
use crate::rs::{CodeSpec, MMatrix};

/// How the free shifts are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Derive `a_3, …, a_m` from `(σ, l, a_2)` directly.
    #[default]
    Derived,
    /// Loop over `a_2` and `a_3`, keep pairs with `Δ_1 = Δ_2`, then derive the rest.
    PaperFaithful,
}

/// All `m!` permutations of `0..m` in lexicographic order.
pub fn permutations_lex(m: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..m).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..m)
            .rev()
            .find(|&j| cur[j] > cur[i - 1])
            .expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

struct Ctx<'a> {
    mm: &'a MMatrix,
    m: usize,
    n: usize,
    checker: InvarianceChecker,
}

impl Ctx<'_> {
    /// `Δ_{r,j} = 2^l·b_{rj} + a_j - b_{σ(r),σ(j)} mod n`.
    fn delta(&self, sigma: &[usize], mult: usize, a: &[usize], r: usize, j: usize) -> usize {
        let n = self.n;
        (mult * self.mm.b(r, j) + a[j] + n - self.mm.b(sigma[r], sigma[j])) % n
    }

    /// Fills `a_j` for `j >= from` so that row 0 has common shift `delta`.
    fn derive_rest(
        &self,
        sigma: &[usize],
        mult: usize,
        delta: usize,
        a: &mut [usize],
        from: usize,
    ) {
        let n = self.n;
        for j in from..self.m {
            let want = delta + self.mm.b(sigma[0], sigma[j]);
            a[j] = (want + n * n - mult * self.mm.b(0, j) % n) % n;
        }
    }

    fn rows_consistent(&self, sigma: &[usize], mult: usize, a: &[usize]) -> bool {
        (0..self.m).all(|r| {
            let mut others = (0..self.m).filter(|&j| j != r);
            let first = others.next().expect("m >= 2");
            let d = self.delta(sigma, mult, a, r, first);
            others.all(|j| self.delta(sigma, mult, a, r, j) == d)
        })
    }

    fn accept(&self, sigma: &[usize], l: usize, a: &[usize], out: &mut Vec<Permutation>) {
        let mult = (1usize << l) % self.n;
        if !self.rows_consistent(sigma, mult, a) {
            return;
        }
        let p = Permutation::new(sigma.to_vec(), a.to_vec(), l, self.n).expect("well-formed");
        if self.checker.check(&p) {
            out.push(p);
        }
    }

    fn search_sigma(&self, sigma: &[usize], mode: SearchMode) -> Vec<Permutation> {
        let (m, n) = (self.m, self.n);
        let mut out = Vec::new();
        let mut a = vec![0usize; m];
        for l in 0..m {
            let mult = (1usize << l) % n;
            for a2 in 0..n {
                a[1] = a2;
                let d1 = self.delta(sigma, mult, &a, 0, 1);
                match mode {
                    SearchMode::Derived => {
                        self.derive_rest(sigma, mult, d1, &mut a, 2);
                        self.accept(sigma, l, &a, &mut out);
                    }
                    SearchMode::PaperFaithful if m == 2 => self.accept(sigma, l, &a, &mut out),
                    SearchMode::PaperFaithful => {
                        for a3 in 0..n {
                            a[2] = a3;
                            if self.delta(sigma, mult, &a, 0, 2) != d1 {
                                continue;
                            }
                            self.derive_rest(sigma, mult, d1, &mut a, 3);
                            self.accept(sigma, l, &a, &mut out);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Automorphism group within the `(σ, a, l)` family, derived-shift search.
pub fn search_automorphisms(mm: &MMatrix, spec: &CodeSpec) -> AutomorphismGroup {
    search_automorphisms_with(mm, spec, SearchMode::Derived)
}

/// Automorphism group within the `(σ, a, l)` family.
///
/// Work is split by `σ` across the rayon pool; the result does not depend on
/// the number of threads.
pub fn search_automorphisms_with(
    mm: &MMatrix,
    spec: &CodeSpec,
    mode: SearchMode,
) -> AutomorphismGroup {
    let ctx = Ctx {
        mm,
        m: spec.m(),
        n: spec.n(),
        checker: InvarianceChecker::new(spec),
    };
    let found: Vec<Permutation> = permutations_lex(ctx.m)
        .par_iter()
        .flat_map_iter(|sigma| ctx.search_sigma(sigma, mode))
        .collect();
    AutomorphismGroup::from_classes(spec, found)
}

/// The coordinate-reversal candidate `σ = (1,m)(2,m-1)⋯` with
/// `a = (0, h, 3, h+3, 6, h+6, …)`, `h = 2^(m-1) + 1`, `l = 0`.
pub fn reversal_candidate(m: usize) -> Permutation {
    let n = (1usize << m) - 1;
    let h = (1usize << (m - 1)) + 1;
    let sigma = (0..m).rev().collect();
    let a = (0..m)
        .map(|i| (3 * (i / 2) + if i % 2 == 1 { h } else { 0 }) % n)
        .collect();
    Permutation::new(sigma, a, 0, n).expect("well-formed")
}
