use std::collections::HashSet;

use super::perm::Permutation;
use crate::bits::BitVec;
use crate::rs::CodeSpec;

/// Decides whether a permutation maps the binary image code onto itself.
///
/// Each generator row `g` is pushed through the permutation and its syndrome
/// against the standard binary parity matrix is accumulated column by column.
#[derive(Debug, Clone)]
pub struct InvarianceChecker {
    m: usize,
    n: usize,
    generator: Vec<Vec<u32>>,
    column_syndrome: Vec<u64>,
}

impl InvarianceChecker {
    pub fn new(spec: &CodeSpec) -> Self {
        let h = spec.standard_binary_parity();
        assert!(h.nrows() <= 64, "syndrome must fit a machine word");
        let column_syndrome = (0..spec.bit_len())
            .map(|c| (0..h.nrows()).fold(0u64, |acc, r| acc | (u64::from(h.get(r, c)) << r)))
            .collect();
        let generator = spec
            .generator_basis()
            .rows()
            .iter()
            .map(|g| g.iter_ones().map(|k| k as u32).collect())
            .collect();
        InvarianceChecker {
            m: spec.m(),
            n: spec.n(),
            generator,
            column_syndrome,
        }
    }

    /// Syndrome of `v` under the standard parity matrix, one bit per row.
    pub fn syndrome(&self, v: &BitVec) -> u64 {
        v.iter_ones()
            .fold(0, |acc, k| acc ^ self.column_syndrome[k])
    }

    /// Syndrome of the image of `v` under the index map.
    pub fn mapped_syndrome(&self, map: &[u32], v: &BitVec) -> u64 {
        v.iter_ones()
            .fold(0, |acc, k| acc ^ self.column_syndrome[map[k] as usize])
    }

    pub fn check_map(&self, map: &[u32]) -> bool {
        self.generator.iter().all(|g| {
            g.iter().fold(0u64, |acc, &k| {
                acc ^ self.column_syndrome[map[k as usize] as usize]
            }) == 0
        })
    }

    pub fn check(&self, p: &Permutation) -> bool {
        p.m() == self.m && self.check_map(&p.index_map(self.n))
    }
}

/// Whether `p` maps every codeword of the binary image code to a codeword.
pub fn is_code_automorphism(p: &Permutation, spec: &CodeSpec) -> bool {
    InvarianceChecker::new(spec).check(p)
}

/// Class representatives with `a_1 = 0`; each stands for `n` automorphisms
/// differing by a global shift of `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroup {
    m: usize,
    n: usize,
    poly: u32,
    classes: Vec<Permutation>,
}

impl AutomorphismGroup {
    /// Canonicalizes, sorts and deduplicates `classes` by their index maps.
    pub fn from_classes(spec: &CodeSpec, classes: impl IntoIterator<Item = Permutation>) -> Self {
        let n = spec.n();
        let mut classes: Vec<Permutation> = classes.into_iter().map(|p| p.canonical(n)).collect();
        classes.sort_by(class_order);
        let mut seen = HashSet::new();
        classes.retain(|p| seen.insert(p.index_map(n)));
        AutomorphismGroup {
            m: spec.m(),
            n,
            poly: spec.field().poly(),
            classes,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Defining polynomial of the field, as a bit mask.
    pub fn poly(&self) -> u32 {
        self.poly
    }

    pub fn classes(&self) -> &[Permutation] {
        &self.classes
    }

    /// Every group element, class by class, in shift order.
    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        self.classes
            .iter()
            .flat_map(move |c| (0..self.n).map(move |s| c.with_offset(s, self.n)))
    }

    /// Number of distinct index maps among all elements.
    pub fn order(&self) -> usize {
        self.elements()
            .map(|p| p.index_map(self.n))
            .collect::<HashSet<_>>()
            .len()
    }

    /// Elements of the form `[i, j] ↦ [i, j + s]`, including the identity.
    pub fn column_shift_count(&self) -> usize {
        self.elements().filter(|p| p.is_column_shift()).count()
    }

    /// Index maps of every element, for set comparisons.
    pub fn mapping_set(&self) -> HashSet<Vec<u32>> {
        self.elements().map(|p| p.index_map(self.n)).collect()
    }
}

/// Sort key `(σ, l, a_2)`, then the rest of `a`.
fn class_order(x: &Permutation, y: &Permutation) -> std::cmp::Ordering {
    (x.sigma(), x.l(), x.a()).cmp(&(y.sigma(), y.l(), y.a()))
}
