use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// The bit permutation `[i, j] ↦ [σ(i), j·2^l + a_i mod n]`.
///
/// Indices are 0-based internally: `sigma[i]` is the image of basis row `i`.
/// Cycle notation and one-line output are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    sigma: Vec<usize>,
    a: Vec<usize>,
    l: usize,
}

impl Permutation {
    pub fn new(sigma: Vec<usize>, a: Vec<usize>, l: usize, n: usize) -> Result<Self> {
        let m = sigma.len();
        let mut seen = vec![false; m];
        for &s in &sigma {
            if s >= m || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{sigma:?} is not a permutation"
                )));
            }
        }
        if a.len() != m {
            return Err(Error::InvalidPermutation(format!(
                "a has {} entries, expected {m}",
                a.len()
            )));
        }
        if l >= m {
            return Err(Error::InvalidPermutation(format!("l = {l} not in Z_{m}")));
        }
        Ok(Permutation {
            sigma,
            a: a.into_iter().map(|x| x % n).collect(),
            l,
        })
    }

    pub fn identity(m: usize) -> Self {
        Permutation {
            sigma: (0..m).collect(),
            a: vec![0; m],
            l: 0,
        }
    }

    /// The cyclic column shift `[i, j] ↦ [i, j + s]`.
    pub fn column_shift(m: usize, s: usize, n: usize) -> Self {
        Permutation {
            sigma: (0..m).collect(),
            a: vec![s % n; m],
            l: 0,
        }
    }

    pub fn m(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn is_identity_mapping(&self) -> bool {
        self.l == 0
            && self.a.iter().all(|&x| x == 0)
            && self.sigma.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// Of the form `[i, j] ↦ [i, j + s]`.
    pub fn is_column_shift(&self) -> bool {
        self.l == 0
            && self.sigma.iter().enumerate().all(|(i, &s)| i == s)
            && self.a.iter().all(|&x| x == self.a[0])
    }

    /// Same mapping family member with `a_1 = 0`.
    pub fn canonical(&self, n: usize) -> Self {
        let a0 = self.a[0];
        self.with_offset(n - a0, n)
    }

    /// `a + s` for all entries.
    pub fn with_offset(&self, s: usize, n: usize) -> Self {
        Permutation {
            sigma: self.sigma.clone(),
            a: self.a.iter().map(|&x| (x + s) % n).collect(),
            l: self.l,
        }
    }

    /// Destination of every flattened index `j·m + i`.
    pub fn index_map(&self, n: usize) -> Vec<u32> {
        let m = self.m();
        let mult = (1usize << self.l) % n;
        let mut map = vec![0u32; m * n];
        for j in 0..n {
            let base = j * mult;
            for i in 0..m {
                map[j * m + i] = (((base + self.a[i]) % n) * m + self.sigma[i]) as u32;
            }
        }
        map
    }

    /// `out[ρ(k)] = v[k]`; works for bits and soft values alike.
    pub fn apply<T: Copy + Default>(&self, v: &[T], n: usize) -> Result<Vec<T>> {
        let len = self.m() * n;
        if v.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                got: v.len(),
            });
        }
        Ok(apply_map(&self.index_map(n), v))
    }

    pub fn apply_bits(&self, v: &BitVec, n: usize) -> Result<BitVec> {
        let len = self.m() * n;
        if v.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                got: v.len(),
            });
        }
        let map = self.index_map(n);
        Ok(BitVec::from_indices(
            len,
            v.iter_ones().map(|k| map[k] as usize),
        ))
    }

    /// `ρ^(-1)`, which stays in the family with `l' = -l`.
    pub fn inverse(&self, n: usize) -> Self {
        let m = self.m();
        let lp = (m - self.l) % m;
        let mult = (1usize << lp) % n;
        let mut sigma = vec![0; m];
        let mut a = vec![0; m];
        for i in 0..m {
            let k = self.sigma[i];
            sigma[k] = i;
            a[k] = (n - self.a[i] * mult % n) % n;
        }
        Permutation { sigma, a, l: lp }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation, n: usize) -> Self {
        let m = self.m();
        let mult = (1usize << self.l) % n;
        let sigma = (0..m).map(|i| self.sigma[other.sigma[i]]).collect();
        let a = (0..m)
            .map(|i| (other.a[i] * mult + self.a[other.sigma[i]]) % n)
            .collect();
        Permutation {
            sigma,
            a,
            l: (self.l + other.l) % m,
        }
    }

    /// 1-based one-line notation of `σ`.
    pub fn one_line(&self) -> Vec<usize> {
        self.sigma.iter().map(|s| s + 1).collect()
    }

    /// 1-based cycle notation of `σ`, `id` for the identity.
    pub fn cycle_notation(&self) -> String {
        cycles_to_string(&self.sigma)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "{}, ({}), {}",
            self.cycle_notation(),
            a.join(","),
            self.l
        )
    }
}

/// `out[map[k]] = v[k]`.
pub fn apply_map<T: Copy + Default>(map: &[u32], v: &[T]) -> Vec<T> {
    let mut out = vec![T::default(); v.len()];
    for (k, &dst) in map.iter().enumerate() {
        out[dst as usize] = v[k];
    }
    out
}

/// `out[k] = v[map[k]]`, the inverse action of [`apply_map`].
pub fn unapply_map<T: Copy>(map: &[u32], v: &[T]) -> Vec<T> {
    map.iter().map(|&dst| v[dst as usize]).collect()
}

fn cycles_to_string(sigma: &[usize]) -> String {
    let m = sigma.len();
    let mut seen = vec![false; m];
    let mut out = String::new();
    for start in 0..m {
        if seen[start] || sigma[start] == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut x = sigma[start];
        while x != start {
            seen[x] = true;
            cyc.push(x + 1);
            x = sigma[x];
        }
        let parts: Vec<String> = cyc.iter().map(|c| c.to_string()).collect();
        out.push('(');
        out.push_str(&parts.join(","));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("id");
    }
    out
}

/// Parses 1-based cycle notation such as `(1,2)(3,4)` or `id` into a 0-based
/// one-line permutation of `{0, …, m-1}`.
pub fn parse_cycles(s: &str, m: usize) -> Result<Vec<usize>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut sigma: Vec<usize> = (0..m).collect();
    if s == "id" || s.is_empty() {
        return Ok(sigma);
    }
    let bad = || Error::InvalidPermutation(format!("cannot parse cycle notation {s:?}"));
    let mut seen = vec![false; m];
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let elems = body[..close]
            .split(',')
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        for &e in &elems {
            if e == 0 || e > m || std::mem::replace(&mut seen[e - 1], true) {
                return Err(bad());
            }
        }
        for (k, &e) in elems.iter().enumerate() {
            sigma[e - 1] = elems[(k + 1) % elems.len()] - 1;
        }
        rest = &body[close + 1..];
    }
    Ok(sigma)
}
