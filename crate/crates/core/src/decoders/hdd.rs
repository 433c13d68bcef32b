//! Berlekamp-Massey hard-decision decoding for zeros `α^0, α^1, …`.

use crate::gf2m::{Field, Gf};
use crate::rs::CodeSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HddResult {
    /// Decoded word, or the received word when decoding failed.
    pub word: Vec<Gf>,
    /// Number of symbols changed.
    pub corrected: usize,
    /// The output is a codeword.
    pub success: bool,
}

/// Connection polynomial of the shortest LFSR generating `syn`.
fn berlekamp_massey(field: &Field, syn: &[Gf]) -> (Vec<Gf>, usize) {
    let mut lambda = vec![Gf::ONE];
    let mut prev = vec![Gf::ONE];
    let mut len = 0usize;
    let mut gap = 1usize;
    let mut prev_disc = Gf::ONE;
    for k in 0..syn.len() {
        let disc = (0..lambda.len().min(k + 1))
            .fold(Gf::ZERO, |acc, i| acc + field.mul(lambda[i], syn[k - i]));
        if disc.is_zero() {
            gap += 1;
            continue;
        }
        let coef = field.div(disc, prev_disc).expect("nonzero discrepancy");
        let mut next = lambda.clone();
        if next.len() < prev.len() + gap {
            next.resize(prev.len() + gap, Gf::ZERO);
        }
        for (i, &p) in prev.iter().enumerate() {
            next[i + gap] += field.mul(coef, p);
        }
        if 2 * len <= k {
            len = k + 1 - len;
            prev = std::mem::replace(&mut lambda, next);
            prev_disc = disc;
            gap = 1;
        } else {
            lambda = next;
            gap += 1;
        }
    }
    while lambda.len() > 1 && lambda.last().is_some_and(|c| c.is_zero()) {
        lambda.pop();
    }
    (lambda, len)
}

fn eval(field: &Field, poly: &[Gf], x: Gf) -> Gf {
    poly.iter()
        .rev()
        .fold(Gf::ZERO, |acc, &c| field.mul(acc, x) + c)
}

/// Corrects up to `⌊p/2⌋` symbol errors; reports failure otherwise.
///
/// Errors are located by a Chien search over all `n` positions and valued by
/// Forney's formula. The result is re-checked against every zero before it is
/// reported as a success.
pub fn hdd_decode(spec: &CodeSpec, received: &[Gf]) -> HddResult {
    let field = spec.field();
    let n = spec.n();
    let fail = || HddResult {
        word: received.to_vec(),
        corrected: 0,
        success: false,
    };
    if received.len() != n {
        return fail();
    }
    let syn = spec.syndromes(received);
    if syn.iter().all(|s| s.is_zero()) {
        return HddResult {
            word: received.to_vec(),
            corrected: 0,
            success: true,
        };
    }
    let (lambda, len) = berlekamp_massey(field, &syn);
    if len > spec.parity() / 2 || lambda.len() != len + 1 {
        return fail();
    }
    // Ω(x) = S(x)·Λ(x) mod x^p.
    let p = syn.len();
    let mut omega = vec![Gf::ZERO; p];
    for (i, &s) in syn.iter().enumerate() {
        for (j, &l) in lambda.iter().enumerate().take(p - i) {
            omega[i + j] += field.mul(s, l);
        }
    }
    // Formal derivative: odd-degree terms only in characteristic 2.
    let deriv: Vec<Gf> = (1..lambda.len())
        .map(|i| if i % 2 == 1 { lambda[i] } else { Gf::ZERO })
        .collect();

    let mut word = received.to_vec();
    let mut found = 0;
    for (j, sym) in word.iter_mut().enumerate() {
        let x_inv = field.alpha_pow(-(j as i64));
        if !eval(field, &lambda, x_inv).is_zero() {
            continue;
        }
        let denom = eval(field, &deriv, x_inv);
        let Ok(q) = field.div(eval(field, &omega, x_inv), denom) else {
            return fail();
        };
        // First zero α^0: e = X·Ω(X^-1)/Λ'(X^-1).
        *sym += field.mul(field.alpha_pow(j as i64), q);
        found += 1;
    }
    if found != len || !spec.is_codeword(&word) {
        return fail();
    }
    HddResult {
        word,
        corrected: found,
        success: true,
    }
}
