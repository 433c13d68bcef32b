//! Idempotents of `F2[x]/(x^n - 1)` via their transform-domain support.
//!
//! A polynomial `e(x)` is idempotent iff `e(α^i) ∈ {0, 1}` for every `i`.
//! The set of `i` with `e(α^i) = 1` is a union of cyclotomic cosets and
//! determines `e` by the inverse transform `e_j = Σ_{i ∈ S} α^(-i·j)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2m::{Field, Gf};
use crate::ring::RingPoly;

/// Which transform support is used for the idempotent `θ(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdempotentConvention {
    /// `θ(α^i) = 1` exactly on the cyclotomic coset of `ε = α^(-1)`.
    EpsilonCoset,
    /// `θ(α^i) = 1` everywhere except that coset.
    Complement,
}

impl IdempotentConvention {
    pub const ALL: [IdempotentConvention; 2] = [Self::EpsilonCoset, Self::Complement];
}

/// Orbit of `s` under multiplication by 2 modulo `n`, in generation order.
pub fn cyclotomic_coset(n: usize, s: usize) -> Vec<usize> {
    let mut coset = vec![s % n];
    let mut x = (2 * s) % n;
    while x != s % n {
        coset.push(x);
        x = (2 * x) % n;
    }
    coset
}

/// The idempotent whose transform equals 1 exactly on `support`.
pub fn idempotent_from_support(field: &Field, support: &[usize]) -> Result<RingPoly> {
    let n = field.n();
    let mut bits = vec![0u8; n];
    for (j, bit) in bits.iter_mut().enumerate() {
        let v = support
            .iter()
            .fold(Gf::ZERO, |acc, &i| acc + field.alpha_pow(-((i * j) as i64)));
        match v.0 {
            0 => {}
            1 => *bit = 1,
            _ => {
                return Err(Error::Idempotent(format!(
                    "support is not a union of cyclotomic cosets (coefficient {j} = {:#x})",
                    v.0
                )))
            }
        }
    }
    let theta = RingPoly::from_bits(&bits);
    if theta.mul(&theta) != theta {
        return Err(Error::Idempotent("θ² ≠ θ".into()));
    }
    Ok(theta)
}

/// `θ(x)` under the requested convention.
pub fn idempotent(field: &Field, convention: IdempotentConvention) -> Result<RingPoly> {
    let n = field.n();
    let coset = cyclotomic_coset(n, n - 1);
    let support: Vec<usize> = match convention {
        IdempotentConvention::EpsilonCoset => coset,
        IdempotentConvention::Complement => (0..n).filter(|i| !coset.contains(i)).collect(),
    };
    idempotent_from_support(field, &support)
}

/// The primitive idempotent `θ_ε(x)` associated with `ε = α^(-1)`.
///
/// Its coefficients are `Tr(α^j)`.
pub fn compute_idempotent(field: &Field) -> Result<RingPoly> {
    idempotent(field, IdempotentConvention::EpsilonCoset)
}

/// `θ_1(x) = 1 + x + … + x^(n-1)`.
pub fn theta_one(n: usize) -> RingPoly {
    RingPoly::all_ones(n)
}
