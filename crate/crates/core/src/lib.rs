//! Binary images of triple-parity Reed-Solomon codes, their automorphisms,
//! and permutation sum-product decoding.
//!
//! An `(n, n-3, 4)` Reed-Solomon code over `GF(2^m)` with zeros
//! `{1, α, α²}` is viewed as a binary code of length `m·n` by expanding each
//! symbol over the basis `1, α, …, α^(m-1)`. Bit `i` of symbol `j` sits at
//! index `j·m + i`.
//!
//! - [`gf2m`]: field arithmetic.
//! - [`rs`]: encoding, the idempotent-shift parity matrix and the M-matrix.
//! - [`automorphism`]: permutations `[i, j] ↦ [σ(i), j·2^l + a_i]` and the
//!   search for those that fix the code.
//! - [`decoders`]: Berlekamp-Massey, sum-product and permutation sum-product.
//! - [`sim`]: BPSK/AWGN bit-error-rate sweeps.
//!
//! ```
//! use tripar::automorphism::search_automorphisms;
//! use tripar::rs::{compute_m_matrix, CodeSpec};
//!
//! let spec = CodeSpec::new(4, 3)?;
//! let mm = compute_m_matrix(&spec)?;
//! let group = search_automorphisms(&mm, &spec);
//! assert_eq!(group.order(), 120);
//! # Ok::<(), tripar::Error>(())
//! ```

pub mod automorphism;
pub mod bits;
pub mod decoders;
pub mod error;
pub mod gf2m;
pub mod ring;
pub mod rs;
pub mod schema;
pub mod sim;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/field.md")]
    mod field {}
    #[doc = include_str!("../../../book/src/binary-image.md")]
    mod binary_image {}
    #[doc = include_str!("../../../book/src/automorphisms.md")]
    mod automorphisms {}
    #[doc = include_str!("../../../book/src/decoding.md")]
    mod decoding {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
}
