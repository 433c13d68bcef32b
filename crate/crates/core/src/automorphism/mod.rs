//! Bit permutations `[i, j] ↦ [σ(i), j·2^l + a_i]` of the binary image and the
//! automorphism groups they form.

mod brute;
mod group;
mod perm;
mod search;

pub use brute::{brute_force_group, maps_codewords, BRUTE_FORCE_MAX_M};
pub use group::{is_code_automorphism, AutomorphismGroup, InvarianceChecker};
pub use perm::{apply_map, parse_cycles, unapply_map, Permutation};
pub use search::{
    permutations_lex, reversal_candidate, search_automorphisms, search_automorphisms_with,
    SearchMode,
};
