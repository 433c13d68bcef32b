//! Hard-decision, sum-product and permutation sum-product decoders.

mod hdd;
mod pspa;
mod spa;

pub use hdd::{hdd_decode, HddResult};
pub use pspa::{pspa_decode, Combine, PspaConfig, PspaDecoder};
pub use spa::{
    hard_decision, hard_decisions, spa_decode, DecodeResult, SpaConfig, SpaDecoder, TannerGraph,
    LLR_CLIP,
};
