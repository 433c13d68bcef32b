//! BPSK/AWGN Monte Carlo comparison of uncoded transmission and the decoders.

mod channel;
mod sweep;

pub use channel::{bpsk, llrs_from_noise, standard_noise, transmit, ChannelConfig};
pub use sweep::{
    frame_rng, make_frame, run_sweep, write_csv, BerPoint, DecoderKind, Frame, Simulator, StopRule,
    SweepConfig, CSV_HEADER,
};
