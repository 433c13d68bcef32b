use std::fmt;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::channel::{bpsk, llrs_from_noise, standard_noise, ChannelConfig};
use crate::automorphism::{search_automorphisms, AutomorphismGroup};
use crate::decoders::{hard_decision, hdd_decode, PspaConfig, PspaDecoder, SpaDecoder};
use crate::error::Result;
use crate::gf2m::Gf;
use crate::rs::{build_poly_parity_matrix, compute_m_matrix, BinaryImage, CodeSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecoderKind {
    Uncoded,
    Hdd,
    Spa,
    Pspa,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 4] = [Self::Uncoded, Self::Hdd, Self::Spa, Self::Pspa];

    pub fn id(self) -> &'static str {
        match self {
            DecoderKind::Uncoded => "uncoded",
            DecoderKind::Hdd => "hdd",
            DecoderKind::Spa => "spa",
            DecoderKind::Pspa => "pspa",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A decoder stops once it has seen `min_frame_errors` frame errors or
/// `max_frames` frames, whichever comes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StopRule {
    pub min_frame_errors: u64,
    pub max_frames: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            min_frame_errors: 100,
            max_frames: 10_000_000,
        }
    }
}

impl StopRule {
    pub fn done(&self, frames: u64, frame_errors: u64) -> bool {
        frame_errors >= self.min_frame_errors || frames >= self.max_frames
    }
}

/// Everything that determines the output of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub m: u32,
    #[serde(default = "default_parity")]
    pub parity: usize,
    pub ebno_db: Vec<f64>,
    #[serde(default = "default_decoders")]
    pub decoders: Vec<DecoderKind>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub stop: StopRule,
    #[serde(default)]
    pub pspa: PspaConfig,
    /// Frames handed to the thread pool at once; does not affect results.
    #[serde(default = "default_batch")]
    pub batch_frames: usize,
}

fn default_parity() -> usize {
    3
}

fn default_decoders() -> Vec<DecoderKind> {
    DecoderKind::ALL.to_vec()
}

fn default_batch() -> usize {
    256
}

impl SweepConfig {
    pub fn new(m: u32, ebno_db: Vec<f64>) -> Self {
        SweepConfig {
            m,
            parity: default_parity(),
            ebno_db,
            decoders: default_decoders(),
            seed: 0,
            stop: StopRule::default(),
            pspa: PspaConfig::default(),
            batch_frames: default_batch(),
        }
    }
}

/// Result for one decoder at one `Eb/N0`. BER counts information bits only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BerPoint {
    pub ebno_db: f64,
    pub decoder: DecoderKind,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    /// Half-width of the normal-approximation 95% interval on `ber`, from the
    /// per-frame spread of bit-error counts.
    pub ci95: f64,
    pub wall_time_s: f64,
}

impl BerPoint {
    pub fn ci(&self) -> (f64, f64) {
        (self.ber - self.ci95, self.ber + self.ci95)
    }
}

#[derive(Debug, Clone, Default)]
struct Tally {
    frames: u64,
    bit_errors: u64,
    frame_errors: u64,
    sum_sq: f64,
    done: bool,
}

impl Tally {
    fn add(&mut self, errors: u64) {
        self.frames += 1;
        self.bit_errors += errors;
        self.frame_errors += u64::from(errors > 0);
        self.sum_sq += (errors * errors) as f64;
    }

    fn point(&self, ebno_db: f64, decoder: DecoderKind, info_bits: usize, secs: f64) -> BerPoint {
        let f = self.frames.max(1) as f64;
        let k = info_bits as f64;
        let mean = self.bit_errors as f64 / f;
        let var = if self.frames > 1 {
            ((self.sum_sq - f * mean * mean) / (f - 1.0)).max(0.0)
        } else {
            0.0
        };
        BerPoint {
            ebno_db,
            decoder,
            frames: self.frames,
            bit_errors: self.bit_errors,
            frame_errors: self.frame_errors,
            ber: mean / k,
            fer: self.frame_errors as f64 / f,
            ci95: 1.96 * (var / f).sqrt() / k,
            wall_time_s: secs,
        }
    }
}

/// One transmitted frame; every field follows from `(seed, point, frame)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub codeword: Vec<Gf>,
    pub bits: Vec<u8>,
    pub noise: Vec<f64>,
    pub pspa_seed: u64,
}

/// Counter-based stream: seed `master`, stream `point·2^44 + frame`.
pub fn frame_rng(master: u64, point: usize, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(((point as u64) << 44) | frame);
    rng
}

pub fn make_frame(spec: &CodeSpec, master: u64, point: usize, frame: u64) -> Frame {
    let mut rng = frame_rng(master, point, frame);
    let msg: Vec<Gf> = (0..spec.k())
        .map(|_| Gf(rng.random_range(0..=spec.n() as u16)))
        .collect();
    let codeword = spec.encode(&msg).expect("message length is k");
    let bits = spec.to_binary_image(&codeword).bits().to_bits();
    let noise = standard_noise(bits.len(), &mut rng);
    let pspa_seed = rng.random();
    Frame {
        codeword,
        bits,
        noise,
        pspa_seed,
    }
}

/// Code, decoders and group prepared once for a sweep.
pub struct Simulator {
    spec: CodeSpec,
    config: SweepConfig,
    spa: SpaDecoder,
    pspa: Option<PspaDecoder>,
}

impl Simulator {
    pub fn new(config: SweepConfig) -> Result<Self> {
        let spec = CodeSpec::new(config.m, config.parity)?;
        let group = if config.decoders.contains(&DecoderKind::Pspa) {
            let mm = compute_m_matrix(&spec)?;
            Some(search_automorphisms(&mm, &spec))
        } else {
            None
        };
        Self::with_group(spec, config, group)
    }

    /// Uses a precomputed automorphism group for PSPA.
    pub fn with_group(
        spec: CodeSpec,
        config: SweepConfig,
        group: Option<AutomorphismGroup>,
    ) -> Result<Self> {
        let h = build_poly_parity_matrix(&spec)?.expand();
        let spa = SpaDecoder::new(&h);
        let pspa = group.map(|g| PspaDecoder::new(&h, &g, config.pspa));
        Ok(Simulator {
            spec,
            config,
            spa,
            pspa,
        })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn config(&self) -> &SweepConfig {
        &self.config
    }

    fn info_bits(&self) -> std::ops::Range<usize> {
        let m = self.spec.m();
        self.spec.parity() * m..self.spec.n() * m
    }

    fn count_errors(&self, sent: &[u8], got: &[u8]) -> u64 {
        self.info_bits().filter(|&k| sent[k] != got[k]).count() as u64
    }

    /// Information-bit errors of `decoder` on one frame.
    pub fn decode_frame(&self, decoder: DecoderKind, frame: &Frame, ebno_db: f64) -> Result<u64> {
        let coded = ChannelConfig::new(ebno_db, self.spec.rate(), self.config.seed)?;
        let llr = || llrs_from_noise(&frame.bits, &frame.noise, coded.sigma());
        let decided = match decoder {
            DecoderKind::Uncoded => {
                let sigma = ChannelConfig::new(ebno_db, 1.0, self.config.seed)?.sigma();
                frame
                    .bits
                    .iter()
                    .zip(&frame.noise)
                    .map(|(&b, &z)| hard_decision(bpsk(b) + sigma * z))
                    .collect()
            }
            DecoderKind::Hdd => {
                let hard: Vec<u8> = llr().iter().map(|&x| hard_decision(x)).collect();
                let image =
                    BinaryImage::from_bits(self.spec.m(), crate::bits::BitVec::from_bits(&hard))?;
                let out = hdd_decode(&self.spec, &image.to_symbols());
                self.spec.to_binary_image(&out.word).bits().to_bits()
            }
            DecoderKind::Spa => self.spa.decode(&llr(), self.config.pspa.max_iters)?.bits,
            DecoderKind::Pspa => {
                let pspa = self.pspa.as_ref().expect("PSPA requested without a group");
                pspa.decode_seeded(&llr(), frame.pspa_seed)?.bits
            }
        };
        Ok(self.count_errors(&frame.bits, &decided))
    }

    /// All points of the sweep, calling `progress` after each `Eb/N0`.
    ///
    /// Every decoder sees the same frames at a point. Results are identical
    /// for any thread count or batch size: frames are generated from their
    /// index alone, and each decoder's stop rule is applied frame by frame in
    /// index order.
    pub fn run(&self, mut progress: impl FnMut(&[BerPoint])) -> Result<Vec<BerPoint>> {
        let decoders = &self.config.decoders;
        let info = self.info_bits().len();
        let batch = self.config.batch_frames.max(1) as u64;
        let stop = self.config.stop;
        let mut out = Vec::new();
        for (pi, &ebno) in self.config.ebno_db.iter().enumerate() {
            let start = Instant::now();
            let mut tallies = vec![Tally::default(); decoders.len()];
            for t in tallies.iter_mut() {
                t.done = stop.done(0, 0);
            }
            let mut next = 0u64;
            while tallies.iter().any(|t| !t.done) {
                let active: Vec<bool> = tallies.iter().map(|t| !t.done).collect();
                let results = (next..next + batch)
                    .into_par_iter()
                    .map(|f| {
                        let frame = make_frame(&self.spec, self.config.seed, pi, f);
                        decoders
                            .iter()
                            .zip(&active)
                            .map(|(&d, &on)| {
                                if on {
                                    self.decode_frame(d, &frame, ebno).map(Some)
                                } else {
                                    Ok(None)
                                }
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                for row in results {
                    for (t, e) in tallies.iter_mut().zip(row) {
                        if let (false, Some(e)) = (t.done, e) {
                            t.add(e);
                            t.done = stop.done(t.frames, t.frame_errors);
                        }
                    }
                }
                next += batch;
            }
            let secs = start.elapsed().as_secs_f64();
            let points: Vec<BerPoint> = tallies
                .iter()
                .zip(decoders)
                .map(|(t, &d)| t.point(ebno, d, info, secs))
                .collect();
            progress(&points);
            out.extend(points);
        }
        Ok(out)
    }
}

/// Runs the sweep described by `config`.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<BerPoint>> {
    Simulator::new(config.clone())?.run(|_| {})
}

pub const CSV_HEADER: [&str; 8] = [
    "ebno_db",
    "decoder",
    "frames",
    "bit_errors",
    "frame_errors",
    "ber",
    "fer",
    "ci95",
];

/// Writes the sweep as CSV. Wall-clock times are left out so that equal
/// inputs give byte-identical files.
pub fn write_csv<W: Write>(points: &[BerPoint], writer: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_HEADER)?;
    for p in points {
        w.write_record([
            p.ebno_db.to_string(),
            p.decoder.id().to_string(),
            p.frames.to_string(),
            p.bit_errors.to_string(),
            p.frame_errors.to_string(),
            format!("{:.6e}", p.ber),
            format!("{:.6e}", p.fer),
            format!("{:.6e}", p.ci95),
        ])?;
    }
    w.flush()
}
