use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::function::erf::erfc;

use tripar::bits::BitVec;
use tripar::decoders::{hard_decision, hdd_decode};
use tripar::rs::{BinaryImage, CodeSpec};
use tripar::sim::{
    make_frame, transmit, write_csv, BerPoint, ChannelConfig, DecoderKind, Simulator, StopRule,
    SweepConfig,
};

/// BPSK bit error probability `Q(sqrt(2·Eb/N0))`.
fn bpsk_ber(ebno_db: f64) -> f64 {
    let ebno = 10f64.powf(ebno_db / 10.0);
    0.5 * erfc(ebno.sqrt())
}

#[test]
fn uncoded_ber_matches_the_q_function() {
    let ebno_db = 9.6;
    let expected = bpsk_ber(ebno_db);
    assert!((1e-5 / 3.0..3e-5).contains(&expected));
    let cfg = ChannelConfig::new(ebno_db, 1.0, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(96);
    let zeros = vec![0u8; 1 << 16];
    let (mut errors, mut bits) = (0u64, 0u64);
    while errors < 400 {
        let llr = transmit(&zeros, &cfg, &mut rng);
        errors += llr.iter().filter(|&&x| hard_decision(x) == 1).count() as u64;
        bits += zeros.len() as u64;
    }
    let ber = errors as f64 / bits as f64;
    assert!(
        (ber / expected - 1.0).abs() < 0.2,
        "measured {ber:.3e}, expected {expected:.3e}"
    );
}

fn sweep(m: u32, ebno: Vec<f64>, decoders: Vec<DecoderKind>, errors: u64) -> Vec<BerPoint> {
    let mut cfg = SweepConfig::new(m, ebno);
    cfg.decoders = decoders;
    cfg.seed = 4;
    cfg.stop = StopRule {
        min_frame_errors: errors,
        max_frames: 400_000,
    };
    Simulator::new(cfg).unwrap().run(|_| {}).unwrap()
}

#[test]
fn coding_beats_uncoded_at_high_snr() {
    use DecoderKind::*;
    let pts = sweep(5, vec![7.5], vec![Uncoded, Hdd, Spa], 200);
    let get = |d| pts.iter().find(|p| p.decoder == d).unwrap();
    let unc = get(Uncoded);
    assert!(unc.bit_errors > 0);
    assert!(unc.frames as usize * 28 * 5 >= 100_000);
    for d in [Hdd, Spa] {
        let p = get(d);
        assert!(
            p.ci().1 < unc.ci().0,
            "{d}: {:?} vs uncoded {:?}",
            p.ci(),
            unc.ci()
        );
    }
}

#[test]
fn error_rates_fall_with_snr() {
    use DecoderKind::*;
    let ebno = vec![2.0, 4.0, 6.0];
    let pts = sweep(4, ebno.clone(), vec![Uncoded, Hdd, Spa, Pspa], 60);
    for d in [Uncoded, Hdd, Spa, Pspa] {
        let curve: Vec<&BerPoint> = pts.iter().filter(|p| p.decoder == d).collect();
        assert_eq!(curve.len(), ebno.len());
        for w in curve.windows(2) {
            assert!(w[1].ber < w[0].ber, "{d}: {} then {}", w[0].ber, w[1].ber);
            assert!(w[1].fer < w[0].fer, "{d}");
        }
        for p in &curve {
            assert!(p.frame_errors >= 60 || p.frames == 400_000);
            assert!(p.ci95 > 0.0 && p.ber <= p.fer);
        }
    }
}

#[test]
fn frame_error_counts_follow_the_hdd_guarantee() {
    let spec = CodeSpec::new(4, 3).unwrap();
    let sigma = ChannelConfig::new(3.0, spec.rate(), 0).unwrap().sigma();
    for id in 0..2000 {
        let frame = make_frame(&spec, 8, 0, id);
        let hard: Vec<u8> = frame
            .bits
            .iter()
            .zip(&frame.noise)
            .map(|(&b, &z)| hard_decision(tripar::sim::bpsk(b) + sigma * z))
            .collect();
        let rx = BinaryImage::from_bits(spec.m(), BitVec::from_bits(&hard))
            .unwrap()
            .to_symbols();
        let wrong = rx
            .iter()
            .zip(&frame.codeword)
            .filter(|(a, b)| a != b)
            .count();
        let out = hdd_decode(&spec, &rx);
        if wrong <= 1 {
            assert!(out.success && out.word == frame.codeword, "frame {id}");
        }
    }
}

fn csv(cfg: &SweepConfig, threads: usize) -> String {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap();
    let pts = pool.install(|| Simulator::new(cfg.clone()).unwrap().run(|_| {}).unwrap());
    let mut out = Vec::new();
    write_csv(&pts, &mut out).unwrap();
    String::from_utf8(out).unwrap()
}

#[test]
fn results_ignore_threads_and_batching() {
    let mut cfg = SweepConfig::new(3, vec![3.0, 5.0]);
    cfg.seed = 123;
    cfg.stop = StopRule {
        min_frame_errors: 25,
        max_frames: 50_000,
    };
    let base = csv(&cfg, 1);
    for (threads, batch) in [(2, 256), (3, 1), (1, 1000)] {
        let mut c = cfg.clone();
        c.batch_frames = batch;
        assert_eq!(csv(&c, threads), base, "threads={threads} batch={batch}");
    }
    cfg.seed = 124;
    assert_ne!(csv(&cfg, 1), base);
}

#[test]
fn max_frames_caps_every_point() {
    let mut cfg = SweepConfig::new(3, vec![12.0]);
    cfg.stop = StopRule {
        min_frame_errors: 100,
        max_frames: 777,
    };
    let pts = Simulator::new(cfg).unwrap().run(|_| {}).unwrap();
    assert_eq!(pts.len(), 4);
    for p in pts {
        assert_eq!(p.frames, 777);
    }
}
