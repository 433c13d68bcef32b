//! Acceptance criteria, one report line each.
//!
//! Run with `cargo test -p tripar --test acceptance`. Lines are written to the
//! process stdout directly so they survive output capture.

use std::collections::{BTreeMap, HashSet};
use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tripar::automorphism::{
    brute_force_group, maps_codewords, search_automorphisms, AutomorphismGroup, InvarianceChecker,
    Permutation,
};
use tripar::bits::BitVec;
use tripar::decoders::hdd_decode;
use tripar::gf2m::Gf;
use tripar::rs::{build_poly_parity_matrix, compute_m_matrix, derive_u_vectors, CodeSpec};
use tripar::sim::{write_csv, BerPoint, DecoderKind, Simulator, StopRule, SweepConfig};

type Verdict = Result<String, String>;

fn report(id: usize, title: &str, verdict: &Verdict) {
    let line = match verdict {
        Ok(detail) => format!("criterion {id:>2} PASS  {title}: {detail}\n"),
        Err(detail) => format!("criterion {id:>2} FAIL  {title}: {detail}\n"),
    };
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Searched {
    spec: CodeSpec,
    group: AutomorphismGroup,
    elapsed: Duration,
}

fn search(m: u32) -> Searched {
    let spec = CodeSpec::new(m, 3).unwrap();
    let start = Instant::now();
    let mm = compute_m_matrix(&spec).unwrap();
    let group = search_automorphisms(&mm, &spec);
    Searched {
        spec,
        group,
        elapsed: start.elapsed(),
    }
}

fn perm(n: usize, one_line: &[usize], a: &[usize], l: usize) -> Permutation {
    let sigma = one_line.iter().map(|s| s - 1).collect();
    Permutation::new(sigma, a.to_vec(), l, n).unwrap()
}

fn random_codeword(spec: &CodeSpec, rng: &mut ChaCha8Rng) -> Vec<Gf> {
    let msg: Vec<Gf> = (0..spec.k())
        .map(|_| Gf(rng.random_range(0..=spec.n() as u16)))
        .collect();
    spec.encode(&msg).unwrap()
}

fn criterion_1(groups: &BTreeMap<u32, Searched>) -> Verdict {
    let want = [(4, 120), (5, 124), (6, 126), (7, 254), (8, 510)];
    let mut parts = Vec::new();
    for (m, order) in want {
        let s = &groups[&m];
        let got = s.group.order();
        ensure(got == order, || {
            format!("m={m}: order {got}, expected {order}")
        })?;
        let limit = if m <= 6 {
            Duration::from_secs(10)
        } else {
            Duration::from_secs(600)
        };
        ensure(s.elapsed < limit, || {
            format!("m={m}: search took {:?}", s.elapsed)
        })?;
        parts.push(format!("m={m} {got} ({:.2?})", s.elapsed));
    }
    Ok(parts.join(", "))
}

/// Classes given as (one-line σ, a, l) must be exactly the canonical classes.
fn same_classes(s: &Searched, table: &[(&[usize], &[usize], usize)]) -> Result<(), String> {
    let n = s.spec.n();
    let want: HashSet<Permutation> = table
        .iter()
        .map(|(sig, a, l)| perm(n, sig, a, *l).canonical(n))
        .collect();
    let got: HashSet<Permutation> = s.group.classes().iter().cloned().collect();
    ensure(want == got, || {
        format!(
            "classes differ: found {:?}",
            s.group
                .classes()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
        )
    })
}

fn criterion_2(groups: &BTreeMap<u32, Searched>) -> Verdict {
    let s = &groups[&4];
    // (σ one-line, a, l) for id, (1,2)(3,4), (1,3)(2,4), (1,4)(2,3), (2,4),
    // (4,3,2,1), (1,3), (1,2,3,4).
    let table: [(&[usize], &[usize], usize); 8] = [
        (&[1, 2, 3, 4], &[0, 0, 0, 0], 0),
        (&[2, 1, 4, 3], &[0, 12, 3, 9], 0),
        (&[3, 4, 1, 2], &[0, 3, 6, 3], 0),
        (&[4, 3, 2, 1], &[0, 9, 3, 12], 0),
        (&[1, 4, 3, 2], &[0, 3, 9, 3], 2),
        (&[4, 1, 2, 3], &[0, 0, 12, 12], 2),
        (&[3, 2, 1, 4], &[0, 6, 0, 6], 2),
        (&[2, 3, 4, 1], &[0, 12, 12, 0], 2),
    ];
    same_classes(s, &table)?;
    let order = s.group.order();
    let shifts = s.group.column_shift_count();
    ensure(order == 120 && shifts == 15, || {
        format!("order {order}, column shifts {shifts}")
    })?;
    Ok(format!(
        "8 classes match, {order} mappings, {shifts} column shifts"
    ))
}

fn criterion_3(groups: &BTreeMap<u32, Searched>) -> Verdict {
    let s = &groups[&5];
    let table: [(&[usize], &[usize], usize); 4] = [
        (&[1, 2, 3, 4, 5], &[0, 0, 0, 0, 0], 0),
        (&[2, 1, 3, 5, 4], &[0, 15, 23, 29, 17], 0),
        (&[4, 5, 3, 1, 2], &[0, 29, 9, 18, 20], 0),
        (&[5, 4, 3, 2, 1], &[0, 17, 3, 20, 6], 0),
    ];
    same_classes(s, &table)?;
    let shifts = s.group.column_shift_count();
    ensure(shifts == 31, || format!("{shifts} column shifts"))?;
    Ok(format!(
        "4 classes match, {} mappings, {shifts} column shifts",
        s.group.order()
    ))
}

fn criterion_4() -> Verdict {
    let double: [(u32, &[usize]); 4] = [
        (3, &[2, 1, 0]),
        (4, &[2, 1, 0, 14]),
        (5, &[30, 29, 28, 27, 26]),
        (6, &[4, 3, 2, 1, 0, 62]),
    ];
    for (m, u) in double {
        let got = derive_u_vectors(&CodeSpec::new(m, 2).unwrap()).map_err(|e| e.to_string())?;
        ensure(got.u1 == u, || format!("double parity m={m}: {:?}", got.u1))?;
    }
    let triple: [(u32, &[usize], &[usize]); 8] = [
        (3, &[2, 1, 0], &[2, 5, 1]),
        (4, &[2, 1, 0, 14], &[2, 9, 1, 8]),
        (5, &[30, 29, 28, 27, 26], &[30, 14, 29, 13, 28]),
        (6, &[4, 3, 2, 1, 0, 62], &[4, 35, 3, 34, 2, 33]),
        (7, &[6, 5, 4, 3, 2, 1, 0], &[6, 69, 5, 68, 4, 67, 3]),
        (
            8,
            &[4, 3, 2, 1, 0, 254, 253, 252],
            &[4, 131, 3, 130, 2, 129, 1, 128],
        ),
        (
            9,
            &[510, 509, 508, 507, 506, 505, 504, 503, 502],
            &[510, 254, 509, 253, 508, 252, 507, 251, 506],
        ),
        (
            10,
            &[6, 5, 4, 3, 2, 1, 0, 1022, 1021, 1020],
            &[6, 517, 5, 516, 4, 515, 3, 514, 2, 513],
        ),
    ];
    for (m, u1, u2) in triple {
        let got = derive_u_vectors(&CodeSpec::new(m, 3).unwrap()).map_err(|e| e.to_string())?;
        ensure(got.u1 == u1 && got.u2.as_deref() == Some(u2), || {
            format!("triple parity m={m}: {:?} {:?}", got.u1, got.u2)
        })?;
    }
    Ok("double parity m=3..6 and triple parity m=3..10 exact".into())
}

fn criterion_5() -> Verdict {
    let eq_m4: [&[usize]; 4] = [&[0, 5, 9], &[0, 6, 11], &[0, 1, 7], &[0, 2, 3]];
    let eq_m5: [&[usize]; 5] = [
        &[0, 6, 9, 18],
        &[0, 14, 20, 23],
        &[0, 8, 22, 28],
        &[0, 11, 19, 2],
        &[0, 5, 16, 24],
    ];
    for (m, rows) in [(4u32, &eq_m4[..]), (5, &eq_m5[..])] {
        let mm = compute_m_matrix(&CodeSpec::new(m, 3).unwrap()).map_err(|e| e.to_string())?;
        for (i, want) in rows.iter().enumerate() {
            let got = mm.row_differences(i);
            ensure(got == *want, || {
                format!("m={m} row {}: {got:?}, expected {want:?}", i + 1)
            })?;
        }
    }
    Ok("m=4 and m=5 row differences exact".into())
}

fn criterion_6() -> Verdict {
    for m in 3..=8 {
        let spec = CodeSpec::new(m, 3).unwrap();
        let pm = build_poly_parity_matrix(&spec).map_err(|e| e.to_string())?;
        let h = pm.expand();
        let std = spec.standard_binary_parity();
        let rank = h.rank();
        ensure(rank == 3 * m as usize, || format!("m={m}: rank {rank}"))?;
        ensure(h.rref().0 == std.rref().0, || {
            format!("m={m}: RREF differs")
        })?;
    }
    Ok("rank 3m and equal RREF for m=3..8".into())
}

fn criterion_7(groups: &BTreeMap<u32, Searched>) -> Verdict {
    let mut parts = Vec::new();
    for m in [3u32, 4, 5] {
        let spec = CodeSpec::new(m, 3).unwrap();
        let start = Instant::now();
        let brute = brute_force_group(&spec).map_err(|e| e.to_string())?;
        let searched = groups[&m].group.mapping_set();
        ensure(brute.mapping_set() == searched, || {
            format!(
                "m={m}: brute force {} vs search {}",
                brute.order(),
                searched.len()
            )
        })?;
        parts.push(format!(
            "m={m} {} ({:.2?})",
            searched.len(),
            start.elapsed()
        ));
    }
    Ok(parts.join(", "))
}

fn criterion_8(groups: &BTreeMap<u32, Searched>) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (m, s) in groups {
        let checker = InvarianceChecker::new(&s.spec);
        if let Some(p) = s.group.elements().find(|p| !checker.check(p)) {
            return Err(format!("m={m}: {p} fails the invariance check"));
        }
        let words: Vec<BitVec> = (0..1000)
            .map(|_| {
                let c = random_codeword(&s.spec, &mut rng);
                s.spec.to_binary_image(&c).into_bits()
            })
            .collect();
        ensure(maps_codewords(&checker, &s.group, &words), || {
            format!("m={m}: a permuted codeword left the code")
        })?;
    }
    Ok("m=3..8, every element, 1000 codewords each".into())
}

fn criterion_9() -> Verdict {
    let spec = CodeSpec::new(4, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut patterns = 0;
    for _ in 0..100 {
        let c = random_codeword(&spec, &mut rng);
        for pos in 0..spec.n() {
            for e in 1..=spec.n() as u16 {
                let mut r = c.clone();
                r[pos] += Gf(e);
                let out = hdd_decode(&spec, &r);
                ensure(out.success && out.word == c, || {
                    format!("position {pos}, error {e}")
                })?;
                patterns += 1;
            }
        }
    }
    Ok(format!("{patterns} single-symbol error patterns corrected"))
}

/// `Eb/N0` where the curve crosses `target`, interpolating `log10(BER)`
/// linearly between adjacent points.
fn crossing(points: &[&BerPoint], target: f64) -> Option<f64> {
    points.windows(2).find_map(|w| {
        let (a, b) = (w[0], w[1]);
        if a.ber >= target && b.ber < target && b.ber > 0.0 {
            let (la, lb, lt) = (a.ber.log10(), b.ber.log10(), target.log10());
            Some(a.ebno_db + (b.ebno_db - a.ebno_db) * (la - lt) / (la - lb))
        } else {
            None
        }
    })
}

fn curve(points: &[BerPoint], d: DecoderKind) -> Vec<&BerPoint> {
    points.iter().filter(|p| p.decoder == d).collect()
}

fn sweep(m: u32, ebno: Vec<f64>, max_frames: u64) -> Vec<BerPoint> {
    let mut cfg = SweepConfig::new(m, ebno);
    cfg.seed = 20_240_601;
    cfg.stop = StopRule {
        min_frame_errors: 100,
        max_frames,
    };
    cfg.decoders = vec![DecoderKind::Hdd, DecoderKind::Spa, DecoderKind::Pspa];
    Simulator::new(cfg).unwrap().run(|_| {}).unwrap()
}

fn describe(points: &[BerPoint]) -> String {
    let mut s = String::new();
    for p in points {
        s += &format!(
            "[{} {} ber {:.2e}±{:.1e} n={}] ",
            p.ebno_db, p.decoder, p.ber, p.ci95, p.frames
        );
    }
    s
}

/// (a) separated intervals where SPA BER ≤ 1e-3, (c) SPA and PSPA reach 1e-4
/// before HDD. Returns the PSPA-vs-SPA gap at 1e-4.
fn ordering(points: &[BerPoint], label: &str) -> Result<f64, String> {
    let spa = curve(points, DecoderKind::Spa);
    let pspa = curve(points, DecoderKind::Pspa);
    let hdd = curve(points, DecoderKind::Hdd);
    let mut checked = 0;
    for (s, p) in spa.iter().zip(&pspa) {
        if s.ber <= 1e-3 {
            checked += 1;
            ensure(p.ci().1 < s.ci().0, || {
                format!(
                    "{label} (a) at {} dB: pspa {:?} vs spa {:?}",
                    s.ebno_db,
                    p.ci(),
                    s.ci()
                )
            })?;
        }
    }
    ensure(checked > 0, || {
        format!("{label} (a): no point with SPA BER <= 1e-3")
    })?;
    let at = |c: &[&BerPoint], name: &str| {
        crossing(c, 1e-4).ok_or_else(|| format!("{label}: {name} does not cross 1e-4"))
    };
    let (x_spa, x_pspa, x_hdd) = (at(&spa, "spa")?, at(&pspa, "pspa")?, at(&hdd, "hdd")?);
    ensure(x_spa < x_hdd && x_pspa < x_hdd, || {
        format!("{label} (c): 1e-4 at spa {x_spa:.2}, pspa {x_pspa:.2}, hdd {x_hdd:.2} dB")
    })?;
    Ok(x_spa - x_pspa)
}

fn criterion_10() -> Verdict {
    let start = Instant::now();
    let p31 = sweep(5, vec![5.5, 6.25, 7.0, 7.75], 2_000_000);
    let gap = ordering(&p31, "(31,28,4)").map_err(|e| format!("{e}; {}", describe(&p31)))?;
    ensure(gap >= 0.5, || {
        format!("(b) gap {gap:.2} dB < 0.5 dB; {}", describe(&p31))
    })?;
    let p63 = sweep(6, vec![5.75, 6.5, 7.25, 8.0], 1_000_000);
    let gap63 = ordering(&p63, "(63,60,4)").map_err(|e| format!("{e}; {}", describe(&p63)))?;
    Ok(format!(
        "(31,28,4) gap {gap:.2} dB at 1e-4, (63,60,4) gap {gap63:.2} dB, ordering holds ({:.0?}); {}",
        start.elapsed(),
        describe(&p31)
    ))
}

fn csv_bytes(cfg: &SweepConfig, threads: usize) -> Vec<u8> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap();
    let points = pool.install(|| Simulator::new(cfg.clone()).unwrap().run(|_| {}).unwrap());
    let mut buf = Vec::new();
    write_csv(&points, &mut buf).unwrap();
    buf
}

fn criterion_11() -> Verdict {
    let mut cfg = SweepConfig::new(4, vec![4.0, 6.0]);
    cfg.seed = 77;
    cfg.stop = StopRule {
        min_frame_errors: 30,
        max_frames: 20_000,
    };
    let one = csv_bytes(&cfg, 1);
    let mut other = cfg.clone();
    other.batch_frames = 37;
    for (threads, c) in [(4, &cfg), (3, &other)] {
        ensure(csv_bytes(c, threads) == one, || {
            format!("{threads} threads changed the CSV")
        })?;
    }
    Ok(format!(
        "{} identical CSV bytes for 1, 3 and 4 threads",
        one.len()
    ))
}

#[test]
fn acceptance() {
    let groups: BTreeMap<u32, Searched> = (3..=8).map(|m| (m, search(m))).collect();
    let results: Vec<(&str, Verdict)> = vec![
        ("group orders", criterion_1(&groups)),
        ("(15,12,4) classes", criterion_2(&groups)),
        ("(31,28,4) classes", criterion_3(&groups)),
        ("u vectors", criterion_4()),
        ("M-matrix row differences", criterion_5()),
        ("structural equivalence", criterion_6()),
        ("oracle equivalence", criterion_7(&groups)),
        ("automorphism soundness", criterion_8(&groups)),
        ("HDD single-error guarantee", criterion_9()),
        ("decoding gain", criterion_10()),
        ("determinism", criterion_11()),
    ];
    for (i, (title, v)) in results.iter().enumerate() {
        report(i + 1, title, v);
    }
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, (_, v))| v.is_err())
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
