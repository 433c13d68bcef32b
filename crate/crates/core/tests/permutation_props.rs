use std::sync::OnceLock;

use proptest::prelude::*;

use tripar::automorphism::{
    apply_map, is_code_automorphism, search_automorphisms, search_automorphisms_with, unapply_map,
    AutomorphismGroup, InvarianceChecker, Permutation, SearchMode,
};
use tripar::bits::BitVec;
use tripar::rs::{compute_m_matrix, CodeSpec};

struct Code {
    spec: CodeSpec,
    elements: Vec<Permutation>,
    group: AutomorphismGroup,
}

fn code(m: u32) -> &'static Code {
    static CODES: [OnceLock<Code>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CODES[(m - 3) as usize].get_or_init(|| {
        let spec = CodeSpec::new(m, 3).unwrap();
        let group = search_automorphisms(&compute_m_matrix(&spec).unwrap(), &spec);
        let elements = group.elements().collect();
        Code {
            spec,
            elements,
            group,
        }
    })
}

/// Any well-formed `(σ, a, l)`, automorphism or not.
fn any_perm() -> impl Strategy<Value = (usize, Permutation)> {
    (3usize..=8).prop_flat_map(|m| {
        let n = (1usize << m) - 1;
        (
            Just(Vec::from_iter(0..m)).prop_shuffle(),
            prop::collection::vec(0..n, m),
            0..m,
        )
            .prop_map(move |(s, a, l)| (n, Permutation::new(s, a, l, n).unwrap()))
    })
}

proptest! {
    #[test]
    fn inverse_undoes_the_action((n, p) in any_perm(), seed in any::<u64>()) {
        let len = p.m() * n;
        let v: Vec<u64> = (0..len as u64).map(|i| i.wrapping_mul(seed | 1)).collect();
        let there = p.apply(&v, n).unwrap();
        prop_assert_eq!(p.inverse(n).apply(&there, n).unwrap(), v.clone());
        prop_assert!(p.compose(&p.inverse(n), n).is_identity_mapping());
        let map = p.index_map(n);
        prop_assert_eq!(unapply_map(&map, &apply_map(&map, &v)), v);
    }

    #[test]
    fn composition_acts_right_to_left((n, p) in any_perm(), q_seed in any::<u64>()) {
        let m = p.m();
        let mut sigma: Vec<usize> = (0..m).collect();
        sigma.rotate_left((q_seed as usize) % m);
        let a = (0..m).map(|i| (q_seed as usize >> i) % n).collect();
        let q = Permutation::new(sigma, a, (q_seed as usize >> 7) % m, n).unwrap();
        let v: Vec<u32> = (0..(m * n) as u32).collect();
        let two_steps = p.apply(&q.apply(&v, n).unwrap(), n).unwrap();
        prop_assert_eq!(p.compose(&q, n).apply(&v, n).unwrap(), two_steps);
    }

    #[test]
    fn action_preserves_weight_and_llr_multiset((n, p) in any_perm(), seed in any::<u64>()) {
        let len = p.m() * n;
        let bits = BitVec::from_indices(len, (0..len).filter(|i| (seed >> (i % 64)) & 1 == 1));
        prop_assert_eq!(p.apply_bits(&bits, n).unwrap().count_ones(), bits.count_ones());
        let llr: Vec<f64> = (0..len).map(|i| ((i as u64 ^ seed) % 97) as f64 - 48.0).collect();
        let mut before = llr.clone();
        let mut after = p.apply(&llr, n).unwrap();
        before.sort_by(f64::total_cmp);
        after.sort_by(f64::total_cmp);
        prop_assert_eq!(before, after);
    }

    #[test]
    fn group_is_closed(m in 4u32..=5, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let c = code(m);
        let n = c.spec.n();
        let (p, q) = (i.get(&c.elements), j.get(&c.elements));
        let checker = InvarianceChecker::new(&c.spec);
        let pq = p.compose(q, n);
        prop_assert!(checker.check(&pq));
        prop_assert!(checker.check(&p.inverse(n)));
        prop_assert!(c.group.mapping_set().contains(&pq.index_map(n)));
    }

    #[test]
    fn random_transpositions_fail(m in 3u32..=5, x in any::<usize>(), y in any::<usize>()) {
        let c = code(m);
        let len = c.spec.bit_len();
        let (x, y) = (x % len, y % len);
        prop_assume!(x != y);
        let mut map: Vec<u32> = (0..len as u32).collect();
        map.swap(x, y);
        prop_assert!(!InvarianceChecker::new(&c.spec).check_map(&map));
    }
}

#[test]
fn search_modes_agree_and_output_is_sound() {
    for m in 3..=6 {
        let spec = CodeSpec::new(m, 3).unwrap();
        let mm = compute_m_matrix(&spec).unwrap();
        let derived = search_automorphisms_with(&mm, &spec, SearchMode::Derived);
        let faithful = search_automorphisms_with(&mm, &spec, SearchMode::PaperFaithful);
        assert_eq!(derived.classes(), faithful.classes(), "m={m}");
        let maps = derived.mapping_set();
        assert_eq!(maps.len(), derived.order());
        for p in derived.classes() {
            assert_eq!(p.a()[0], 0);
            assert!(is_code_automorphism(p, &spec));
        }
    }
}

#[test]
fn searches_are_deterministic_across_thread_pools() {
    let spec = CodeSpec::new(6, 3).unwrap();
    let mm = compute_m_matrix(&spec).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| search_automorphisms(&mm, &spec))
    };
    assert_eq!(run(1).classes(), run(3).classes());
}

#[test]
fn reversal_pattern_is_an_automorphism_for_every_field() {
    for m in 3..=10 {
        let spec = CodeSpec::new(m, 3).unwrap();
        let p = tripar::automorphism::reversal_candidate(m as usize);
        assert!(is_code_automorphism(&p, &spec), "m={m}: {p}");
    }
}
