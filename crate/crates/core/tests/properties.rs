mod common;

use common::*;
use matilda::fooling::{certificate_target, fanning, FoolingVerdict};
use matilda::grid::Violation;
use matilda::render::render_tiling;
use matilda::solver::{min_partition, permutations};
use matilda::{
    certify, key_lemma_check, random_perm, reference_tiling_9, verify_fooling_set, verify_tiling,
    Certificate, Document, Permutation, SearchBudget, Symmetry, Tiling, VerifyResult,
};
use proptest::prelude::*;

fn perm_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|map| Permutation::new(map).unwrap())
}

fn solved(p: &Permutation) -> Tiling {
    min_partition(p, &SearchBudget::unlimited())
        .unwrap()
        .witness
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn documents_round_trip(p in perm_strategy(12)) {
        prop_assert_eq!(Permutation::from_json(&p.to_json()).unwrap(), p.clone());
        let strips = Tiling::row_strips(&p);
        prop_assert_eq!(Tiling::from_json(&strips.to_json()).unwrap(), strips);
        let cert = certify(&p);
        prop_assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert);
    }

    #[test]
    fn verdict_ignores_rect_order(p in perm_strategy(7), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let t = solved(&p);
        let mut rects = t.rects.clone();
        rects.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(verify_tiling(&p, &Tiling::new(p.n(), rects)).unwrap().is_accept());
    }

    #[test]
    fn dropping_a_tile_rejects(p in perm_strategy(7), pick in any::<prop::sample::Index>()) {
        let mut t = solved(&p);
        prop_assume!(!t.rects.is_empty());
        t.rects.remove(pick.index(t.rects.len()));
        let verdict = verify_tiling(&p, &t).unwrap();
        let uncovered = matches!(verdict, VerifyResult::Reject(Violation::Uncovered { .. }));
        prop_assert!(uncovered, "{:?}", verdict);
    }

    #[test]
    fn accepted_tilings_cover_all_free_cells(p in perm_strategy(7)) {
        let n = p.n() as u64;
        for t in [solved(&p), Tiling::row_strips(&p)] {
            prop_assert!(verify_tiling(&p, &t).unwrap().is_accept());
            prop_assert_eq!(t.rects.iter().map(|r| r.area()).sum::<u64>(), n * n - n);
        }
    }

    #[test]
    fn fooling_sets_stay_fooling_when_shrunk(p in perm_strategy(16), drop in any::<prop::sample::Index>()) {
        let cert = certify(&p);
        prop_assume!(!cert.cells.is_empty());
        let victim = cert.cells.cells()[drop.index(cert.cells.len())];
        let smaller = cert.cells.without(victim);
        prop_assert_eq!(verify_fooling_set(&p, &smaller).unwrap(), FoolingVerdict::Valid);
        let even = cert.cells.subset(|i, _| i % 2 == 0);
        prop_assert!(verify_fooling_set(&p, &even).unwrap().is_valid());
    }

    #[test]
    fn certify_always_valid(p in perm_strategy(40)) {
        let cert = certify(&p);
        prop_assert!(cert.valid);
        prop_assert!(naive_is_fooling(p.as_slice(), cert.cells.cells()));
        prop_assert_eq!(cert.target, certificate_target(p.n()));
    }
}

#[test]
fn erdos_szekeres_bound() {
    for n in [5usize, 10, 16, 25] {
        for i in 0..1000u64 {
            let p = random_perm(n, (n as u64) << 32 | i);
            let (a, b) = (matilda::lis(&p).len(), matilda::lds(&p).len());
            assert!(a * b >= n, "{p}: {a} * {b} < {n}");
        }
    }
}

#[test]
fn dihedral_invariance() {
    for i in 0..100u64 {
        let p = random_perm(2 + (i as usize % 5), 7000 + i);
        let base = min_partition(&p, &SearchBudget::unlimited()).unwrap();
        for sym in Symmetry::ALL {
            let image = sym.apply_perm(&p);
            assert_eq!(
                min_partition(&image, &SearchBudget::unlimited())
                    .unwrap()
                    .min_count,
                base.min_count,
                "{p} under {sym:?}"
            );
            assert!(verify_tiling(&image, &sym.apply_tiling(&base.witness))
                .unwrap()
                .is_accept());
        }
    }
}

#[test]
fn key_lemma_on_solver_witnesses() {
    for i in 0..200u64 {
        let p = random_perm(1 + (i as usize % 6), 9000 + i);
        let cert = certify(&p);
        let witness = solved(&p);
        assert!(key_lemma_check(&p, &cert, &witness).unwrap(), "{p}");
        assert!(witness.len() >= cert.size, "{p}");
    }
}

#[test]
fn fanning_valid_exhaustively() {
    for n in 1..=8 {
        for p in permutations(n) {
            let fan = fanning(&p);
            assert!(
                verify_fooling_set(&p, &fan.cells).unwrap().is_valid(),
                "{p}"
            );
            assert!(naive_is_fooling(p.as_slice(), fan.cells.cells()), "{p}");
        }
    }
}

#[test]
fn reference_drawing_matches_up_to_relabeling() {
    let drawn = [
        "A A A L L L . B B",
        "A A A . C C C B B",
        ". D D D C C C B B",
        "E D D D C C C . F",
        "E D D D . G G G F",
        "E . H H H G G G F",
        "I I H H H G G G .",
        "I I H H H . J J J",
        "I I . K K K J J J",
    ];
    let (p, t) = reference_tiling_9();
    let ours = render_tiling(&p, &t).unwrap();
    let ours: Vec<&str> = ours.lines().collect();
    assert_eq!(ours.len(), 9);
    let mut forward = std::collections::HashMap::new();
    let mut backward = std::collections::HashMap::new();
    for (a, b) in ours.iter().zip(drawn) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.chars().zip(b.chars()) {
            assert_eq!(*forward.entry(x).or_insert(y), y);
            assert_eq!(*backward.entry(y).or_insert(x), x);
        }
    }
}

#[test]
fn random_perm_is_uniform() {
    let (n, samples) = (10usize, 10_000u64);
    let mut counts = vec![[0u32; 10]; n];
    for s in 0..samples {
        for (pos, &v) in random_perm(n, matilda::harness::derive_seed(42, s))
            .as_slice()
            .iter()
            .enumerate()
        {
            counts[pos][v as usize - 1] += 1;
        }
    }
    let mean = samples as f64 / n as f64;
    let sigma = (samples as f64 * 0.1 * 0.9).sqrt();
    for (pos, row) in counts.iter().enumerate() {
        for (v, &c) in row.iter().enumerate() {
            assert!(
                (c as f64 - mean).abs() <= 3.0 * sigma,
                "position {} value {}: {c}",
                pos + 1,
                v + 1
            );
        }
    }
}
