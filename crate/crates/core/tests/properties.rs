mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use tubular::exactnum::{LogRat, SlopeValue};
use tubular::model::{validate, GroupGraph};
use tubular::pset::{FoldOutcome, PSetGraph};
use tubular::slope::{compute_max_slope, enumerate_simple_cycles, loop_slope, MaxSlope, DEFAULT_CYCLE_BUDGET};

/// Largest slope over every closed walk in the graph of P-sets with at most
/// `max_len` edges, backtracking allowed.
fn closed_walk_max(p: &PSetGraph, max_len: usize) -> SlopeValue {
    let mut best = SlopeValue::zero();
    fn walk(
        p: &PSetGraph,
        start: usize,
        at_black: usize,
        path: &mut Vec<usize>,
        max_len: usize,
        best: &mut SlopeValue,
    ) {
        if path.len() >= max_len {
            return;
        }
        let black_edges: Vec<usize> =
            (0..p.folded.len()).filter(|&k| p.folded[k].vertex == at_black).collect();
        for a in black_edges {
            let w = p.folded[a].white;
            for &b in &p.white[w].folded {
                let next = p.folded[b].vertex;
                path.push(a);
                path.push(b);
                if next == start {
                    let mut h = LogRat::zero();
                    for pair in path.chunks(2) {
                        h = h + p.folded[pair[1]].phi.clone() + -&p.folded[pair[0]].phi;
                    }
                    let s = SlopeValue::new(&h.abs(), (path.len() / 2) as u64);
                    if s > *best {
                        *best = s;
                    }
                }
                walk(p, start, next, path, max_len, best);
                path.pop();
                path.pop();
            }
        }
    }
    for v in 0..p.black.len() {
        walk(p, v, v, &mut Vec::new(), max_len, &mut best);
    }
    best
}

fn seeded(seed: u64, n: usize) -> tubular::model::ValidatedGraph {
    random_valid(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_walks_never_beat_embedded_loops(seed in any::<u64>()) {
        let vg = seeded(seed, 3);
        if let FoldOutcome::Folded(p) = fold_of(&vg) {
            let walks = closed_walk_max(&p, 6);
            match compute_max_slope(&vg).unwrap().max_slope() {
                MaxSlope::Finite(s) => prop_assert!(walks <= s, "walk {walks} > loop {s}"),
                MaxSlope::Infinite => prop_assert!(false, "folded but infinite"),
            }
        }
    }

    #[test]
    fn every_loop_is_bounded_by_maximum(seed in any::<u64>()) {
        let vg = seeded(seed, 5);
        if let FoldOutcome::Folded(p) = fold_of(&vg) {
            let max = match compute_max_slope(&vg).unwrap().max_slope() {
                MaxSlope::Finite(s) => s,
                MaxSlope::Infinite => return Err(TestCaseError::fail("folded but infinite")),
            };
            let loops = enumerate_simple_cycles(&p, DEFAULT_CYCLE_BUDGET).unwrap();
            prop_assert!(loops.iter().all(|l| loop_slope(l, &p) <= max));
            if !loops.is_empty() {
                prop_assert!(loops.iter().any(|l| loop_slope(l, &p) == max));
            } else {
                prop_assert!(max.is_zero());
            }
        }
    }

    #[test]
    fn text_round_trip_keeps_slope(seed in any::<u64>()) {
        let vg = seeded(seed, 5);
        let again = validate(GroupGraph::parse(&vg.graph().to_tg()).unwrap()).unwrap();
        prop_assert_eq!(
            compute_max_slope(&vg).unwrap().max_slope(),
            compute_max_slope(&again).unwrap().max_slope()
        );
    }

    #[test]
    fn infinite_iff_fold_fails(seed in any::<u64>()) {
        let vg = seeded(seed, 5);
        let folded = matches!(fold_of(&vg), FoldOutcome::Folded(_));
        prop_assert_eq!(folded, !compute_max_slope(&vg).unwrap().is_infinite());
    }

    #[test]
    fn witness_height_matches_edges(seed in any::<u64>()) {
        let vg = seeded(seed, 5);
        if let FoldOutcome::Infinite(w) = fold_of(&vg) {
            prop_assert!(!w.net_height.is_zero());
            prop_assert_eq!(w.height_from(&heights(&vg)), w.net_height.clone());
            for i in 0..w.steps.len() {
                let (_, arrive) = w.step_ends(i);
                let (leave, _) = w.step_ends((i + 1) % w.steps.len());
                prop_assert_eq!(vg.node_of(arrive), vg.node_of(leave));
            }
        }
    }
}

#[test]
fn bb_family_scales_with_bases() {
    // BB(kp, kr) has the same slope as BB(p, r)
    for (p, r) in [(1, 2), (1, 3), (2, 3), (3, 7)] {
        let base = compute_max_slope(&bb(p, r)).unwrap().max_slope();
        for k in 2..=4 {
            assert_eq!(compute_max_slope(&bb(k * p, k * r)).unwrap().max_slope(), base);
        }
    }
}

#[test]
fn acyclic_fixture_has_slope_zero() {
    let vg = fixture("acyclic.tg");
    match fold_of(&vg) {
        FoldOutcome::Folded(p) => assert!(p.is_tree()),
        FoldOutcome::Infinite(_) => panic!("acyclic fixture should fold"),
    }
    assert_eq!(compute_max_slope(&vg).unwrap().max_slope(), MaxSlope::Finite(SlopeValue::zero()));
}
