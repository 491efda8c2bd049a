mod common;

use common::{fixture_algebras, generated, rel};
use gorcheck_core::paths::{
    left_distance, left_intersects, left_window, minimal_relation_up, relations_on,
    right_distance, LeftPathEnumerator, PathWindow, RelationOccurrence,
};
use gorcheck_core::{fixtures, ArrowId, StringAlgebra, VertexId};

fn arrows(alg: &StringAlgebra, labels: &str) -> Vec<ArrowId> {
    labels
        .split_whitespace()
        .map(|l| alg.bound_quiver().quiver.arrow_by_label(l).unwrap())
        .collect()
}

#[test]
fn relations_on_an_unrolled_cycle() {
    let c8 = fixtures::load(fixtures::C8);
    let w = left_window(&c8, VertexId(2), &arrows(&c8, "b c d"), 5);
    assert_eq!(w.len(), 1);
    let w = &w[0];
    assert_eq!(c8.render_path(&w.arrows), "e f g h a b c d");
    assert_eq!(w.origin, 5);
    let found: Vec<(String, usize, usize)> = relations_on(&c8, w)
        .into_iter()
        .map(|o| (c8.render_relation(o.relation), o.start, o.end))
        .collect();
    let expected = [("e f g h", 0, 4), ("f g h a", 1, 5), ("g h a b", 2, 6), ("a b c d", 4, 8)];
    assert_eq!(found.len(), expected.len());
    for ((r, s, e), (xr, xs, xe)) in found.iter().zip(expected) {
        assert_eq!((r.as_str(), *s, *e), (xr, xs, xe));
    }
}

#[test]
fn minimal_relation_up_examples() {
    let c8 = fixtures::load(fixtures::C8);
    let mut e = LeftPathEnumerator::new(&c8, VertexId(2), &arrows(&c8, "b c d"));
    let at_5 = e.minimal_relation_up(3).unwrap();
    assert_eq!(at_5.len(), 1);
    assert_eq!(at_5[0].1.unwrap().relation, rel(&c8, "a b c d"));
    let at_1 = e.minimal_relation_up(-1).unwrap();
    assert_eq!(at_1[0].1.unwrap().relation, rel(&c8, "e f g h"));
    assert!(e.minimal_relation_up(4).is_err());
}

#[test]
fn window_vertices_and_offsets() {
    let c8 = fixtures::load(fixtures::C8);
    let w = &left_window(&c8, VertexId(2), &arrows(&c8, "b c d"), 2)[0];
    let verts: Vec<u32> = (0..=w.len()).map(|p| w.vertex_at(&c8, p).0).collect();
    assert_eq!(verts, vec![8, 1, 2, 3, 4, 5]);
    assert_eq!(w.offset(0), -2);
    assert_eq!(w.position(3), Some(5));
    assert_eq!(w.position(4), None);
    assert!(w.extendable_left);
}

#[test]
fn source_stops_growth() {
    let a2 = fixtures::load(fixtures::A2);
    let w = left_window(&a2, VertexId(1), &arrows(&a2, "a"), 10);
    assert_eq!(w.len(), 1);
    assert_eq!(w[0].len(), 1);
    assert!(!w[0].extendable_left);
}

#[test]
fn branching_windows() {
    // Vertex 10 of C8 has in-arrows y and z, so leftward growth forks.
    let c8 = fixtures::load(fixtures::C8);
    let ws = left_window(&c8, VertexId(10), &[], 1);
    assert_eq!(ws.len(), 2);
}

#[test]
fn distances() {
    let occ = RelationOccurrence {
        relation: gorcheck_core::RelationId(0),
        start: 2,
        end: 5,
    };
    assert_eq!(left_distance(1, &occ).unwrap(), 1);
    assert!(left_distance(3, &occ).is_err());
    assert_eq!(right_distance(&occ, 7).unwrap(), 2);
    assert!(right_distance(&occ, 4).is_err());
}

#[test]
fn left_intersection_is_strict() {
    let r = gorcheck_core::RelationId(0);
    let occ = |start, end| RelationOccurrence { relation: r, start, end };
    assert!(left_intersects(&occ(0, 4), &occ(1, 5)));
    assert!(!left_intersects(&occ(0, 4), &occ(4, 6)));
    assert!(!left_intersects(&occ(0, 4), &occ(0, 5)));
    assert!(!left_intersects(&occ(1, 5), &occ(0, 4)));
    assert!(!left_intersects(&occ(0, 6), &occ(1, 5)));
}

/// Windows grown leftward from `seed` by up to `depth` arrows, stopping
/// early once another step could exceed `cap` branches.
fn bounded_windows(
    alg: &StringAlgebra,
    start: VertexId,
    seed: &[ArrowId],
    depth: usize,
    cap: usize,
) -> Vec<PathWindow> {
    let mut e = LeftPathEnumerator::new(alg, start, seed);
    for _ in 0..depth {
        if 2 * e.windows().len() > cap {
            break;
        }
        e.grow();
    }
    e.windows()
}

/// Every window of depth up to 30 from every single-arrow seed, at every
/// target position.
fn check_uniqueness(alg: &StringAlgebra) {
    for a in alg.bound_quiver().quiver.arrow_ids() {
        for w in bounded_windows(alg, alg.source(a), &[a], 30, 512) {
            for t in 0..=w.len() {
                minimal_relation_up(alg, &w, t).unwrap();
            }
        }
    }
}

#[test]
fn minima_are_unique() {
    for alg in fixture_algebras() {
        check_uniqueness(&alg);
    }
    for seed in 0..100 {
        check_uniqueness(&generated(seed));
    }
}

/// Once the enumerator reports a settled minimum, growing that window
/// further to the left finds the same one.
fn check_stability(alg: &StringAlgebra) {
    let depth = alg.path_cap() + 2 * alg.max_relation_len() + 2;
    for a in alg.bound_quiver().quiver.arrow_ids() {
        let seed = alg.right_arm(a);
        for target in -2..=seed.len() as isize {
            let mut e = LeftPathEnumerator::new(alg, alg.source(a), &seed);
            let settled = e.minimal_relation_up(target).unwrap();
            for (w, occ) in settled {
                if w.position(target).is_none() {
                    continue;
                }
                let shift = w.origin as isize;
                let got = occ.map(|o| {
                    let (s, t) = o.offsets(&w);
                    (o.relation, s, t)
                });
                for big in bounded_windows(alg, w.leftmost, &w.arrows, depth, 256) {
                    let t = big.position(shift + target).unwrap();
                    let expect = minimal_relation_up(alg, &big, t).unwrap().map(|o| {
                        let (s, t) = o.offsets(&big);
                        (o.relation, s - shift, t - shift)
                    });
                    assert_eq!(got, expect, "{} seed {}", alg.name(), alg.render_path(&seed));
                }
            }
        }
    }
}

#[test]
fn minima_are_stable_under_growth() {
    for alg in fixture_algebras() {
        check_stability(&alg);
    }
    for seed in 0..100 {
        check_stability(&generated(seed));
    }
}
