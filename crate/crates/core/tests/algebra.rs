mod common;

use common::{fixture_algebras, generated};
use gorcheck_core::{
    classify_vertex, classify_vertex_with, fixtures, pair_at_vertex, parse_algebra,
    validate_string_quiver, vertex_profile, Axiom, BoundQuiver, Quiver, RelationSet,
    StrictnessReading, StringAlgebra, VertexClass, VertexId,
};
use proptest::prelude::*;

fn parse(text: &str) -> BoundQuiver {
    parse_algebra(text).unwrap().algebra
}

fn report_for(text: &str) -> gorcheck_core::ValidationReport {
    validate_string_quiver(&mut parse(text))
}

#[test]
fn c8_counts() {
    let alg = fixtures::load(fixtures::C8);
    assert_eq!(alg.vertex_count(), 10);
    assert_eq!(alg.arrow_count(), 11);
    assert_eq!(alg.relations().count(), 8);
}

#[test]
fn empty_vertex_set_is_rejected() {
    let errs = parse_algebra("algebra e\nvertices 0\n").unwrap_err();
    assert_eq!(errs.len(), 1);
    assert_eq!(errs[0].line, 2);
}

#[test]
fn length_one_relation_is_rejected_with_line() {
    let errs = parse_algebra("algebra x\nvertices 2\narrow a 1 2\nrelation a\n").unwrap_err();
    assert_eq!(errs[0].line, 4);
}

#[test]
fn parse_errors_are_collected() {
    let text = "algebra x\nvertices 2\narrow a 1 3\narrow b 1 2\narrow b 2 1\nrelation q b\nfoo\n";
    let lines: Vec<usize> = parse_algebra(text).unwrap_err().iter().map(|e| e.line).collect();
    assert_eq!(lines, vec![3, 5, 6, 7]);
}

#[test]
fn non_composable_relation_is_rejected() {
    let errs = parse_algebra("algebra x\nvertices 3\narrow a 1 2\narrow b 3 1\nrelation a b\n").unwrap_err();
    assert_eq!(errs[0].line, 5);
}

#[test]
fn redundant_relations_are_dropped_and_reported() {
    let text = "algebra x\nvertices 1\narrow a 1 1\nrelation a a a\nrelation a a\nrelation a a\n";
    let parsed = parse_algebra(text).unwrap();
    assert_eq!(parsed.algebra.relations.len(), 1);
    assert_eq!(parsed.dropped, vec!["a a a".to_string(), "a a".to_string()]);
}

#[test]
fn fixtures_validate_cleanly() {
    for (name, text) in fixtures::ALL {
        let r = report_for(text);
        assert!(r.valid(), "{name}: {:?}", r.violations);
        assert!(r.violations.is_empty());
    }
}

#[test]
fn degree_violation_alone() {
    // Two extra sources with arrows into vertex 2, each killed on both
    // continuations.
    let text = format!(
        "{}arrow p 11 2\narrow q 12 2\nrelation p b\nrelation p x\nrelation q b\nrelation q x\n",
        fixtures::C8.replace("vertices 10", "vertices 12")
    );
    let r = report_for(&text);
    assert!(r.has(Axiom::Degree));
    assert!(r.violations.iter().all(|v| v.axiom == Axiom::Degree), "{:?}", r.violations);
}

#[test]
fn right_continuation_violation_alone() {
    let text = fixtures::C8.replace("relation a x", "");
    let r = report_for(&text);
    assert!(!r.valid());
    assert!(r.violations.iter().all(|v| v.axiom == Axiom::RightContinuation), "{:?}", r.violations);
}

#[test]
fn left_continuation_violation_alone() {
    let r = report_for("algebra y\nvertices 4\narrow a 1 3\narrow b 2 3\narrow c 3 4\n");
    assert!(!r.valid());
    assert!(r.violations.iter().all(|v| v.axiom == Axiom::LeftContinuation), "{:?}", r.violations);
}

#[test]
fn relation_length_violation_alone() {
    let mut q = Quiver::new(2);
    let a = q.add_arrow("a", VertexId(1), VertexId(2)).unwrap();
    let mut bq = BoundQuiver::new("short", q, RelationSet::new(vec![vec![a]]));
    let r = validate_string_quiver(&mut bq);
    assert!(!r.valid());
    assert!(r.violations.iter().all(|v| v.axiom == Axiom::RelationLength));
    assert!(!bq.validated);
}

#[test]
fn admissibility_violation_alone() {
    let r = report_for("algebra loop\nvertices 1\narrow a 1 1\n");
    assert_eq!(r.violations.len(), 1);
    assert_eq!(r.violations[0].axiom, Axiom::Admissible);
}

#[test]
fn disconnected_quiver_warns_but_validates() {
    let r = report_for("algebra two\nvertices 2\n");
    assert!(r.valid());
    assert_eq!(r.warnings.len(), 1);
}

#[test]
fn report_serializes_axiom_tags() {
    let r = report_for("algebra loop\nvertices 1\narrow a 1 1\n");
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["valid"], false);
    assert_eq!(json["violations"][0]["axiom"], "admissible");
}

#[test]
fn display_round_trips() {
    for (name, text) in fixtures::ALL {
        let bq = parse(text);
        assert_eq!(parse(&bq.to_string()), bq, "{name}");
    }
    for seed in 0..50 {
        let bq = generated(seed).bound_quiver().clone();
        let mut back = parse(&bq.to_string());
        back.validated = bq.validated;
        assert_eq!(back, bq, "seed {seed}");
    }
}

#[test]
fn minimalize_is_idempotent() {
    for alg in fixture_algebras() {
        let mut rels = alg.bound_quiver().relations.clone();
        assert!(rels.minimalize().is_empty(), "{}", alg.name());
    }
}

#[test]
fn vertex_profiles() {
    let c8 = fixtures::load(fixtures::C8);
    assert_eq!(vertex_profile(&c8, VertexId(2)).unwrap().type_tag.to_string(), "(1in,2out)");
    let dt = fixtures::load(fixtures::DT);
    assert_eq!(vertex_profile(&dt, VertexId(5)).unwrap().type_tag.to_string(), "(2in,2out)");
    let l2 = fixtures::load(fixtures::L2);
    assert_eq!(vertex_profile(&l2, VertexId(1)).unwrap().type_tag.to_string(), "(1in,1out)");
    assert!(vertex_profile(&l2, VertexId(2)).is_err());
}

#[test]
fn vertex_classes() {
    let c8 = fixtures::load(fixtures::C8);
    for v in c8.vertices() {
        let expected = if v == VertexId(2) || v == VertexId(6) {
            VertexClass::StrictlyRelational
        } else {
            VertexClass::NonRelational
        };
        assert_eq!(classify_vertex(&c8, v).unwrap(), expected, "C8 vertex {v}");
    }
    let a2 = fixtures::load(fixtures::A2);
    assert_eq!(classify_vertex(&a2, VertexId(1)).unwrap(), VertexClass::NonRelational);
    let dt = fixtures::load(fixtures::DT);
    assert_eq!(classify_vertex(&dt, VertexId(5)).unwrap(), VertexClass::StrictlyRelational);
    assert_eq!(classify_vertex(&dt, VertexId(3)).unwrap(), VertexClass::GentlyRelational);
}

#[test]
fn pairs_form_a_matching_containing_nonzero_compositions() {
    for alg in fixture_algebras().into_iter().chain((0..50).map(generated)) {
        for v in alg.vertices() {
            let pairs = pair_at_vertex(&alg, v);
            for (i, &(a, b)) in pairs.iter().enumerate() {
                assert_eq!((alg.target(a), alg.source(b)), (v, v));
                assert!(pairs[..i].iter().all(|&(c, d)| c != a && d != b));
            }
            for &a in alg.in_arrows(v) {
                for &b in alg.out_arrows(v) {
                    if alg.is_nonzero(&[a, b]) {
                        assert!(pairs.contains(&(a, b)), "{} vertex {v}", alg.name());
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_is_total(seed in 0u64..100_000) {
        let alg = generated(seed);
        for v in alg.vertices() {
            let class = classify_vertex(&alg, v).unwrap();
            let alt = classify_vertex_with(&alg, v, StrictnessReading::CrossingCompositions).unwrap();
            if alg.in_arrows(v).is_empty() || alg.out_arrows(v).is_empty() {
                prop_assert_eq!(class, VertexClass::NonRelational);
            }
            // The two readings can only disagree about strictness.
            let relational = |c| c != VertexClass::NonRelational;
            prop_assert_eq!(relational(class), relational(alt));
        }
    }

    #[test]
    fn validated_algebras_wrap(seed in 0u64..100_000) {
        let alg = generated(seed);
        prop_assert!(StringAlgebra::new(alg.bound_quiver().clone()).is_ok());
    }
}
