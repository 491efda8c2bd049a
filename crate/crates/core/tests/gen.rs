use gorcheck_core::gen::{is_gentle, random_gentle_algebra, random_string_algebra, GenLimits};
use gorcheck_core::{parse_algebra, validate_string_quiver, BoundQuiver, StringAlgebra};
use proptest::prelude::*;

fn has_cycle(bq: &BoundQuiver) -> bool {
    let q = &bq.quiver;
    let n = q.vertex_count() as usize;
    // Vertex v reaches itself iff it lies on an oriented cycle.
    (0..n).any(|start| {
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for a in q.out_arrows(gorcheck_core::VertexId(u as u32 + 1)) {
                let t = q.arrow(a).unwrap().target.0 as usize - 1;
                if t == start {
                    return true;
                }
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        false
    })
}

fn within(bq: &BoundQuiver, lim: &GenLimits) -> bool {
    bq.quiver.vertex_count() <= lim.max_vertices
        && bq.quiver.arrows().len() <= lim.max_arrows
        && bq.relations.iter().all(|(_, r)| r.len() <= lim.max_relation_len.max(2))
}

#[test]
fn two_hundred_seeds_validate() {
    let mut cyclic = 0;
    for seed in 0..200 {
        let lim = GenLimits::new(6, 10, 4, seed);
        let mut bq = random_string_algebra(&lim).unwrap();
        let report = validate_string_quiver(&mut bq);
        assert!(report.valid() && report.violations.is_empty(), "seed {seed}: {:?}", report.violations);
        assert!(within(&bq, &lim));
        cyclic += has_cycle(&bq) as usize;
    }
    assert!(cyclic > 0, "no instance with an oriented cycle");
    assert!(cyclic < 200, "no acyclic instance");
}

#[test]
fn gentle_outputs_are_gentle() {
    for seed in 0..100 {
        let lim = GenLimits::new(6, 10, 4, seed);
        let mut bq = random_gentle_algebra(&lim).unwrap();
        assert!(bq.relations.iter().all(|(_, r)| r.len() == 2));
        assert!(is_gentle(&bq));
        assert!(validate_string_quiver(&mut bq).valid());
        assert!(within(&bq, &lim));
    }
}

#[test]
fn same_seed_same_output() {
    let lim = GenLimits::new(6, 10, 4, 1);
    let a = random_string_algebra(&lim).unwrap().to_string();
    let b = random_string_algebra(&lim).unwrap().to_string();
    assert_eq!(a, b);
    assert!(StringAlgebra::new(parse_algebra(&a).unwrap().algebra).is_ok());
    let g = random_gentle_algebra(&lim).unwrap().to_string();
    assert_eq!(g, random_gentle_algebra(&lim).unwrap().to_string());
}

#[test]
fn bad_limits_are_rejected() {
    assert!(random_string_algebra(&GenLimits::new(0, 10, 4, 0)).is_err());
    assert!(random_gentle_algebra(&GenLimits::new(6, 10, 1, 0)).is_err());
}

#[test]
fn gentle_check_rejects_long_relations() {
    let text = "algebra x\nvertices 3\narrow a 1 2\narrow b 2 3\narrow c 3 1\nrelation a b c\n";
    assert!(!is_gentle(&parse_algebra(text).unwrap().algebra));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn any_limits_give_valid_output(
        v in 1u32..9,
        a in 0usize..16,
        l in 2usize..6,
        seed in any::<u64>(),
    ) {
        let lim = GenLimits::new(v, a, l, seed);
        let mut bq = random_string_algebra(&lim).unwrap();
        prop_assert!(validate_string_quiver(&mut bq).valid());
        prop_assert!(within(&bq, &lim));
        let mut g = random_gentle_algebra(&lim).unwrap();
        prop_assert!(is_gentle(&g));
        prop_assert!(validate_string_quiver(&mut g).valid());
    }
}
