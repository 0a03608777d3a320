use origami_spring::geometry::{FacetFamily, SpringSpec, Variant};
use origami_spring::pattern::*;
use proptest::prelude::*;

fn specs() -> impl Strategy<Value = SpringSpec> {
    (
        prop::sample::select(FacetFamily::ALL.to_vec()),
        prop::sample::select(Variant::ALL.to_vec()),
        1.0f64..40.0,
        1u32..10,
    )
        .prop_map(|(f, v, r0, n)| SpringSpec::new(f, v, r0, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_patterns_validate(spec in specs(), left in any::<bool>()) {
        let chirality = if left { Chirality::Left } else { Chirality::Right };
        let p = build_spring_pattern(&spec, chirality).unwrap();
        prop_assert_eq!(validate_pattern(&p), vec![]);
        let n = spec.cells() as f64;
        let npr = spec.family().ribbon_count() as f64;
        let expected = 2.0 * spec.side_length() * n * npr;
        prop_assert!((p.length_of(EdgeKind::Primary) - expected).abs() <= 1e-9 * expected);
        prop_assert_eq!(p.ribbon_count(), spec.family().ribbon_count());
        let secondaries = p.count_kind(EdgeKind::Secondary);
        match spec.variant() {
            Variant::Ios => prop_assert_eq!(secondaries, 0),
            Variant::Rios => prop_assert!(secondaries > 0),
        }
    }

    #[test]
    fn chirality_mirrors_geometry(spec in specs()) {
        let r = build_spring_pattern(&spec, Chirality::Right).unwrap();
        let l = build_spring_pattern(&spec, Chirality::Left).unwrap();
        prop_assert_eq!(r.edges.len(), l.edges.len());
        prop_assert!((r.length_of(EdgeKind::Secondary) - l.length_of(EdgeKind::Secondary)).abs() < 1e-9);
    }
}

#[test]
fn broken_alternation_is_reported() {
    let spec = SpringSpec::new(FacetFamily::Square4, Variant::Ios, 10.0, 2).unwrap();
    let mut p = build_spring_pattern(&spec, Chirality::Right).unwrap();
    let i = p.edges.iter().position(|e| e.kind == EdgeKind::Primary).unwrap();
    p.edges[i].assignment = match p.edges[i].assignment {
        Assignment::Mountain => Assignment::Valley,
        _ => Assignment::Mountain,
    };
    assert!(validate_pattern(&p)
        .iter()
        .any(|v| matches!(v, Violation::AlternationBreak { .. })));
}

#[test]
fn dangling_edge_is_reported() {
    let spec = SpringSpec::new(FacetFamily::Hexagon6, Variant::Rios, 10.0, 1).unwrap();
    let mut p = build_spring_pattern(&spec, Chirality::Right).unwrap();
    p.edges[0].vertices[1] = p.vertices.len();
    assert!(validate_pattern(&p).contains(&Violation::BadEdge { edge: 0 }));
}
