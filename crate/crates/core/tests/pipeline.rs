use std::collections::BTreeMap;

use proptest::prelude::*;
use stargenus::chords::{expand, intersection_matrix, linked, surgery, ChordKind};
use stargenus::circuit::{check_circuit, VertexClass};
use stargenus::fixtures;
use stargenus::genus::{
    analyze, enumerate_permissible_partitions, genus_of_partition, is_planar_of, min_genus_of,
    partition_ranks,
};
use stargenus::graph::{
    components, double_cover, find_source_sink_orientation, validate, HalfEdgeRef, StarGraph,
};
use stargenus::oracle::{
    all_coloring_genera, coloring_of_partition, oracle_min_genus, trace_faces, DEFAULT_CAP,
};
use stargenus::{Error, Side};

fn source_sink_corpus() -> Vec<StarGraph> {
    let mut all: Vec<StarGraph> = fixtures::exhaustive_two_vertex()
        .into_iter()
        .filter(|g| find_source_sink_orientation(g).is_ok())
        .collect();
    all.extend(fixtures::random_corpus(60, 8));
    all
}

/// Tries all 2^m edge directions and reports whether any alternates.
fn alternating_exists(g: &StarGraph) -> bool {
    let edges: Vec<_> = g.edges().collect();
    (0..1u32 << edges.len()).any(|mask| {
        let mut out: BTreeMap<HalfEdgeRef, bool> = BTreeMap::new();
        for (i, (_, [a, b])) in edges.iter().enumerate() {
            let flip = mask >> i & 1 == 1;
            out.insert(*a, !flip);
            out.insert(*b, flip);
        }
        g.vertices().all(|(v, d)| {
            (0..d).all(|s| out[&HalfEdgeRef::new(v, s)] != out[&HalfEdgeRef::new(v, (s + 1) % d)])
        })
    })
}

#[test]
fn source_sink_decision_matches_brute_force() {
    let mut checked = 0;
    for g in fixtures::exhaustive_two_vertex() {
        if g.edge_count() > 4 {
            continue;
        }
        checked += 1;
        assert_eq!(
            find_source_sink_orientation(&g).is_ok(),
            alternating_exists(&g),
            "{g:?}"
        );
    }
    assert!(checked > 100);
}

#[test]
fn double_cover_is_source_sink_and_projects_two_to_one() {
    for g in fixtures::exhaustive_two_vertex().iter().take(400) {
        let cover = double_cover(g).unwrap();
        assert!(validate(&cover)
            .iter()
            .all(|v| v.to_string().starts_with("disconnected")));
        assert_eq!(cover.vertex_count(), 2 * g.vertex_count());
        assert_eq!(cover.edge_count(), 2 * g.edge_count());
        for part in components(&cover) {
            find_source_sink_orientation(&part).unwrap();
        }
        for (e, [a, b]) in cover.edges() {
            let [pa, pb] = g.edge(e / 2).unwrap();
            let proj = |h: HalfEdgeRef| HalfEdgeRef::new(h.vertex / 2, h.slot);
            assert_eq!([proj(a), proj(b)], [pa, pb]);
        }
        let connected = components(&cover).len() == 1;
        assert_eq!(connected, find_source_sink_orientation(g).is_err());
    }
}

#[test]
fn cover_rejects_overflowing_ids() {
    let mut g = StarGraph::new();
    g.insert_vertex(u64::MAX, 4);
    g.insert_edge(
        0,
        HalfEdgeRef::new(u64::MAX, 0),
        HalfEdgeRef::new(u64::MAX, 1),
    );
    g.insert_edge(
        1,
        HalfEdgeRef::new(u64::MAX, 2),
        HalfEdgeRef::new(u64::MAX, 3),
    );
    assert_eq!(double_cover(&g), Err(Error::IdOverflow(u64::MAX)));
}

#[test]
fn structure_holds_on_corpus() {
    for g in source_sink_corpus() {
        let a = analyze(&g).unwrap();
        check_circuit(&g, &a.orientation, &a.transitions, &a.circuit).unwrap();
        let triads = a
            .classes
            .values()
            .filter(|c| matches!(c, VertexClass::Rotating6(_)))
            .count();
        let doubles = a
            .classes
            .values()
            .filter(|c| matches!(c, VertexClass::Splitting6 { .. }))
            .count();
        let fours = a.classes.len() - triads - doubles;
        assert_eq!(a.diagram.len(), fours + 2 * (triads + doubles));
        assert!(a.matrix.is_symmetric() && a.matrix.has_zero_diagonal());
        assert_eq!(a.matrix.rank() % 2, 0);
        assert_eq!(surgery(&a.diagram), 1 + a.matrix.corank());

        for pair in a.diagram.groups().values().filter(|g| g.len() == 2) {
            let (x, y) = (pair[0], pair[1]);
            let kind = a.diagram.chords()[x].kind;
            let v = a.diagram.chords()[x].vertex;
            match a.classes[&v] {
                VertexClass::Rotating6(r) => {
                    assert_eq!(kind, ChordKind::Triad);
                    assert_eq!(
                        linked(&a.diagram, x, y),
                        r == stargenus::circuit::Rotation::Crossed
                    );
                }
                VertexClass::Splitting6 { .. } => assert!(!linked(&a.diagram, x, y)),
                VertexClass::Rotating4 => panic!("4-vertex with two chords"),
            }
        }
        assert_eq!(expand(&a.star), a.diagram);
        assert_eq!(intersection_matrix(&a.diagram), a.matrix);
    }
}

#[test]
fn genus_agrees_with_oracle_on_corpus() {
    for g in source_sink_corpus() {
        let a = analyze(&g).unwrap();
        let r = min_genus_of(&a).unwrap();
        let o = oracle_min_genus(&g, DEFAULT_CAP).unwrap();
        assert_eq!(r.min_genus, o.min_genus, "{g:?}");
        assert_eq!(r.min_genus, (r.ranks.0 + r.ranks.1) / 2);
        assert!(r.min_genus <= a.diagram.len() / 2);
        assert_eq!(is_planar_of(&a).is_planar(), r.min_genus == 0);
    }
}

#[test]
fn per_partition_genus_matches_traced_faces() {
    for g in source_sink_corpus() {
        let a = analyze(&g).unwrap();
        let traced = all_coloring_genera(&g, DEFAULT_CAP).unwrap();
        let mut from_ranks = Vec::new();
        let mut count = 0;
        for p in enumerate_permissible_partitions(&a.diagram).unwrap() {
            count += 1;
            let genus = genus_of_partition(&a.matrix, &a.diagram, &p).unwrap();
            let c = coloring_of_partition(&a, &p).unwrap();
            assert_eq!(genus, trace_faces(&g, &a.orientation, &c).unwrap().genus);
            assert_eq!(genus, traced[c.mask() as usize]);
            from_ranks.push(genus);
        }
        assert_eq!(count, 1 << g.vertex_count());
        let mut t = traced.clone();
        t.sort_unstable();
        from_ranks.sort_unstable();
        assert_eq!(t, from_ranks);
    }
}

#[test]
fn planar_witness_is_a_zero_rank_partition() {
    for g in source_sink_corpus()
        .into_iter()
        .chain([fixtures::chain(30)])
    {
        let a = analyze(&g).unwrap();
        if let stargenus::Planarity::Planar { witness } = is_planar_of(&a) {
            assert_eq!(
                partition_ranks(&a.matrix, &a.diagram, &witness).unwrap(),
                (0, 0)
            );
            let lowest = a.diagram.chords()[0].vertex;
            let s = witness.side(lowest).unwrap();
            let first_kind = a.diagram.chords()[0].kind;
            assert_eq!(s == Side::White, first_kind != ChordKind::DoubleMinus);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_graphs_agree_with_oracle(seed in any::<u64>(), n4 in 0usize..5, n6 in 0usize..4) {
        prop_assume!(n4 + n6 > 0);
        let g = fixtures::random_source_sink(seed, n4, n6).unwrap();
        let a = analyze(&g).unwrap();
        prop_assert_eq!(min_genus_of(&a).unwrap().min_genus, oracle_min_genus(&g, DEFAULT_CAP).unwrap().min_genus);
    }

    #[test]
    fn cover_of_random_graph_is_source_sink(seed in any::<u64>(), n4 in 0usize..4, n6 in 0usize..3) {
        prop_assume!(n4 + n6 > 0);
        let g = fixtures::random(seed, n4, n6).unwrap();
        let cover = double_cover(&g).unwrap();
        for part in components(&cover) {
            prop_assert!(validate(&part).is_empty());
            prop_assert!(find_source_sink_orientation(&part).is_ok());
        }
    }
}
