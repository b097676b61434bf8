use std::cmp::Ordering;

use leancut_core::improve::{leanify_observed, segregation, LeanifyConfig, Step};
use leancut_core::leanness::{find_minimal_certificate, is_lean, violates};
use leancut_core::linkage::{is_cut, is_linking_path, max_linking_paths, min_cut_lex, PathDistances};
use leancut_core::oracle::{naive_is_lean, naive_max_linking_paths, naive_min_cuts, naive_min_violation};
use leancut_core::{
    EdgeSet, Error, LeannessConfig, LinkId, MultiGraph, NodeId, TreeCutDecomposition, VertexSet,
};
use proptest::prelude::*;

fn graph(n: usize, pairs: &[(usize, usize)]) -> MultiGraph {
    let pairs: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(u, v)| {
            let (u, v) = (u % n + 1, v % n + 1);
            if u == v {
                (u, u % n + 1)
            } else {
                (u, v)
            }
        })
        .collect();
    MultiGraph::from_pairs(1..=n, &pairs).unwrap()
}

fn decomposition(g: &MultiGraph, parents: &[usize], assign: &[usize]) -> TreeCutDecomposition {
    let t = parents.len() + 1;
    let links = parents.iter().enumerate().map(|(i, &p)| (NodeId(p % (i + 1)), NodeId(i + 1))).collect();
    let mut bags = vec![VertexSet::new(); t];
    for (i, &v) in g.vertices().iter().enumerate() {
        bags[assign[i % assign.len()] % t].insert(v);
    }
    TreeCutDecomposition::new(bags, links).unwrap()
}

fn subset(g: &MultiGraph, picks: &[usize]) -> EdgeSet {
    picks.iter().map(|&i| g.edges()[i % g.num_edges()].id).collect()
}

fn arb_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = MultiGraph> {
    (2..=max_n, prop::collection::vec((0usize..16, 0usize..16), 1..=max_m))
        .prop_map(|(n, pairs)| graph(n, &pairs))
}

fn arb_instance(
    max_n: usize,
    max_m: usize,
    max_t: usize,
) -> impl Strategy<Value = (MultiGraph, TreeCutDecomposition)> {
    (
        arb_graph(max_n, max_m),
        prop::collection::vec(0usize..16, 0..max_t),
        prop::collection::vec(0usize..16, 1..8),
    )
        .prop_map(|(g, parents, assign)| {
            let d = decomposition(&g, &parents, &assign);
            (g, d)
        })
}

/// Connected graphs made by closing a random spanning tree with extra edges.
fn arb_connected(max_n: usize, extra: usize) -> impl Strategy<Value = MultiGraph> {
    (2..=max_n)
        .prop_flat_map(move |n| {
            (
                Just(n),
                prop::collection::vec(0usize..16, n - 1),
                prop::collection::vec((0usize..16, 0usize..16), 0..=extra),
            )
        })
        .prop_map(|(n, tree, more)| {
            let mut pairs: Vec<(usize, usize)> =
                tree.iter().enumerate().map(|(i, &p)| (p % (i + 1), i + 1)).collect();
            pairs.extend(more);
            graph(n, &pairs)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn linkage_duality(g in arb_graph(6, 12), a in prop::collection::vec(0usize..32, 1..5), b in prop::collection::vec(0usize..32, 1..5)) {
        let (a, b) = (subset(&g, &a), subset(&g, &b));
        let r = max_linking_paths(&g, &a, &b).unwrap();
        prop_assert_eq!(r.count, r.cut.len());
        prop_assert_eq!(r.count, naive_max_linking_paths(&g, &a, &b).unwrap());
        prop_assert!(r.count <= a.len().min(b.len()));
        let mut used = EdgeSet::new();
        for p in &r.paths {
            prop_assert!(is_linking_path(&g, &a, &b, p), "bad path {:?}", p);
            for e in p {
                prop_assert!(used.insert(*e), "edge {} reused", e);
            }
        }
        prop_assert!(is_cut(&g, &a, &b, &r.cut).unwrap());
    }

    #[test]
    fn segregation_is_always_valid(
        (g, d) in arb_instance(6, 10, 6),
        la in 0usize..16,
        lb in 0usize..16,
        side in prop::collection::vec(any::<bool>(), 6),
    ) {
        prop_assume!(d.num_links() > 0);
        let (a, b) = (LinkId(la % d.num_links()), LinkId(lb % d.num_links()));
        let v1: VertexSet = g.vertices().iter().copied().filter(|&v| side[v % side.len()]).collect();
        let v2: VertexSet = g.vertices().iter().copied().filter(|v| !v1.contains(v)).collect();
        let (s, map) = segregation(&g, &d, a, b, &v1, &v2).unwrap();
        s.validate(&g).unwrap();
        prop_assert_eq!(s.num_nodes(), 2 * d.num_nodes() + 2);
        prop_assert_eq!(s.num_links(), 2 * d.num_links() + 3);
        prop_assert_eq!(s.adhesion(&g, map.joining).unwrap(), g.edges_between(&v1, &v2).unwrap());
        for l in s.link_ids() {
            let original = map.original_of(l, a, b);
            prop_assert_eq!(original.is_none(), l == map.joining);
        }
    }

    #[test]
    fn pruning_preserves_width_and_fatness((g, d) in arb_instance(6, 10, 8)) {
        let p = d.prune_empty_branches();
        p.validate(&g).unwrap();
        prop_assert_eq!(p.width(&g), d.width(&g));
        prop_assert_eq!(p.fatness(&g), d.fatness(&g));
    }

    #[test]
    fn fatness_order_is_total_and_antisymmetric((g, d) in arb_instance(5, 8, 5), (_, e) in arb_instance(5, 8, 5)) {
        prop_assume!(e.validate(&g).is_ok());
        let (f, h) = (d.fatness(&g), e.fatness(&g));
        prop_assert_eq!(f.compare(&h).unwrap(), h.compare(&f).unwrap().reverse());
        prop_assert_eq!(f.compare(&h).unwrap() == Ordering::Equal, f == h);
    }

    #[test]
    fn simplified_width_on_three_edge_connected((g, d) in arb_instance(5, 12, 6)) {
        prop_assume!(g.is_k_edge_connected(3));
        // links with an empty side count toward tree degree but carry nothing
        let d = d.prune_empty_branches();
        prop_assert_eq!(d.width_3ec(&g).unwrap(), d.width(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn leanness_matches_enumeration((g, d) in arb_instance(5, 9, 5)) {
        match naive_is_lean(&g, &d) {
            Ok(expected) => prop_assert_eq!(is_lean(&g, &d, LeannessConfig::default()).unwrap(), expected),
            Err(Error::Resource(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn certificates_are_minimal_and_sound((g, d) in arb_instance(5, 9, 5)) {
        let Ok(naive) = naive_min_violation(&g, &d, 8) else { return Ok(()) };
        let cert = find_minimal_certificate(&g, &d, LeannessConfig::default()).unwrap();
        prop_assert_eq!(naive.is_some(), cert.is_some());
        if let (Some(v), Some(c)) = (naive, cert) {
            prop_assert_eq!((v.k, v.distance, v.a, v.b), (c.k, d.link_distance(c.a, c.b), c.a, c.b));
            prop_assert_eq!(&v.set_a, &c.set_a.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(&v.set_b, &c.set_b.iter().copied().collect::<Vec<_>>());
            prop_assert!(violates(&g, &d, c.k, c.a, c.b, &c.set_a, &c.set_b).unwrap());
            prop_assert!(c.cut.len() < c.k);
            prop_assert!(is_cut(&g, &c.set_a, &c.set_b, &c.cut).unwrap());
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn lexicographic_cut_is_closest_minimum_cut((g, d) in arb_instance(5, 12, 5), shift in 0usize..16) {
        for a in d.link_ids() {
            for b in d.link_ids() {
                let (adh_a, adh_b) = (d.adhesion(&g, a).unwrap(), d.adhesion(&g, b).unwrap());
                let (list_a, list_b): (Vec<usize>, Vec<usize>) =
                    (adh_a.iter().copied().collect(), adh_b.iter().copied().collect());
                for j in 1..=list_a.len().min(list_b.len()) {
                    for rot in 0..list_a.len() {
                        let set_a: EdgeSet = (0..j).map(|i| list_a[(i + rot) % list_a.len()]).collect();
                        let set_b: EdgeSet = (0..j).map(|i| list_b[(i + rot + shift) % list_b.len()]).collect();
                        if max_linking_paths(&g, &set_a, &set_b).unwrap().count >= j {
                            continue;
                        }
                        let f = min_cut_lex(&g, &d, a, b, &set_a, &set_b).unwrap();
                        let dist = PathDistances::new(&g, &d, a, b).unwrap();
                        let all = naive_min_cuts(&g, &set_a, &set_b).unwrap();
                        prop_assert!(all.contains(&f), "{:?} is not a minimum cut", f);
                        let best = all.iter().map(|c| dist.total(c)).min().unwrap();
                        prop_assert_eq!(dist.total(&f), best);
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn leanify_keeps_width_and_is_lean(g in arb_connected(5, 7), parents in prop::collection::vec(0usize..16, 0..5), assign in prop::collection::vec(0usize..16, 1..6)) {
        let d = decomposition(&g, &parents, &assign);
        let mut decreasing = true;
        let mut observe = |h: &MultiGraph, before: &TreeCutDecomposition, step: &Step| {
            let after = step.decomposition.fatness(h);
            decreasing &= after.compare(&before.fatness(h)).unwrap() == Ordering::Less;
        };
        let out = leanify_observed(&g, Some(&d), LeanifyConfig::default(), &mut observe).unwrap();
        prop_assert!(decreasing);
        let r = &out.decomposition;
        r.validate(&g).unwrap();
        prop_assert!(r.width(&g) <= d.width(&g));
        match naive_is_lean(&g, r) {
            Ok(lean) => prop_assert!(lean),
            Err(Error::Resource(_)) => prop_assert!(is_lean(&g, r, LeannessConfig::default()).unwrap()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}
