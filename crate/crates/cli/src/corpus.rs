//! Seeded instance generators shared by the `random-graph` command and the
//! acceptance suite.

use std::collections::BTreeSet;

use leancut_core::{EdgeSet, MultiGraph, NodeId, TreeCutDecomposition, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed from `LEANCUT_SEED`, or 0 when unset or unparsable.
pub fn seed_from_env() -> u64 {
    std::env::var("LEANCUT_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` uniformly random non-loop edges on vertices `1..=n`; parallel edges
/// allowed.
pub fn random_multigraph(rng: &mut impl Rng, n: usize, m: usize) -> MultiGraph {
    assert!(n >= 2 || m == 0, "edges need two vertices");
    let pairs: Vec<(usize, usize)> = (0..m).map(|_| random_pair(rng, n)).collect();
    MultiGraph::from_pairs(1..=n, &pairs).expect("generated edges are valid")
}

/// A random spanning tree plus `m - (n - 1)` random extra edges.
pub fn random_connected_multigraph(rng: &mut impl Rng, n: usize, m: usize) -> MultiGraph {
    assert!(n >= 1 && m + 1 >= n, "a connected graph on {n} vertices needs {} edges", n - 1);
    let mut pairs: Vec<(usize, usize)> = (2..=n).map(|v| (rng.gen_range(1..v), v)).collect();
    while pairs.len() < m {
        pairs.push(random_pair(rng, n));
    }
    MultiGraph::from_pairs(1..=n, &pairs).expect("generated edges are valid")
}

fn random_pair(rng: &mut impl Rng, n: usize) -> (usize, usize) {
    let u = rng.gen_range(1..=n);
    let mut v = rng.gen_range(1..n);
    if v >= u {
        v += 1;
    }
    (u, v)
}

/// A random tree on up to `max_nodes` nodes with every vertex placed in a
/// uniformly random bag.
pub fn random_decomposition(rng: &mut impl Rng, g: &MultiGraph, max_nodes: usize) -> TreeCutDecomposition {
    let t = rng.gen_range(1..=max_nodes.max(1));
    let links = (1..t).map(|i| (NodeId(rng.gen_range(0..i)), NodeId(i))).collect();
    let mut bags = vec![VertexSet::new(); t];
    for &v in g.vertices() {
        bags[rng.gen_range(0..t)].insert(v);
    }
    TreeCutDecomposition::new(bags, links).expect("generated trees are valid")
}

/// A uniformly random `size`-subset of the edges of `g`.
pub fn random_edge_subset(rng: &mut impl Rng, g: &MultiGraph, size: usize) -> EdgeSet {
    let mut ids: Vec<usize> = g.edges().iter().map(|e| e.id).collect();
    ids.shuffle(rng);
    ids.into_iter().take(size).collect()
}

/// Every connected simple graph on `n` vertices up to isomorphism, as graphs
/// on `1..=n` with edges listed in lexicographic order.
pub fn connected_simple_graphs(n: usize) -> Vec<MultiGraph> {
    let slots: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << slots.len()) {
        let pairs: Vec<(usize, usize)> =
            slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let g = MultiGraph::from_pairs(1..=n, &pairs).expect("simple graphs are valid");
        if !g.is_connected() {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| {
                let mut relabelled: Vec<(usize, usize)> = pairs
                    .iter()
                    .map(|&(u, v)| {
                        let (x, y) = (p[u - 1], p[v - 1]);
                        (x.min(y), x.max(y))
                    })
                    .collect();
                relabelled.sort_unstable();
                relabelled
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canonical) {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorph_free_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| connected_simple_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn generators_are_seeded() {
        let a = random_connected_multigraph(&mut rng(7), 6, 10);
        let b = random_connected_multigraph(&mut rng(7), 6, 10);
        assert_eq!(a.edges(), b.edges());
        assert!(a.is_connected());
        let d = random_decomposition(&mut rng(3), &a, 5);
        d.validate(&a).unwrap();
    }
}
