//! Small named graphs and decompositions used throughout the tests, the
//! acceptance suite and the CLI examples. Vertices are numbered from 1 as in
//! the graph file format; edge ids follow listing order.

use crate::graph::{MultiGraph, VertexSet};
use crate::tcd::{NodeId, TreeCutDecomposition};

fn graph(n: usize, pairs: &[(usize, usize)]) -> MultiGraph {
    MultiGraph::from_pairs(1..=n, pairs).expect("fixture graphs are valid")
}

fn repeated(pairs: &[((usize, usize), usize)]) -> Vec<(usize, usize)> {
    pairs.iter().flat_map(|&(p, times)| std::iter::repeat_n(p, times)).collect()
}

/// Cycle 1-2-3-4 with edges e12, e23, e34, e41 (ids 0..4).
pub fn c4() -> MultiGraph {
    graph(4, &[(1, 2), (2, 3), (3, 4), (4, 1)])
}

pub fn k4() -> MultiGraph {
    graph(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
}

/// Two vertices joined by three parallel edges.
pub fn theta3() -> MultiGraph {
    graph(2, &[(1, 2), (1, 2), (1, 2)])
}

/// a1 = 1, a2 = 2, b1 = 3, b2 = 4: a1a2 x3 (ids 0..3), b1b2 x3 (ids 3..6),
/// and the bridge a1b1 (id 6).
pub fn interleave4() -> MultiGraph {
    graph(4, &repeated(&[((1, 2), 3), ((3, 4), 3), ((1, 3), 1)]))
}

/// a1 = 1, a2 = 2, b1 = 3, b2 = 4: a1a2 x5 (ids 0..5), b1b2 x5 (ids 5..10),
/// a1b1 x3 (ids 10..13).
pub fn barbell3ec() -> MultiGraph {
    graph(4, &repeated(&[((1, 2), 5), ((3, 4), 5), ((1, 3), 3)]))
}

fn path(bags: &[&[usize]]) -> TreeCutDecomposition {
    let bags: Vec<VertexSet> = bags.iter().map(|b| b.iter().copied().collect()).collect();
    let links = (1..bags.len()).map(|i| (NodeId(i - 1), NodeId(i))).collect();
    TreeCutDecomposition::new(bags, links).expect("fixture trees are valid")
}

/// Path n0 = {a1}, n1 = {b1}, n2 = {a2}, n3 = {b2}; fits both
/// [`interleave4`] and [`barbell3ec`].
pub fn interleaved_path() -> TreeCutDecomposition {
    path(&[&[1], &[3], &[2], &[4]])
}

/// Bags {1,2} | {3,4} on a single link.
pub fn c4_two_bags() -> TreeCutDecomposition {
    path(&[&[1, 2], &[3, 4]])
}

/// Every named fixture graph.
pub fn named_graphs() -> Vec<(&'static str, MultiGraph)> {
    vec![
        ("c4", c4()),
        ("k4", k4()),
        ("theta3", theta3()),
        ("interleave4", interleave4()),
        ("barbell3ec", barbell3ec()),
    ]
}
