//! Brute-force ground truth for tiny inputs: exact width by enumerating every
//! small tree and bag assignment, and leanness by literally quantifying over
//! all subset pairs with an exhaustive path packer.
//!
//! Nothing here shares code with the flow-based modules beyond the plain
//! graph and decomposition types.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, MultiGraph, Vertex, VertexSet};
use crate::tcd::{LinkId, NodeId, TreeCutDecomposition};

/// Largest edge count accepted by [`naive_max_linking_paths`] and
/// [`naive_min_cuts`].
pub const NAIVE_PATH_EDGE_CAP: usize = 14;
/// Largest adhesion [`naive_is_lean`] enumerates subsets of.
pub const NAIVE_ADHESION_CAP: usize = 8;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub max_vertices: usize,
    /// Defaults to two more than the number of vertices.
    pub max_tree_nodes: Option<usize>,
    pub allow_empty_bags: bool,
    pub time_budget: Option<Duration>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { max_vertices: 6, max_tree_nodes: None, allow_empty_bags: true, time_budget: None }
    }
}

impl OracleConfig {
    pub fn tree_nodes_for(&self, g: &MultiGraph) -> usize {
        self.max_tree_nodes.unwrap_or(g.num_vertices() + 2).max(1)
    }
}

// ---------------------------------------------------------------- trees

type TreeEdges = Vec<(usize, usize)>;

fn rooted_code(adj: &[Vec<usize>], x: usize, parent: usize) -> String {
    let mut kids: Vec<String> =
        adj[x].iter().filter(|&&y| y != parent).map(|&y| rooted_code(adj, y, x)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Isomorphism-invariant code: the smallest rooted code over the centers.
fn canonical_code(t: usize, edges: &TreeEdges) -> String {
    let mut adj = vec![Vec::new(); t];
    for &(x, y) in edges {
        adj[x].push(y);
        adj[y].push(x);
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..t).filter(|&x| degree[x] <= 1).collect();
    let mut left = t;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &x in &layer {
            for &y in &adj[x] {
                degree[y] -= 1;
                if degree[y] == 1 {
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| rooted_code(&adj, c, usize::MAX)).min().unwrap_or_default()
}

/// Labels nodes in preorder of a rooted code.
fn tree_from_code(code: &str) -> TreeEdges {
    let mut edges = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0;
    for ch in code.chars() {
        if ch == '(' {
            if let Some(&parent) = stack.last() {
                edges.push((parent, next));
            }
            stack.push(next);
            next += 1;
        } else {
            stack.pop();
        }
    }
    edges
}

/// One representative per isomorphism class of trees on `t` nodes, ordered
/// by canonical code.
pub fn unlabeled_trees(t: usize) -> Arc<Vec<TreeEdges>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<TreeEdges>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&t) {
        return hit.clone();
    }
    let trees: Vec<TreeEdges> = match t {
        0 => Vec::new(),
        1 => vec![Vec::new()],
        _ => {
            // every tree arises from a smaller one by attaching a leaf
            let mut codes = std::collections::BTreeSet::new();
            for smaller in unlabeled_trees(t - 1).iter() {
                for x in 0..t - 1 {
                    let mut edges = smaller.clone();
                    edges.push((x, t - 1));
                    codes.insert(canonical_code(t, &edges));
                }
            }
            codes.iter().map(|c| tree_from_code(c)).collect()
        }
    };
    let trees = Arc::new(trees);
    cache.lock().unwrap().insert(t, trees.clone());
    trees
}

/// Per-tree tables for fast width evaluation.
struct TreeTables {
    t: usize,
    edges: TreeEdges,
    /// Links on the path between two nodes, as a bitmask over link indices.
    path_mask: Vec<Vec<u64>>,
    incident: Vec<Vec<usize>>,
    leaves: Vec<usize>,
}

impl TreeTables {
    fn new(t: usize, edges: &TreeEdges) -> Self {
        let mut adj = vec![Vec::new(); t];
        let mut incident = vec![Vec::new(); t];
        for (i, &(x, y)) in edges.iter().enumerate() {
            adj[x].push((y, i));
            adj[y].push((x, i));
            incident[x].push(i);
            incident[y].push(i);
        }
        let mut path_mask = vec![vec![0u64; t]; t];
        for root in 0..t {
            let mut stack = vec![(root, usize::MAX)];
            while let Some((x, parent)) = stack.pop() {
                for &(y, l) in &adj[x] {
                    if y != parent {
                        path_mask[root][y] = path_mask[root][x] | (1 << l);
                        stack.push((y, x));
                    }
                }
            }
        }
        let leaves = if t > 1 { (0..t).filter(|&x| adj[x].len() == 1).collect() } else { Vec::new() };
        Self { t, edges: edges.clone(), path_mask, incident, leaves }
    }
}

fn budget_check(start: Instant, budget: Option<Duration>) -> Result<()> {
    match budget {
        Some(limit) if start.elapsed() > limit => {
            Err(Error::Resource(format!("tree-cut width enumeration exceeded its time budget of {limit:?}")))
        }
        _ => Ok(()),
    }
}

/// Minimum width over all decompositions whose tree has at most
/// `max_tree_nodes` nodes, with the first optimal decomposition met in
/// enumeration order (tree size, then canonical tree order, then bag
/// assignments in odometer order over the sorted vertices).
///
/// Assignments leaving a leaf with an empty bag are skipped: deleting such a
/// leaf never increases width, and the smaller tree is enumerated earlier.
pub fn brute_force_tcw(g: &MultiGraph, cfg: &OracleConfig) -> Result<(usize, TreeCutDecomposition)> {
    let n = g.num_vertices();
    if n > cfg.max_vertices {
        return Err(Error::precondition(format!(
            "oracle handles at most {} vertices, graph has {n}",
            cfg.max_vertices
        )));
    }
    if n == 0 {
        let d = TreeCutDecomposition::new(vec![VertexSet::new()], Vec::new())?;
        return Ok((0, d));
    }
    let start = Instant::now();
    let ends: Vec<(usize, usize)> =
        g.edges().iter().map(|e| (g.vertex_index(e.u).unwrap(), g.vertex_index(e.v).unwrap())).collect();
    let mut best: Option<(usize, usize, usize, Vec<usize>)> = None; // width, t, tree, assignment
    let mut counter = 0u64;
    for t in 1..=cfg.tree_nodes_for(g) {
        if t > 64 {
            return Err(Error::Resource("trees beyond 64 nodes are not enumerated".into()));
        }
        for (tree_index, edges) in unlabeled_trees(t).iter().enumerate() {
            let tables = TreeTables::new(t, edges);
            let mut assign = vec![0usize; n];
            let mut bag_size = vec![0usize; t];
            let mut adh = vec![0usize; t.saturating_sub(1)];
            loop {
                counter += 1;
                if counter & 0x3fff == 0 {
                    budget_check(start, cfg.time_budget)?;
                }
                bag_size.iter_mut().for_each(|s| *s = 0);
                for &x in &assign {
                    bag_size[x] += 1;
                }
                let skip = tables.leaves.iter().any(|&x| bag_size[x] == 0)
                    || (!cfg.allow_empty_bags && bag_size.contains(&0));
                if !skip {
                    let w = width_of(&tables, &assign, &ends, &bag_size, &mut adh);
                    if best.as_ref().is_none_or(|b| w < b.0) {
                        best = Some((w, t, tree_index, assign.clone()));
                    }
                }
                if !advance(&mut assign, t) {
                    break;
                }
            }
        }
    }
    let (w, t, tree_index, assign) =
        best.ok_or_else(|| Error::Resource("no decomposition within the tree-size bound".into()))?;
    let mut bags = vec![VertexSet::new(); t];
    for (i, &x) in assign.iter().enumerate() {
        bags[x].insert(g.vertices()[i]);
    }
    let links = unlabeled_trees(t)[tree_index].iter().map(|&(x, y)| (NodeId(x), NodeId(y))).collect();
    let d = TreeCutDecomposition::new(bags, links)?;
    debug_assert_eq!(d.width(g), w);
    Ok((w, d))
}

fn advance(assign: &mut [usize], base: usize) -> bool {
    for slot in assign.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

fn width_of(
    tables: &TreeTables,
    assign: &[usize],
    ends: &[(usize, usize)],
    bag_size: &[usize],
    adh: &mut [usize],
) -> usize {
    adh.iter_mut().for_each(|a| *a = 0);
    for &(u, v) in ends {
        let mut mask = tables.path_mask[assign[u]][assign[v]];
        while mask != 0 {
            adh[mask.trailing_zeros() as usize] += 1;
            mask &= mask - 1;
        }
    }
    let mut w = adh.iter().copied().max().unwrap_or(0);
    for x in 0..tables.t {
        let bold = tables.incident[x].iter().filter(|&&l| adh[l] > 2).count();
        w = w.max(bag_size[x] + bold);
    }
    debug_assert_eq!(tables.edges.len(), adh.len());
    w
}

// ---------------------------------------------------------------- paths

/// Every simple vertex path of `g`, as edge masks keyed by its two ends.
type SimplePaths = BTreeMap<(Vertex, Vertex), Vec<u64>>;

fn simple_paths(g: &MultiGraph) -> SimplePaths {
    let mut out = SimplePaths::new();
    for &s in g.vertices() {
        let mut visited = VertexSet::from([s]);
        collect_simple_paths(g, s, s, 0, &mut visited, &mut out);
    }
    out
}

/// Every linking path of `a` and `b`, as a bitmask over edge indices of `g`,
/// without duplicates. Paths are `e`, then a simple path between an endpoint
/// of `e` and an endpoint of `f` avoiding `a ∪ b`, then `f`; or a single
/// edge of `a ∩ b`.
fn linking_path_masks(g: &MultiGraph, a: &EdgeSet, b: &EdgeSet) -> Vec<u64> {
    linking_path_masks_in(g, &simple_paths(g), a, b)
}

fn linking_path_masks_in(g: &MultiGraph, middles: &SimplePaths, a: &EdgeSet, b: &EdgeSet) -> Vec<u64> {
    let index = |e: EdgeId| g.edge_index(e).unwrap();
    let blocked: u64 = a.union(b).map(|&e| 1u64 << index(e)).sum();
    let mut found: Vec<u64> = Vec::new();
    for &e in a {
        if b.contains(&e) {
            found.push(1 << index(e));
        }
    }
    for &e in a {
        let ea = g.edge(e).unwrap();
        for &f in b {
            if e == f {
                continue;
            }
            let fb = g.edge(f).unwrap();
            let ends = (1u64 << index(e)) | (1u64 << index(f));
            for x in [ea.u, ea.v] {
                for y in [fb.u, fb.v] {
                    if let Some(list) = middles.get(&(x, y)) {
                        found.extend(list.iter().filter(|&&m| m & blocked == 0).map(|m| m | ends));
                    }
                }
            }
        }
    }
    found.sort_unstable();
    found.dedup();
    found
}

fn collect_simple_paths(
    g: &MultiGraph,
    origin: Vertex,
    at: Vertex,
    mask: u64,
    visited: &mut VertexSet,
    out: &mut SimplePaths,
) {
    out.entry((origin, at)).or_default().push(mask);
    for e in g.incident(at) {
        let bit = 1u64 << g.edge_index(e.id).unwrap();
        let next = e.other(at);
        if visited.contains(&next) {
            continue;
        }
        visited.insert(next);
        collect_simple_paths(g, origin, next, mask | bit, visited, out);
        visited.remove(&next);
    }
}

/// Largest number of pairwise disjoint masks, stopping early at `target`.
/// Branches on the lowest set bit of `starts`: that edge either begins one of
/// the chosen paths or begins none.
fn max_packing(paths: &[u64], starts: u64, target: usize) -> usize {
    fn go(paths: &[u64], starts: u64, used: u64, count: usize, best: &mut usize, target: usize) {
        if count > *best {
            *best = count;
        }
        if *best >= target {
            return;
        }
        let open = starts & !used;
        if open == 0 || count + open.count_ones() as usize <= *best {
            return;
        }
        let anchor = open & open.wrapping_neg();
        for &p in paths {
            if p & anchor != 0 && p & used == 0 {
                go(paths, starts & !anchor, used | p, count + 1, best, target);
                if *best >= target {
                    return;
                }
            }
        }
        // no chosen path may use the anchor from here on
        go(paths, starts & !anchor, used | anchor, count, best, target);
    }
    let mut best = 0;
    go(paths, starts, 0, 0, &mut best, target);
    best
}

fn check_small(g: &MultiGraph, a: &EdgeSet, b: &EdgeSet, cap: usize) -> Result<()> {
    if g.num_edges() > cap {
        return Err(Error::Resource(format!(
            "exhaustive path search handles at most {cap} edges, graph has {}",
            g.num_edges()
        )));
    }
    g.check_edges(a)?;
    g.check_edges(b)
}

fn mask_of(g: &MultiGraph, set: &EdgeSet) -> u64 {
    set.iter().map(|&e| 1u64 << g.edge_index(e).unwrap()).sum()
}

/// Maximum number of pairwise edge-disjoint paths linking `a` and `b`, by
/// exhaustive search over explicitly listed paths.
pub fn naive_max_linking_paths(g: &MultiGraph, a: &EdgeSet, b: &EdgeSet) -> Result<usize> {
    check_small(g, a, b, NAIVE_PATH_EDGE_CAP)?;
    let paths = linking_path_masks(g, a, b);
    Ok(max_packing(&paths, mask_of(g, a), usize::MAX))
}

/// Every `(a, b)`-cut of minimum size, in increasing lexicographic order.
pub fn naive_min_cuts(g: &MultiGraph, a: &EdgeSet, b: &EdgeSet) -> Result<Vec<EdgeSet>> {
    check_small(g, a, b, NAIVE_PATH_EDGE_CAP)?;
    let paths = linking_path_masks(g, a, b);
    let m = g.num_edges();
    let ids: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
    for size in 0..=m {
        let mut cuts: Vec<EdgeSet> = combinations(m, size)
            .into_iter()
            .filter(|c| {
                let mask: u64 = c.iter().map(|&i| 1u64 << i).sum();
                paths.iter().all(|p| p & mask != 0)
            })
            .map(|c| c.into_iter().map(|i| ids[i]).collect())
            .collect();
        if !cuts.is_empty() {
            cuts.sort();
            return Ok(cuts);
        }
    }
    unreachable!("the set of all edges is always a cut")
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] != i + n - k) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------------- leanness

/// A violation of leanness found by literal enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveViolation {
    pub k: usize,
    pub distance: usize,
    pub a: LinkId,
    pub b: LinkId,
    pub set_a: Vec<EdgeId>,
    pub set_b: Vec<EdgeId>,
}

/// The smallest violation ordered by `k`, then link distance, then the link
/// pair, then the two subsets lexicographically; `None` if `d` is lean.
pub fn naive_min_violation(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    adhesion_cap: usize,
) -> Result<Option<NaiveViolation>> {
    d.validate(g)?;
    if g.num_edges() > 64 {
        return Err(Error::Resource("path masks hold at most 64 edges".into()));
    }
    let adh = d.adhesions(g);
    if let Some((l, s)) = adh.iter().find(|(_, s)| s.len() > adhesion_cap) {
        return Err(Error::Resource(format!(
            "adhesion of link {} has {} edges, exhaustive cap is {adhesion_cap}",
            l.0,
            s.len()
        )));
    }
    let mut pairs: Vec<(usize, LinkId, LinkId)> = Vec::new();
    for a in d.link_ids() {
        for b in d.link_ids() {
            pairs.push((d.link_distance(a, b), a, b));
        }
    }
    pairs.sort();
    let max_k = adh.sizes().into_iter().max().unwrap_or(0);
    let mut memo: HashMap<(u64, u64), usize> = HashMap::new();
    let middles = simple_paths(g);
    for k in 1..=max_k {
        for &(distance, a, b) in &pairs {
            let list_a: Vec<EdgeId> = adh.get(a).iter().copied().collect();
            let list_b: Vec<EdgeId> = adh.get(b).iter().copied().collect();
            if list_a.len() < k || list_b.len() < k {
                continue;
            }
            if d.link_path(a, b).iter().any(|&c| adh.size(c) < k) {
                continue;
            }
            for ca in combinations(list_a.len(), k) {
                let set_a: EdgeSet = ca.iter().map(|&i| list_a[i]).collect();
                for cb in combinations(list_b.len(), k) {
                    let set_b: EdgeSet = cb.iter().map(|&i| list_b[i]).collect();
                    let key = (mask_of(g, &set_a), mask_of(g, &set_b));
                    let packed = *memo.entry(key).or_insert_with(|| {
                        let paths = linking_path_masks_in(g, &middles, &set_a, &set_b);
                        max_packing(&paths, key.0, k)
                    });
                    if packed < k {
                        return Ok(Some(NaiveViolation {
                            k,
                            distance,
                            a,
                            b,
                            set_a: set_a.into_iter().collect(),
                            set_b: set_b.into_iter().collect(),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Leanness by literal quantification over `k`, link pairs and subset pairs,
/// refusing adhesions above [`NAIVE_ADHESION_CAP`].
pub fn naive_is_lean(g: &MultiGraph, d: &TreeCutDecomposition) -> Result<bool> {
    naive_is_lean_with_cap(g, d, NAIVE_ADHESION_CAP)
}

pub fn naive_is_lean_with_cap(g: &MultiGraph, d: &TreeCutDecomposition, cap: usize) -> Result<bool> {
    Ok(naive_min_violation(g, d, cap)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(xs: &[usize]) -> EdgeSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=9).map(|t| unlabeled_trees(t).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47]);
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn tcw_small_examples() {
        let cfg = OracleConfig::default();
        let single = MultiGraph::from_pairs([1], &[]).unwrap();
        assert_eq!(brute_force_tcw(&single, &cfg).unwrap().0, 1);
        let (w, d) = brute_force_tcw(&fixtures::theta3(), &cfg).unwrap();
        assert_eq!(w, 2);
        assert_eq!(d.num_nodes(), 1);
        let (w, d) = brute_force_tcw(&fixtures::c4(), &cfg).unwrap();
        assert_eq!(d.width(&fixtures::c4()), w);
        d.validate(&fixtures::c4()).unwrap();
    }

    #[test]
    fn tcw_respects_vertex_cap() {
        let cfg = OracleConfig { max_vertices: 3, ..Default::default() };
        assert!(matches!(brute_force_tcw(&fixtures::k4(), &cfg), Err(Error::Precondition(_))));
    }

    #[test]
    fn tcw_time_budget() {
        let g =
            MultiGraph::from_pairs(1..=6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (1, 4)]).unwrap();
        let cfg = OracleConfig { time_budget: Some(Duration::ZERO), ..Default::default() };
        assert!(matches!(brute_force_tcw(&g, &cfg), Err(Error::Resource(_))));
    }

    #[test]
    fn naive_paths_examples() {
        let g = fixtures::c4();
        assert_eq!(naive_max_linking_paths(&g, &set(&[0, 3]), &set(&[1, 2])).unwrap(), 2);
        assert_eq!(naive_max_linking_paths(&g, &set(&[2]), &set(&[2])).unwrap(), 1);
        let two = MultiGraph::from_pairs(1..=4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(naive_max_linking_paths(&two, &set(&[0]), &set(&[1])).unwrap(), 0);
        let i4 = fixtures::interleave4();
        assert_eq!(naive_max_linking_paths(&i4, &set(&[0, 1, 2]), &set(&[3, 4, 5])).unwrap(), 1);
        assert_eq!(naive_min_cuts(&i4, &set(&[0, 1, 2]), &set(&[3, 4, 5])).unwrap(), vec![set(&[6])]);
    }

    #[test]
    fn naive_leanness_examples() {
        let c4 = fixtures::c4();
        assert!(naive_is_lean(&c4, &TreeCutDecomposition::trivial(&c4)).unwrap());
        assert!(naive_is_lean(&c4, &fixtures::c4_two_bags()).unwrap());
        let bb = fixtures::barbell3ec();
        assert!(matches!(naive_is_lean(&bb, &fixtures::interleaved_path()), Err(Error::Resource(_))));
        let v = naive_min_violation(&bb, &fixtures::interleaved_path(), 10).unwrap().unwrap();
        assert_eq!(v.k, 4);
        let v =
            naive_min_violation(&fixtures::interleave4(), &fixtures::interleaved_path(), 8).unwrap().unwrap();
        assert_eq!(v.k, 2);
    }
}
