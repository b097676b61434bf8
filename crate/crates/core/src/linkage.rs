//! Edge-disjoint paths between two edge sets and the matching minimum cuts.
//!
//! A path *links* `A` and `B` when it starts with an edge of `A`, ends with an
//! edge of `B`, and uses no other edge of `A ∪ B`; an edge of `A ∩ B` alone
//! is such a path. Packing and cutting are solved as a flow problem on the
//! graph obtained by subdividing every edge of `A ∪ B`: each subdivision
//! vertex is a terminal of capacity one, so two paths never share an end edge.
//! Consequently the middle of a linking path is a simple path between an
//! endpoint of the first edge and an endpoint of the last one, while the far
//! endpoints of the two end edges are unconstrained.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, EdgeSet, MultiGraph, Vertex, VertexSet};
use crate::tcd::{node_distances, LinkId, NodeId, TreeCutDecomposition};

/// A maximum packing of linking paths with a minimum cut of the same size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkageResult {
    pub count: usize,
    pub paths: Vec<Vec<EdgeId>>,
    pub cut: EdgeSet,
}

/// `g` with every edge of `A ∪ B` subdivided once.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub graph: MultiGraph,
    pub va: VertexSet,
    pub vb: VertexSet,
    /// Half-edge id → subdivided original edge.
    pub back_map: BTreeMap<EdgeId, EdgeId>,
    /// Original edge → its subdivision vertex.
    pub subdivision_vertex: BTreeMap<EdgeId, Vertex>,
}

pub fn subdivide_for_menger(g: &MultiGraph, a: &EdgeSet, b: &EdgeSet) -> Result<Subdivision> {
    g.check_edges(a)?;
    g.check_edges(b)?;
    let targets: EdgeSet = a.union(b).copied().collect();
    let mut next_vertex = g.vertices().last().map_or(0, |v| v + 1);
    let mut next_edge = g.max_edge_id().map_or(0, |e| e + 1);
    let mut edges = Vec::with_capacity(g.num_edges() + targets.len());
    let mut back_map = BTreeMap::new();
    let mut subdivision_vertex = BTreeMap::new();
    let mut vertices: Vec<Vertex> = g.vertices().to_vec();
    for e in g.edges() {
        if !targets.contains(&e.id) {
            edges.push(*e);
            continue;
        }
        let mid = next_vertex;
        next_vertex += 1;
        vertices.push(mid);
        for end in [e.u, e.v] {
            edges.push(Edge { id: next_edge, u: mid, v: end });
            back_map.insert(next_edge, e.id);
            next_edge += 1;
        }
        subdivision_vertex.insert(e.id, mid);
    }
    let va = a.iter().map(|e| subdivision_vertex[e]).collect();
    let vb = b.iter().map(|e| subdivision_vertex[e]).collect();
    Ok(Subdivision { graph: MultiGraph::new(vertices, edges)?, va, vb, back_map, subdivision_vertex })
}

#[derive(Clone, Copy, Debug)]
struct Arc {
    to: usize,
    cap: i64,
    /// Capacity before any flow was pushed.
    initial: i64,
    rev: usize,
    /// Original edge this arc stands for, if cutting it means removing one.
    edge: Option<EdgeId>,
}

/// Dinic max-flow on integer capacities. Undirected edges are two arcs that
/// serve as each other's residual.
struct FlowNetwork {
    arcs: Vec<Vec<Arc>>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        Self { arcs: vec![Vec::new(); n] }
    }

    fn add(&mut self, from: usize, to: usize, cap: i64, back_cap: i64, edge: Option<EdgeId>) {
        let rf = self.arcs[to].len();
        let rt = self.arcs[from].len();
        self.arcs[from].push(Arc { to, cap, initial: cap, rev: rf, edge });
        self.arcs[to].push(Arc { to: from, cap: back_cap, initial: back_cap, rev: rt, edge });
    }

    fn directed(&mut self, from: usize, to: usize, cap: i64, edge: Option<EdgeId>) {
        self.add(from, to, cap, 0, edge);
    }

    fn undirected(&mut self, x: usize, y: usize, cap: i64, edge: EdgeId) {
        self.add(x, y, cap, cap, Some(edge));
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.arcs.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for arc in &self.arcs[x] {
                if arc.cap > 0 && level[arc.to] == usize::MAX {
                    level[arc.to] = level[x] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        level
    }

    fn augment(&mut self, x: usize, t: usize, limit: i64, level: &[usize], next: &mut [usize]) -> i64 {
        if x == t {
            return limit;
        }
        while next[x] < self.arcs[x].len() {
            let Arc { to, cap, rev, .. } = self.arcs[x][next[x]];
            if cap > 0 && level[to] == level[x] + 1 {
                let pushed = self.augment(to, t, limit.min(cap), level, next);
                if pushed > 0 {
                    self.arcs[x][next[x]].cap -= pushed;
                    self.arcs[to][rev].cap += pushed;
                    return pushed;
                }
            }
            next[x] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return total;
            }
            let mut next = vec![0; self.arcs.len()];
            loop {
                let pushed = self.augment(s, t, i64::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    /// Original edges on arcs leaving the residual-reachable set of `s`.
    fn min_cut_edges(&self, s: usize) -> EdgeSet {
        let level = self.levels(s);
        let mut cut = EdgeSet::new();
        for (x, arcs) in self.arcs.iter().enumerate() {
            if level[x] == usize::MAX {
                continue;
            }
            for arc in arcs {
                if arc.initial > 0 && level[arc.to] == usize::MAX {
                    cut.insert(arc.edge.expect("finite arcs carry their edge"));
                }
            }
        }
        cut
    }

    /// Decomposes a unit flow into `s`-`t` paths, always leaving a vertex by
    /// the lowest-id edge that still carries flow. Returns the edge ids met
    /// along each path, collapsing repeats of the same id.
    fn unit_paths(&self, s: usize, t: usize) -> Vec<Vec<EdgeId>> {
        // remaining flow on each arc (x, i)
        let mut flow: Vec<Vec<i64>> =
            self.arcs.iter().map(|arcs| arcs.iter().map(|a| (a.initial - a.cap).max(0)).collect()).collect();
        let mut paths = Vec::new();
        loop {
            let mut walk: Vec<(usize, usize)> = Vec::new();
            let mut on_walk = vec![usize::MAX; self.arcs.len()];
            let mut x = s;
            on_walk[s] = 0;
            while x != t {
                let Some(i) = (0..self.arcs[x].len())
                    .filter(|&i| flow[x][i] > 0)
                    .min_by_key(|&i| (self.arcs[x][i].edge, self.arcs[x][i].to))
                else {
                    break;
                };
                flow[x][i] -= 1;
                let to = self.arcs[x][i].to;
                if on_walk[to] != usize::MAX {
                    // drop the cycle
                    let keep = on_walk[to];
                    for &(y, _) in &walk[keep..] {
                        on_walk[y] = usize::MAX;
                    }
                    walk.truncate(keep);
                    on_walk[to] = walk.len();
                    x = to;
                    continue;
                }
                walk.push((x, i));
                on_walk[to] = walk.len();
                x = to;
            }
            if walk.is_empty() || x != t {
                return paths;
            }
            let mut path: Vec<EdgeId> = Vec::new();
            for &(y, i) in &walk {
                if let Some(e) = self.arcs[y][i].edge {
                    if path.last() != Some(&e) {
                        path.push(e);
                    }
                }
            }
            paths.push(path);
        }
    }
}

const SOURCE: usize = 0;
const SINK: usize = 1;

/// Flow network for linking `a` to `b` in `g`, where `a` and `b` are disjoint
/// and the weight of every edge is given by `weight`.
struct LinkNetwork {
    net: FlowNetwork,
}

impl LinkNetwork {
    fn build(g: &MultiGraph, a: &EdgeSet, b: &EdgeSet, weight: impl Fn(EdgeId) -> i64) -> Result<Self> {
        let sub = subdivide_for_menger(g, a, b)?;
        let sg = &sub.graph;
        let infinite: i64 = g.edges().iter().map(|e| weight(e.id)).sum::<i64>() + 1;
        let node = |v: Vertex| sg.vertex_index(v).unwrap() + 2;
        let mut net = FlowNetwork::new(sg.num_vertices() + 2);
        for e in sg.edges() {
            match sub.back_map.get(&e.id) {
                Some(orig) => {
                    let mid = sub.subdivision_vertex[orig];
                    let end = e.other(mid);
                    if a.contains(orig) {
                        net.directed(node(mid), node(end), infinite, Some(*orig));
                    } else {
                        net.directed(node(end), node(mid), infinite, Some(*orig));
                    }
                }
                None => net.undirected(node(e.u), node(e.v), weight(e.id), e.id),
            }
        }
        for &e in a {
            net.directed(SOURCE, node(sub.subdivision_vertex[&e]), weight(e), Some(e));
        }
        for &e in b {
            net.directed(node(sub.subdivision_vertex[&e]), SINK, weight(e), Some(e));
        }
        Ok(Self { net })
    }
}

fn check_sets(g: &MultiGraph, a: &EdgeSet, b: &EdgeSet) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::input("both edge sets must be nonempty"));
    }
    g.check_edges(a)?;
    g.check_edges(b)
}

/// Maximum number of pairwise edge-disjoint paths linking `a` and `b`,
/// witnessed by the paths and by an `(a, b)`-cut of the same size.
pub fn max_linking_paths(g: &MultiGraph, a: &EdgeSet, b: &EdgeSet) -> Result<LinkageResult> {
    check_sets(g, a, b)?;
    let shared: EdgeSet = a.intersection(b).copied().collect();
    let mut paths: Vec<Vec<EdgeId>> = shared.iter().map(|&e| vec![e]).collect();
    let mut cut = shared.clone();
    let only_a: EdgeSet = a.difference(&shared).copied().collect();
    let only_b: EdgeSet = b.difference(&shared).copied().collect();
    if !only_a.is_empty() && !only_b.is_empty() {
        let rest = g.without_edges(&shared);
        let mut network = LinkNetwork::build(&rest, &only_a, &only_b, |_| 1)?;
        let flow = network.net.max_flow(SOURCE, SINK);
        paths.extend(network.net.unit_paths(SOURCE, SINK));
        cut.extend(network.net.min_cut_edges(SOURCE));
        if paths.len() != shared.len() + flow as usize {
            return Err(Error::invariant("flow decomposition lost a path"));
        }
    }
    if paths.len() != cut.len() {
        return Err(Error::invariant(format!(
            "{} disjoint paths but a cut of size {}",
            paths.len(),
            cut.len()
        )));
    }
    Ok(LinkageResult { count: paths.len(), paths, cut })
}

/// Checks that `path` links `a` and `b`: an edge of `a ∩ b` alone, or an
/// edge of `a`, a simple path of edges outside `a ∪ b` between an endpoint of
/// it and an endpoint of the last edge, and that last edge in `b`.
pub fn is_linking_path(g: &MultiGraph, a: &EdgeSet, b: &EdgeSet, path: &[EdgeId]) -> bool {
    let edges: Option<Vec<&Edge>> = path.iter().map(|&id| g.edge(id)).collect();
    let Some(edges) = edges else { return false };
    match edges.as_slice() {
        [] => false,
        [e] => a.contains(&e.id) && b.contains(&e.id),
        [first, middle @ .., last] => {
            if !a.contains(&first.id) || !b.contains(&last.id) {
                return false;
            }
            let distinct: BTreeSet<EdgeId> = path.iter().copied().collect();
            if distinct.len() != path.len() {
                return false;
            }
            if middle.iter().any(|e| a.contains(&e.id) || b.contains(&e.id)) {
                return false;
            }
            // try both endpoints of the first edge as the start of the middle part
            [first.u, first.v].into_iter().any(|start| {
                let mut at = start;
                let mut seen = BTreeSet::from([start]);
                for e in middle {
                    if !e.is_incident(at) {
                        return false;
                    }
                    at = e.other(at);
                    if !seen.insert(at) {
                        return false;
                    }
                }
                last.is_incident(at)
            })
        }
    }
}

/// Per-edge distances `d_{a,b}` from the path `aTb`: 0 for edges whose
/// T-path shares a link with it, otherwise one more than the tree distance
/// between the two paths.
pub struct PathDistances {
    by_edge: BTreeMap<EdgeId, usize>,
}

impl PathDistances {
    pub fn new(g: &MultiGraph, d: &TreeCutDecomposition, a: LinkId, b: LinkId) -> Result<Self> {
        for l in [a, b] {
            if !d.has_link(l) {
                return Err(Error::input(format!("unknown link {}", l.0)));
            }
        }
        let links: BTreeSet<LinkId> = d.link_path(a, b).into_iter().collect();
        let nodes: Vec<NodeId> = links
            .iter()
            .flat_map(|&l| {
                let (x, y) = d.endpoints(l);
                [x, y]
            })
            .collect();
        let dist = node_distances(d, &nodes);
        let mut by_edge = BTreeMap::new();
        for e in g.edges() {
            let tpath = d.t_path_of_edge(g, e.id)?;
            let shares = d.path_links(&tpath).iter().any(|l| links.contains(l));
            let value =
                if shares { 0 } else { 1 + tpath.iter().map(|n| dist[n.0]).min().expect("nonempty path") };
            by_edge.insert(e.id, value);
        }
        Ok(Self { by_edge })
    }

    pub fn get(&self, e: EdgeId) -> usize {
        self.by_edge[&e]
    }

    pub fn max(&self) -> usize {
        self.by_edge.values().copied().max().unwrap_or(0)
    }

    pub fn total<'a>(&self, set: impl IntoIterator<Item = &'a EdgeId>) -> usize {
        set.into_iter().map(|e| self.get(*e)).sum()
    }
}

/// `d_{a,b}(e)` for a single edge.
pub fn d_ab(g: &MultiGraph, d: &TreeCutDecomposition, a: LinkId, b: LinkId, e: EdgeId) -> Result<usize> {
    if g.edge(e).is_none() {
        return Err(Error::input(format!("unknown edge {e}")));
    }
    Ok(PathDistances::new(g, d, a, b)?.get(e))
}

/// An `(A, B)`-cut of minimum size that, among those, minimises the summed
/// `d_{a,b}` distance. Requires that fewer than `|A| = |B|` disjoint linking
/// paths exist.
pub fn min_cut_lex(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    a: LinkId,
    b: LinkId,
    set_a: &EdgeSet,
    set_b: &EdgeSet,
) -> Result<EdgeSet> {
    check_sets(g, set_a, set_b)?;
    let adh_a = d.adhesion(g, a)?;
    let adh_b = d.adhesion(g, b)?;
    if !set_a.is_subset(&adh_a) || !set_b.is_subset(&adh_b) {
        return Err(Error::precondition("edge sets must lie in the adhesions of their links"));
    }
    if set_a.len() != set_b.len() {
        return Err(Error::precondition("edge sets must have equal size"));
    }
    let linkage = max_linking_paths(g, set_a, set_b)?;
    if linkage.count >= set_a.len() {
        return Err(Error::precondition(format!(
            "{} disjoint linking paths exist, so no cut smaller than {} separates the sets",
            linkage.count,
            set_a.len()
        )));
    }
    let dist = PathDistances::new(g, d, a, b)?;
    let m = g.num_edges() as i64;
    let scale = 1 + m * (1 + dist.max() as i64);
    if scale.checked_mul(m + 1).is_none() {
        return Err(Error::Resource("cut weights overflow 64 bits".into()));
    }
    let weight = |e: EdgeId| scale + dist.get(e) as i64;

    let shared: EdgeSet = set_a.intersection(set_b).copied().collect();
    let only_a: EdgeSet = set_a.difference(&shared).copied().collect();
    let only_b: EdgeSet = set_b.difference(&shared).copied().collect();
    let mut cut = shared.clone();
    if !only_a.is_empty() && !only_b.is_empty() {
        let rest = g.without_edges(&shared);
        let mut network = LinkNetwork::build(&rest, &only_a, &only_b, weight)?;
        let value = network.net.max_flow(SOURCE, SINK);
        let found = network.net.min_cut_edges(SOURCE);
        let expected: i64 = found.iter().map(|&e| weight(e)).sum();
        if value != expected {
            return Err(Error::invariant("weighted cut value differs from the flow value"));
        }
        cut.extend(found);
    }
    if cut.len() != linkage.count {
        return Err(Error::invariant(format!(
            "lexicographic cut has {} edges, minimum is {}",
            cut.len(),
            linkage.count
        )));
    }
    Ok(cut)
}

/// Whether removing `cut` leaves no path linking `a` and `b`.
pub fn is_cut(g: &MultiGraph, a: &EdgeSet, b: &EdgeSet, cut: &EdgeSet) -> Result<bool> {
    let rest = g.without_edges(cut);
    let a: EdgeSet = a.difference(cut).copied().collect();
    let b: EdgeSet = b.difference(cut).copied().collect();
    if a.is_empty() || b.is_empty() {
        return Ok(true);
    }
    Ok(max_linking_paths(&rest, &a, &b)?.count == 0)
}
