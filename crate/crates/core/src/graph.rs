//! Loopless multigraphs with stable edge identities, plus the cut and
//! connectivity primitives the rest of the crate is built on.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;
pub type VertexSet = BTreeSet<Vertex>;
pub type EdgeSet = BTreeSet<EdgeId>;

/// First id handed out to virtual edges created by [`MultiGraph::split_along_cut`].
pub const VIRTUAL_EDGE_BASE: EdgeId = 1 << 40;

/// Above this many vertices the minimum cut is found by contraction instead
/// of enumerating bipartitions.
pub const EXHAUSTIVE_MIN_CUT_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn is_incident(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// Endpoints in ascending order; parallel edges share this key.
    pub fn key(&self) -> (Vertex, Vertex) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// A finite loopless multigraph. Vertex ids need not be contiguous (induced
/// subgraphs keep the ids of their parent), and every edge carries an id that
/// survives subgraph operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

/// An edge cut together with the vertex bipartition it separates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSplit {
    pub cut: EdgeSet,
    pub sides: (VertexSet, VertexSet),
}

/// Result of splitting a graph along a cut of order at most two.
#[derive(Clone, Debug)]
pub struct Split {
    pub parts: [MultiGraph; 2],
    /// The vertex of each side through which the two halves are reattached.
    pub anchors: [Vertex; 2],
    /// Virtual edge added to each side, if any.
    pub virtual_edges: [Option<Edge>; 2],
    pub cut: EdgeSet,
}

impl MultiGraph {
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let vertices: VertexSet = vertices.into_iter().collect();
        let vertices: Vec<Vertex> = vertices.into_iter().collect();
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_by_key(|e| e.id);
        for w in edges.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::input(format!("duplicate edge id {}", w[0].id)));
            }
        }
        for e in &edges {
            if e.u == e.v {
                return Err(Error::input(format!("edge {} is a loop at vertex {}", e.id, e.u)));
            }
            for x in [e.u, e.v] {
                if vertices.binary_search(&x).is_err() {
                    return Err(Error::input(format!("edge {} uses unknown vertex {}", e.id, x)));
                }
            }
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (pos, e) in edges.iter().enumerate() {
            adjacency[vertices.binary_search(&e.u).unwrap()].push(pos);
            adjacency[vertices.binary_search(&e.v).unwrap()].push(pos);
        }
        Ok(Self { vertices, edges, adjacency })
    }

    /// Graph whose edges get ids `0..pairs.len()` in the given order.
    pub fn from_pairs(
        vertices: impl IntoIterator<Item = Vertex>,
        pairs: &[(Vertex, Vertex)],
    ) -> Result<Self> {
        Self::new(vertices, pairs.iter().enumerate().map(|(id, &(u, v))| Edge { id, u, v }))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Edges sorted by id.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Dense position of a vertex in [`Self::vertices`].
    pub fn vertex_index(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Dense position of an edge in [`Self::edges`].
    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edge_index(id).map(|i| &self.edges[i])
    }

    pub fn edge_ids(&self) -> EdgeSet {
        self.edges.iter().map(|e| e.id).collect()
    }

    pub fn max_edge_id(&self) -> Option<EdgeId> {
        self.edges.last().map(|e| e.id)
    }

    /// Edges incident to `v`, in id order.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = &Edge> + '_ {
        let list = match self.vertex_index(v) {
            Some(i) => self.adjacency[i].as_slice(),
            None => &[],
        };
        list.iter().map(move |&pos| &self.edges[pos])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.vertex_index(v).map_or(0, |i| self.adjacency[i].len())
    }

    fn check_vertices<'a>(&self, set: impl IntoIterator<Item = &'a Vertex>) -> Result<()> {
        for &v in set {
            if !self.contains_vertex(v) {
                return Err(Error::input(format!("unknown vertex {v}")));
            }
        }
        Ok(())
    }

    pub fn check_edges<'a>(&self, set: impl IntoIterator<Item = &'a EdgeId>) -> Result<()> {
        for &e in set {
            if self.edge_index(e).is_none() {
                return Err(Error::input(format!("unknown edge {e}")));
            }
        }
        Ok(())
    }

    /// Ids of the edges with one endpoint in `x` and the other in `y`.
    pub fn edges_between(&self, x: &VertexSet, y: &VertexSet) -> Result<EdgeSet> {
        self.check_vertices(x)?;
        self.check_vertices(y)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| (x.contains(&e.u) && y.contains(&e.v)) || (x.contains(&e.v) && y.contains(&e.u)))
            .map(|e| e.id)
            .collect())
    }

    /// Connected components ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                comp.insert(self.vertices[i]);
                for &pos in &self.adjacency[i] {
                    let e = &self.edges[pos];
                    let j = self.vertex_index(e.other(self.vertices[i])).unwrap();
                    if !seen[j] {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn without_edges(&self, removed: &EdgeSet) -> MultiGraph {
        Self::new(
            self.vertices.iter().copied(),
            self.edges.iter().filter(|e| !removed.contains(&e.id)).copied(),
        )
        .expect("subgraph of a valid graph")
    }

    /// `G[keep]`: edges keep their ids.
    pub fn induced(&self, keep: &VertexSet) -> MultiGraph {
        Self::new(
            self.vertices.iter().copied().filter(|v| keep.contains(v)),
            self.edges.iter().filter(|e| keep.contains(&e.u) && keep.contains(&e.v)).copied(),
        )
        .expect("induced subgraph of a valid graph")
    }

    /// Returns a copy with one extra edge; the id must be fresh.
    pub fn with_edge(&self, edge: Edge) -> Result<MultiGraph> {
        Self::new(self.vertices.iter().copied(), self.edges.iter().copied().chain(std::iter::once(edge)))
    }

    /// Order of a smallest cut; `None` for graphs with fewer than two vertices.
    pub fn edge_connectivity(&self) -> Option<usize> {
        if self.vertices.len() < 2 {
            return None;
        }
        if !self.is_connected() {
            return Some(0);
        }
        Some(self.global_min_cut().expect("connected").cut.len())
    }

    /// True iff no cut has fewer than `k` edges. Graphs on fewer than two
    /// vertices have no cut at all.
    pub fn is_k_edge_connected(&self, k: usize) -> bool {
        self.edge_connectivity().is_none_or(|c| c >= k)
    }

    /// A minimum cut of a connected graph. Up to
    /// [`EXHAUSTIVE_MIN_CUT_LIMIT`] vertices every bipartition is examined
    /// and the lexicographically smallest side holding the first vertex wins
    /// ties; larger graphs fall back to Stoer-Wagner contraction.
    pub fn global_min_cut(&self) -> Result<CutSplit> {
        if self.vertices.len() < 2 {
            return Err(Error::precondition("minimum cut needs at least two vertices"));
        }
        if !self.is_connected() {
            return Err(Error::precondition("minimum cut of a disconnected graph"));
        }
        let side = if self.vertices.len() <= EXHAUSTIVE_MIN_CUT_LIMIT {
            self.min_cut_exhaustive()
        } else {
            self.min_cut_stoer_wagner()
        };
        let first = self.vertices[0];
        let mut v1: VertexSet = side.into_iter().collect();
        if !v1.contains(&first) {
            v1 = self.vertices.iter().copied().filter(|v| !v1.contains(v)).collect();
        }
        let v2: VertexSet = self.vertices.iter().copied().filter(|v| !v1.contains(v)).collect();
        let cut = self.edges_between(&v1, &v2)?;
        Ok(CutSplit { cut, sides: (v1, v2) })
    }

    fn min_cut_exhaustive(&self) -> Vec<Vertex> {
        let n = self.vertices.len();
        let ends: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (self.vertex_index(e.u).unwrap(), self.vertex_index(e.v).unwrap()))
            .collect();
        let mut best: Option<(usize, Vec<usize>)> = None;
        // vertex 0 is always on the first side; bit i of `rest` places vertex
        // i + 1 on it as well
        for rest in 0u32..(1u32 << (n - 1)) {
            let mask: u32 = 1 | (rest << 1);
            if mask == (1u32 << n) - 1 {
                continue;
            }
            let size = ends.iter().filter(|&&(a, b)| ((mask >> a) & 1) != ((mask >> b) & 1)).count();
            if best.as_ref().is_some_and(|(s, _)| size > *s) {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|i| (mask >> i) & 1 == 1).collect();
            let better = match &best {
                Some((s, side)) if size == *s => members < *side,
                _ => true,
            };
            if better {
                best = Some((size, members));
            }
        }
        best.expect("at least two vertices").1.into_iter().map(|i| self.vertices[i]).collect()
    }

    fn min_cut_stoer_wagner(&self) -> Vec<Vertex> {
        let n = self.vertices.len();
        let mut weight = vec![vec![0i64; n]; n];
        for e in &self.edges {
            let a = self.vertex_index(e.u).unwrap();
            let b = self.vertex_index(e.v).unwrap();
            weight[a][b] += 1;
            weight[b][a] += 1;
        }
        let mut groups: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        let mut active: Vec<usize> = (0..n).collect();
        let mut best: Option<(i64, Vec<usize>)> = None;
        while active.len() > 1 {
            let mut added = vec![false; n];
            let mut key = vec![0i64; n];
            let mut order = Vec::with_capacity(active.len());
            for _ in 0..active.len() {
                let next = *active
                    .iter()
                    .filter(|&&v| !added[v])
                    .max_by(|&&x, &&y| key[x].cmp(&key[y]).then(y.cmp(&x)))
                    .unwrap();
                added[next] = true;
                order.push(next);
                for &v in &active {
                    if !added[v] {
                        key[v] += weight[next][v];
                    }
                }
            }
            let t = order[order.len() - 1];
            let s = order[order.len() - 2];
            if best.as_ref().is_none_or(|(w, _)| key[t] < *w) {
                best = Some((key[t], groups[t].clone()));
            }
            let moved = std::mem::take(&mut groups[t]);
            groups[s].extend(moved);
            for &v in &active {
                weight[s][v] += weight[t][v];
                weight[v][s] = weight[s][v];
            }
            weight[s][s] = 0;
            active.retain(|&v| v != t);
        }
        best.expect("at least two vertices").1.into_iter().map(|i| self.vertices[i]).collect()
    }

    /// Splits along a cut of order at most two, adding a virtual edge to a
    /// side whose two cut endpoints are distinct. Virtual edges get ids at or
    /// above [`VIRTUAL_EDGE_BASE`] that are fresh in `self`.
    pub fn split_along_cut(&self, split: &CutSplit) -> Result<Split> {
        if split.cut.len() > 2 {
            return Err(Error::precondition(format!(
                "can only split along cuts of order at most 2, got {}",
                split.cut.len()
            )));
        }
        let (v1, v2) = &split.sides;
        if v1.is_empty() || v2.is_empty() {
            return Err(Error::input("both sides of the split must be nonempty"));
        }
        let cut_edges: Vec<Edge> = split
            .cut
            .iter()
            .map(|&id| self.edge(id).copied().ok_or_else(|| Error::input(format!("unknown edge {id}"))))
            .collect::<Result<_>>()?;
        let mut fresh = self.max_edge_id().map_or(VIRTUAL_EDGE_BASE, |m| (m + 1).max(VIRTUAL_EDGE_BASE));
        let mut parts = Vec::with_capacity(2);
        let mut anchors = [0; 2];
        let mut virtual_edges = [None, None];
        for (i, side) in [v1, v2].into_iter().enumerate() {
            let inside = |e: &Edge| if side.contains(&e.u) { e.u } else { e.v };
            for e in &cut_edges {
                if side.contains(&e.u) == side.contains(&e.v) {
                    return Err(Error::input(format!("cut edge {} does not cross the sides", e.id)));
                }
            }
            let mut part = self.induced(side);
            anchors[i] = cut_edges.first().map_or(*side.iter().next().unwrap(), inside);
            if let [f1, f2] = cut_edges.as_slice() {
                let (x, y) = (inside(f1), inside(f2));
                if x != y {
                    let edge = Edge { id: fresh, u: x, v: y };
                    fresh += 1;
                    part = part.with_edge(edge)?;
                    virtual_edges[i] = Some(edge);
                }
            }
            parts.push(part);
        }
        let parts: [MultiGraph; 2] = parts.try_into().expect("two parts");
        Ok(Split { parts, anchors, virtual_edges, cut: split.cut.clone() })
    }

    /// Edge ids grouped by endpoint pair (parallel classes).
    pub fn parallel_classes(&self) -> BTreeMap<(Vertex, Vertex), Vec<EdgeId>> {
        let mut classes: BTreeMap<(Vertex, Vertex), Vec<EdgeId>> = BTreeMap::new();
        for e in &self.edges {
            classes.entry(e.key()).or_default().push(e.id);
        }
        classes
    }
}
