//! Tree-cut decompositions: the tree, its bags, adhesions, width and the
//! fatness potential used to order decompositions of the same graph.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, MultiGraph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for LinkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}", self.0)
    }
}

/// First broken invariant of a decomposition, in checking order.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("tree has no nodes")]
    NoNodes,
    #[error("link {link} references unknown node {node}")]
    UnknownNode { link: usize, node: usize },
    #[error("link {link} joins node {node} to itself")]
    SelfLink { link: usize, node: usize },
    #[error("tree not acyclic: {nodes} nodes but {links} links")]
    LinkCount { nodes: usize, links: usize },
    #[error("tree not connected: node {node} unreachable from node 0")]
    Disconnected { node: usize },
    #[error("bag of node {node} contains unknown vertex {vertex}")]
    UnknownVertex { node: usize, vertex: Vertex },
    #[error("bags not disjoint: vertex {vertex} in nodes {first} and {second}")]
    BagsNotDisjoint { vertex: Vertex, first: usize, second: usize },
    #[error("union misses vertex {vertex}")]
    MissingVertex { vertex: Vertex },
}

#[derive(Clone, Debug)]
struct TreeIndex {
    neighbors: Vec<Vec<(NodeId, LinkId)>>,
    parent: Vec<Option<(NodeId, LinkId)>>,
    depth: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
}

impl TreeIndex {
    fn build(nodes: usize, links: &[(NodeId, NodeId)]) -> Result<Self, Violation> {
        if nodes == 0 {
            return Err(Violation::NoNodes);
        }
        for (i, &(x, y)) in links.iter().enumerate() {
            for n in [x, y] {
                if n.0 >= nodes {
                    return Err(Violation::UnknownNode { link: i, node: n.0 });
                }
            }
            if x == y {
                return Err(Violation::SelfLink { link: i, node: x.0 });
            }
        }
        if links.len() + 1 != nodes {
            return Err(Violation::LinkCount { nodes, links: links.len() });
        }
        let mut neighbors = vec![Vec::new(); nodes];
        for (i, &(x, y)) in links.iter().enumerate() {
            neighbors[x.0].push((y, LinkId(i)));
            neighbors[y.0].push((x, LinkId(i)));
        }
        let mut parent = vec![None; nodes];
        let mut depth = vec![0; nodes];
        let mut tin = vec![usize::MAX; nodes];
        let mut tout = vec![0; nodes];
        let mut clock = 0;
        // iterative DFS: (node, next neighbor position)
        let mut stack = vec![(0usize, 0usize)];
        tin[0] = clock;
        clock += 1;
        while let Some(&mut (node, ref mut pos)) = stack.last_mut() {
            if let Some(&(next, link)) = neighbors[node].get(*pos) {
                *pos += 1;
                if tin[next.0] == usize::MAX {
                    tin[next.0] = clock;
                    clock += 1;
                    parent[next.0] = Some((NodeId(node), link));
                    depth[next.0] = depth[node] + 1;
                    stack.push((next.0, 0));
                }
            } else {
                tout[node] = clock;
                stack.pop();
            }
        }
        if let Some(node) = tin.iter().position(|&t| t == usize::MAX) {
            return Err(Violation::Disconnected { node });
        }
        Ok(Self { neighbors, parent, depth, tin, tout })
    }

    fn in_subtree(&self, root: NodeId, node: NodeId) -> bool {
        self.tin[root.0] <= self.tin[node.0] && self.tin[node.0] < self.tout[root.0]
    }
}

/// A tree together with pairwise disjoint bags covering the vertices of a
/// graph. Nodes and links are numbered densely; the value is immutable.
#[derive(Clone, Debug)]
pub struct TreeCutDecomposition {
    bags: Vec<VertexSet>,
    links: Vec<(NodeId, NodeId)>,
    owner: BTreeMap<Vertex, NodeId>,
    index: TreeIndex,
}

impl PartialEq for TreeCutDecomposition {
    fn eq(&self, other: &Self) -> bool {
        self.bags == other.bags && self.links == other.links
    }
}

impl Eq for TreeCutDecomposition {}

/// Adhesions of every link of one decomposition against one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adhesions {
    sets: Vec<EdgeSet>,
}

impl Adhesions {
    pub fn get(&self, link: LinkId) -> &EdgeSet {
        &self.sets[link.0]
    }

    pub fn size(&self, link: LinkId) -> usize {
        self.sets[link.0].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(EdgeSet::len).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (LinkId, &EdgeSet)> {
        self.sets.iter().enumerate().map(|(i, s)| (LinkId(i), s))
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

impl TreeCutDecomposition {
    /// Builds a decomposition, checking only that the links form a tree.
    /// Bag invariants depend on the graph and are checked by [`Self::validate`].
    pub fn new(bags: Vec<VertexSet>, links: Vec<(NodeId, NodeId)>) -> Result<Self, Violation> {
        let index = TreeIndex::build(bags.len(), &links)?;
        let mut owner = BTreeMap::new();
        for (i, bag) in bags.iter().enumerate() {
            for &v in bag {
                owner.entry(v).or_insert(NodeId(i));
            }
        }
        Ok(Self { bags, links, owner, index })
    }

    /// Builds and validates against `g` in one go.
    pub fn checked(
        g: &MultiGraph,
        bags: Vec<VertexSet>,
        links: Vec<(NodeId, NodeId)>,
    ) -> Result<Self, Violation> {
        let d = Self::new(bags, links)?;
        d.validate(g)?;
        Ok(d)
    }

    /// One node holding every vertex.
    pub fn trivial(g: &MultiGraph) -> Self {
        Self::new(vec![g.vertices().iter().copied().collect()], Vec::new()).expect("single node is a tree")
    }

    /// Checks the bag invariants against `g`, reporting the first violation.
    pub fn validate(&self, g: &MultiGraph) -> Result<(), Violation> {
        let mut seen: BTreeMap<Vertex, usize> = BTreeMap::new();
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if !g.contains_vertex(v) {
                    return Err(Violation::UnknownVertex { node: i, vertex: v });
                }
                if let Some(&first) = seen.get(&v) {
                    return Err(Violation::BagsNotDisjoint { vertex: v, first, second: i });
                }
                seen.insert(v, i);
            }
        }
        for &v in g.vertices() {
            if !seen.contains_key(&v) {
                return Err(Violation::MissingVertex { vertex: v });
            }
        }
        Ok(())
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    pub fn num_links(&self) -> usize {
        self.links.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.bags.len()).map(NodeId)
    }

    pub fn link_ids(&self) -> impl Iterator<Item = LinkId> {
        (0..self.links.len()).map(LinkId)
    }

    pub fn bag(&self, node: NodeId) -> &VertexSet {
        &self.bags[node.0]
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn links(&self) -> &[(NodeId, NodeId)] {
        &self.links
    }

    pub fn endpoints(&self, link: LinkId) -> (NodeId, NodeId) {
        self.links[link.0]
    }

    pub fn has_link(&self, link: LinkId) -> bool {
        link.0 < self.links.len()
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.index.neighbors[node.0].len()
    }

    /// Links incident to `node` with the node across each.
    pub fn incident(&self, node: NodeId) -> &[(NodeId, LinkId)] {
        &self.index.neighbors[node.0]
    }

    /// Node whose bag holds `v`.
    pub fn node_of(&self, v: Vertex) -> Option<NodeId> {
        self.owner.get(&v).copied()
    }

    /// The endpoint of `link` farther from node 0.
    fn lower_end(&self, link: LinkId) -> NodeId {
        let (x, y) = self.links[link.0];
        if self.index.depth[x.0] > self.index.depth[y.0] {
            x
        } else {
            y
        }
    }

    /// Whether `node` lies in the component of `T - link` containing `toward`
    /// (an endpoint of `link`).
    pub fn on_side(&self, link: LinkId, toward: NodeId, node: NodeId) -> bool {
        let low = self.lower_end(link);
        self.index.in_subtree(low, node) == (toward == low)
    }

    /// Bag unions of the two components of `T - link`, listed for the first
    /// and second endpoint respectively.
    pub fn sides(&self, link: LinkId) -> (VertexSet, VertexSet) {
        let (x, _) = self.links[link.0];
        let mut first = VertexSet::new();
        let mut second = VertexSet::new();
        for (i, bag) in self.bags.iter().enumerate() {
            if self.on_side(link, x, NodeId(i)) {
                first.extend(bag);
            } else {
                second.extend(bag);
            }
        }
        (first, second)
    }

    fn check_link(&self, link: LinkId) -> Result<()> {
        if self.has_link(link) {
            Ok(())
        } else {
            Err(Error::input(format!("unknown link {}", link.0)))
        }
    }

    /// Edges of `g` whose endpoints fall on opposite sides of `link`.
    pub fn adhesion(&self, g: &MultiGraph, link: LinkId) -> Result<EdgeSet> {
        self.check_link(link)?;
        let low = self.lower_end(link);
        Ok(self.crossing(g, low))
    }

    fn crossing(&self, g: &MultiGraph, low: NodeId) -> EdgeSet {
        let below = |v: Vertex| self.node_of(v).is_some_and(|n| self.index.in_subtree(low, n));
        g.edges().iter().filter(|e| below(e.u) != below(e.v)).map(|e| e.id).collect()
    }

    /// Adhesions of all links, one edge scan per link.
    pub fn adhesions(&self, g: &MultiGraph) -> Adhesions {
        // resolve each edge's end nodes once
        let ends: Vec<(EdgeId, Option<NodeId>, Option<NodeId>)> =
            g.edges().iter().map(|e| (e.id, self.node_of(e.u), self.node_of(e.v))).collect();
        let sets = self
            .link_ids()
            .map(|l| {
                let low = self.lower_end(l);
                let below = |n: Option<NodeId>| n.is_some_and(|n| self.index.in_subtree(low, n));
                ends.iter().filter(|(_, x, y)| below(*x) != below(*y)).map(|(id, _, _)| *id).collect()
            })
            .collect();
        Adhesions { sets }
    }

    pub fn width(&self, g: &MultiGraph) -> usize {
        self.width_with(&self.adhesions(g))
    }

    /// Width from precomputed adhesions: the larger of the biggest adhesion
    /// and the biggest `|bag| + #incident bold links` (bold = more than two
    /// edges).
    pub fn width_with(&self, adh: &Adhesions) -> usize {
        let links = adh.sets.iter().map(EdgeSet::len).max().unwrap_or(0);
        let nodes = self
            .nodes()
            .map(|t| self.bags[t.0].len() + self.incident(t).iter().filter(|(_, l)| adh.size(*l) > 2).count())
            .max()
            .unwrap_or(0);
        links.max(nodes)
    }

    /// Width with every link counted in the node term, valid as a formula
    /// for 3-edge-connected graphs.
    pub fn width_3ec(&self, g: &MultiGraph) -> Result<usize> {
        if !g.is_k_edge_connected(3) {
            return Err(Error::precondition("graph is not 3-edge-connected"));
        }
        let adh = self.adhesions(g);
        let links = adh.sets.iter().map(EdgeSet::len).max().unwrap_or(0);
        let nodes = self.nodes().map(|t| self.bags[t.0].len() + self.degree(t)).max().unwrap_or(0);
        Ok(links.max(nodes))
    }

    /// Node sequence of the tree path from `x` to `y`.
    pub fn node_path(&self, x: NodeId, y: NodeId) -> Vec<NodeId> {
        let (mut a, mut b) = (x, y);
        let mut front = vec![a];
        let mut back = vec![b];
        while self.index.depth[a.0] > self.index.depth[b.0] {
            a = self.index.parent[a.0].unwrap().0;
            front.push(a);
        }
        while self.index.depth[b.0] > self.index.depth[a.0] {
            b = self.index.parent[b.0].unwrap().0;
            back.push(b);
        }
        while a != b {
            a = self.index.parent[a.0].unwrap().0;
            b = self.index.parent[b.0].unwrap().0;
            front.push(a);
            back.push(b);
        }
        back.pop();
        front.extend(back.into_iter().rev());
        front
    }

    /// Link joining two adjacent nodes.
    pub fn link_between(&self, x: NodeId, y: NodeId) -> Option<LinkId> {
        self.index.neighbors[x.0].iter().find(|(n, _)| *n == y).map(|&(_, l)| l)
    }

    /// Links along a node path.
    pub fn path_links(&self, nodes: &[NodeId]) -> Vec<LinkId> {
        nodes
            .windows(2)
            .map(|w| self.link_between(w[0], w[1]).expect("consecutive path nodes are adjacent"))
            .collect()
    }

    /// Links of the tree path that starts with `a` and ends with `b`.
    pub fn link_path(&self, a: LinkId, b: LinkId) -> Vec<LinkId> {
        if a == b {
            return vec![a];
        }
        let (a0, a1) = self.links[a.0];
        let (b0, b1) = self.links[b.0];
        let longest = [(a0, b0), (a0, b1), (a1, b0), (a1, b1)]
            .into_iter()
            .map(|(x, y)| self.node_path(x, y))
            .max_by_key(Vec::len)
            .unwrap();
        self.path_links(&longest)
    }

    /// Number of links on the path from `a` to `b` (1 when they coincide).
    pub fn link_distance(&self, a: LinkId, b: LinkId) -> usize {
        self.link_path(a, b).len()
    }

    /// Tree path between the nodes holding the two endpoints of `edge`.
    pub fn t_path_of_edge(&self, g: &MultiGraph, edge: EdgeId) -> Result<Vec<NodeId>> {
        let e = g.edge(edge).ok_or_else(|| Error::input(format!("unknown edge {edge}")))?;
        let locate = |v: Vertex| {
            self.node_of(v).ok_or(Error::InvalidDecomposition(Violation::MissingVertex { vertex: v }))
        };
        Ok(self.node_path(locate(e.u)?, locate(e.v)?))
    }

    pub fn fatness(&self, g: &MultiGraph) -> Fatness {
        Fatness::from_adhesions(self, &self.adhesions(g), g.num_edges())
    }

    /// Restriction to a vertex subset: same tree, bags intersected.
    pub fn project(&self, keep: &VertexSet) -> Self {
        let bags = self.bags.iter().map(|b| b.intersection(keep).copied().collect()).collect();
        Self::new(bags, self.links.clone()).expect("same tree")
    }

    /// Drops every branch whose bags are all empty, renumbering densely.
    /// Adhesions of surviving links are unchanged and the dropped links all
    /// have empty adhesion, so width, fatness and leanness are preserved.
    pub fn prune_empty_branches(&self) -> Self {
        let n = self.num_nodes();
        // count of vertices in each rooted subtree
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.index.depth[i]));
        let mut weight: Vec<usize> = self.bags.iter().map(VertexSet::len).collect();
        for &i in &order {
            if let Some((p, _)) = self.index.parent[i] {
                weight[p.0] += weight[i];
            }
        }
        let total = weight[0];
        // a link survives iff both sides hold a vertex
        let keep_link: Vec<bool> = self
            .link_ids()
            .map(|l| {
                let w = weight[self.lower_end(l).0];
                w > 0 && w < total
            })
            .collect();
        // surviving nodes: those touching a surviving link, or any single
        // nonempty node when no link survives
        let mut keep_node = vec![false; n];
        for (i, &(x, y)) in self.links.iter().enumerate() {
            if keep_link[i] {
                keep_node[x.0] = true;
                keep_node[y.0] = true;
            }
        }
        if !keep_node.iter().any(|&k| k) {
            let pick = self.bags.iter().position(|b| !b.is_empty()).unwrap_or(0);
            keep_node[pick] = true;
        }
        // every kept node must also keep its vertices; a node holding
        // vertices always touches a surviving link unless it is alone
        let mut renumber = vec![usize::MAX; n];
        let mut bags = Vec::new();
        for i in 0..n {
            if keep_node[i] {
                renumber[i] = bags.len();
                bags.push(self.bags[i].clone());
            }
        }
        let links = self
            .links
            .iter()
            .enumerate()
            .filter(|(i, _)| keep_link[*i])
            .map(|(_, &(x, y))| (NodeId(renumber[x.0]), NodeId(renumber[y.0])))
            .collect();
        Self::new(bags, links).expect("pruning keeps a tree")
    }
}

/// The sequence `(α_m, -β_m, …, α_1, -β_1)` where `α_i` counts links with an
/// adhesion of at least `i` edges and `β_i` counts the components those links
/// induce in the tree. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fatness(Vec<i64>);

impl Fatness {
    pub fn from_adhesions(d: &TreeCutDecomposition, adh: &Adhesions, m: usize) -> Self {
        let mut by_size: Vec<(usize, LinkId)> = adh.iter().map(|(l, s)| (s.len(), l)).collect();
        by_size.sort_by_key(|x| std::cmp::Reverse(x.0));
        let mut touched = vec![false; d.num_nodes()];
        let mut nodes = 0i64;
        let mut links = 0i64;
        let mut next = 0;
        let mut entries = Vec::with_capacity(2 * m);
        for i in (1..=m).rev() {
            while next < by_size.len() && by_size[next].0 >= i {
                let (x, y) = d.endpoints(by_size[next].1);
                for n in [x, y] {
                    if !touched[n.0] {
                        touched[n.0] = true;
                        nodes += 1;
                    }
                }
                links += 1;
                next += 1;
            }
            // a forest has as many components as nodes minus links
            entries.push(links);
            entries.push(-(nodes - links));
        }
        Fatness(entries)
    }

    pub fn from_entries(entries: Vec<i64>) -> Self {
        Fatness(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn num_edges(&self) -> usize {
        self.0.len() / 2
    }

    /// `α_i` for `1 <= i <= m`.
    pub fn alpha(&self, i: usize) -> i64 {
        self.0[2 * (self.num_edges() - i)]
    }

    /// `β_i` for `1 <= i <= m`.
    pub fn beta(&self, i: usize) -> i64 {
        -self.0[2 * (self.num_edges() - i) + 1]
    }

    /// Lexicographic comparison; both sides must come from the same graph.
    pub fn compare(&self, other: &Fatness) -> Result<Ordering> {
        if self.0.len() != other.0.len() {
            return Err(Error::input(format!(
                "fatness lengths differ: {} vs {}",
                self.0.len(),
                other.0.len()
            )));
        }
        Ok(self.0.cmp(&other.0))
    }

    /// First position where the two sequences differ.
    pub fn first_difference(&self, other: &Fatness) -> Option<usize> {
        self.0.iter().zip(&other.0).position(|(x, y)| x != y)
    }
}

impl fmt::Display for Fatness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Breadth-first link distances from a set of nodes.
pub(crate) fn node_distances(d: &TreeCutDecomposition, sources: &[NodeId]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; d.num_nodes()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s.0] == usize::MAX {
            dist[s.0] = 0;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &(y, _) in d.incident(x) {
            if dist[y.0] == usize::MAX {
                dist[y.0] = dist[x.0] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set<T: Ord + Copy>(xs: &[T]) -> std::collections::BTreeSet<T> {
        xs.iter().copied().collect()
    }

    fn path_tree(bags: Vec<VertexSet>) -> TreeCutDecomposition {
        let links = (1..bags.len()).map(|i| (NodeId(i - 1), NodeId(i))).collect();
        TreeCutDecomposition::new(bags, links).unwrap()
    }

    #[test]
    fn validate_examples() {
        let c4 = fixtures::c4();
        assert!(TreeCutDecomposition::trivial(&c4).validate(&c4).is_ok());
        let overlap = path_tree(vec![set(&[1, 2]), set(&[2, 3])]);
        let err = overlap.validate(&c4).unwrap_err();
        assert!(err.to_string().starts_with("bags not disjoint"), "{err}");
        let missing = path_tree(vec![set(&[1, 2]), set(&[3])]);
        assert_eq!(missing.validate(&c4).unwrap_err().to_string(), "union misses vertex 4");
    }

    #[test]
    fn tree_shape_violations() {
        assert_eq!(TreeCutDecomposition::new(vec![], vec![]).unwrap_err(), Violation::NoNodes);
        let cyc = TreeCutDecomposition::new(
            vec![set(&[]), set(&[]), set(&[])],
            vec![(NodeId(0), NodeId(1)), (NodeId(1), NodeId(2)), (NodeId(2), NodeId(0))],
        );
        assert!(matches!(cyc, Err(Violation::LinkCount { .. })));
        let split = TreeCutDecomposition::new(
            vec![set(&[]), set(&[]), set(&[]), set(&[])],
            vec![(NodeId(0), NodeId(1)), (NodeId(2), NodeId(3)), (NodeId(3), NodeId(2))],
        );
        assert!(matches!(split, Err(Violation::Disconnected { .. })));
        let unknown = TreeCutDecomposition::new(vec![set(&[])], vec![(NodeId(0), NodeId(5))]);
        assert!(matches!(unknown, Err(Violation::UnknownNode { .. })));
    }

    #[test]
    fn adhesion_examples() {
        let c4 = fixtures::c4();
        let d = fixtures::c4_two_bags();
        assert_eq!(d.adhesion(&c4, LinkId(0)).unwrap(), set(&[1, 3]));
        assert!(d.adhesion(&c4, LinkId(1)).is_err());

        let bb = fixtures::barbell3ec();
        let d = fixtures::interleaved_path();
        let adh = d.adhesion(&bb, LinkId(0)).unwrap();
        assert_eq!(adh, set(&[0, 1, 2, 3, 4, 10, 11, 12]));

        // empty side
        let g = fixtures::k4();
        let d = path_tree(vec![g.vertices().iter().copied().collect(), set(&[])]);
        assert!(d.adhesion(&g, LinkId(0)).unwrap().is_empty());
    }

    #[test]
    fn adhesion_matches_side_partition() {
        let bb = fixtures::barbell3ec();
        let d = fixtures::interleaved_path();
        let all = d.adhesions(&bb);
        for l in d.link_ids() {
            let (x, y) = d.sides(l);
            assert_eq!(all.get(l), &bb.edges_between(&x, &y).unwrap());
            assert_eq!(all.get(l), &d.adhesion(&bb, l).unwrap());
        }
    }

    #[test]
    fn width_examples() {
        let k4 = fixtures::k4();
        assert_eq!(TreeCutDecomposition::trivial(&k4).width(&k4), 4);
        let two = path_tree(vec![set(&[1, 2]), set(&[3, 4])]);
        assert_eq!(two.width(&k4), 4);
        let bb = fixtures::barbell3ec();
        let d = fixtures::interleaved_path();
        assert_eq!(d.adhesions(&bb).sizes(), vec![8, 10, 5]);
        assert_eq!(d.width(&bb), 10);
    }

    #[test]
    fn width_3ec_examples() {
        let theta = fixtures::theta3();
        let d = path_tree(vec![set(&[1]), set(&[2])]);
        assert_eq!(d.width_3ec(&theta).unwrap(), 3);
        let k4 = fixtures::k4();
        let two = path_tree(vec![set(&[1, 2]), set(&[3, 4])]);
        assert_eq!(two.width_3ec(&k4).unwrap(), 4);
        assert_eq!(fixtures::interleaved_path().width_3ec(&fixtures::barbell3ec()).unwrap(), 10);
        assert!(fixtures::c4_two_bags().width_3ec(&fixtures::c4()).is_err());
    }

    #[test]
    fn link_path_examples() {
        let d = path_tree(vec![set(&[]), set(&[]), set(&[]), set(&[])]);
        assert_eq!(d.link_path(LinkId(0), LinkId(2)), vec![LinkId(0), LinkId(1), LinkId(2)]);
        assert_eq!(d.link_path(LinkId(1), LinkId(1)), vec![LinkId(1)]);
        let star = TreeCutDecomposition::new(
            vec![set(&[]), set(&[]), set(&[]), set(&[])],
            vec![(NodeId(0), NodeId(1)), (NodeId(0), NodeId(2)), (NodeId(0), NodeId(3))],
        )
        .unwrap();
        assert_eq!(star.link_path(LinkId(0), LinkId(1)), vec![LinkId(0), LinkId(1)]);
        assert_eq!(star.link_distance(LinkId(2), LinkId(0)), 2);
    }

    #[test]
    fn t_path_examples() {
        let c4 = fixtures::c4();
        let d = fixtures::c4_two_bags();
        assert_eq!(d.t_path_of_edge(&c4, 0).unwrap(), vec![NodeId(0)]);
        assert_eq!(d.t_path_of_edge(&c4, 1).unwrap(), vec![NodeId(0), NodeId(1)]);
        let bb = fixtures::barbell3ec();
        let d = fixtures::interleaved_path();
        assert_eq!(d.t_path_of_edge(&bb, 0).unwrap(), vec![NodeId(0), NodeId(1), NodeId(2)]);
        let partial = path_tree(vec![set(&[1, 2]), set(&[3])]);
        assert!(partial.t_path_of_edge(&c4, 2).is_err());
    }

    #[test]
    fn fatness_examples() {
        let c4 = fixtures::c4();
        let f = fixtures::c4_two_bags().fatness(&c4);
        assert_eq!(f.entries(), &[0, 0, 0, 0, 1, -1, 1, -1]);
        assert_eq!(f.alpha(2), 1);
        assert_eq!(f.beta(1), 1);
        let k4 = fixtures::k4();
        assert_eq!(TreeCutDecomposition::trivial(&k4).fatness(&k4).entries(), &[0; 12]);
        let d = fixtures::interleaved_path();
        let bb = fixtures::barbell3ec();
        assert_eq!(d.fatness(&bb), d.clone().fatness(&bb));
    }

    #[test]
    fn fatness_counts_components() {
        // path of four links with adhesions 8, 10, 5: T^{>=9} is one link,
        // T^{>=6} two adjacent links, T^{>=1} all three
        let f = fixtures::interleaved_path().fatness(&fixtures::barbell3ec());
        assert_eq!((f.alpha(10), f.beta(10)), (1, 1));
        assert_eq!((f.alpha(9), f.beta(9)), (1, 1));
        assert_eq!((f.alpha(6), f.beta(6)), (2, 1));
        assert_eq!((f.alpha(5), f.beta(5)), (3, 1));
        assert_eq!((f.alpha(11), f.beta(11)), (0, 0));

        // path with two nonempty bags separated by an empty node
        let g = fixtures::k4();
        let d = TreeCutDecomposition::new(
            vec![set(&[1]), set(&[]), set(&[2, 3, 4]), set(&[])],
            vec![(NodeId(0), NodeId(1)), (NodeId(1), NodeId(2)), (NodeId(2), NodeId(3))],
        )
        .unwrap();
        let f = d.fatness(&g);
        assert_eq!((f.alpha(3), f.beta(3)), (2, 1));
    }

    #[test]
    fn compare_fatness_examples() {
        let a = Fatness::from_entries(vec![1, -1, 0, 0]);
        let b = Fatness::from_entries(vec![0, 0, 0, 0]);
        assert_eq!(a.compare(&b).unwrap(), Ordering::Greater);
        assert_eq!(a.compare(&a).unwrap(), Ordering::Equal);
        let x = Fatness::from_entries(vec![2, -2, 5, -1]);
        let y = Fatness::from_entries(vec![2, -1, 9, -9]);
        assert_eq!(x.compare(&y).unwrap(), Ordering::Less);
        assert_eq!(x.first_difference(&y), Some(1));
        assert!(x.compare(&Fatness::from_entries(vec![0, 0])).is_err());
    }

    #[test]
    fn trivial_examples() {
        let k4 = fixtures::k4();
        assert_eq!(TreeCutDecomposition::trivial(&k4).width(&k4), 4);
        let empty = MultiGraph::from_pairs(0..0, &[]).unwrap();
        let d = TreeCutDecomposition::trivial(&empty);
        assert_eq!(d.num_nodes(), 1);
        assert!(d.bag(NodeId(0)).is_empty());
        assert_eq!(TreeCutDecomposition::trivial(&fixtures::theta3()).width(&fixtures::theta3()), 2);
    }

    #[test]
    fn pruning_keeps_width_and_fatness() {
        let g = fixtures::k4();
        let d = TreeCutDecomposition::new(
            vec![set(&[1]), set(&[]), set(&[2, 3, 4]), set(&[]), set(&[])],
            vec![
                (NodeId(0), NodeId(1)),
                (NodeId(1), NodeId(2)),
                (NodeId(2), NodeId(3)),
                (NodeId(3), NodeId(4)),
            ],
        )
        .unwrap();
        let p = d.prune_empty_branches();
        assert!(p.validate(&g).is_ok());
        assert_eq!(p.num_nodes(), 3);
        assert_eq!(p.width(&g), d.width(&g));
        assert_eq!(p.fatness(&g), d.fatness(&g));
    }
}
