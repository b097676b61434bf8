//! Text formats.
//!
//! Graphs: a `p <n> <m>` line followed by `m` lines `e <u> <v>` over vertices
//! `1..=n`; the i-th edge line gets edge id `i - 1`; lines starting with `#`
//! and blank lines are ignored.
//!
//! Decompositions: `{"nodes":[{"id":0,"bag":[1,2]},…],"links":[[0,1],…]}`.
//! Node ids may be any distinct non-negative integers; they are mapped to
//! dense ids in ascending order. Output is canonical: nodes, bags and links
//! sorted ascending.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Edge, MultiGraph, Vertex, VertexSet};
use crate::leanness::Certificate;
use crate::tcd::{LinkId, NodeId, TreeCutDecomposition};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<Edge> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let number = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_error(line_no, format!("expected a non-negative integer, found `{s}`")))
        };
        match fields.as_slice() {
            ["p", n, m] => {
                if header.is_some() {
                    return Err(parse_error(line_no, "second `p` line"));
                }
                header = Some((number(n)?, number(m)?, line_no));
            }
            ["e", u, v] => {
                let Some((n, _, _)) = header else {
                    return Err(parse_error(line_no, "edge before the `p` line"));
                };
                let (u, v) = (number(u)?, number(v)?);
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(parse_error(line_no, format!("vertex {x} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(parse_error(line_no, format!("loop at vertex {u}")));
                }
                edges.push(Edge { id: edges.len(), u, v });
            }
            _ => return Err(parse_error(line_no, format!("unrecognised line `{line}`"))),
        }
    }
    let Some((n, m, line_no)) = header else {
        return Err(parse_error(1, "missing `p <n> <m>` line"));
    };
    if edges.len() != m {
        return Err(parse_error(
            line_no,
            format!("header announces {m} edges but {} were given", edges.len()),
        ));
    }
    MultiGraph::new((1..=n).collect::<Vec<_>>(), edges)
}

/// Writes `g` in the graph format; vertices must be exactly `1..=n` and edge
/// ids exactly `0..m` so that ids survive a round trip.
pub fn format_graph(g: &MultiGraph) -> Result<String> {
    let n = g.num_vertices();
    if g.vertices().iter().copied().ne(1..=n) {
        return Err(Error::input("graph vertices must be 1..=n to be written"));
    }
    if g.edges().iter().map(|e| e.id).ne(0..g.num_edges()) {
        return Err(Error::input("edge ids must be 0..m to be written"));
    }
    let mut out = format!("p {} {}\n", n, g.num_edges());
    for e in g.edges() {
        writeln!(out, "e {} {}", e.u, e.v).unwrap();
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeEntry {
    id: u64,
    bag: Vec<Vertex>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionFile {
    nodes: Vec<NodeEntry>,
    links: Vec<[u64; 2]>,
}

/// A decomposition together with the node ids used in its file.
#[derive(Clone, Debug)]
pub struct NamedDecomposition {
    pub decomposition: TreeCutDecomposition,
    /// File id of each dense node id.
    pub node_ids: Vec<u64>,
}

impl NamedDecomposition {
    pub fn name_of(&self, node: NodeId) -> u64 {
        self.node_ids[node.0]
    }
}

/// Parses a decomposition. Syntax problems and duplicate or unknown node ids
/// are parse errors; a link structure that is not a tree is reported as an
/// invalid decomposition.
pub fn parse_decomposition(text: &str) -> Result<NamedDecomposition> {
    let file: DecompositionFile =
        serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
    let mut index: BTreeMap<u64, VertexSet> = BTreeMap::new();
    for node in &file.nodes {
        let bag: VertexSet = node.bag.iter().copied().collect();
        if bag.len() != node.bag.len() {
            return Err(parse_error(1, format!("bag of node {} lists a vertex twice", node.id)));
        }
        if index.insert(node.id, bag).is_some() {
            return Err(parse_error(1, format!("node id {} used twice", node.id)));
        }
    }
    let dense: BTreeMap<u64, usize> = index.keys().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut links = Vec::with_capacity(file.links.len());
    for [x, y] in &file.links {
        let find = |id: &u64| {
            dense
                .get(id)
                .map(|&i| NodeId(i))
                .ok_or_else(|| parse_error(1, format!("link refers to unknown node id {id}")))
        };
        links.push((find(x)?, find(y)?));
    }
    let node_ids: Vec<u64> = index.keys().copied().collect();
    let bags: Vec<VertexSet> = index.into_values().collect();
    Ok(NamedDecomposition { decomposition: TreeCutDecomposition::new(bags, links)?, node_ids })
}

fn number_list<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Canonical text of `d` with dense node ids, one node per line.
pub fn format_decomposition(d: &TreeCutDecomposition) -> String {
    let mut links: Vec<(usize, usize)> =
        d.links().iter().map(|&(x, y)| (x.0.min(y.0), x.0.max(y.0))).collect();
    links.sort_unstable();
    let mut out = String::from("{\"nodes\":[\n");
    for node in d.nodes() {
        let sep = if node.0 + 1 == d.num_nodes() { "" } else { "," };
        writeln!(out, "{{\"id\":{},\"bag\":[{}]}}{sep}", node.0, number_list(d.bag(node))).unwrap();
    }
    out.push_str("],\"links\":[\n");
    for (i, (x, y)) in links.iter().enumerate() {
        let sep = if i + 1 == links.len() { "" } else { "," };
        writeln!(out, "[{x},{y}]{sep}").unwrap();
    }
    out.push_str("]}\n");
    out
}

/// A certificate as JSON, naming each link by its endpoints' file ids.
pub fn certificate_json(cert: &Certificate, d: &NamedDecomposition) -> Value {
    let link = |l: LinkId| {
        let (x, y) = d.decomposition.endpoints(l);
        let (x, y) = (d.name_of(x), d.name_of(y));
        json!([x.min(y), x.max(y)])
    };
    json!({
        "k": cert.k,
        "a": link(cert.a),
        "b": link(cert.b),
        "A": cert.set_a,
        "B": cert.set_b,
        "cut": cert.cut,
    })
}
