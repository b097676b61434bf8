//! Making a decomposition lean without increasing its width.
//!
//! On 3-edge-connected graphs a non-lean decomposition is repaired by
//! *segregation*: a small cut `F` for a minimal violation splits the graph
//! into two sides, and the tree is doubled so each copy holds one side. The
//! fatness strictly drops, so iterating reaches a lean decomposition. Other
//! graphs are split along a minimum cut of order at most two, both halves are
//! made lean recursively, and the results are joined by a single link.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, MultiGraph, Vertex, VertexSet};
use crate::leanness::{find_minimal_certificate, Certificate, LeannessConfig};
use crate::tcd::{Fatness, LinkId, NodeId, TreeCutDecomposition};

/// How the links and nodes of a segregation relate to the original tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegregationMap {
    /// Original node → (copy in the first tree, copy in the second tree).
    pub node_copies: Vec<(NodeId, NodeId)>,
    /// Original link → (copy in the first tree, copy in the second tree).
    /// For `b` the first copy is the half nearer `a`; for `a` the second copy
    /// is the half nearer `b`.
    pub link_copies: Vec<(LinkId, LinkId)>,
    pub s1: NodeId,
    pub s2: NodeId,
    /// The half of `a` in the second tree away from `b`.
    pub a2_prime: LinkId,
    /// The half of `b` in the first tree away from `a`.
    pub b1_prime: LinkId,
    pub joining: LinkId,
}

impl SegregationMap {
    /// The original link a new link descends from; `a'_2` maps to `a` and
    /// `b'_1` to `b`, and the joining link has none.
    pub fn original_of(&self, link: LinkId, a: LinkId, b: LinkId) -> Option<LinkId> {
        if link == self.a2_prime {
            return Some(a);
        }
        if link == self.b1_prime {
            return Some(b);
        }
        self.link_copies.iter().position(|&(x, y)| x == link || y == link).map(LinkId)
    }
}

/// Endpoints of `link` ordered as (nearer `other`, farther from `other`).
/// When `link == other` the smaller node id comes first.
fn oriented(d: &TreeCutDecomposition, link: LinkId, other: LinkId) -> (NodeId, NodeId) {
    let (p, q) = d.endpoints(link);
    let (p, q) = if p < q { (p, q) } else { (q, p) };
    if link == other {
        return (p, q);
    }
    let (x, y) = d.endpoints(other);
    let dist = |n: NodeId| d.node_path(n, x).len().min(d.node_path(n, y).len());
    if dist(p) <= dist(q) {
        (p, q)
    } else {
        (q, p)
    }
}

/// The `(a, b, V1, V2)`-segregation of `d`: two copies of the tree, the
/// first with `b` subdivided by `s1` and holding `V1`, the second with `a`
/// subdivided by `s2` and holding `V2`, joined by the link `s1s2`.
pub fn segregation(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    a: LinkId,
    b: LinkId,
    v1: &VertexSet,
    v2: &VertexSet,
) -> Result<(TreeCutDecomposition, SegregationMap)> {
    for l in [a, b] {
        if !d.has_link(l) {
            return Err(Error::input(format!("unknown link {}", l.0)));
        }
    }
    let all: VertexSet = g.vertices().iter().copied().collect();
    let union: VertexSet = v1.union(v2).copied().collect();
    if !v1.is_disjoint(v2) || union != all {
        return Err(Error::input("the two vertex sets must partition the graph's vertices"));
    }
    let n = d.num_nodes();
    let l = d.num_links();
    let first = |x: NodeId| NodeId(x.0);
    let second = |x: NodeId| NodeId(n + x.0);
    let s1 = NodeId(2 * n);
    let s2 = NodeId(2 * n + 1);

    let mut bags: Vec<VertexSet> = Vec::with_capacity(2 * n + 2);
    bags.extend(d.bags().iter().map(|bag| bag.intersection(v1).copied().collect()));
    bags.extend(d.bags().iter().map(|bag| bag.intersection(v2).copied().collect()));
    bags.push(VertexSet::new());
    bags.push(VertexSet::new());

    let (b_near, b_far) = oriented(d, b, a);
    let (a_far, a_near) = {
        // for a == b the second copy is split the other way round
        let (near, far) = oriented(d, a, b);
        if a == b {
            (near, far)
        } else {
            (far, near)
        }
    };
    let mut links: Vec<(NodeId, NodeId)> = Vec::with_capacity(2 * l + 3);
    for e in d.link_ids() {
        let (x, y) = d.endpoints(e);
        links.push(if e == b { (first(b_near), s1) } else { (first(x), first(y)) });
    }
    for e in d.link_ids() {
        let (x, y) = d.endpoints(e);
        links.push(if e == a { (s2, second(a_near)) } else { (second(x), second(y)) });
    }
    let b1_prime = LinkId(links.len());
    links.push((s1, first(b_far)));
    let a2_prime = LinkId(links.len());
    links.push((second(a_far), s2));
    let joining = LinkId(links.len());
    links.push((s1, s2));

    let segregated = TreeCutDecomposition::new(bags, links)?;
    let map = SegregationMap {
        node_copies: d.nodes().map(|x| (first(x), second(x))).collect(),
        link_copies: d.link_ids().map(|e| (LinkId(e.0), LinkId(l + e.0))).collect(),
        s1,
        s2,
        a2_prime,
        b1_prime,
        joining,
    };
    Ok((segregated, map))
}

/// One improvement step with the adhesion sizes on both sides of it.
#[derive(Clone, Debug)]
pub struct Step {
    pub certificate: Certificate,
    pub distance: usize,
    /// Vertex sets of the two components of `g - F`: the side of `A`, then
    /// the side of `B`.
    pub sides: (VertexSet, VertexSet),
    pub decomposition: TreeCutDecomposition,
    pub map: SegregationMap,
    pub width_before: usize,
    pub width_after: usize,
    pub fatness_before: Fatness,
    pub fatness_after: Fatness,
    adhesion_before: Vec<usize>,
    adhesion_after: Vec<usize>,
}

impl Step {
    /// Whether original link `e` is `p`-excessive for this step: its
    /// adhesion has at least `p` edges and strictly more than both copies.
    pub fn is_p_excessive(&self, e: LinkId, p: usize) -> Result<bool> {
        let Some(&(c1, c2)) = self.map.link_copies.get(e.0) else {
            return Err(Error::input(format!("link {} is not a link of the original tree", e.0)));
        };
        let size = self.adhesion_before[e.0];
        Ok(size >= p && size > self.adhesion_after[c1.0] && size > self.adhesion_after[c2.0])
    }

    pub fn summary(&self) -> StepSummary {
        StepSummary {
            k: self.certificate.k,
            distance: self.distance,
            cut_size: self.certificate.cut.len(),
            width: self.width_after,
            fatness_position: self.fatness_before.first_difference(&self.fatness_after),
        }
    }
}

/// The fields of a step that go into a trace line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepSummary {
    pub k: usize,
    pub distance: usize,
    pub cut_size: usize,
    pub width: usize,
    /// First position where the fatness vectors before and after differ.
    pub fatness_position: Option<usize>,
}

/// Checks that the segregation of a step shrinks every adhesion copy, keeps
/// the width, and lowers the fatness.
fn check_step(step: &Step, a: LinkId, b: LinkId) -> Result<()> {
    let before = &step.adhesion_before;
    let after = &step.adhesion_after;
    for (e, &(c1, c2)) in step.map.link_copies.iter().enumerate() {
        for c in [c1, c2] {
            if after[c.0] > before[e] {
                return Err(Error::invariant(format!(
                    "copy {} of link {e} has adhesion {} > {}",
                    c.0, after[c.0], before[e]
                )));
            }
        }
    }
    if after[step.map.a2_prime.0] > before[a.0] || after[step.map.b1_prime.0] > before[b.0] {
        return Err(Error::invariant("a subdivided half has a larger adhesion than its link"));
    }
    if step.width_after > step.width_before {
        return Err(Error::invariant(format!(
            "width increased from {} to {}",
            step.width_before, step.width_after
        )));
    }
    if step.fatness_after.compare(&step.fatness_before)? != Ordering::Less {
        return Err(Error::invariant(format!(
            "fatness did not decrease: {} then {}",
            step.fatness_before, step.fatness_after
        )));
    }
    Ok(())
}

/// Segregates along a minimal non-leanness certificate, or returns `None`
/// when `d` is already lean.
pub fn improvement_step(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    cfg: LeannessConfig,
) -> Result<Option<Step>> {
    if !g.is_k_edge_connected(3) {
        return Err(Error::precondition("improvement steps need a 3-edge-connected graph"));
    }
    d.validate(g)?;
    let Some(certificate) = find_minimal_certificate(g, d, cfg)? else {
        return Ok(None);
    };
    let cut = &certificate.cut;
    let components = g.without_edges(cut).connected_components();
    if components.len() != 2 {
        return Err(Error::invariant(format!(
            "removing the certificate cut left {} components instead of 2",
            components.len()
        )));
    }
    let holds = |side: &VertexSet, set: &EdgeSet| {
        set.iter().filter(|e| !cut.contains(e)).all(|&e| {
            let edge = g.edge(e).expect("certificate edges exist");
            side.contains(&edge.u) && side.contains(&edge.v)
        })
    };
    let fits: Vec<bool> = components.iter().map(|c| holds(c, &certificate.set_a)).collect();
    let side_a = match fits.as_slice() {
        [true, false] => 0,
        [false, true] => 1,
        _ => return Err(Error::invariant("cannot tell which side of the cut holds A")),
    };
    let v_a = components[side_a].clone();
    let v_b = components[1 - side_a].clone();
    if !holds(&v_b, &certificate.set_b) {
        return Err(Error::invariant("B does not lie on the side opposite to A"));
    }
    let (a, b) = (certificate.a, certificate.b);
    let (next, map) = segregation(g, d, a, b, &v_a, &v_b)?;
    let adh_before = d.adhesions(g);
    let adh_after = next.adhesions(g);
    let m = g.num_edges();
    let step = Step {
        distance: d.link_distance(a, b),
        sides: (v_a, v_b),
        width_before: d.width_with(&adh_before),
        width_after: next.width_with(&adh_after),
        fatness_before: Fatness::from_adhesions(d, &adh_before, m),
        fatness_after: Fatness::from_adhesions(&next, &adh_after, m),
        adhesion_before: adh_before.sizes(),
        adhesion_after: adh_after.sizes(),
        decomposition: next,
        map,
        certificate,
    };
    check_step(&step, a, b)?;
    Ok(Some(step))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LeanifyConfig {
    pub leanness: LeannessConfig,
    /// Guard on improvement steps per 3-edge-connected piece; defaults to
    /// `10 · 2m · (width + 1)`.
    pub max_iters: Option<usize>,
}

/// A lean decomposition with the record of how it was reached.
#[derive(Clone, Debug)]
pub struct Leanified {
    pub decomposition: TreeCutDecomposition,
    pub steps: Vec<StepSummary>,
    /// Fatness before the first step and after every step.
    pub fatness_trace: Vec<Fatness>,
    /// Number of splits along cuts of order at most two.
    pub splits: usize,
}

pub fn default_max_iters(g: &MultiGraph, d: &TreeCutDecomposition) -> usize {
    10 * (2 * g.num_edges()).max(1) * (d.width(g) + 1)
}

/// Improves `d` until it is lean. Branches with only empty bags are removed
/// after each step; they carry no adhesion, so width, fatness and leanness
/// are unaffected.
pub fn leanify_3ec(g: &MultiGraph, d: &TreeCutDecomposition, cfg: LeanifyConfig) -> Result<Leanified> {
    leanify_3ec_observed(g, d, cfg, &mut |_, _, _| {})
}

/// [`leanify_3ec`], handing every step to `observe` together with the graph
/// and the decomposition it started from.
pub fn leanify_3ec_observed(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    cfg: LeanifyConfig,
    observe: &mut dyn FnMut(&MultiGraph, &TreeCutDecomposition, &Step),
) -> Result<Leanified> {
    d.validate(g)?;
    let limit = cfg.max_iters.unwrap_or_else(|| default_max_iters(g, d));
    let mut current = d.clone();
    let mut steps = Vec::new();
    let mut trace = vec![current.fatness(g)];
    while let Some(step) = improvement_step(g, &current, cfg.leanness)? {
        if steps.len() == limit {
            return Err(Error::IterationLimit { limit, partial: Box::new(current), trace });
        }
        observe(g, &current, &step);
        steps.push(step.summary());
        trace.push(step.fatness_after.clone());
        current = step.decomposition.prune_empty_branches();
    }
    Ok(Leanified { decomposition: current, steps, fatness_trace: trace, splits: 0 })
}

/// Makes `d` (or the trivial decomposition) lean without increasing its
/// width, splitting along cuts of order at most two where they exist.
pub fn leanify(g: &MultiGraph, d: Option<&TreeCutDecomposition>, cfg: LeanifyConfig) -> Result<Leanified> {
    leanify_observed(g, d, cfg, &mut |_, _, _| {})
}

pub fn leanify_observed(
    g: &MultiGraph,
    d: Option<&TreeCutDecomposition>,
    cfg: LeanifyConfig,
    observe: &mut dyn FnMut(&MultiGraph, &TreeCutDecomposition, &Step),
) -> Result<Leanified> {
    if !g.is_connected() {
        return Err(Error::precondition("leanify needs a connected graph"));
    }
    let start = match d {
        Some(d) => {
            d.validate(g)?;
            d.clone()
        }
        None => TreeCutDecomposition::trivial(g),
    };
    let result = recurse(g, &start, cfg, observe)?;
    let (before, after) = (start.width(g), result.decomposition.width(g));
    if after > before {
        return Err(Error::invariant(format!("leanify raised the width from {before} to {after}")));
    }
    Ok(result)
}

fn recurse(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    cfg: LeanifyConfig,
    observe: &mut dyn FnMut(&MultiGraph, &TreeCutDecomposition, &Step),
) -> Result<Leanified> {
    if g.num_vertices() <= 1 {
        let trivial = TreeCutDecomposition::trivial(g);
        let trace = vec![trivial.fatness(g)];
        return Ok(Leanified { decomposition: trivial, steps: Vec::new(), fatness_trace: trace, splits: 0 });
    }
    let min_cut = g.global_min_cut()?;
    if min_cut.cut.len() > 2 {
        return leanify_3ec_observed(g, d, cfg, observe);
    }
    let split = g.split_along_cut(&min_cut)?;
    let width = d.width(g);
    let mut parts = Vec::with_capacity(2);
    for part in &split.parts {
        let keep: VertexSet = part.vertices().iter().copied().collect();
        let projected = d.project(&keep).prune_empty_branches();
        let w = projected.width(part);
        if w > width {
            return Err(Error::invariant(format!(
                "projection onto a side of a small cut has width {w} > {width}"
            )));
        }
        parts.push(recurse(part, &projected, cfg, observe)?);
    }
    let second = parts.pop().unwrap();
    let first = parts.pop().unwrap();
    merge(g, &split, first, second)
}

/// Joins the lean decompositions of the two sides by a link between the
/// nodes holding the anchors, then checks every adhesion against its side's.
fn merge(
    g: &MultiGraph,
    split: &crate::graph::Split,
    first: Leanified,
    second: Leanified,
) -> Result<Leanified> {
    let d1 = &first.decomposition;
    let d2 = &second.decomposition;
    let offset = d1.num_nodes();
    let mut bags: Vec<VertexSet> = d1.bags().to_vec();
    bags.extend(d2.bags().iter().cloned());
    let mut links: Vec<(NodeId, NodeId)> = d1.links().to_vec();
    links.extend(d2.links().iter().map(|&(x, y)| (NodeId(x.0 + offset), NodeId(y.0 + offset))));
    let locate = |d: &TreeCutDecomposition, v: Vertex| {
        d.node_of(v).ok_or_else(|| Error::invariant(format!("anchor {v} missing from its side")))
    };
    let t1 = locate(d1, split.anchors[0])?;
    let t2 = NodeId(locate(d2, split.anchors[1])?.0 + offset);
    links.push((t1, t2));
    let merged = TreeCutDecomposition::new(bags, links)?;
    merged.validate(g)?;

    // Inside a side, the virtual edge stands for the cut edge not incident
    // to the anchor: that edge's tree path runs from its endpoint's node to
    // the anchor's node, exactly like the virtual edge's.
    let anchor_edge = *split.cut.iter().next().expect("cut is nonempty");
    let stand_in: Option<EdgeId> = split.cut.iter().copied().find(|&e| e != anchor_edge);
    let adh = merged.adhesions(g);
    for (side, (part, d_side)) in split.parts.iter().zip([d1, d2]).enumerate() {
        let virtual_id = split.virtual_edges[side].map(|e| e.id);
        let shift = if side == 0 { 0 } else { d1.num_links() };
        for l in d_side.link_ids() {
            let translated: EdgeSet = d_side
                .adhesion(part, l)?
                .into_iter()
                .map(|e| if Some(e) == virtual_id { stand_in.expect("two cut edges") } else { e })
                .collect();
            if adh.get(LinkId(l.0 + shift)) != &translated {
                return Err(Error::invariant(format!(
                    "adhesion of link {} changed when joining the sides",
                    l.0 + shift
                )));
            }
        }
    }
    let joining = LinkId(merged.num_links() - 1);
    if adh.get(joining) != &split.cut {
        return Err(Error::invariant("joining link does not carry exactly the cut"));
    }
    let mut steps = first.steps;
    steps.extend(second.steps);
    let mut fatness_trace = first.fatness_trace;
    fatness_trace.extend(second.fatness_trace);
    Ok(Leanified { decomposition: merged, steps, fatness_trace, splits: first.splits + second.splits + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::leanness::is_lean;
    use crate::oracle::naive_is_lean_with_cap;

    fn set(xs: &[usize]) -> VertexSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn segregation_shape() {
        let g = fixtures::barbell3ec();
        let d = fixtures::interleaved_path();
        let (s, map) = segregation(&g, &d, LinkId(0), LinkId(2), &set(&[1, 2]), &set(&[3, 4])).unwrap();
        assert_eq!(s.num_nodes(), 2 * d.num_nodes() + 2);
        assert_eq!(s.num_links(), 2 * d.num_links() + 3);
        s.validate(&g).unwrap();
        let cross = g.edges_between(&set(&[1, 2]), &set(&[3, 4])).unwrap();
        assert_eq!(s.adhesion(&g, map.joining).unwrap(), cross);
        assert_eq!(map.original_of(map.a2_prime, LinkId(0), LinkId(2)), Some(LinkId(0)));
        assert_eq!(map.original_of(map.joining, LinkId(0), LinkId(2)), None);
        // b's first copy is the half nearer a
        let (x, y) = s.endpoints(map.link_copies[2].0);
        assert!(x == map.s1 || y == map.s1);
        let near = if x == map.s1 { y } else { x };
        assert_eq!(near, NodeId(2));
    }

    #[test]
    fn segregation_degenerate_partition() {
        let g = fixtures::k4();
        let d = TreeCutDecomposition::new(
            vec![set(&[1]), set(&[2, 3]), set(&[4])],
            vec![(NodeId(0), NodeId(1)), (NodeId(1), NodeId(2))],
        )
        .unwrap();
        let all = set(&[1, 2, 3, 4]);
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let (s, map) = segregation(&g, &d, LinkId(a), LinkId(b), &all, &VertexSet::new()).unwrap();
            s.validate(&g).unwrap();
            for (e, &(c1, _)) in map.link_copies.iter().enumerate() {
                assert_eq!(s.adhesion(&g, c1).unwrap(), d.adhesion(&g, LinkId(e)).unwrap());
            }
            for &(_, c2) in &map.node_copies {
                assert!(s.bag(c2).is_empty());
            }
        }
        assert!(segregation(&g, &d, LinkId(0), LinkId(1), &set(&[1, 2]), &set(&[2, 3, 4])).is_err());
    }

    #[test]
    fn barbell_step() {
        let g = fixtures::barbell3ec();
        let d = fixtures::interleaved_path();
        let step = improvement_step(&g, &d, LeannessConfig::default()).unwrap().unwrap();
        assert_eq!(step.certificate.k, 4);
        assert!(step.width_after <= 10);
        assert_eq!(step.fatness_after.compare(&step.fatness_before).unwrap(), Ordering::Less);
        assert!(step.is_p_excessive(LinkId(99), 1).is_err());
    }

    #[test]
    fn barbell_leanify_3ec() {
        let g = fixtures::barbell3ec();
        let d = fixtures::interleaved_path();
        let out = leanify_3ec(&g, &d, LeanifyConfig::default()).unwrap();
        assert!(out.decomposition.width(&g) <= 10);
        assert!(is_lean(&g, &out.decomposition, LeannessConfig::default()).unwrap());
        assert!(naive_is_lean_with_cap(&g, &out.decomposition, 10).unwrap());
        for w in out.fatness_trace.windows(2) {
            assert_eq!(w[1].compare(&w[0]).unwrap(), Ordering::Less);
        }
        // a lean input is returned unchanged
        let again = leanify_3ec(&g, &out.decomposition, LeanifyConfig::default()).unwrap();
        assert!(again.steps.is_empty());
        assert_eq!(again.decomposition, out.decomposition);
    }

    #[test]
    fn interleave4_splits_along_bridge() {
        let g = fixtures::interleave4();
        let d = fixtures::interleaved_path();
        let out = leanify(&g, Some(&d), LeanifyConfig::default()).unwrap();
        assert_eq!(out.splits, 1);
        let r = &out.decomposition;
        let joining = LinkId(r.num_links() - 1);
        assert_eq!(r.adhesion(&g, joining).unwrap(), [6].into_iter().collect());
        assert!(r.width(&g) <= d.width(&g));
        assert!(naive_is_lean_with_cap(&g, r, 8).unwrap());
    }

    #[test]
    fn rejects_disconnected_and_low_connectivity() {
        let g = MultiGraph::from_pairs(1..=4, &[(1, 2), (3, 4)]).unwrap();
        assert!(matches!(leanify(&g, None, LeanifyConfig::default()), Err(Error::Precondition(_))));
        let c4 = fixtures::c4();
        let err = improvement_step(&c4, &fixtures::c4_two_bags(), LeannessConfig::default());
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn iteration_guard() {
        let g = fixtures::barbell3ec();
        let cfg = LeanifyConfig { max_iters: Some(0), ..Default::default() };
        match leanify_3ec(&g, &fixtures::interleaved_path(), cfg) {
            Err(Error::IterationLimit { limit: 0, trace, .. }) => assert_eq!(trace.len(), 1),
            other => panic!("expected the guard to fire, got {other:?}"),
        }
    }
}
