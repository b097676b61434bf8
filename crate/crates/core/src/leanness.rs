//! Leanness of a tree-cut decomposition and minimal certificates of its
//! failure.
//!
//! For a link pair `(a, b)` and size `k`, a violation is a pair of `k`-subsets
//! `A ⊆ adh(a)`, `B ⊆ adh(b)` with fewer than `k` edge-disjoint linking paths,
//! while every link on the tree path from `a` to `b` has adhesion at least
//! `k`. Subsets are enumerated up to permutations of parallel edges, which
//! act on the whole problem as graph automorphisms.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, MultiGraph};
use crate::linkage::{max_linking_paths, min_cut_lex};
use crate::tcd::{Adhesions, LinkId, TreeCutDecomposition};

pub const DEFAULT_MAX_ADH_ENUM: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeannessConfig {
    /// Largest adhesion whose subsets are enumerated when the full-adhesion
    /// flow does not already settle a link pair.
    pub max_adh_enum: usize,
}

impl Default for LeannessConfig {
    fn default() -> Self {
        Self { max_adh_enum: DEFAULT_MAX_ADH_ENUM }
    }
}

/// A witness that a decomposition is not lean, with a small `(A, B)`-cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub k: usize,
    pub a: LinkId,
    pub b: LinkId,
    pub set_a: EdgeSet,
    pub set_b: EdgeSet,
    pub cut: EdgeSet,
}

/// Whether `(k, a, b, A, B)` witnesses non-leanness.
pub fn violates(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    k: usize,
    a: LinkId,
    b: LinkId,
    set_a: &EdgeSet,
    set_b: &EdgeSet,
) -> Result<bool> {
    for l in [a, b] {
        if !d.has_link(l) {
            return Err(Error::input(format!("unknown link {}", l.0)));
        }
    }
    if k == 0 || set_a.len() != k || set_b.len() != k {
        return Err(Error::input(format!(
            "subsets must both have size k = {k}, got {} and {}",
            set_a.len(),
            set_b.len()
        )));
    }
    if !set_a.is_subset(&d.adhesion(g, a)?) || !set_b.is_subset(&d.adhesion(g, b)?) {
        return Err(Error::input("subsets must lie in the adhesions of their links"));
    }
    let adh = d.adhesions(g);
    if d.link_path(a, b).iter().any(|&c| adh.size(c) < k) {
        return Ok(false);
    }
    Ok(max_linking_paths(g, set_a, set_b)?.count < k)
}

/// The first violation in search order, without its cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub k: usize,
    pub a: LinkId,
    pub b: LinkId,
    pub set_a: EdgeSet,
    pub set_b: EdgeSet,
}

struct Search<'a> {
    g: &'a MultiGraph,
    d: &'a TreeCutDecomposition,
    adh: Adhesions,
    cfg: LeannessConfig,
    /// Parallel class index of each edge.
    class_of: HashMap<EdgeId, usize>,
    full_flow: HashMap<(LinkId, LinkId), usize>,
    memo: HashMap<(Vec<EdgeId>, Vec<EdgeId>), usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a MultiGraph, d: &'a TreeCutDecomposition, cfg: LeannessConfig) -> Result<Self> {
        d.validate(g)?;
        let mut class_of = HashMap::new();
        for (i, ids) in g.parallel_classes().into_values().enumerate() {
            for e in ids {
                class_of.insert(e, i);
            }
        }
        Ok(Self { g, d, adh: d.adhesions(g), cfg, class_of, full_flow: HashMap::new(), memo: HashMap::new() })
    }

    fn pairs(&self) -> Vec<(usize, LinkId, LinkId)> {
        let links: Vec<LinkId> = self.d.link_ids().collect();
        let mut pairs = Vec::new();
        for (i, &a) in links.iter().enumerate() {
            for &b in &links[i..] {
                pairs.push((self.d.link_distance(a, b), a, b));
            }
        }
        pairs.sort();
        pairs
    }

    fn flow(&mut self, set_a: &EdgeSet, set_b: &EdgeSet) -> Result<usize> {
        let key = (set_a.iter().copied().collect(), set_b.iter().copied().collect());
        if let Some(&c) = self.memo.get(&key) {
            return Ok(c);
        }
        let c = max_linking_paths(self.g, set_a, set_b)?.count;
        self.memo.insert(key, c);
        Ok(c)
    }

    fn run(&mut self) -> Result<Option<Witness>> {
        let pairs = self.pairs();
        let max_k = self.adh.sizes().into_iter().max().unwrap_or(0);
        for k in 1..=max_k {
            for &(_, a, b) in &pairs {
                if let Some(v) = self.check_pair(k, a, b)? {
                    return Ok(Some(v));
                }
            }
        }
        Ok(None)
    }

    fn check_pair(&mut self, k: usize, a: LinkId, b: LinkId) -> Result<Option<Witness>> {
        let adh_a = self.adh.get(a).clone();
        let adh_b = self.adh.get(b).clone();
        if adh_a.len() < k || adh_b.len() < k {
            return Ok(None);
        }
        if self.d.link_path(a, b).iter().any(|&c| self.adh.size(c) < k) {
            return Ok(None);
        }
        let full = match self.full_flow.get(&(a, b)) {
            Some(&c) => c,
            None => {
                let c = self.flow(&adh_a, &adh_b)?;
                self.full_flow.insert((a, b), c);
                c
            }
        };
        if full < k {
            // every k-subset pair violates; report the smallest
            return Ok(Some(Witness {
                k,
                a,
                b,
                set_a: adh_a.iter().take(k).copied().collect(),
                set_b: adh_b.iter().take(k).copied().collect(),
            }));
        }
        for (link, set) in [(a, &adh_a), (b, &adh_b)] {
            if set.len() > self.cfg.max_adh_enum {
                return Err(Error::Undecided { link: link.0, size: set.len(), bound: self.cfg.max_adh_enum });
            }
        }
        let list_a: Vec<EdgeId> = adh_a.iter().copied().collect();
        let list_b: Vec<EdgeId> = adh_b.iter().copied().collect();
        let mut comb_a = Combinations::new(list_a.len(), k);
        while let Some(ia) = comb_a.next_indices() {
            let set_a: EdgeSet = ia.iter().map(|&i| list_a[i]).collect();
            if !self.canonical(&set_a, &EdgeSet::new(), &list_a) {
                continue;
            }
            let mut comb_b = Combinations::new(list_b.len(), k);
            while let Some(ib) = comb_b.next_indices() {
                let set_b: EdgeSet = ib.iter().map(|&i| list_b[i]).collect();
                if !self.canonical(&set_b, &set_a, &list_b) {
                    continue;
                }
                if self.flow(&set_a, &set_b)? < k {
                    return Ok(Some(Witness { k, a, b, set_a, set_b }));
                }
            }
        }
        Ok(None)
    }

    /// Whether `chosen ⊆ universe` is the lexicographically smallest set in
    /// its orbit under permutations of parallel edges that fix `fixed`
    /// setwise: within each class and each side of `fixed`, the chosen edges
    /// must be the smallest ones.
    fn canonical(&self, chosen: &EdgeSet, fixed: &EdgeSet, universe: &[EdgeId]) -> bool {
        // per (class, in fixed): has an unchosen edge been seen yet
        let mut gap: BTreeMap<(usize, bool), bool> = BTreeMap::new();
        for &e in universe {
            let key = (self.class_of[&e], fixed.contains(&e));
            let seen_gap = gap.entry(key).or_insert(false);
            if chosen.contains(&e) {
                if *seen_gap {
                    return false;
                }
            } else {
                *seen_gap = true;
            }
        }
        true
    }
}

/// Lexicographic `k`-combinations of `0..n`.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
    started: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Self { n, current, started: false }
    }

    fn next_indices(&mut self) -> Option<Vec<usize>> {
        if !self.started {
            self.started = true;
            return self.current.clone();
        }
        let c = self.current.as_mut()?;
        let k = c.len();
        let Some(i) = (0..k).rev().find(|&i| c[i] != i + self.n - k) else {
            self.current = None;
            return None;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
        Some(c.clone())
    }
}

/// The first violation in the order: `k`, link distance, link pair, `A`, `B`.
pub fn find_minimal_violation(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    cfg: LeannessConfig,
) -> Result<Option<Witness>> {
    Search::new(g, d, cfg)?.run()
}

pub fn is_lean(g: &MultiGraph, d: &TreeCutDecomposition, cfg: LeannessConfig) -> Result<bool> {
    Ok(find_minimal_violation(g, d, cfg)?.is_none())
}

/// The minimal violation together with a minimum cut that, among minimum
/// cuts, lies closest to the tree path between its links.
pub fn find_minimal_certificate(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    cfg: LeannessConfig,
) -> Result<Option<Certificate>> {
    let Some(v) = find_minimal_violation(g, d, cfg)? else {
        return Ok(None);
    };
    let cut = min_cut_lex(g, d, v.a, v.b, &v.set_a, &v.set_b)?;
    Ok(Some(Certificate { k: v.k, a: v.a, b: v.b, set_a: v.set_a, set_b: v.set_b, cut }))
}
