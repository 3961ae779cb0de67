//! Rooted trees, the tree order, and normality of (not necessarily spanning)
//! trees inside a host graph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_path, components, neighborhood, reach, Graph, Vertex, VertexSet};

/// A tree given by its root and a parent map on the non-root vertices.
///
/// `u <= v` in the tree order iff `u` lies on the path from the root to `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeRepr", into = "TreeRepr")]
pub struct RootedTree {
    root: Vertex,
    parent: BTreeMap<Vertex, Vertex>,
    depth: BTreeMap<Vertex, usize>,
}

#[derive(Clone, Serialize, Deserialize)]
struct TreeRepr {
    root: Vertex,
    parent: BTreeMap<Vertex, Vertex>,
}

impl TryFrom<TreeRepr> for RootedTree {
    type Error = Error;

    fn try_from(repr: TreeRepr) -> Result<Self> {
        RootedTree::new(repr.root, repr.parent)
    }
}

impl From<RootedTree> for TreeRepr {
    fn from(t: RootedTree) -> Self {
        TreeRepr { root: t.root, parent: t.parent }
    }
}

impl RootedTree {
    /// Validates that iterating `parent` from any vertex reaches `root`.
    pub fn new(root: Vertex, parent: BTreeMap<Vertex, Vertex>) -> Result<Self> {
        if parent.contains_key(&root) {
            return Err(Error::MalformedTree(root));
        }
        let mut depth = BTreeMap::from([(root, 0)]);
        for &start in parent.keys() {
            let mut chain = Vec::new();
            let mut cur = start;
            let base = loop {
                if let Some(&d) = depth.get(&cur) {
                    break d;
                }
                if chain.len() > parent.len() {
                    return Err(Error::MalformedTree(start));
                }
                chain.push(cur);
                cur = *parent.get(&cur).ok_or(Error::MalformedTree(cur))?;
            };
            for (i, v) in chain.into_iter().rev().enumerate() {
                depth.insert(v, base + i + 1);
            }
        }
        Ok(Self { root, parent, depth })
    }

    pub fn singleton(root: Vertex) -> Self {
        Self { root, parent: BTreeMap::new(), depth: BTreeMap::from([(root, 0)]) }
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent.get(&v).copied()
    }

    pub fn parent_map(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.parent
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.depth.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.depth.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.depth.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth.is_empty()
    }

    pub fn depth(&self, v: Vertex) -> Option<usize> {
        self.depth.get(&v).copied()
    }

    /// Tree edges as `(child, parent)`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.parent.iter().map(|(&c, &p)| (c, p))
    }

    pub fn children(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut out: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for (c, p) in self.edges() {
            out.entry(p).or_default().push(c);
        }
        out
    }

    /// Tree order. Unknown vertices are an error.
    pub fn leq(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.require(u)?;
        self.require(v)?;
        Ok(self.leq_known(u, v))
    }

    pub fn comparable(&self, u: Vertex, v: Vertex) -> Result<bool> {
        Ok(self.leq(u, v)? || self.leq(v, u)?)
    }

    /// All `u` with `u <= v`.
    pub fn down_closure(&self, v: Vertex) -> Result<VertexSet> {
        self.require(v)?;
        Ok(self.ancestors(v).collect())
    }

    /// Whether `s` is totally ordered by the tree order.
    pub fn is_chain(&self, s: &VertexSet) -> Result<bool> {
        s.iter().try_for_each(|&v| self.require(v))?;
        Ok(self.first_incomparable(s).is_none())
    }

    /// Grows the tree by a new leaf `child` below `parent`.
    pub(crate) fn push_leaf(&mut self, child: Vertex, parent: Vertex) {
        debug_assert!(!self.contains(child) && self.contains(parent));
        let d = self.depth[&parent] + 1;
        self.parent.insert(child, parent);
        self.depth.insert(child, d);
    }

    pub(crate) fn require(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// `v` followed by its ancestors up to the root.
    pub(crate) fn ancestors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::successors(Some(v), move |x| self.parent(*x))
    }

    pub(crate) fn leq_known(&self, u: Vertex, v: Vertex) -> bool {
        let (du, dv) = (self.depth[&u], self.depth[&v]);
        du <= dv && self.ancestors(v).nth(dv - du) == Some(u)
    }

    pub(crate) fn comparable_known(&self, u: Vertex, v: Vertex) -> bool {
        self.leq_known(u, v) || self.leq_known(v, u)
    }

    /// Least incomparable pair of `s` in lexicographic order, if any.
    pub(crate) fn first_incomparable(&self, s: &VertexSet) -> Option<(Vertex, Vertex)> {
        // a set is a chain iff it is one when sorted by depth
        let mut by_depth: Vec<Vertex> = s.iter().copied().collect();
        by_depth.sort_by_key(|v| (self.depth[v], *v));
        let chain = by_depth.windows(2).all(|w| self.leq_known(w[0], w[1]));
        if chain {
            return None;
        }
        s.iter().find_map(|&a| s.range(a + 1..).find(|&&b| !self.comparable_known(a, b)).map(|&b| (a, b)))
    }

    /// The `<=`-greatest element of a chain.
    pub(crate) fn top_of_chain(&self, s: &VertexSet) -> Option<Vertex> {
        s.iter().copied().max_by_key(|v| self.depth[v])
    }
}

/// A `T`-path whose ends are incomparable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub u: Vertex,
    pub v: Vertex,
    pub path: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub normal: bool,
    pub witness: Option<Violation>,
}

pub fn tree_leq(t: &RootedTree, u: Vertex, v: Vertex) -> Result<bool> {
    t.leq(u, v)
}

pub fn down_closure(t: &RootedTree, v: Vertex) -> Result<VertexSet> {
    t.down_closure(v)
}

pub fn is_chain(t: &RootedTree, s: &VertexSet) -> Result<bool> {
    t.is_chain(s)
}

/// Checks every tree vertex and tree edge against `g`.
pub(crate) fn check_embedded(g: &Graph, t: &RootedTree) -> Result<()> {
    g.require_all(t.depth.keys())?;
    for (child, parent) in t.edges() {
        if !g.has_edge(child, parent) {
            return Err(Error::TreeEdgeMissing { child, parent });
        }
    }
    Ok(())
}

/// Decides whether `t` is normal in `g`: every `T`-path has comparable ends.
///
/// A `T`-path is either a chord between two tree vertices or runs through a
/// single component `D` of `g - t`, so it suffices to check chords and that
/// every `N(D)` is a chain.
pub fn is_normal(g: &Graph, t: &RootedTree) -> Result<NormalityReport> {
    check_embedded(g, t)?;
    for (u, v) in g.edges() {
        if t.contains(u) && t.contains(v) && !t.comparable_known(u, v) {
            return Ok(NormalityReport { normal: false, witness: Some(Violation { u, v, path: vec![u, v] }) });
        }
    }
    let tree = t.vertex_set();
    for d in components(g, &tree) {
        let nd = neighborhood(g, &d, &tree)?;
        if let Some((u, v)) = t.first_incomparable(&nd) {
            let path =
                bfs_path(g, u, v, |x| d.contains(&x)).expect("two neighbours of a component are joined through it");
            return Ok(NormalityReport { normal: false, witness: Some(Violation { u, v, path }) });
        }
    }
    Ok(NormalityReport { normal: true, witness: None })
}

/// Whether `down_closure(u) ∩ down_closure(v)` separates the incomparable
/// vertices `u` and `v` in `g`. Always true when `t` is normal.
pub fn separates_incomparable(g: &Graph, t: &RootedTree, u: Vertex, v: Vertex) -> Result<bool> {
    check_embedded(g, t)?;
    if t.comparable(u, v)? {
        return Err(Error::Comparable(u, v));
    }
    let du = t.down_closure(u)?;
    let common: VertexSet = t.ancestors(v).filter(|x| du.contains(x)).collect();
    Ok(!reach(g, u, |x| !common.contains(&x)).contains(&v))
}
