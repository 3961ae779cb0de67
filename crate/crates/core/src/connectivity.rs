//! Menger connectivity: independent path families and minimum separators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{EdgeArcs, VertexFlow};
use crate::graph::{Graph, Vertex, VertexSet};

/// A path given by its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<Vertex>);

impl Path {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Self(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn start(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn end(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    /// Vertices strictly between the two ends.
    pub fn interior(&self) -> &[Vertex] {
        match self.0.len() {
            0..=2 => &[],
            n => &self.0[1..n - 1],
        }
    }

    /// Number of edges.
    pub fn edge_len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Non-empty, no repeated vertex, consecutive vertices adjacent in `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let distinct = self.0.iter().collect::<std::collections::BTreeSet<_>>().len() == self.0.len();
        !self.0.is_empty() && distinct && g.contains(self.0[0]) && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

impl From<Vec<Vertex>> for Path {
    fn from(v: Vec<Vertex>) -> Self {
        Self(v)
    }
}

/// Whether the paths pairwise share no interior vertex and no interior
/// vertex of one is an end of another.
pub fn are_independent(paths: &[Path]) -> bool {
    let ends: VertexSet = paths.iter().flat_map(|p| p.start().into_iter().chain(p.end())).collect();
    let mut seen = VertexSet::new();
    paths.iter().flat_map(|p| p.interior()).all(|x| !ends.contains(x) && seen.insert(*x))
}

/// Independent `v`-`w` paths in their canonical order; indices start at 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFamily {
    pub source: Vertex,
    pub target: Vertex,
    paths: Vec<Path>,
}

impl PathFamily {
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// The path with 1-based `index`.
    pub fn get(&self, index: usize) -> Option<&Path> {
        index.checked_sub(1).and_then(|i| self.paths.get(i))
    }

    /// The least-index member meeting `set`, with its index.
    pub fn first_meeting(&self, set: &VertexSet) -> Option<(usize, &Path)> {
        self.paths
            .iter()
            .enumerate()
            .find(|(_, p)| p.vertices().iter().any(|x| set.contains(x)))
            .map(|(i, p)| (i + 1, p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separator {
    pub vertices: VertexSet,
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

fn check_pair(g: &Graph, v: Vertex, w: Vertex) -> Result<()> {
    g.require(v)?;
    g.require(w)?;
    if v == w {
        return Err(Error::SameVertex(v));
    }
    Ok(())
}

/// Maximum number of independent `v`-`w` paths. A direct edge counts as one.
pub fn kappa(g: &Graph, v: Vertex, w: Vertex) -> Result<usize> {
    check_pair(g, v, w)?;
    Ok(pair_flow(g, v, w, |_| true).max_flow(None))
}

/// A maximum family of independent `v`-`w` paths, sorted lexicographically.
pub fn max_independent_paths(g: &Graph, v: Vertex, w: Vertex) -> Result<PathFamily> {
    check_pair(g, v, w)?;
    let mut flow = pair_flow(g, v, w, |_| true);
    flow.max_flow(None);
    let mut paths: Vec<Path> = flow.paths().into_iter().map(Path).collect();
    paths.sort();
    Ok(PathFamily { source: v, target: w, paths })
}

pub(crate) fn pair_flow(g: &Graph, v: Vertex, w: Vertex, allowed: impl Fn(Vertex) -> bool) -> VertexFlow {
    VertexFlow::new(g, &VertexSet::from([v]), &VertexSet::from([w]), allowed, EdgeArcs::Unit)
}

/// A minimum vertex set disjoint from `a ∪ b` meeting every `a`-`b` path.
/// Among minimum separators the one closest to `a` is returned.
pub fn min_separator(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<Separator> {
    separator_within(g, a, b, |_| true)
}

/// `min_separator` in the subgraph induced on `a ∪ b` and the vertices
/// accepted by `allowed`.
pub(crate) fn separator_within(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    allowed: impl Fn(Vertex) -> bool,
) -> Result<Separator> {
    if a.is_empty() {
        return Err(Error::EmptySet("separator side a"));
    }
    if b.is_empty() {
        return Err(Error::EmptySet("separator side b"));
    }
    g.require_all(a.iter().chain(b))?;
    if let Some(&x) = a.intersection(b).next() {
        return Err(Error::Overlap(x));
    }
    for &x in a {
        if let Some(y) = g.neighbors(x).find(|y| b.contains(y)) {
            return Err(Error::Inseparable(x, y));
        }
    }
    let mut flow = VertexFlow::new(g, a, b, allowed, EdgeArcs::Unbounded);
    flow.max_flow(None);
    Ok(Separator { vertices: flow.source_side_cut(), side_a: a.clone(), side_b: b.clone() })
}
