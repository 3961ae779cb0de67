//! Finite simple undirected graphs with totally ordered vertex ids.
//!
//! Every "pick a vertex" or "pick a component" choice elsewhere in the crate
//! resolves to the least id, so all collections here are ordered.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = u64;
pub type VertexSet = BTreeSet<Vertex>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from isolated vertices plus an edge list. Endpoints of
    /// edges are added implicitly; repeated edges are rejected.
    pub fn from_edges<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Vertex) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Returns `Ok(false)` if the edge was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.add_vertex(u);
        self.add_vertex(v);
        let fresh = self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let removed = self.adj.get_mut(&u).is_some_and(|n| n.remove(&v));
        if removed {
            self.adj.get_mut(&v).unwrap().remove(&u);
        }
        removed
    }

    pub fn remove_vertex(&mut self, v: Vertex) -> bool {
        let Some(nbrs) = self.adj.remove(&v) else {
            return false;
        };
        for u in nbrs {
            self.adj.get_mut(&u).unwrap().remove(&v);
        }
        true
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    /// Neighbours of `v` in ascending order; empty for unknown vertices.
    pub fn neighbors(&self, v: Vertex) -> impl DoubleEndedIterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().flat_map(|(&u, n)| n.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.adj.keys().next_back().copied()
    }

    pub fn is_connected(&self) -> bool {
        match self.adj.keys().next() {
            None => true,
            Some(&start) => reach(self, start, |_| true).len() == self.vertex_count(),
        }
    }

    pub(crate) fn require(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub(crate) fn require_all<'a>(&self, vs: impl IntoIterator<Item = &'a Vertex>) -> Result<()> {
        vs.into_iter().try_for_each(|&v| self.require(v))
    }
}

/// Vertices reachable from `start` through vertices accepted by `allowed`.
/// `start` itself is always included.
pub(crate) fn reach(g: &Graph, start: Vertex, allowed: impl Fn(Vertex) -> bool) -> VertexSet {
    let mut seen = VertexSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if allowed(y) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Shortest path from `from` to `to` whose interior avoids everything
/// rejected by `allowed`. Ties go to the smallest ids.
pub(crate) fn bfs_path(g: &Graph, from: Vertex, to: Vertex, allowed: impl Fn(Vertex) -> bool) -> Option<Vec<Vertex>> {
    let mut pred = BTreeMap::from([(from, from)]);
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if pred.contains_key(&y) {
                continue;
            }
            if y == to {
                let mut path = vec![to, x];
                let mut cur = x;
                while cur != from {
                    cur = pred[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if allowed(y) {
                pred.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    None
}

/// Connected components of `g - removed`, sorted by their least vertex.
pub fn components(g: &Graph, removed: &VertexSet) -> Vec<VertexSet> {
    let mut seen = VertexSet::new();
    let mut out = Vec::new();
    for v in g.vertices() {
        if removed.contains(&v) || seen.contains(&v) {
            continue;
        }
        let comp = reach(g, v, |x| !removed.contains(&x));
        seen.extend(comp.iter().copied());
        out.push(comp);
    }
    out
}

/// The vertices of `inside` with at least one neighbour in `d`.
pub fn neighborhood(g: &Graph, d: &VertexSet, inside: &VertexSet) -> Result<VertexSet> {
    if let Some(&v) = d.intersection(inside).next() {
        return Err(Error::Overlap(v));
    }
    Ok(d.iter().flat_map(|&x| g.neighbors(x)).filter(|y| inside.contains(y)).collect())
}

/// The subgraph induced on `s`. Ids in `s` that are not vertices of `g`
/// are ignored.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Graph {
    let adj = s
        .iter()
        .filter_map(|&v| {
            let nbrs = g.adj.get(&v)?;
            Some((v, nbrs.iter().copied().filter(|u| s.contains(u)).collect()))
        })
        .collect();
    Graph { adj }
}
