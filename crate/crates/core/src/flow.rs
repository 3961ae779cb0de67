//! Unit-capacity vertex flows on split networks.
//!
//! Each vertex `x` becomes `x_in -> x_out`; an undirected edge `{x, y}`
//! becomes `x_out -> y_in` and `y_out -> x_in`. Arcs are stored and scanned in
//! insertion order, and insertion follows ascending vertex ids, so every
//! augmentation (and thus every path family) is deterministic.

use std::collections::{BTreeMap, VecDeque};

use crate::graph::{Graph, Vertex, VertexSet};

const INF: i64 = i64::MAX / 4;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
    cost: i64,
}

#[derive(Clone, Debug, Default)]
struct Network {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn with_nodes(n: usize) -> Self {
        Self { arcs: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) {
        self.adj[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, cost });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0, cost: -cost });
    }

    fn push_along(&mut self, pred: &[Option<usize>], s: usize, t: usize) {
        let mut x = t;
        while x != s {
            let e = pred[x].expect("augmenting path is connected");
            self.arcs[e].cap -= 1;
            self.arcs[e ^ 1].cap += 1;
            x = self.arcs[e ^ 1].to;
        }
    }

    fn bfs_augment(&mut self, s: usize, t: usize) -> bool {
        let mut pred = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &e in &self.adj[x] {
                let Arc { to, cap, .. } = self.arcs[e];
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    pred[to] = Some(e);
                    if to == t {
                        self.push_along(&pred, s, t);
                        return true;
                    }
                    queue.push_back(to);
                }
            }
        }
        false
    }

    /// Cheapest augmenting path by Bellman-Ford over the residual network.
    fn cheapest_augment(&mut self, s: usize, t: usize) -> bool {
        let n = self.adj.len();
        let mut dist = vec![INF; n];
        let mut pred = vec![None; n];
        dist[s] = 0;
        for _ in 0..n {
            let mut changed = false;
            for x in 0..n {
                if dist[x] == INF {
                    continue;
                }
                for &e in &self.adj[x] {
                    let Arc { to, cap, cost } = self.arcs[e];
                    if cap > 0 && dist[x] + cost < dist[to] {
                        dist[to] = dist[x] + cost;
                        pred[to] = Some(e);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if dist[t] == INF {
            return false;
        }
        self.push_along(&pred, s, t);
        true
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &e in &self.adj[x] {
                let Arc { to, cap, .. } = self.arcs[e];
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    queue.push_back(to);
                }
            }
        }
        seen
    }
}

/// How edges between two ordinary vertices are weighted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EdgeArcs {
    /// Capacity one: a direct source-sink edge counts as one path.
    Unit,
    /// Unbounded: minimum cuts consist of vertices only.
    Unbounded,
}

/// A split network between a source set and a sink set. Sources and sinks
/// have unbounded capacity; no arc enters a source or leaves a sink.
pub(crate) struct VertexFlow {
    net: Network,
    ids: Vec<Vertex>,
    sources: VertexSet,
    sinks: VertexSet,
    value: usize,
}

impl VertexFlow {
    pub(crate) fn new(
        g: &Graph,
        sources: &VertexSet,
        sinks: &VertexSet,
        allowed: impl Fn(Vertex) -> bool,
        edge_arcs: EdgeArcs,
    ) -> Self {
        let terminal = |v: Vertex| sources.contains(&v) || sinks.contains(&v);
        let ids: Vec<Vertex> = g.vertices().filter(|&v| terminal(v) || allowed(v)).collect();
        let pos: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let (s, t) = (2 * ids.len(), 2 * ids.len() + 1);
        let mut net = Network::with_nodes(2 * ids.len() + 2);
        let edge_cap = match edge_arcs {
            EdgeArcs::Unit => 1,
            EdgeArcs::Unbounded => INF,
        };
        for (i, &x) in ids.iter().enumerate() {
            if terminal(x) {
                net.add_arc(2 * i, 2 * i + 1, INF, 0);
            } else {
                net.add_arc(2 * i, 2 * i + 1, 1, 1);
            }
            if sources.contains(&x) {
                net.add_arc(s, 2 * i + 1, INF, 0);
            }
            if sinks.contains(&x) {
                net.add_arc(2 * i, t, INF, 0);
                continue;
            }
            for y in g.neighbors(x) {
                let Some(&j) = pos.get(&y) else { continue };
                if sources.contains(&y) {
                    continue;
                }
                let cap = if terminal(x) && terminal(y) { 1 } else { edge_cap };
                net.add_arc(2 * i + 1, 2 * j, cap, 0);
            }
        }
        Self { net, ids, sources: sources.clone(), sinks: sinks.clone(), value: 0 }
    }

    fn super_source(&self) -> usize {
        2 * self.ids.len()
    }

    fn super_sink(&self) -> usize {
        2 * self.ids.len() + 1
    }

    /// Augments by shortest paths until `limit` units flow or none remain.
    pub(crate) fn max_flow(&mut self, limit: Option<usize>) -> usize {
        let (s, t) = (self.super_source(), self.super_sink());
        while limit.is_none_or(|l| self.value < l) && self.net.bfs_augment(s, t) {
            self.value += 1;
        }
        self.value
    }

    /// Like `max_flow`, but each unit uses as few ordinary vertices as the
    /// residual network allows.
    pub(crate) fn min_cost_flow(&mut self, limit: Option<usize>) -> usize {
        let (s, t) = (self.super_source(), self.super_sink());
        while limit.is_none_or(|l| self.value < l) && self.net.cheapest_augment(s, t) {
            self.value += 1;
        }
        self.value
    }

    /// Decomposes the current flow into vertex sequences from a source to a
    /// sink.
    pub(crate) fn paths(&self) -> Vec<Vec<Vertex>> {
        let mut flow: Vec<i64> = self
            .net
            .arcs
            .iter()
            .enumerate()
            .map(|(e, _)| if e % 2 == 0 { self.net.arcs[e ^ 1].cap } else { 0 })
            .collect();
        let (s, t) = (self.super_source(), self.super_sink());
        let mut out = Vec::with_capacity(self.value);
        for _ in 0..self.value {
            let mut path: Vec<Vertex> = Vec::new();
            let mut x = s;
            while x != t {
                let e = *self.net.adj[x].iter().find(|&&e| e % 2 == 0 && flow[e] > 0).expect("flow is conserved");
                flow[e] -= 1;
                x = self.net.arcs[e].to;
                if x < s && path.last() != Some(&self.ids[x / 2]) {
                    path.push(self.ids[x / 2]);
                }
            }
            out.push(path);
        }
        out
    }

    /// Ordinary vertices whose `in` node is on the source side of the
    /// residual cut but whose `out` node is not. After `max_flow` with
    /// `EdgeArcs::Unbounded` this is a minimum separator, the one closest to
    /// the sources.
    pub(crate) fn source_side_cut(&self) -> VertexSet {
        let seen = self.net.reachable(self.super_source());
        self.ids
            .iter()
            .enumerate()
            .filter(|&(i, &v)| {
                !self.sources.contains(&v) && !self.sinks.contains(&v) && seen[2 * i] && !seen[2 * i + 1]
            })
            .map(|(_, &v)| v)
            .collect()
    }
}
