//! Locally finite infinite graphs given by a neighbour rule, explored through
//! finite balls around a root.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A deterministic rule describing a connected, locally finite graph.
pub trait GraphGenerator {
    fn name(&self) -> String;

    fn root(&self) -> Vertex;

    /// Neighbours of `v`. Must be symmetric and free of `v` itself.
    fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>>;

    /// Human-readable name for `v`, used in DOT output.
    fn label(&self, v: Vertex) -> String {
        v.to_string()
    }
}

/// The subgraph induced on all vertices within distance `radius` of the root.
pub fn truncate<G: GraphGenerator + ?Sized>(gen: &G, radius: usize) -> Result<Graph> {
    let root = gen.root();
    let mut dist = BTreeMap::from([(root, 0usize)]);
    let mut nbrs = BTreeMap::new();
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[&x];
        let list = gen.neighbors(x)?;
        if dx < radius {
            for &y in &list {
                if let Entry::Vacant(e) = dist.entry(y) {
                    e.insert(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        nbrs.insert(x, list);
    }

    let mut g = Graph::new();
    for (&x, list) in &nbrs {
        g.add_vertex(x);
        for &y in list {
            if y == x {
                return Err(Error::Generator(format!("{} yields a self-loop at {x}", gen.name())));
            }
            let Some(back) = nbrs.get(&y) else { continue };
            if !back.contains(&x) {
                return Err(Error::Generator(format!(
                    "{} is not symmetric: {y} is a neighbour of {x} but not conversely",
                    gen.name()
                )));
            }
            g.add_edge(x, y)?;
        }
    }
    Ok(g)
}

fn overflow(name: &str, v: Vertex) -> Error {
    Error::Generator(format!("{name}: vertex id overflow near {v}"))
}

/// One-way infinite path `0 - 1 - 2 - ...`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Ray;

impl GraphGenerator for Ray {
    fn name(&self) -> String {
        "ray".into()
    }

    fn root(&self) -> Vertex {
        0
    }

    fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>> {
        let next = v.checked_add(1).ok_or_else(|| overflow("ray", v))?;
        Ok(v.checked_sub(1).into_iter().chain([next]).collect())
    }
}

/// Two-way infinite path on the integers. The integer `z` gets id `2z` for
/// `z >= 0` and `-2z - 1` otherwise, so the root `0` has id 0.
#[derive(Clone, Copy, Debug, Default)]
pub struct DoubleRay;

impl DoubleRay {
    pub fn encode(z: i64) -> Vertex {
        if z >= 0 {
            2 * z as u64
        } else {
            2 * z.unsigned_abs() - 1
        }
    }

    pub fn decode(v: Vertex) -> i64 {
        if v.is_multiple_of(2) {
            (v / 2) as i64
        } else {
            -(v.div_ceil(2) as i64)
        }
    }
}

impl GraphGenerator for DoubleRay {
    fn name(&self) -> String {
        "double-ray".into()
    }

    fn root(&self) -> Vertex {
        0
    }

    fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>> {
        if v >= u64::MAX - 2 {
            return Err(overflow("double-ray", v));
        }
        let z = Self::decode(v);
        Ok(vec![Self::encode(z - 1), Self::encode(z + 1)])
    }

    fn label(&self, v: Vertex) -> String {
        Self::decode(v).to_string()
    }
}

/// Infinite rooted binary tree in heap numbering: children of `v` are
/// `2v + 1` and `2v + 2`.
#[derive(Clone, Copy, Debug, Default)]
pub struct BinaryTree;

impl GraphGenerator for BinaryTree {
    fn name(&self) -> String {
        "binary-tree".into()
    }

    fn root(&self) -> Vertex {
        0
    }

    fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>> {
        let left = v.checked_mul(2).and_then(|x| x.checked_add(1)).ok_or_else(|| overflow("binary-tree", v))?;
        let right = left.checked_add(1).ok_or_else(|| overflow("binary-tree", v))?;
        let parent = (v > 0).then(|| (v - 1) / 2);
        Ok(parent.into_iter().chain([left, right]).collect())
    }
}

/// The quarter grid on `N x N`, with lattice point `(x, y)` numbered by the
/// Cantor pairing so that `(0, 0)` is vertex 0.
#[derive(Clone, Copy, Debug, Default)]
pub struct QuarterGrid;

impl QuarterGrid {
    pub fn encode(x: u64, y: u64) -> Option<Vertex> {
        let w = x.checked_add(y)?;
        let tri = w.checked_mul(w.checked_add(1)?)? / 2;
        tri.checked_add(y)
    }

    pub fn decode(v: Vertex) -> (u64, u64) {
        let w = ((8 * v as u128 + 1).isqrt() as u64 - 1) / 2;
        let y = v - w * (w + 1) / 2;
        (w - y, y)
    }
}

impl GraphGenerator for QuarterGrid {
    fn name(&self) -> String {
        "grid".into()
    }

    fn root(&self) -> Vertex {
        0
    }

    fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>> {
        let (x, y) = Self::decode(v);
        let mut out = Vec::with_capacity(4);
        let candidates =
            [x.checked_sub(1).map(|x| (x, y)), Some((x + 1, y)), y.checked_sub(1).map(|y| (x, y)), Some((x, y + 1))];
        for (a, b) in candidates.into_iter().flatten() {
            out.push(Self::encode(a, b).ok_or_else(|| overflow("grid", v))?);
        }
        out.sort_unstable();
        Ok(out)
    }

    fn label(&self, v: Vertex) -> String {
        let (x, y) = Self::decode(v);
        format!("({x},{y})")
    }
}

/// An infinite chain of fat TK(n, m) blocks. Block `k` has branch vertices
/// `b_{k(n-1)}, ..., b_{k(n-1)+n-1}`, every pair joined by `m` paths of length
/// two; the last branch vertex of block `k` is the first of block `k + 1`.
#[derive(Clone, Copy, Debug)]
pub struct FatTkChain {
    n: u64,
    m: u64,
}

impl FatTkChain {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewBranchVertices(n));
        }
        if m < 1 {
            return Err(Error::ZeroMultiplicity);
        }
        Ok(Self { n: n as u64, m: m as u64 })
    }

    fn pairs(&self) -> u64 {
        self.n * (self.n - 1) / 2
    }

    fn block(&self) -> u64 {
        (self.n - 1) + self.pairs() * self.m
    }

    fn pair_index(&self, i: u64, j: u64) -> u64 {
        // lexicographic rank of (i, j), i < j
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    fn pair_of(&self, mut p: u64) -> (u64, u64) {
        for i in 0..self.n {
            let row = self.n - i - 1;
            if p < row {
                return (i, i + 1 + p);
            }
            p -= row;
        }
        unreachable!("pair index out of range")
    }

    fn branch_id(&self, k: u64, j: u64) -> Option<Vertex> {
        if j == self.n - 1 {
            k.checked_add(1)?.checked_mul(self.block())
        } else {
            k.checked_mul(self.block())?.checked_add(j)
        }
    }

    fn subdivision_ids(&self, k: u64, j: u64) -> Option<Vec<Vertex>> {
        let base = k.checked_mul(self.block())?.checked_add(self.n - 1)?;
        let mut out = Vec::new();
        for other in (0..self.n).filter(|&o| o != j) {
            let p = self.pair_index(j.min(other), j.max(other));
            for l in 0..self.m {
                out.push(base.checked_add(p * self.m + l)?);
            }
        }
        Some(out)
    }

    /// Ids of the branch vertices of block `k`.
    pub fn branch_vertices(&self, k: u64) -> Vec<Vertex> {
        (0..self.n).filter_map(|j| self.branch_id(k, j)).collect()
    }
}

impl GraphGenerator for FatTkChain {
    fn name(&self) -> String {
        format!("fat-tk-gen:{},{}", self.n, self.m)
    }

    fn root(&self) -> Vertex {
        0
    }

    fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>> {
        let err = || overflow("fat-tk-gen", v);
        let (k, local) = (v / self.block(), v % self.block());
        let mut out = Vec::new();
        if local < self.n - 1 {
            out.extend(self.subdivision_ids(k, local).ok_or_else(err)?);
            if local == 0 && k > 0 {
                out.extend(self.subdivision_ids(k - 1, self.n - 1).ok_or_else(err)?);
            }
        } else {
            let (i, j) = self.pair_of((local - (self.n - 1)) / self.m);
            out.push(self.branch_id(k, i).ok_or_else(err)?);
            out.push(self.branch_id(k, j).ok_or_else(err)?);
        }
        out.sort_unstable();
        Ok(out)
    }

    fn label(&self, v: Vertex) -> String {
        let (k, local) = (v / self.block(), v % self.block());
        if local < self.n - 1 {
            format!("b{}", k * (self.n - 1) + local)
        } else {
            let offset = local - (self.n - 1);
            let (i, j) = self.pair_of(offset / self.m);
            format!("s{k}:{i}-{j}:{}", offset % self.m)
        }
    }
}

/// Names and one-line descriptions of the built-in generators.
pub const BUILTIN_GENERATORS: &[(&str, &str)] = &[
    ("ray", "one-way infinite path 0-1-2-..."),
    ("double-ray", "two-way infinite path on the integers"),
    ("binary-tree", "infinite rooted binary tree in heap numbering"),
    ("grid", "quarter grid N x N rooted at (0,0)"),
    ("fat-tk-gen:N,M", "chain of fat TK(N,M) blocks, default N=3, M=2"),
];

/// Looks up a built-in generator by name, e.g. `grid` or `fat-tk-gen:4,3`.
pub fn builtin(spec: &str) -> Result<Box<dyn GraphGenerator>> {
    let (name, args) = match spec.split_once(':') {
        Some((name, args)) => (name, Some(args)),
        None => (spec, None),
    };
    let no_args = |g: Box<dyn GraphGenerator>| match args {
        None => Ok(g),
        Some(_) => Err(Error::Parse(format!("generator {name} takes no parameters"))),
    };
    match name {
        "ray" => no_args(Box::new(Ray)),
        "double-ray" => no_args(Box::new(DoubleRay)),
        "binary-tree" => no_args(Box::new(BinaryTree)),
        "grid" => no_args(Box::new(QuarterGrid)),
        "fat-tk-gen" => {
            let (n, m) = match args {
                None => (3, 2),
                Some(args) => {
                    let parsed: Vec<usize> = args
                        .split(',')
                        .map(|s| s.trim().parse())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|e| Error::Parse(format!("fat-tk-gen parameters: {e}")))?;
                    match parsed[..] {
                        [n, m] => (n, m),
                        _ => return Err(Error::Parse("fat-tk-gen expects N,M".into())),
                    }
                }
            };
            Ok(Box::new(FatTkChain::new(n, m)?))
        }
        _ => Err(Error::Parse(format!("unknown generator {name:?}"))),
    }
}
