//! Random instances, exhaustive enumerators and brute-force oracles shared by
//! the integration tests. Nothing here calls into the algorithms under test
//! except to build `Graph` and `RootedTree` values.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use ntk_core::fat_tk::FatTkCertificate;
use ntk_core::{Graph, Path, RootedTree, Vertex, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn set(vs: &[Vertex]) -> VertexSet {
    vs.iter().copied().collect()
}

pub fn complete(n: Vertex) -> Graph {
    let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
    Graph::from_edges(1..=n, edges).unwrap()
}

pub fn grid(w: Vertex, h: Vertex) -> Graph {
    let id = |x: Vertex, y: Vertex| y * w + x;
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Graph::from_edges(0..w * h, edges).unwrap()
}

/// A uniformly random labelled tree on `0..n` plus every other pair with
/// probability `p`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut order: Vec<Vertex> = (0..n as Vertex).collect();
    order.shuffle(rng);
    let mut g = Graph::from_edges(0..n as Vertex, []).unwrap();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_edge(order[i], order[j]).unwrap();
    }
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn random_subset(rng: &mut impl Rng, g: &Graph, p: f64) -> VertexSet {
    g.vertices().filter(|_| rng.gen_bool(p)).collect()
}

/// Rooted tree on the edge set `edges`, oriented away from `root`.
pub fn rooted(root: Vertex, edges: &[(Vertex, Vertex)]) -> RootedTree {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut parent = BTreeMap::new();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in adj.get(&x).into_iter().flatten() {
            if seen.insert(y) {
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    assert_eq!(parent.len(), edges.len(), "edge set is not a tree");
    RootedTree::new(root, parent).unwrap()
}

/// Every labelled tree on `0..n`, decoded from its Prüfer sequence.
pub fn labelled_trees(n: usize) -> Vec<Vec<(Vertex, Vertex)>> {
    match n {
        0 | 1 => return vec![vec![]],
        2 => return vec![vec![(0, 1)]],
        _ => {}
    }
    let mut out = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        out.push(prufer_decode(n, &seq));
        let mut i = 0;
        while i < seq.len() {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            return out;
        }
    }
}

fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(Vertex, Vertex)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&i| degree[i] == 1).unwrap();
        edges.push((leaf.min(s) as Vertex, leaf.max(s) as Vertex));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    edges.push((rest[0] as Vertex, rest[1] as Vertex));
    edges
}

/// Calls `f(graph, tree_edges)` once for every connected labelled graph on
/// `0..n` and each of its spanning trees: every tree, extended by every
/// subset of the remaining pairs.
pub fn for_each_graph_with_spanning_tree(n: usize, mut f: impl FnMut(&Graph, &[(Vertex, Vertex)])) {
    for tree in labelled_trees(n) {
        let in_tree: HashSet<(Vertex, Vertex)> = tree.iter().copied().collect();
        let chords: Vec<(Vertex, Vertex)> = (0..n as Vertex)
            .flat_map(|u| (u + 1..n as Vertex).map(move |v| (u, v)))
            .filter(|e| !in_tree.contains(e))
            .collect();
        for mask in 0u64..1 << chords.len() {
            let extra = chords.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            let g = Graph::from_edges(0..n as Vertex, tree.iter().copied().chain(extra)).unwrap();
            f(&g, &tree);
        }
    }
}

/// All spanning trees of a small connected graph, as edge lists.
pub fn spanning_trees(g: &Graph) -> Vec<Vec<(Vertex, Vertex)>> {
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let vs: Vec<Vertex> = g.vertices().collect();
    let need = vs.len().saturating_sub(1);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn find(parent: &mut BTreeMap<Vertex, Vertex>, x: Vertex) -> Vertex {
        let p = parent[&x];
        if p == x {
            return x;
        }
        let r = find(parent, p);
        parent.insert(x, r);
        r
    }
    fn go(
        edges: &[(Vertex, Vertex)],
        start: usize,
        need: usize,
        vs: &[Vertex],
        chosen: &mut Vec<(Vertex, Vertex)>,
        out: &mut Vec<Vec<(Vertex, Vertex)>>,
    ) {
        if chosen.len() == need {
            let mut parent: BTreeMap<Vertex, Vertex> = vs.iter().map(|&v| (v, v)).collect();
            for &(u, v) in chosen.iter() {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a == b {
                    return;
                }
                parent.insert(a, b);
            }
            out.push(chosen.clone());
            return;
        }
        for i in start..edges.len() {
            if edges.len() - i < need - chosen.len() {
                break;
            }
            chosen.push(edges[i]);
            go(edges, i + 1, need, vs, chosen, out);
            chosen.pop();
        }
    }
    go(&edges, 0, need, &vs, &mut chosen, &mut out);
    out
}

/// A uniformly shuffled Kruskal spanning tree, rooted at `root`. Usually not
/// normal.
pub fn random_spanning_tree(rng: &mut impl Rng, g: &Graph, root: Vertex) -> RootedTree {
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    edges.shuffle(rng);
    let mut comp: BTreeMap<Vertex, Vertex> = g.vertices().map(|v| (v, v)).collect();
    let mut tree = Vec::new();
    for (u, v) in edges {
        let (cu, cv) = (comp[&u], comp[&v]);
        if cu != cv {
            for c in comp.values_mut() {
                if *c == cv {
                    *c = cu;
                }
            }
            tree.push((u, v));
        }
    }
    rooted(root, &tree)
}

/// Depth-first search tree visiting neighbours in random order. Always
/// normal, unlike most spanning trees.
pub fn random_dfs_tree(rng: &mut impl Rng, g: &Graph, root: Vertex) -> RootedTree {
    let mut parent = BTreeMap::new();
    let mut seen = BTreeSet::from([root]);
    let mut stack = vec![root];
    while let Some(&x) = stack.last() {
        let mut next: Vec<Vertex> = g.neighbors(x).filter(|y| !seen.contains(y)).collect();
        if next.is_empty() {
            stack.pop();
            continue;
        }
        next.shuffle(rng);
        let y = next[0];
        seen.insert(y);
        parent.insert(y, x);
        stack.push(y);
    }
    RootedTree::new(root, parent).unwrap()
}

/// A random subtree grown from a random root by adding random frontier edges
/// until it has `size` vertices (or cannot grow).
pub fn random_subtree(rng: &mut impl Rng, g: &Graph, size: usize) -> RootedTree {
    let vs: Vec<Vertex> = g.vertices().collect();
    let root = *vs.choose(rng).unwrap();
    let mut inside = BTreeSet::from([root]);
    let mut parent = BTreeMap::new();
    while inside.len() < size {
        let frontier: Vec<(Vertex, Vertex)> = inside
            .iter()
            .flat_map(|&x| g.neighbors(x).map(move |y| (x, y)))
            .filter(|(_, y)| !inside.contains(y))
            .collect();
        let Some(&(x, y)) = frontier.choose(rng) else {
            break;
        };
        inside.insert(y);
        parent.insert(y, x);
    }
    RootedTree::new(root, parent).unwrap()
}

/// Ancestors of `v` including `v`, read directly off the parent map.
pub fn ancestors(t: &RootedTree, v: Vertex) -> BTreeSet<Vertex> {
    let mut out = BTreeSet::from([v]);
    let mut cur = v;
    while let Some(p) = t.parent_map().get(&cur) {
        out.insert(*p);
        cur = *p;
    }
    out
}

pub fn comparable(t: &RootedTree, u: Vertex, v: Vertex) -> bool {
    ancestors(t, u).contains(&v) || ancestors(t, v).contains(&u)
}

/// Every `T`-path of `g` (each listed once per direction): ends in the tree,
/// at least one edge, interior outside the tree.
pub fn t_paths(g: &Graph, tree: &VertexSet) -> Vec<Vec<Vertex>> {
    fn walk(g: &Graph, tree: &VertexSet, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let last = *path.last().unwrap();
        for y in g.neighbors(last) {
            if path.contains(&y) {
                continue;
            }
            path.push(y);
            if tree.contains(&y) {
                out.push(path.clone());
            } else {
                walk(g, tree, path, out);
            }
            path.pop();
        }
    }
    let mut out = Vec::new();
    for &a in tree {
        walk(g, tree, &mut vec![a], &mut out);
    }
    out
}

/// Normality by explicit enumeration of all `T`-paths.
pub fn brute_normal(g: &Graph, t: &RootedTree) -> bool {
    let tree = t.vertex_set();
    t_paths(g, &tree).iter().all(|p| comparable(t, p[0], *p.last().unwrap()))
}

/// Whether `t` is a spanning tree of `g` (edges in `g`, all vertices).
pub fn spans(g: &Graph, t: &RootedTree) -> bool {
    t.vertex_set() == g.vertex_set() && t.edges().all(|(c, p)| g.has_edge(c, p))
}

/// All normal spanning trees of `g` rooted at `r`, by filtering every
/// spanning tree through [`brute_normal`].
pub fn all_normal_spanning_trees(g: &Graph, r: Vertex) -> Vec<RootedTree> {
    spanning_trees(g).iter().map(|edges| rooted(r, edges)).filter(|t| brute_normal(g, t)).collect()
}

/// Whether some path joins `a` to `b` in `g - removed`.
pub fn connected_avoiding(g: &Graph, removed: &VertexSet, a: Vertex, b: Vertex) -> bool {
    if removed.contains(&a) || removed.contains(&b) {
        return false;
    }
    let mut seen = BTreeSet::from([a]);
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            return true;
        }
        for y in g.neighbors(x) {
            if !removed.contains(&y) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    false
}

/// Whether no path from `a` to `b` avoids `s`.
pub fn separates_sets(g: &Graph, s: &VertexSet, a: &VertexSet, b: &VertexSet) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| !connected_avoiding(g, s, x, y)))
}

/// Size of a smallest set, disjoint from `a` and `b`, separating them; found
/// by trying all subsets in order of size. `None` when an edge joins them.
pub fn brute_min_separator(g: &Graph, a: &VertexSet, b: &VertexSet) -> Option<usize> {
    let pool: Vec<Vertex> = g.vertices().filter(|v| !a.contains(v) && !b.contains(v)).collect();
    let mut best: Option<usize> = None;
    for mask in 0u64..1 << pool.len() {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let s: VertexSet = pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        if separates_sets(g, &s, a, b) {
            best = Some(size);
        }
    }
    best
}

/// Every simple `v`-`w` path whose interior avoids `forbidden`.
pub fn simple_paths(g: &Graph, v: Vertex, w: Vertex, forbidden: &VertexSet) -> Vec<Vec<Vertex>> {
    fn walk(g: &Graph, w: Vertex, forbidden: &VertexSet, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let last = *path.last().unwrap();
        for y in g.neighbors(last) {
            if path.contains(&y) {
                continue;
            }
            if y == w {
                path.push(y);
                out.push(path.clone());
                path.pop();
            } else if !forbidden.contains(&y) {
                path.push(y);
                walk(g, w, forbidden, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(g, w, forbidden, &mut vec![v], &mut out);
    out
}

/// Largest family of independent `v`-`w` paths, by exhaustive search over
/// all simple paths.
pub fn brute_kappa(g: &Graph, v: Vertex, w: Vertex) -> usize {
    let paths = simple_paths(g, v, w, &VertexSet::new());
    let interiors: Vec<BTreeSet<Vertex>> = paths.iter().map(|p| p[1..p.len() - 1].iter().copied().collect()).collect();
    let bound = g.degree(v).min(g.degree(w));
    fn go(
        interiors: &[BTreeSet<Vertex>],
        start: usize,
        used: &mut BTreeSet<Vertex>,
        count: usize,
        best: &mut usize,
        bound: usize,
    ) {
        *best = (*best).max(count);
        if *best == bound {
            return;
        }
        for i in start..interiors.len() {
            if interiors[i].is_disjoint(used) {
                used.extend(interiors[i].iter().copied());
                go(interiors, i + 1, used, count + 1, best, bound);
                for x in &interiors[i] {
                    used.remove(x);
                }
                if *best == bound {
                    return;
                }
            }
        }
    }
    let mut best = 0;
    go(&interiors, 0, &mut BTreeSet::new(), 0, &mut best, bound);
    best
}

/// Exhaustive search for a fat TK(|branch|, m) with the given branch
/// vertices: every pair gets `m` simple paths avoiding the other branch
/// vertices, all interiors pairwise disjoint.
pub fn brute_fat_tk(g: &Graph, branch: &[Vertex], m: usize) -> Option<FatTkCertificate> {
    let u: VertexSet = branch.iter().copied().collect();
    let pairs: Vec<(Vertex, Vertex)> = branch
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| branch[i + 1..].iter().map(move |&b| (a.min(b), a.max(b))))
        .collect();
    let candidates: Vec<Vec<Vec<Vertex>>> = pairs.iter().map(|&(a, b)| simple_paths(g, a, b, &u)).collect();

    struct Search<'a> {
        candidates: &'a [Vec<Vec<Vertex>>],
        m: usize,
        used: BTreeSet<Vertex>,
        chosen: Vec<Vec<Vec<Vertex>>>,
    }
    impl Search<'_> {
        fn pair(&mut self, k: usize) -> bool {
            if k == self.candidates.len() {
                return true;
            }
            self.chosen.push(Vec::new());
            if self.pick(k, 0) {
                return true;
            }
            self.chosen.pop();
            false
        }
        fn pick(&mut self, k: usize, start: usize) -> bool {
            if self.chosen[k].len() == self.m {
                return self.pair(k + 1);
            }
            let list = &self.candidates[k];
            for i in start..list.len() {
                let interior = &list[i][1..list[i].len() - 1];
                if interior.iter().any(|x| self.used.contains(x)) {
                    continue;
                }
                let p = list[i].clone();
                self.used.extend(interior.iter().copied());
                self.chosen[k].push(p);
                if self.pick(k, i + 1) {
                    return true;
                }
                let p = self.chosen[k].pop().unwrap();
                for x in &p[1..p.len() - 1] {
                    self.used.remove(x);
                }
            }
            false
        }
    }
    let mut search = Search { candidates: &candidates, m, used: BTreeSet::new(), chosen: Vec::new() };
    if !search.pair(0) {
        return None;
    }
    let paths = pairs
        .into_iter()
        .zip(search.chosen)
        .map(|(pair, ps)| (pair, ps.into_iter().map(Path::new).collect()))
        .collect();
    let mut sorted = branch.to_vec();
    sorted.sort();
    Some(FatTkCertificate { branch: sorted, m, paths })
}

/// Bit `i * n + j` set for each edge `ij`, vertices `0..n`.
fn adjacency_bits(n: usize, adj: &[u16], perm: &[usize]) -> u64 {
    let mut code = 0u64;
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj[perm[i]] >> perm[j] & 1 == 1 {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

/// Canonical code of a graph on `0..n` (n <= 11): colour refinement, then the
/// least adjacency code over all orderings that respect the colour classes.
pub fn canonical_code(n: usize, adj: &[u16]) -> u64 {
    let mut colour: Vec<usize> = (0..n).map(|v| adj[v].count_ones() as usize).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&u| adj[v] >> u & 1 == 1).map(|u| colour[u]).collect();
                nb.sort();
                (colour[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        let classes = |c: &[usize]| c.iter().collect::<BTreeSet<_>>().len();
        let done = classes(&next) == classes(&colour);
        colour = next;
        if done {
            break;
        }
    }
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colour.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();

    fn permute(cells: &[Vec<usize>], k: usize, prefix: &mut Vec<usize>, n: usize, adj: &[u16], best: &mut u64) {
        if k == cells.len() {
            *best = (*best).min(adjacency_bits(n, adj, prefix));
            return;
        }
        let mut cell = cells[k].clone();
        heap_permutations(&mut cell, &mut |p| {
            let len = prefix.len();
            prefix.extend_from_slice(p);
            permute(cells, k + 1, prefix, n, adj, best);
            prefix.truncate(len);
        });
    }
    let mut best = u64::MAX;
    permute(&cells, 0, &mut Vec::new(), n, adj, &mut best);
    best
}

fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    f(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// One representative of every isomorphism class of connected graphs on
/// `1..=max_n` vertices, grouped by order. Vertices are `0..n`.
///
/// Every connected graph has a vertex whose removal leaves it connected, so
/// each class on `n` vertices arises from a class on `n - 1` vertices plus a
/// new vertex joined to a nonempty subset.
pub fn connected_graphs_up_to_iso(max_n: usize) -> Vec<Vec<Graph>> {
    assert!((1..=11).contains(&max_n));
    let mut levels: Vec<Vec<Vec<u16>>> = vec![vec![vec![0u16]]];
    for n in 2..=max_n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for base in &levels[n - 2] {
            for mask in 1u16..1 << (n - 1) {
                let mut adj = base.clone();
                adj.push(mask);
                for (v, row) in adj.iter_mut().enumerate().take(n - 1) {
                    if mask >> v & 1 == 1 {
                        *row |= 1 << (n - 1);
                    }
                }
                if seen.insert(canonical_code(n, &adj)) {
                    next.push(adj);
                }
            }
        }
        levels.push(next);
    }
    levels
        .into_iter()
        .enumerate()
        .map(|(i, level)| {
            let n = i + 1;
            level
                .into_iter()
                .map(|adj| {
                    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                    let edges: Vec<(Vertex, Vertex)> =
                        edges.filter(|&(u, v)| adj[u] >> v & 1 == 1).map(|(u, v)| (u as Vertex, v as Vertex)).collect();
                    Graph::from_edges(0..n as Vertex, edges).unwrap()
                })
                .collect()
        })
        .collect()
}
