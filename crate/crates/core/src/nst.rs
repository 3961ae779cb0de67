//! Constructions of normal trees.
//!
//! The main entry points grow a chain `T_0 ⊂ T_1 ⊂ ...` of finite normal
//! trees from `T_0 = {r}`. In round `n`, every component `D` of `G - T_n`
//! (or every relevant one) receives a finite extension. The extension into
//! `D` covers, for each pair `v < w` of `N(D)`, the part inside `D` of the
//! least-index path of the fixed family `P(v, w)` that meets `D`; when that
//! is empty the least vertex of `D` is covered instead. Every extension hangs
//! below the top `t_D` of the chain `N(D)`, entering `D` at the least
//! neighbour `r_D` of `t_D`.

use std::collections::BTreeMap;

use log::{debug, info};
use serde::{Deserialize, Serialize};

use crate::connectivity::{max_independent_paths, PathFamily};
use crate::error::{Error, Result};
use crate::graph::{components, induced_subgraph, neighborhood, reach, Graph, Vertex, VertexSet};
use crate::tree::{check_embedded, RootedTree};

/// Depth-first spanning tree from `r`, exploring neighbours in ascending
/// order. Depth-first trees are normal.
pub fn dfs_nst(g: &Graph, r: Vertex) -> Result<RootedTree> {
    g.require(r)?;
    let mut parent = BTreeMap::new();
    let mut visited = VertexSet::from([r]);
    let mut stack: Vec<(Vertex, Vec<Vertex>)> = vec![(r, g.neighbors(r).rev().collect())];
    while let Some((x, pending)) = stack.last_mut() {
        let x = *x;
        match pending.pop() {
            Some(y) if visited.insert(y) => {
                parent.insert(y, x);
                stack.push((y, g.neighbors(y).rev().collect()));
            }
            Some(_) => {}
            None => {
                stack.pop();
            }
        }
    }
    if visited.len() != g.vertex_count() {
        return Err(Error::Disconnected);
    }
    RootedTree::new(r, parent)
}

/// A normal spanning tree of the subgraph induced on `c`, rooted at `r`.
pub fn jung_subtree(g: &Graph, c: &VertexSet, r: Vertex) -> Result<RootedTree> {
    g.require_all(c)?;
    if !c.contains(&r) {
        return Err(Error::NotInSet(r));
    }
    dfs_nst(&induced_subgraph(g, c), r).map_err(|e| match e {
        Error::Disconnected => Error::SetDisconnected,
        e => e,
    })
}

/// Verifies that `d` is a component of `g - tree`.
fn check_component(g: &Graph, tree: &VertexSet, d: &VertexSet) -> Result<()> {
    let Some(&first) = d.first() else {
        return Err(Error::EmptySet("component"));
    };
    g.require_all(d)?;
    if let Some(&x) = d.intersection(tree).next() {
        return Err(Error::Overlap(x));
    }
    let closed = d.iter().all(|&x| g.neighbors(x).all(|y| d.contains(&y) || tree.contains(&y)));
    if !closed || reach(g, first, |x| d.contains(&x)).len() != d.len() {
        return Err(Error::NotAComponent);
    }
    Ok(())
}

/// The top `t_D` of the chain `N(d)` in `t`.
fn attachment_point(g: &Graph, t: &RootedTree, d: &VertexSet) -> Result<Vertex> {
    let nd = neighborhood(g, d, &t.vertex_set())?;
    if let Some((u, v)) = t.first_incomparable(&nd) {
        return Err(Error::NotAChain(u, v));
    }
    t.top_of_chain(&nd).ok_or(Error::NoAttachment)
}

/// Glues a normal spanning tree of the component `c` onto `t` via the edge
/// from the top of `N(c)` to the root of `subtree`.
pub fn attach(g: &Graph, t: &RootedTree, c: &VertexSet, subtree: &RootedTree) -> Result<RootedTree> {
    check_embedded(g, t)?;
    check_embedded(g, subtree)?;
    check_component(g, &t.vertex_set(), c)?;
    let top = attachment_point(g, t, c)?;
    if subtree.vertex_set() != *c {
        return Err(Error::SubtreeMismatch);
    }
    if !g.has_edge(top, subtree.root()) {
        return Err(Error::NotAdjacent { root: subtree.root(), attachment: top });
    }
    let mut parent = t.parent_map().clone();
    parent.extend(subtree.edges());
    parent.insert(subtree.root(), top);
    RootedTree::new(t.root(), parent)
}

/// Result of one finite extension into a component.
#[derive(Clone, Debug)]
pub struct Extension {
    pub tree: RootedTree,
    pub attachment: Vertex,
    pub entry: Vertex,
    /// New vertices mapped to their parents.
    pub added: BTreeMap<Vertex, Vertex>,
}

/// Extends `t` finitely into the component `d` so that every target is
/// covered: a normal spanning tree of `d` rooted at `r_D` is pruned to the
/// down-closure of the targets and attached below `t_D`.
pub fn extend_into_component(g: &Graph, t: &RootedTree, d: &VertexSet, targets: &VertexSet) -> Result<RootedTree> {
    check_embedded(g, t)?;
    extend(g, t, d, targets).map(|ext| ext.tree)
}

pub fn extend(g: &Graph, t: &RootedTree, d: &VertexSet, targets: &VertexSet) -> Result<Extension> {
    check_component(g, &t.vertex_set(), d)?;
    if targets.is_empty() {
        return Err(Error::EmptySet("targets"));
    }
    if let Some(&x) = targets.iter().find(|x| !d.contains(x)) {
        return Err(Error::TargetOutside(x));
    }
    let attachment = attachment_point(g, t, d)?;
    let entry = g.neighbors(attachment).find(|y| d.contains(y)).expect("the top of N(D) has a neighbour in D");
    let sub = jung_subtree(g, d, entry)?;

    let keep: VertexSet = targets.iter().chain([&entry]).flat_map(|&x| sub.ancestors(x)).collect();
    let mut order: Vec<Vertex> = keep.into_iter().collect();
    order.sort_by_key(|v| (sub.depth(*v), *v));

    let mut tree = t.clone();
    let mut added = BTreeMap::new();
    for x in order {
        let p = sub.parent(x).unwrap_or(attachment);
        tree.push_leaf(x, p);
        added.insert(x, p);
    }
    Ok(Extension { tree, attachment, entry, added })
}

/// How a run terminated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    Spanning,
    BudgetExhausted,
    TargetCovered,
}

/// The member of `P(v, w)` chosen for one extension, by 1-based index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSelection {
    pub pair: (Vertex, Vertex),
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionStep {
    /// Round `n`: the extension turns `T_n` into part of `T_{n+1}`.
    pub step: usize,
    pub component: VertexSet,
    #[serde(rename = "t_D")]
    pub attachment: Vertex,
    #[serde(rename = "r_D")]
    pub entry: Vertex,
    pub selected: Vec<PathSelection>,
    /// Vertex of `U ∩ D` (local runs) or of `V_{n_D} ∩ D` (cover runs).
    pub required: Option<Vertex>,
    /// `n_D` for cover runs.
    pub cover_index: Option<usize>,
    /// Set when no selected path met `D` and the least vertex of `D` was
    /// used instead.
    pub fallback: bool,
    pub targets: VertexSet,
    /// New tree vertices mapped to their parents.
    pub added: BTreeMap<Vertex, Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunTrace {
    pub root: Vertex,
    pub rounds: usize,
    pub status: Termination,
    pub steps: Vec<ExtensionStep>,
    pub tree: RootedTree,
}

impl RunTrace {
    fn rebuild<'a>(&self, steps: impl Iterator<Item = &'a ExtensionStep>) -> RootedTree {
        let parent = steps.flat_map(|s| s.added.iter().map(|(&c, &p)| (c, p))).collect();
        RootedTree::new(self.root, parent).expect("trace records a tree")
    }

    /// `T_n`, the tree at the start of round `n` (`n <= rounds`).
    pub fn tree_after_round(&self, n: usize) -> RootedTree {
        self.rebuild(self.steps.iter().filter(|s| s.step < n))
    }

    /// The tree after the first `k` extension steps.
    pub fn tree_after_steps(&self, k: usize) -> RootedTree {
        self.rebuild(self.steps.iter().take(k))
    }

    /// `T_0, T_1, ..., T_rounds`.
    pub fn chain(&self) -> Vec<RootedTree> {
        (0..=self.rounds).map(|n| self.tree_after_round(n)).collect()
    }
}

/// A finite cover `V_0, V_1, ...` of the vertex set; sets may overlap.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DispersedCover(Vec<VertexSet>);

impl DispersedCover {
    pub fn new(sets: Vec<VertexSet>) -> Self {
        Self(sets)
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Least index `n` with `V_n ∩ d` non-empty, and the least vertex there.
    pub fn first_meeting(&self, d: &VertexSet) -> Option<(usize, Vertex)> {
        self.0.iter().enumerate().find_map(|(i, s)| s.intersection(d).next().map(|&x| (i, x)))
    }

    /// Every set lies in `g` and together they cover it.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        g.require_all(self.0.iter().flatten())?;
        let union: VertexSet = self.0.iter().flatten().copied().collect();
        match g.vertices().find(|v| !union.contains(v)) {
            Some(v) => Err(Error::CoverIncomplete(v)),
            None => Ok(()),
        }
    }
}

/// The distance classes of `t` from its root.
pub fn levels_of(t: &RootedTree) -> DispersedCover {
    let mut levels: Vec<VertexSet> = Vec::new();
    for v in t.vertices() {
        let d = t.depth(v).expect("tree vertex");
        if levels.len() <= d {
            levels.resize(d + 1, VertexSet::new());
        }
        levels[d].insert(v);
    }
    DispersedCover(levels)
}

/// What a run must achieve.
#[derive(Clone, Debug)]
pub enum Goal {
    /// A spanning tree; every component is extended into.
    Spanning,
    /// A tree containing the given set; only components meeting it are
    /// extended into, each time covering its least vertex there.
    Contain(VertexSet),
    /// A spanning tree that covers, in each extension into `D`, the least
    /// vertex of the first cover set meeting `D`.
    Cover(DispersedCover),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Maximum number of rounds; unlimited when `None`.
    pub step_budget: Option<usize>,
    /// Only pairs with `kappa <= kappa_small` get a path family. Unlimited
    /// when `None`.
    pub kappa_small: Option<usize>,
}

/// Path families `P(v, w)`, computed on first use and then frozen.
struct Families<'g> {
    g: &'g Graph,
    kappa_small: Option<usize>,
    memo: BTreeMap<(Vertex, Vertex), Option<PathFamily>>,
}

impl<'g> Families<'g> {
    fn new(g: &'g Graph, kappa_small: Option<usize>) -> Self {
        Self { g, kappa_small, memo: BTreeMap::new() }
    }

    fn get(&mut self, v: Vertex, w: Vertex) -> Result<Option<&PathFamily>> {
        if !self.memo.contains_key(&(v, w)) {
            let fam = max_independent_paths(self.g, v, w)?;
            let small = self.kappa_small.is_none_or(|k| fam.len() <= k);
            self.memo.insert((v, w), small.then_some(fam));
        }
        Ok(self.memo[&(v, w)].as_ref())
    }
}

/// Runs the extension loop from `T_0 = {r}` towards `goal`.
pub fn construct(g: &Graph, r: Vertex, goal: &Goal, opts: RunOptions) -> Result<RunTrace> {
    g.require(r)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    match goal {
        Goal::Spanning => {}
        Goal::Contain(u) => g.require_all(u)?,
        Goal::Cover(cover) => cover.validate(g)?,
    }

    let mut families = Families::new(g, opts.kappa_small);
    let mut tree = RootedTree::singleton(r);
    let mut steps = Vec::new();
    let mut round = 0;
    let status = loop {
        match goal {
            Goal::Contain(u) if u.iter().all(|&x| tree.contains(x)) => break Termination::TargetCovered,
            Goal::Spanning | Goal::Cover(_) if tree.len() == g.vertex_count() => break Termination::Spanning,
            _ => {}
        }
        if opts.step_budget.is_some_and(|b| round >= b) {
            break Termination::BudgetExhausted;
        }

        let before = tree.vertex_set();
        for d in components(g, &before) {
            let mut required = None;
            let mut cover_index = None;
            match goal {
                Goal::Spanning => {}
                Goal::Contain(u) => match u.intersection(&d).next() {
                    Some(&x) => required = Some(x),
                    None => continue,
                },
                Goal::Cover(cover) => {
                    let (i, x) = cover.first_meeting(&d).expect("cover is complete");
                    cover_index = Some(i);
                    required = Some(x);
                }
            }

            let nd = neighborhood(g, &d, &before)?;
            let mut selected = Vec::new();
            let mut targets = VertexSet::new();
            let attach: Vec<Vertex> = nd.iter().copied().collect();
            for (i, &v) in attach.iter().enumerate() {
                for &w in &attach[i + 1..] {
                    let Some(fam) = families.get(v, w)? else {
                        continue;
                    };
                    if let Some((index, path)) = fam.first_meeting(&d) {
                        selected.push(PathSelection { pair: (v, w), index });
                        targets.extend(path.vertices().iter().filter(|x| d.contains(x)));
                    }
                }
            }
            targets.extend(required);
            let fallback = targets.is_empty();
            if fallback {
                targets.insert(*d.first().expect("components are non-empty"));
            }

            let ext = extend(g, &tree, &d, &targets)?;
            info!(
                "round {round}: component of {} vertices, t_D={} r_D={}, {} selected paths, {} new vertices{}",
                d.len(),
                ext.attachment,
                ext.entry,
                selected.len(),
                ext.added.len(),
                if fallback { " (fallback)" } else { "" }
            );
            tree = ext.tree;
            steps.push(ExtensionStep {
                step: round,
                component: d,
                attachment: ext.attachment,
                entry: ext.entry,
                selected,
                required,
                cover_index,
                fallback,
                targets,
                added: ext.added,
            });
        }
        debug!("T_{} = {:?}", round + 1, tree.parent_map());
        round += 1;
    };

    Ok(RunTrace { root: r, rounds: round, status, steps, tree })
}

/// The countable-chain construction on a finite connected graph.
pub fn omega_nst(g: &Graph, r: Vertex, step_budget: Option<usize>) -> Result<RunTrace> {
    construct(g, r, &Goal::Spanning, RunOptions { step_budget, ..Default::default() })
}

/// A normal tree containing `u ∪ {r}`, extending only into components that
/// meet `u`.
pub fn local_normal_tree(g: &Graph, u: &VertexSet, r: Vertex, step_budget: Option<usize>) -> Result<RunTrace> {
    construct(g, r, &Goal::Contain(u.clone()), RunOptions { step_budget, ..Default::default() })
}

/// A normal spanning tree steered by a cover of the vertex set.
pub fn nst_from_dispersed_cover(g: &Graph, cover: &DispersedCover, r: Vertex) -> Result<RunTrace> {
    construct(g, r, &Goal::Cover(cover.clone()), RunOptions::default())
}
