//! Finite fat TK certificates: `n` branch vertices, every pair joined by `m`
//! internally disjoint paths that avoid all other branch vertices.
//!
//! This is a subdivision of the multigraph `K_n` with every edge replaced by
//! `m` parallel edges. In a simple graph at most one of the `m` parallel
//! edges of a pair can survive unsubdivided.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::{kappa, min_separator, pair_flow, separator_within, Path};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CertificateRepr", into = "CertificateRepr")]
pub struct FatTkCertificate {
    pub branch: Vec<Vertex>,
    pub m: usize,
    /// Keyed by `(u, v)` with `u < v`; each path runs from `u` to `v`.
    pub paths: BTreeMap<(Vertex, Vertex), Vec<Path>>,
}

#[derive(Clone, Serialize, Deserialize)]
struct CertificateRepr {
    branch: Vec<Vertex>,
    m: usize,
    paths: BTreeMap<String, Vec<Path>>,
}

impl TryFrom<CertificateRepr> for FatTkCertificate {
    type Error = Error;

    fn try_from(repr: CertificateRepr) -> Result<Self> {
        let mut paths = BTreeMap::new();
        for (key, list) in repr.paths {
            let bad = || Error::Parse(format!("pair key {key:?} is not of the form \"u,v\""));
            let (u, v) = key.split_once(',').ok_or_else(bad)?;
            let u: Vertex = u.trim().parse().map_err(|_| bad())?;
            let v: Vertex = v.trim().parse().map_err(|_| bad())?;
            paths.insert((u, v), list);
        }
        Ok(Self { branch: repr.branch, m: repr.m, paths })
    }
}

impl From<FatTkCertificate> for CertificateRepr {
    fn from(c: FatTkCertificate) -> Self {
        let paths = c.paths.into_iter().map(|((u, v), list)| (format!("{u},{v}"), list)).collect();
        CertificateRepr { branch: c.branch, m: c.m, paths }
    }
}

impl FatTkCertificate {
    /// All vertices used by the certificate.
    pub fn vertices(&self) -> VertexSet {
        self.branch
            .iter()
            .copied()
            .chain(self.paths.values().flatten().flat_map(|p| p.vertices().iter().copied()))
            .collect()
    }
}

/// Why a certificate is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateDefect {
    #[error("need at least two branch vertices, got {0}")]
    TooFewBranchVertices(usize),
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("branch vertex {0} is repeated")]
    RepeatedBranchVertex(Vertex),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("no paths for pair {0:?}")]
    MissingPair((Vertex, Vertex)),
    #[error("pair {0:?} is not a pair of branch vertices")]
    UnexpectedPair((Vertex, Vertex)),
    #[error("pair {pair:?} has {found} paths, expected {expected}")]
    WrongMultiplicity { pair: (Vertex, Vertex), found: usize, expected: usize },
    #[error("path {index} of pair {pair:?} is not a path of the graph")]
    InvalidPath { pair: (Vertex, Vertex), index: usize },
    #[error("path {index} of pair {pair:?} does not run between the pair")]
    WrongEnds { pair: (Vertex, Vertex), index: usize },
    #[error("a path of pair {pair:?} passes through branch vertex {vertex}")]
    ThroughBranchVertex { pair: (Vertex, Vertex), vertex: Vertex },
    #[error("vertex {0} is interior to two branch paths")]
    SharedInteriorVertex(Vertex),
    #[error("pair {0:?} uses its direct edge more than once")]
    RepeatedDirectEdge((Vertex, Vertex)),
}

/// Checks every structural requirement of a fat TK(n, m) certificate.
pub fn verify_fat_tk(g: &Graph, cert: &FatTkCertificate) -> std::result::Result<(), CertificateDefect> {
    use CertificateDefect as D;

    let n = cert.branch.len();
    if n < 2 {
        return Err(D::TooFewBranchVertices(n));
    }
    if cert.m == 0 {
        return Err(D::ZeroMultiplicity);
    }
    let mut branch = VertexSet::new();
    for &b in &cert.branch {
        if !g.contains(b) {
            return Err(D::UnknownVertex(b));
        }
        if !branch.insert(b) {
            return Err(D::RepeatedBranchVertex(b));
        }
    }
    for &pair in cert.paths.keys() {
        if pair.0 >= pair.1 || !branch.contains(&pair.0) || !branch.contains(&pair.1) {
            return Err(D::UnexpectedPair(pair));
        }
    }

    let mut interior = VertexSet::new();
    for (i, &u) in branch.iter().enumerate() {
        for &v in branch.iter().skip(i + 1) {
            let pair = (u, v);
            let list = cert.paths.get(&pair).ok_or(D::MissingPair(pair))?;
            if list.len() != cert.m {
                return Err(D::WrongMultiplicity { pair, found: list.len(), expected: cert.m });
            }
            let mut direct = 0;
            for (index, path) in list.iter().enumerate() {
                let index = index + 1;
                if !path.is_valid_in(g) {
                    return Err(D::InvalidPath { pair, index });
                }
                if path.start() != Some(u) || path.end() != Some(v) {
                    return Err(D::WrongEnds { pair, index });
                }
                if path.edge_len() == 1 {
                    direct += 1;
                    if direct > 1 {
                        return Err(D::RepeatedDirectEdge(pair));
                    }
                }
                for &x in path.interior() {
                    if branch.contains(&x) {
                        return Err(D::ThroughBranchVertex { pair, vertex: x });
                    }
                    if !interior.insert(x) {
                        return Err(D::SharedInteriorVertex(x));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The pair the greedy search could not route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blocked {
    pub pair: (Vertex, Vertex),
    /// How many of the `m` paths could be routed.
    pub routed: usize,
    /// A minimum separator of the pair in the residual graph (its direct edge,
    /// if any, removed).
    pub separator: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FatTkSearch {
    Found(FatTkCertificate),
    Blocked(Blocked),
}

impl FatTkSearch {
    pub fn certificate(&self) -> Option<&FatTkCertificate> {
        match self {
            FatTkSearch::Found(c) => Some(c),
            FatTkSearch::Blocked(_) => None,
        }
    }
}

fn check_branch_set(g: &Graph, u: &VertexSet) -> Result<()> {
    g.require_all(u)?;
    if u.len() < 2 {
        return Err(Error::TooFewBranchVertices(u.len()));
    }
    Ok(())
}

/// Greedy search for a fat TK(|u|, m) with branch set `u`.
///
/// Pairs are routed in lexicographic order, each by a minimum-cost flow of
/// `m` units through vertices not yet used and not in `u`. A returned
/// certificate is always valid; a `Blocked` answer does not prove that no
/// certificate exists.
pub fn find_fat_tk(g: &Graph, u: &VertexSet, m: usize) -> Result<FatTkSearch> {
    check_branch_set(g, u)?;
    if m == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    let mut used = VertexSet::new();
    let mut paths = BTreeMap::new();
    let branch: Vec<Vertex> = u.iter().copied().collect();
    for (i, &a) in branch.iter().enumerate() {
        for &b in &branch[i + 1..] {
            let free = |x: Vertex| !used.contains(&x) && !u.contains(&x);
            let mut flow = pair_flow(g, a, b, free);
            let routed = flow.min_cost_flow(Some(m));
            if routed < m {
                let mut residual = g.clone();
                residual.remove_edge(a, b);
                let separator = separator_within(&residual, &VertexSet::from([a]), &VertexSet::from([b]), free)?;
                return Ok(FatTkSearch::Blocked(Blocked { pair: (a, b), routed, separator: separator.vertices }));
            }
            let mut found: Vec<Path> = flow.paths().into_iter().map(Path::new).collect();
            found.sort();
            used.extend(found.iter().flat_map(|p| p.interior().iter().copied()));
            paths.insert((a, b), found);
        }
    }
    Ok(FatTkSearch::Found(FatTkCertificate { branch, m, paths }))
}

/// `kappa(u_i, u_j) >= m` for every pair of `u`. A `false` answer proves that
/// no fat TK(|u|, m) has branch set `u`.
pub fn kappa_necessary_check(g: &Graph, u: &VertexSet, m: usize) -> Result<bool> {
    check_branch_set(g, u)?;
    let branch: Vec<Vertex> = u.iter().copied().collect();
    for (i, &a) in branch.iter().enumerate() {
        for &b in &branch[i + 1..] {
            if kappa(g, a, b)? < m {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// What happened to one candidate branch set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CandidateOutcome {
    /// The greedy search found no certificate.
    NoCertificate { blocked: Blocked },
    /// A certificate exists and `separator` (of size at most `s`) cuts it off
    /// from the probe set.
    Separated { certificate: FatTkCertificate, separator: VertexSet },
    /// A certificate exists and no set of at most `s` vertices separates it.
    /// `min_separator` is the true minimum, absent when the certificate meets
    /// the probe set.
    NotSeparated { certificate: FatTkCertificate, min_separator: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExaminedCandidate {
    pub branch: Vec<Vertex>,
    /// Least pairwise connectivity within the branch set.
    pub min_kappa: usize,
    #[serde(flatten)]
    pub outcome: CandidateOutcome,
}

/// Verdict of a bounded search; only the examined candidates are covered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DispersednessVerdict {
    pub dispersed: bool,
    /// Branch sets passing the connectivity filter, before the budget cut.
    pub candidates: usize,
    pub examined: Vec<ExaminedCandidate>,
}

/// Smallest set of vertices, disjoint from `probe`, whose removal leaves no
/// path from `probe` to what remains of `target`. `None` if the two meet.
fn separate_from(g: &Graph, probe: &VertexSet, target: &VertexSet) -> Result<Option<VertexSet>> {
    if probe.is_empty() {
        return Ok(Some(VertexSet::new()));
    }
    if !probe.is_disjoint(target) {
        return Ok(None);
    }
    let hub = g.max_vertex().map_or(0, |v| v + 1);
    let mut aux = g.clone();
    for &x in target {
        aux.add_edge(hub, x)?;
    }
    match min_separator(&aux, probe, &VertexSet::from([hub])) {
        Ok(sep) => Ok(Some(sep.vertices)),
        Err(Error::Inseparable(..)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Branch sets of size `n` whose pairs all have connectivity at least `m`,
/// strongest first.
fn candidate_branch_sets(g: &Graph, n: usize, m: usize) -> Result<Vec<(Vec<Vertex>, usize)>> {
    let vs: Vec<Vertex> = g.vertices().collect();
    let mut strong: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let k = kappa(g, a, b)?;
            if k >= m {
                strong.insert((a, b), k);
            }
        }
    }
    let eligible: Vec<Vertex> =
        vs.iter().copied().filter(|&v| strong.keys().filter(|(a, b)| *a == v || *b == v).count() + 1 >= n).collect();

    fn grow(
        eligible: &[Vertex],
        strong: &BTreeMap<(Vertex, Vertex), usize>,
        n: usize,
        start: usize,
        current: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in start..eligible.len() {
            let x = eligible[i];
            if current.iter().all(|&c| strong.contains_key(&(c, x))) {
                current.push(x);
                grow(eligible, strong, n, i + 1, current, out);
                current.pop();
            }
        }
    }
    let mut sets = Vec::new();
    grow(&eligible, &strong, n, 0, &mut Vec::new(), &mut sets);

    let mut scored: Vec<(Vec<Vertex>, usize, usize)> = sets
        .into_iter()
        .map(|set| {
            let ks: Vec<usize> = set
                .iter()
                .enumerate()
                .flat_map(|(i, &a)| set[i + 1..].iter().map(move |&b| (a, b)))
                .map(|pair| strong[&pair])
                .collect();
            let min = ks.iter().copied().min().unwrap_or(0);
            let sum = ks.iter().sum();
            (set, min, sum)
        })
        .collect();
    scored.sort_by(|x, y| (y.1, y.2).cmp(&(x.1, x.2)).then_with(|| x.0.cmp(&y.0)));
    Ok(scored.into_iter().map(|(set, min, _)| (set, min)).collect())
}

/// Whether every fat TK(n, m) found among the `search_budget` strongest
/// candidate branch sets can be cut off from `probe` by at most `s`
/// vertices.
pub fn is_dispersed(
    g: &Graph,
    probe: &VertexSet,
    n: usize,
    m: usize,
    s: usize,
    search_budget: usize,
) -> Result<DispersednessVerdict> {
    if search_budget == 0 {
        return Err(Error::ZeroBudget);
    }
    if n < 2 {
        return Err(Error::TooFewBranchVertices(n));
    }
    if m == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    g.require_all(probe)?;

    let candidates = candidate_branch_sets(g, n, m)?;
    let mut examined = Vec::new();
    let mut dispersed = true;
    for (branch, min_kappa) in candidates.iter().take(search_budget) {
        let set: VertexSet = branch.iter().copied().collect();
        let outcome = match find_fat_tk(g, &set, m)? {
            FatTkSearch::Blocked(blocked) => CandidateOutcome::NoCertificate { blocked },
            FatTkSearch::Found(certificate) => match separate_from(g, probe, &certificate.vertices())? {
                Some(separator) if separator.len() <= s => CandidateOutcome::Separated { certificate, separator },
                other => {
                    dispersed = false;
                    CandidateOutcome::NotSeparated { certificate, min_separator: other.map(|sep| sep.len()) }
                }
            },
        };
        examined.push(ExaminedCandidate { branch: branch.clone(), min_kappa: *min_kappa, outcome });
    }
    Ok(DispersednessVerdict { dispersed, candidates: candidates.len(), examined })
}

/// The triangle on branch vertices 1, 2, 3 with every edge replaced by
/// `copies` paths of length two. Subdivision vertices are numbered from 4.
pub fn subdivided_triangle(copies: usize) -> Graph {
    let mut g = Graph::from_edges([1, 2, 3], []).expect("no edges yet");
    let mut next = 4;
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        for _ in 0..copies {
            g.add_edge(a, next).expect("fresh vertex");
            g.add_edge(next, b).expect("fresh vertex");
            next += 1;
        }
    }
    g
}
