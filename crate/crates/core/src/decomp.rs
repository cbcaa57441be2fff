//! Decompositions of the complete loop digraph `K~_n` (all `n^2` ordered
//! pairs, loops included) into closed trails of one common length `d`.
//!
//! A `{0, d}`-cycle over alphabet `q` is the same thing as a decomposition of
//! `K~_q` into `d` closed trails of length `q^2 / d`: reading trail `a` at
//! position `b` into `chi(a + d b)` makes the pairs `(chi(t), chi(t + d))`
//! run over the edges of the trails. [`chi_from_decomposition`] performs
//! that translation.
//!
//! Constructions:
//! * `d = n^2`: one Euler circuit.
//! * `d = 4`, `n` even: an explicit family of 4-edge sets.
//! * `d` in `{3, 5, 7}` (then `d | n`): a few hub vertices, small gadgets
//!   through each remaining vertex, and an exact split of the loopless
//!   remainder, with a local regrouping around one or two gadgets.
//! * other `d >= 6`: two hub vertices, an exact split of the loopless
//!   remainder, and a connected packing of the leftovers, each class read
//!   as one Euler circuit.
//! * anything else falls back to exact trail search.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::euler::Multigraph;
use crate::pack::{class_circuit, pack_connected, PackOutcome, Piece};
use crate::types::{CycleParams, CyclicString, IndexSet, ParamError};
use crate::verify::{verify_cover, VerifyError};

/// Default node budget for the exact searches.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// The complete digraph on `0..n`, with or without loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoopDigraph {
    n: usize,
    loops: bool,
}

impl LoopDigraph {
    /// `K~_n`: every ordered pair including loops.
    pub fn with_loops(n: usize) -> Self {
        Self { n, loops: true }
    }

    /// `<->K_n`: every ordered pair of distinct vertices.
    pub fn loopless(n: usize) -> Self {
        Self { n, loops: false }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_loops(&self) -> bool {
        self.loops
    }

    pub fn edge_count(&self) -> usize {
        if self.loops {
            self.n * self.n
        } else {
            self.n * self.n.saturating_sub(1)
        }
    }

    pub fn contains(&self, (u, v): (usize, usize)) -> bool {
        u < self.n && v < self.n && (self.loops || u != v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (0..self.n).map(move |v| (u, v))).filter(move |&e| self.contains(e))
    }
}

/// A cyclic sequence of distinct directed edges, each ending where the next
/// one starts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(usize, usize)>", into = "Vec<(usize, usize)>")]
pub struct ClosedTrail {
    edges: Vec<(usize, usize)>,
}

impl ClosedTrail {
    pub fn new(edges: Vec<(usize, usize)>) -> Result<Self, DecompError> {
        if edges.is_empty() {
            return Err(DecompError::EmptyTrail);
        }
        let len = edges.len();
        for i in 0..len {
            if edges[i].1 != edges[(i + 1) % len].0 {
                return Err(DecompError::Broken { trail: 0, position: i });
            }
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(DecompError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self { edges })
    }

    /// The trail visiting `vertices` in order and returning to the first.
    pub fn from_vertices(vertices: &[usize]) -> Result<Self, DecompError> {
        let len = vertices.len();
        Self::new((0..len).map(|i| (vertices[i], vertices[(i + 1) % len])).collect())
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Tail of each edge, in order.
    pub fn vertices(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.0).collect()
    }
}

impl TryFrom<Vec<(usize, usize)>> for ClosedTrail {
    type Error = DecompError;

    fn try_from(edges: Vec<(usize, usize)>) -> Result<Self, Self::Error> {
        Self::new(edges)
    }
}

impl From<ClosedTrail> for Vec<(usize, usize)> {
    fn from(t: ClosedTrail) -> Self {
        t.edges
    }
}

/// Which construction produced a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    SingleLoop,
    EulerCircuit,
    FourSets,
    SmallPrime,
    Hub,
    ExactSearch,
}

/// A partition of the edges of `K~_n` into closed trails of length `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrailDecomposition {
    pub n: usize,
    pub d: usize,
    pub route: Route,
    pub trails: Vec<ClosedTrail>,
}

impl TrailDecomposition {
    /// Independent certificate check: every trail chains and has length
    /// `d`, no edge is used twice, every edge of `K~_n` is used, and there
    /// are exactly `n^2 / d` trails.
    pub fn verify(&self) -> Result<(), DecompError> {
        verify_partition(LoopDigraph::with_loops(self.n), &self.trails)?;
        for (i, t) in self.trails.iter().enumerate() {
            if t.len() != self.d {
                return Err(DecompError::WrongLength { trail: i, len: t.len(), expected: self.d });
            }
        }
        if self.d == 0 || self.trails.len() * self.d != self.n * self.n {
            return Err(DecompError::WrongCount { got: self.trails.len() });
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decompositions serialize")
    }

    /// Parses and verifies a decomposition document.
    pub fn from_json(text: &str) -> Result<Self, DecompError> {
        let dec: Self = serde_json::from_str(text).map_err(|e| DecompError::Json(e.to_string()))?;
        dec.verify()?;
        Ok(dec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImpossibleReason {
    /// `d = 1` with `n >= 2`: only `n` loops exist.
    TooFewLoops,
    /// `d = 2`: a closed trail of length 2 cannot contain a loop.
    LoopsNeedOddTrail,
    /// Exhaustive search found no decomposition.
    Exhausted,
    /// The search ran out of budget on the one known exceptional instance
    /// (six vertices, all lengths 3).
    KnownException,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("no decomposition exists ({0:?})")]
    Impossible(ImpossibleReason),
    #[error("{d} does not divide {n}^2")]
    NotDivisor { n: usize, d: usize },
    #[error("trail lengths sum to {got}, expected {expected}")]
    LengthSum { got: usize, expected: usize },
    #[error("trail lengths must be at least {min}")]
    ShortLength { min: usize },
    #[error("search budget of {nodes} nodes exhausted")]
    ResourceLimit { nodes: u64 },
    #[error("trail is empty")]
    EmptyTrail,
    #[error("trail {trail} breaks at position {position}")]
    Broken { trail: usize, position: usize },
    #[error("edge ({0}, {1}) is used twice")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) is not in the graph")]
    ForeignEdge(usize, usize),
    #[error("{0} edges are not covered")]
    MissingEdges(usize),
    #[error("trail {trail} has length {len}, expected {expected}")]
    WrongLength { trail: usize, len: usize, expected: usize },
    #[error("{got} trails do not match n^2/d")]
    WrongCount { got: usize },
    #[error("expected {expected} trails, got {got}")]
    TrailCount { expected: usize, got: usize },
    #[error("malformed document: {0}")]
    Json(String),
    #[error("a construction step failed its own check: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("derived string is not a cover")]
    NotCover,
}

/// Checks that `trails` chain and partition the edges of `graph` exactly.
pub fn verify_partition(graph: LoopDigraph, trails: &[ClosedTrail]) -> Result<(), DecompError> {
    let n = graph.n();
    let mut seen = vec![false; n * n];
    let mut count = 0;
    for (i, t) in trails.iter().enumerate() {
        let edges = t.edges();
        if edges.is_empty() {
            return Err(DecompError::EmptyTrail);
        }
        for (j, &(u, v)) in edges.iter().enumerate() {
            if !graph.contains((u, v)) {
                return Err(DecompError::ForeignEdge(u, v));
            }
            if edges[(j + 1) % edges.len()].0 != v {
                return Err(DecompError::Broken { trail: i, position: j });
            }
            if std::mem::replace(&mut seen[u * n + v], true) {
                return Err(DecompError::DuplicateEdge(u, v));
            }
            count += 1;
        }
    }
    if count != graph.edge_count() {
        return Err(DecompError::MissingEdges(graph.edge_count() - count));
    }
    Ok(())
}

/// Decomposes `K~_n` into closed trails of length `d`.
pub fn decompose_equal(n: usize, d: usize) -> Result<TrailDecomposition, DecompError> {
    decompose_equal_with(n, d, DEFAULT_BUDGET)
}

pub fn decompose_equal_with(n: usize, d: usize, budget: u64) -> Result<TrailDecomposition, DecompError> {
    let edges = n * n;
    if n == 0 || d == 0 || !edges.is_multiple_of(d) {
        return Err(DecompError::NotDivisor { n, d });
    }
    if n == 1 {
        return finish(n, d, Route::SingleLoop, vec![ClosedTrail::from_vertices(&[0])?]);
    }
    match d {
        1 => return Err(DecompError::Impossible(ImpossibleReason::TooFewLoops)),
        2 => return Err(DecompError::Impossible(ImpossibleReason::LoopsNeedOddTrail)),
        _ => {}
    }
    if d == edges {
        let mut g = Multigraph::new(n);
        for (u, v) in LoopDigraph::with_loops(n).edges() {
            g.add_edge(u, v);
        }
        let circuit = g.euler_circuit(0).ok_or(DecompError::Internal("K~_n is Eulerian"))?;
        return finish(n, d, Route::EulerCircuit, vec![ClosedTrail::from_vertices(&circuit)?]);
    }
    let routed = match d {
        4 => Some((Route::FourSets, four_sets(n)?)),
        3 | 5 | 7 => small_prime(n, d, budget)?.map(|t| (Route::SmallPrime, t)),
        _ => hub(n, d, budget)?.map(|t| (Route::Hub, t)),
    };
    if let Some((route, trails)) = routed {
        let dec = TrailDecomposition { n, d, route, trails };
        if dec.verify().is_ok() {
            return Ok(dec);
        }
    }
    let trails = exact_search(LoopDigraph::with_loops(n), &vec![d; edges / d], budget)?;
    finish(n, d, Route::ExactSearch, trails)
}

fn finish(n: usize, d: usize, route: Route, trails: Vec<ClosedTrail>) -> Result<TrailDecomposition, DecompError> {
    let dec = TrailDecomposition { n, d, route, trails };
    dec.verify()?;
    Ok(dec)
}

/// Reads an edge set as one closed trail through an Euler circuit.
fn trail_of(edges: &[(usize, usize)], n: usize) -> Result<ClosedTrail, DecompError> {
    let mut g = Multigraph::new(n);
    for &(u, v) in edges {
        g.add_edge(u, v);
    }
    let start = edges.first().ok_or(DecompError::EmptyTrail)?.0;
    let circuit = g.euler_circuit(start).ok_or(DecompError::Internal("edge set is not Eulerian"))?;
    ClosedTrail::from_vertices(&circuit)
}

fn pair(u: usize, v: usize) -> [(usize, usize); 2] {
    [(u, v), (v, u)]
}

/// Length-4 sets for even `n` (vertices taken mod `n`).
fn four_sets(n: usize) -> Result<Vec<ClosedTrail>, DecompError> {
    if !n.is_multiple_of(2) {
        return Err(DecompError::Internal("four-sets need even n"));
    }
    let h = n / 2;
    let mut sets: Vec<Vec<(usize, usize)>> = Vec::new();
    for j in 0..h {
        let mut s = vec![(j, j), (j + h, j + h)];
        s.extend(pair(j, j + h));
        sets.push(s);
    }
    let at = |j: usize, k: usize| (j + k) % n;
    if n % 4 == 2 {
        for j in 0..n {
            for k in 1..=(n - 2) / 4 {
                let mut s = pair(j, at(j, 2 * k - 1)).to_vec();
                s.extend(pair(j, at(j, 2 * k)));
                sets.push(s);
            }
        }
    } else {
        for j in 0..n {
            for k in 1..n / 4 {
                let mut s = pair(j, at(j, 2 * k)).to_vec();
                s.extend(pair(j, at(j, 2 * k + 1)));
                sets.push(s);
            }
        }
        // Consecutive pairs around the odd vertices.
        for j in 0..h {
            let centre = 2 * j + 1;
            let mut s = pair(centre, 2 * j).to_vec();
            s.extend(pair(centre, at(centre, 1)));
            sets.push(s);
        }
    }
    sets.iter().map(|s| trail_of(s, n)).collect()
}

/// `d` in `{3, 5, 7}` with `d | n`. Hubs are the top `h = (d - 1) / 2`
/// vertices; each other vertex `j` carries the gadget of its hub pairs and
/// its loop (`2h + 1 = d` edges); the loopless remainder on the other
/// vertices is split exactly, and the short leftover trails are regrouped
/// with the hub edges and one or two gadgets.
fn small_prime(n: usize, d: usize, budget: u64) -> Result<Option<Vec<ClosedTrail>>, DecompError> {
    let h = (d - 1) / 2;
    if !n.is_multiple_of(d) || n <= h {
        return Ok(None);
    }
    let m = n - h;
    let hubs: Vec<usize> = (m..n).collect();
    let gadget = |j: usize| -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = hubs.iter().flat_map(|&a| pair(a, j)).collect();
        e.push((j, j));
        e
    };
    let rest = m * (m - 1);
    let short: Vec<usize> = match d {
        3 => vec![2],
        5 => vec![4, 2],
        _ => vec![5],
    };
    let full = (rest - short.iter().sum::<usize>()) / d;
    let mut lengths = vec![d; full];
    lengths.extend(&short);
    let split = match exact_search(LoopDigraph::loopless(m), &lengths, budget) {
        Ok(t) => t,
        Err(DecompError::ResourceLimit { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let (mut out, leftovers): (Vec<ClosedTrail>, Vec<ClosedTrail>) = split.into_iter().partition(|t| t.len() == d);
    let find = |len: usize| leftovers.iter().find(|t| t.len() == len).cloned().ok_or(DecompError::Internal("leftover"));
    let mut special: Vec<usize> = Vec::new();
    let mut groups: Vec<Vec<(usize, usize)>> = Vec::new();
    match d {
        3 => {
            let a = hubs[0];
            let t = find(2)?;
            let (u, v) = t.edges()[0];
            special.push(u);
            groups.push(vec![(a, a), (a, u), (u, a)]);
            groups.push(vec![(u, u), (u, v), (v, u)]);
        }
        5 => {
            let (a, b) = (hubs[0], hubs[1]);
            let t1 = find(4)?;
            let t2 = find(2)?;
            let v = t2.edges()[0].0;
            let u = t1.vertices().into_iter().find(|&w| w != v).ok_or(DecompError::Internal("t1"))?;
            special.extend([u, v]);
            let mut g1 = t1.edges().to_vec();
            g1.push((u, u));
            let mut g2 = t2.edges().to_vec();
            g2.push((v, v));
            g2.extend(pair(a, v));
            let mut g3 = pair(a, u).to_vec();
            g3.extend(pair(b, u));
            g3.push((a, a));
            let mut g4 = pair(b, v).to_vec();
            g4.push((b, b));
            g4.extend(pair(a, b));
            groups.extend([g1, g2, g3, g4]);
        }
        _ => {
            let (a, b, c) = (hubs[0], hubs[1], hubs[2]);
            let t = find(5)?;
            let u = t.edges()[0].0;
            special.push(u);
            let mut g1 = t.edges().to_vec();
            g1.extend(pair(a, u));
            let mut g2 = vec![(a, a), (b, b), (c, c)];
            g2.extend(pair(a, c));
            g2.extend(pair(b, c));
            let mut g3 = pair(a, b).to_vec();
            g3.extend(pair(b, u));
            g3.extend(pair(c, u));
            g3.push((u, u));
            groups.extend([g1, g2, g3]);
        }
    }
    for j in (0..m).filter(|j| !special.contains(j)) {
        out.push(trail_of(&gadget(j), n)?);
    }
    for g in &groups {
        out.push(trail_of(g, n)?);
    }
    Ok(Some(out))
}

/// `d = 6` or `d >= 8`. Hubs `a = n - 2`, `b = n - 1`; the loopless graph
/// on `0..n-2` is split into full trails plus at most two short ones, and
/// the short ones are packed with the hub edges `{a, j}`, `{b, j}`, the
/// loops and `{a, b}` into connected classes of `d` edges.
fn hub(n: usize, d: usize, budget: u64) -> Result<Option<Vec<ClosedTrail>>, DecompError> {
    if n < 3 {
        return Ok(None);
    }
    let m = n - 2;
    let (a, b) = (m, m + 1);
    let rest = m * (m - 1);
    let (full, r) = (rest / d, rest % d);
    let lengths: Vec<usize> = match r {
        0 => vec![d; full],
        1 if full >= 1 => {
            let mut l = vec![d; full - 1];
            l.extend([d - 1, 2]);
            l
        }
        1 => return Ok(None),
        _ => {
            let mut l = vec![d; full];
            l.push(r);
            l
        }
    };
    let split = if rest == 0 {
        Vec::new()
    } else {
        match exact_search(LoopDigraph::loopless(m), &lengths, budget) {
            Ok(t) => t,
            Err(DecompError::ResourceLimit { .. }) | Err(DecompError::Impossible(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    };
    let (mut out, leftovers): (Vec<ClosedTrail>, Vec<ClosedTrail>) = split.into_iter().partition(|t| t.len() == d);
    let mut pieces: Vec<Piece> = leftovers.into_iter().map(|t| Piece { edges: t.edges().to_vec() }).collect();
    for j in 0..m {
        pieces.push(Piece { edges: pair(a, j).to_vec() });
        pieces.push(Piece { edges: pair(b, j).to_vec() });
        pieces.push(Piece { edges: vec![(j, j)] });
    }
    pieces.push(Piece { edges: vec![(a, a)] });
    pieces.push(Piece { edges: vec![(b, b)] });
    pieces.push(Piece { edges: pair(a, b).to_vec() });
    let classes = match pack_connected(&pieces, n, d, budget) {
        PackOutcome::Packed(c) => c,
        PackOutcome::Infeasible | PackOutcome::OutOfBudget => return Ok(None),
    };
    for class in &classes {
        let circuit = class_circuit(&pieces, class, n).ok_or(DecompError::Internal("packed class is not Eulerian"))?;
        out.push(ClosedTrail::from_vertices(&circuit)?);
    }
    Ok(Some(out))
}

/// Splits `<->K_m` into closed trails with the given lengths.
pub fn decompose_loopless(m: usize, lengths: &[usize]) -> Result<Vec<ClosedTrail>, DecompError> {
    decompose_loopless_with(m, lengths, DEFAULT_BUDGET)
}

pub fn decompose_loopless_with(m: usize, lengths: &[usize], budget: u64) -> Result<Vec<ClosedTrail>, DecompError> {
    let expected = m * m.saturating_sub(1);
    let got: usize = lengths.iter().sum();
    if got != expected {
        return Err(DecompError::LengthSum { got, expected });
    }
    if lengths.iter().any(|&l| l < 2) {
        return Err(DecompError::ShortLength { min: 2 });
    }
    match exact_search(LoopDigraph::loopless(m), lengths, budget) {
        Err(DecompError::ResourceLimit { .. }) if m == 6 && lengths.iter().all(|&l| l == 3) => {
            Err(DecompError::Impossible(ImpossibleReason::KnownException))
        }
        other => other,
    }
}

/// Exact backtracking: the least unused edge starts a trail of some
/// remaining length, which is extended through unused edges back to its
/// start. After each closed trail, every weakly connected component of the
/// unused edges must have a size expressible as a sum of remaining lengths.
pub fn exact_search(graph: LoopDigraph, lengths: &[usize], budget: u64) -> Result<Vec<ClosedTrail>, DecompError> {
    let got: usize = lengths.iter().sum();
    if got != graph.edge_count() {
        return Err(DecompError::LengthSum { got, expected: graph.edge_count() });
    }
    if lengths.contains(&0) {
        return Err(DecompError::ShortLength { min: 1 });
    }
    let n = graph.n();
    let mut remaining: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in lengths {
        *remaining.entry(l).or_default() += 1;
    }
    let mut s = TrailSearch {
        n,
        used: (0..n * n).map(|i| !graph.contains((i / n, i % n))).collect(),
        remaining,
        trails: Vec::new(),
        path: Vec::new(),
        nodes: 0,
        budget,
        out_of_budget: false,
    };
    if s.solve() {
        s.trails.into_iter().map(ClosedTrail::new).collect()
    } else if s.out_of_budget {
        Err(DecompError::ResourceLimit { nodes: s.nodes })
    } else {
        Err(DecompError::Impossible(ImpossibleReason::Exhausted))
    }
}

struct TrailSearch {
    n: usize,
    used: Vec<bool>,
    remaining: BTreeMap<usize, usize>,
    trails: Vec<Vec<(usize, usize)>>,
    path: Vec<(usize, usize)>,
    nodes: u64,
    budget: u64,
    out_of_budget: bool,
}

impl TrailSearch {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.out_of_budget = true;
        }
        !self.out_of_budget
    }

    fn solve(&mut self) -> bool {
        let Some(first) = self.used.iter().position(|&u| !u) else {
            return self.remaining.is_empty();
        };
        let (u, v) = (first / self.n, first % self.n);
        let lengths: Vec<usize> = self.remaining.keys().rev().copied().collect();
        for len in lengths {
            self.take(len);
            self.used[first] = true;
            self.path.push((u, v));
            let ok = self.extend(u, v, len - 1);
            self.path.pop();
            self.used[first] = false;
            self.give(len);
            if ok {
                return true;
            }
            if self.out_of_budget {
                return false;
            }
        }
        false
    }

    fn extend(&mut self, start: usize, cur: usize, left: usize) -> bool {
        if !self.tick() {
            return false;
        }
        if left == 0 {
            if cur != start || !self.components_fit() {
                return false;
            }
            let path = std::mem::take(&mut self.path);
            self.trails.push(path);
            if self.solve() {
                return true;
            }
            self.path = self.trails.pop().expect("just pushed");
            return false;
        }
        let targets: Vec<usize> = if left == 1 { vec![start] } else { (0..self.n).collect() };
        for w in targets {
            let e = cur * self.n + w;
            if self.used[e] {
                continue;
            }
            self.used[e] = true;
            self.path.push((cur, w));
            let ok = self.extend(start, w, left - 1);
            self.path.pop();
            self.used[e] = false;
            if ok {
                return true;
            }
            if self.out_of_budget {
                return false;
            }
        }
        false
    }

    fn take(&mut self, len: usize) {
        let c = self.remaining.get_mut(&len).expect("length present");
        *c -= 1;
        if *c == 0 {
            self.remaining.remove(&len);
        }
    }

    fn give(&mut self, len: usize) {
        *self.remaining.entry(len).or_default() += 1;
    }

    fn components_fit(&self) -> bool {
        let n = self.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (e, _) in self.used.iter().enumerate().filter(|(_, &u)| !u) {
            let (a, b) = (find(&mut parent, e / n), find(&mut parent, e % n));
            parent[a] = b;
        }
        let mut size = vec![0usize; n];
        for (e, _) in self.used.iter().enumerate().filter(|(_, &u)| !u) {
            let r = find(&mut parent, e / n);
            size[r] += 1;
        }
        let total: usize = size.iter().sum();
        let mut reach = vec![false; total + 1];
        reach[0] = true;
        for (&len, &count) in &self.remaining {
            for _ in 0..count {
                for s in (len..=total).rev() {
                    if reach[s - len] {
                        reach[s] = true;
                    }
                }
            }
        }
        size.iter().all(|&s| s <= total && reach[s])
    }
}

/// `chi(a + d b) = C_a(b)` for a decomposition of `K~_q` into `d` trails of
/// length `q^2 / d`; the result is checked as a `{0, d}`-cycle.
pub fn chi_from_decomposition(q: u32, d: usize, dec: &TrailDecomposition) -> Result<CyclicString, DecompError> {
    dec.verify()?;
    if dec.n != q as usize {
        return Err(DecompError::Internal("decomposition is not on q vertices"));
    }
    if dec.trails.len() != d {
        return Err(DecompError::TrailCount { expected: d, got: dec.trails.len() });
    }
    let len = dec.d;
    let mut symbols = vec![0u32; d * len];
    for (a, trail) in dec.trails.iter().enumerate() {
        for (b, &(tail, _)) in trail.edges().iter().enumerate() {
            symbols[a + d * b] = tail as u32;
        }
    }
    let chi = CyclicString::new(q, symbols)?;
    let params = CycleParams::unreduced(q, 2)?;
    let set = IndexSet::new([0, d as u64], params.modulus())?;
    if !verify_cover(&chi, &params, &set, false)?.complete {
        return Err(DecompError::NotCover);
    }
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertices() {
        let dec = decompose_equal(2, 4).unwrap();
        assert_eq!(dec.trails.len(), 1);
        assert_eq!(decompose_equal(2, 2), Err(DecompError::Impossible(ImpossibleReason::LoopsNeedOddTrail)));
        assert_eq!(decompose_equal(2, 1), Err(DecompError::Impossible(ImpossibleReason::TooFewLoops)));
        assert_eq!(decompose_equal(2, 3), Err(DecompError::NotDivisor { n: 2, d: 3 }));
        assert_eq!(decompose_equal(1, 1).unwrap().route, Route::SingleLoop);
    }

    #[test]
    fn four_sets_partition() {
        for n in (2..=12).step_by(2) {
            let trails = four_sets(n).unwrap();
            verify_partition(LoopDigraph::with_loops(n), &trails).unwrap();
            assert!(trails.iter().all(|t| t.len() == 4));
        }
        assert_eq!(decompose_equal(4, 4).unwrap().route, Route::FourSets);
    }

    #[test]
    fn small_primes() {
        for (n, d) in [(3, 3), (6, 3), (5, 5), (7, 7)] {
            let dec = decompose_equal(n, d).unwrap();
            assert_eq!(dec.route, Route::SmallPrime, "n={n} d={d}");
        }
    }

    #[test]
    fn hub_route() {
        for (n, d) in [(4, 8), (6, 6), (6, 9), (6, 12), (8, 8), (8, 16)] {
            let dec = decompose_equal(n, d).unwrap();
            assert_eq!(dec.route, Route::Hub, "n={n} d={d}");
        }
    }

    #[test]
    fn loopless_examples() {
        let t = decompose_loopless(3, &[3, 3]).unwrap();
        verify_partition(LoopDigraph::loopless(3), &t).unwrap();
        let t = decompose_loopless(5, &[5; 4]).unwrap();
        assert!(t.iter().all(|t| t.len() == 5));
        assert_eq!(decompose_loopless(6, &[3; 10]), Err(DecompError::Impossible(ImpossibleReason::Exhausted)));
        assert_eq!(
            decompose_loopless_with(6, &[3; 10], 10),
            Err(DecompError::Impossible(ImpossibleReason::KnownException))
        );
        assert!(matches!(decompose_loopless(3, &[3, 2]), Err(DecompError::LengthSum { .. })));
    }

    #[test]
    fn chi_bridge() {
        let dec = decompose_equal(2, 4).unwrap();
        let chi = chi_from_decomposition(2, 1, &dec).unwrap();
        assert_eq!(chi.len(), 4);
        let dec = decompose_equal(3, 3).unwrap();
        assert_eq!(chi_from_decomposition(3, 3, &dec).unwrap().len(), 9);
    }

    #[test]
    fn json_round_trip_and_tamper() {
        let dec = decompose_equal(3, 3).unwrap();
        let text = dec.to_json();
        assert_eq!(TrailDecomposition::from_json(&text).unwrap(), dec);
        let mut bad = dec.clone();
        bad.trails.pop();
        assert!(TrailDecomposition::from_json(&bad.to_json()).is_err());
        assert!(TrailDecomposition::from_json("{\"n\":2}").is_err());
    }
}
