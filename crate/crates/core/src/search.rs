//! Deciding q-validity of an index set by pruned exhaustive search, and
//! atlases of affine classes.
//!
//! The search assigns `chi` one position at a time in a fixed static order
//! and maintains, for every sub-pattern `P` of `I`, how often each
//! `|P|`-word has been completed on translates of `P`. In an I-cycle each
//! n-word occurs exactly once, so each `|P|`-word occurs exactly
//! `q^(n - |P|)` times on `P`; exceeding that count prunes the branch. For
//! `P = I` this is the duplicate-window rule.
//!
//! Two symmetries are broken, both preserving the existence of an I-cycle:
//! translation (rotate so that the all-zeroes word sits at translate 0, so
//! `chi(i) = 0` for `i` in `I`) and permutations of the non-zero symbols
//! (non-zero symbols first appear in increasing order along the search
//! order).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{canonicalize_with_units, units};
use crate::types::{CycleParams, CyclicString, IndexSet, ParamError};
use crate::verify::verify_cover;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("index set has {got} elements, expected {expected}")]
    SetSize { got: usize, expected: u32 },
    #[error("index {index} is not below the modulus {modulus}")]
    OutOfRange { index: u64, modulus: u64 },
    #[error("{d} does not divide q^2 = {square}")]
    NotDivisor { d: u64, square: u64 },
    #[error("search inconclusive after {nodes} nodes in {elapsed:?}")]
    Inconclusive { nodes: u64, elapsed: Duration },
    #[error("search space of {0} positions is beyond desk scale")]
    TooLarge(u64),
    #[error("internal error: witness failed verification")]
    WitnessRejected,
}

/// Node and wall-clock limits for a search. Exceeding either yields
/// [`SearchError::Inconclusive`], never a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: u64::MAX, max_time: None };

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes, max_time: None }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::UNLIMITED
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Valid,
    Invalid,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Valid => "valid",
            Verdict::Invalid => "invalid",
        })
    }
}

impl FromStr for Verdict {
    type Err = AtlasParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "valid" => Ok(Verdict::Valid),
            "invalid" => Ok(Verdict::Invalid),
            other => Err(AtlasParseError::Verdict(other.to_string())),
        }
    }
}

/// Why an index set was found invalid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Refutation {
    /// The pruned search ran to exhaustion.
    Exhausted,
    /// `I + period = I`. Translates `t` and `t + period` then see permuted
    /// copies of the same word, so the constant words (fixed by the
    /// permutation) cannot each be seen exactly once.
    PeriodicIndexSet { period: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityCertificate {
    pub verdict: Verdict,
    pub witness: Option<CyclicString>,
    pub refutation: Option<Refutation>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Decides whether `I` admits an I-cycle over `Z_{q^n}`.
pub fn decide_valid(q: u32, n: u32, index_set: &IndexSet) -> Result<ValidityCertificate, SearchError> {
    decide_valid_with(q, n, index_set, Budget::UNLIMITED)
}

pub fn decide_valid_with(
    q: u32,
    n: u32,
    index_set: &IndexSet,
    budget: Budget,
) -> Result<ValidityCertificate, SearchError> {
    decide_valid_opts(q, n, index_set, budget, SearchOptions::default())
}

/// Switches for [`decide_valid_opts`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Refute periodic index sets without searching.
    pub period_rule: bool,
    /// Count sub-pattern words (otherwise only full windows are counted).
    pub sub_pattern_pruning: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { period_rule: true, sub_pattern_pruning: true }
    }
}

pub fn decide_valid_opts(
    q: u32,
    n: u32,
    index_set: &IndexSet,
    budget: Budget,
    options: SearchOptions,
) -> Result<ValidityCertificate, SearchError> {
    let params = CycleParams::unreduced(q, n)?;
    let modulus = params.modulus();
    if index_set.len() != n as usize {
        return Err(SearchError::SetSize { got: index_set.len(), expected: n });
    }
    if let Some(&index) = index_set.elements().iter().find(|&&e| e >= modulus) {
        return Err(SearchError::OutOfRange { index, modulus });
    }
    let start = Instant::now();
    if let Some(period) = period_of(index_set.elements(), modulus).filter(|_| options.period_rule) {
        return Ok(ValidityCertificate {
            verdict: Verdict::Invalid,
            witness: None,
            refutation: Some(Refutation::PeriodicIndexSet { period }),
            nodes_explored: 0,
            elapsed: start.elapsed(),
        });
    }
    if modulus > MAX_SEARCH_POSITIONS {
        return Err(SearchError::TooLarge(modulus));
    }
    let mut searcher = Searcher::new(q, n, index_set.elements(), budget, start, options.sub_pattern_pruning);
    let found = searcher.run()?;
    let elapsed = start.elapsed();
    match found {
        Some(symbols) => {
            let witness = CyclicString::from_raw(q, symbols);
            let report = verify_cover(&witness, &params, index_set, false).map_err(|_| SearchError::WitnessRejected)?;
            if !report.complete {
                return Err(SearchError::WitnessRejected);
            }
            Ok(ValidityCertificate {
                verdict: Verdict::Valid,
                witness: Some(witness),
                refutation: None,
                nodes_explored: searcher.nodes,
                elapsed,
            })
        }
        None => Ok(ValidityCertificate {
            verdict: Verdict::Invalid,
            witness: None,
            refutation: Some(Refutation::Exhausted),
            nodes_explored: searcher.nodes,
            elapsed,
        }),
    }
}

/// Search is only attempted on cycles this short.
pub const MAX_SEARCH_POSITIONS: u64 = 4096;

/// Least `s > 0` with `I + s = I (mod L)`.
fn period_of(elements: &[u64], modulus: u64) -> Option<u64> {
    let set: BTreeSet<u64> = elements.iter().copied().collect();
    let first = elements[0];
    // A period must carry the first element onto some element of I.
    elements
        .iter()
        .map(|&e| (e + modulus - first) % modulus)
        .filter(|&s| s != 0)
        .filter(|&s| elements.iter().all(|&e| set.contains(&((e + s) % modulus))))
        .min()
}

/// Closed-form answer for `I = {0, d}` with `d | q^2`: valid iff
/// `q^2 / d != 2`.
pub fn two_element_validity(q: u32, d: u64) -> Result<bool, SearchError> {
    if q < 2 {
        return Err(ParamError::Alphabet(q).into());
    }
    let square = q as u64 * q as u64;
    if d == 0 || d >= square || !square.is_multiple_of(d) {
        return Err(SearchError::NotDivisor { d, square });
    }
    Ok(square / d != 2)
}

struct Searcher {
    q: u32,
    modulus: usize,
    /// Positions in assignment order.
    order: Vec<u32>,
    /// Number of leading steps whose value is forced to 0.
    forced: usize,
    /// For each step, windows completed by it: (counter base, limit, start
    /// and end into `window_positions`).
    completions: Vec<Vec<Completion>>,
    window_positions: Vec<u32>,
    counts: Vec<u32>,
    chi: Vec<u8>,
    nodes: u64,
    budget: Budget,
    start: Instant,
    exhausted_budget: bool,
}

#[derive(Clone, Copy)]
struct Completion {
    counter_base: u32,
    limit: u32,
    from: u32,
    to: u32,
}

impl Searcher {
    fn new(q: u32, n: u32, elements: &[u64], budget: Budget, start: Instant, sub_pattern_pruning: bool) -> Self {
        let modulus = (q as u64).pow(n) as usize;
        let mut patterns = sub_patterns(elements, modulus as u64);
        if !sub_pattern_pruning {
            patterns.retain(|p| p.len() == elements.len());
        }

        // Every window of every pattern, as a list of positions.
        struct Win {
            pattern: usize,
            positions: Vec<u32>,
        }
        let mut windows = Vec::new();
        for (p, pat) in patterns.iter().enumerate() {
            for t in 0..modulus as u64 {
                let positions = pat.iter().map(|&e| ((e + t) % modulus as u64) as u32).collect();
                windows.push(Win { pattern: p, positions });
            }
        }
        let mut windows_at: Vec<Vec<usize>> = vec![Vec::new(); modulus];
        for (w, win) in windows.iter().enumerate() {
            for &pos in &win.positions {
                windows_at[pos as usize].push(w);
            }
        }
        let full_pattern = patterns.iter().position(|p| p.len() == elements.len()).expect("I is its own sub-pattern");

        // Static order: the forced zeroes on I first, then greedily the
        // position completing the most full windows, then the most
        // sub-pattern windows, then the lowest index.
        let mut assigned = vec![false; modulus];
        let mut missing: Vec<usize> = windows.iter().map(|w| w.positions.len()).collect();
        let mut order: Vec<u32> = Vec::with_capacity(modulus);
        let place = |pos: usize, order: &mut Vec<u32>, assigned: &mut Vec<bool>, missing: &mut Vec<usize>| {
            assigned[pos] = true;
            order.push(pos as u32);
            for &w in &windows_at[pos] {
                missing[w] -= 1;
            }
        };
        for &e in elements {
            place(e as usize, &mut order, &mut assigned, &mut missing);
        }
        let forced = order.len();
        while order.len() < modulus {
            let mut best: Option<((usize, usize), usize)> = None;
            for pos in (0..modulus).filter(|&p| !assigned[p]) {
                let mut score = (0usize, 0usize);
                for &w in &windows_at[pos] {
                    if missing[w] == 1 {
                        if windows[w].pattern == full_pattern {
                            score.0 += 1;
                        } else {
                            score.1 += 1;
                        }
                    }
                }
                if best.is_none_or(|(s, _)| score > s) {
                    best = Some((score, pos));
                }
            }
            let (_, pos) = best.unwrap();
            place(pos, &mut order, &mut assigned, &mut missing);
        }

        let mut step_of = vec![0usize; modulus];
        for (step, &pos) in order.iter().enumerate() {
            step_of[pos as usize] = step;
        }
        let mut counter_base = Vec::with_capacity(patterns.len());
        let mut total = 0u32;
        for pat in &patterns {
            counter_base.push(total);
            total += (q as u64).pow(pat.len() as u32) as u32;
        }
        let mut completions: Vec<Vec<Completion>> = vec![Vec::new(); modulus];
        let mut window_positions = Vec::new();
        for win in &windows {
            let step = win.positions.iter().map(|&p| step_of[p as usize]).max().unwrap();
            let from = window_positions.len() as u32;
            window_positions.extend_from_slice(&win.positions);
            let len = patterns[win.pattern].len() as u32;
            completions[step].push(Completion {
                counter_base: counter_base[win.pattern],
                limit: (q as u64).pow(n - len) as u32,
                from,
                to: window_positions.len() as u32,
            });
        }
        Searcher {
            q,
            modulus,
            order,
            forced,
            completions,
            window_positions,
            counts: vec![0; total as usize],
            chi: vec![0; modulus],
            nodes: 0,
            budget,
            start,
            exhausted_budget: false,
        }
    }

    fn run(&mut self) -> Result<Option<Vec<u32>>, SearchError> {
        let found = self.descend(0, 0);
        if self.exhausted_budget {
            return Err(SearchError::Inconclusive { nodes: self.nodes, elapsed: self.start.elapsed() });
        }
        Ok(found.then(|| self.chi.iter().map(|&s| s as u32).collect()))
    }

    /// Applies the completions of `step`; on overflow undoes them and
    /// returns false.
    fn apply(&mut self, step: usize) -> bool {
        let q = self.q;
        let comps = &self.completions[step];
        for (i, c) in comps.iter().enumerate() {
            let code = self.window_positions[c.from as usize..c.to as usize]
                .iter()
                .fold(0u32, |acc, &p| acc * q + self.chi[p as usize] as u32);
            let slot = &mut self.counts[(c.counter_base + code) as usize];
            *slot += 1;
            if *slot > c.limit {
                // Undo this and the earlier ones.
                for c in comps[..=i].iter() {
                    let code = self.window_positions[c.from as usize..c.to as usize]
                        .iter()
                        .fold(0u32, |acc, &p| acc * q + self.chi[p as usize] as u32);
                    self.counts[(c.counter_base + code) as usize] -= 1;
                }
                return false;
            }
        }
        true
    }

    fn undo(&mut self, step: usize) {
        let q = self.q;
        for c in &self.completions[step] {
            let code = self.window_positions[c.from as usize..c.to as usize]
                .iter()
                .fold(0u32, |acc, &p| acc * q + self.chi[p as usize] as u32);
            self.counts[(c.counter_base + code) as usize] -= 1;
        }
    }

    /// `max_used` is the largest non-zero symbol used so far (0 if none).
    fn descend(&mut self, step: usize, max_used: u32) -> bool {
        if step == self.modulus {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            self.exhausted_budget = true;
            return false;
        }
        if let Some(limit) = self.budget.max_time {
            if self.nodes.is_multiple_of(4096) && self.start.elapsed() > limit {
                self.exhausted_budget = true;
                return false;
            }
        }
        let pos = self.order[step] as usize;
        let top = if step < self.forced { 0 } else { (max_used + 1).min(self.q - 1) };
        for s in 0..=top {
            self.chi[pos] = s as u8;
            if self.apply(step) {
                if self.descend(step + 1, max_used.max(s)) {
                    return true;
                }
                self.undo(step);
            }
            if self.exhausted_budget {
                return false;
            }
        }
        self.chi[pos] = 0;
        false
    }
}

/// Non-empty subsets of `I`, normalized to contain 0 and deduplicated up to
/// cyclic translation.
fn sub_patterns(elements: &[u64], modulus: u64) -> Vec<Vec<u64>> {
    let n = elements.len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let subset: Vec<u64> = (0..n).filter(|&j| mask >> j & 1 == 1).map(|j| elements[j]).collect();
        let key = subset
            .iter()
            .map(|&a| {
                let mut v: Vec<u64> = subset.iter().map(|&e| (e + modulus - a) % modulus).collect();
                v.sort_unstable();
                v
            })
            .min()
            .unwrap();
        if seen.insert(key.clone()) {
            out.push(key);
        }
    }
    out
}

/// One affine class of an atlas with its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub canonical: IndexSet,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atlas {
    pub q: u32,
    pub n: u32,
    pub set_size: u32,
    /// Sorted by canonical representative.
    pub classes: Vec<AtlasEntry>,
}

impl Atlas {
    pub fn valid_count(&self) -> usize {
        self.classes.iter().filter(|c| c.verdict == Verdict::Valid).count()
    }

    pub fn invalid_count(&self) -> usize {
        self.classes.len() - self.valid_count()
    }

    pub fn with_verdict(&self, verdict: Verdict) -> impl Iterator<Item = &IndexSet> {
        self.classes.iter().filter(move |c| c.verdict == verdict).map(|c| &c.canonical)
    }

    /// The line format: `<set>\t<valid|invalid>` per class.
    pub fn to_tsv(&self) -> String {
        self.classes.iter().map(|c| format_atlas_line(&c.canonical, c.verdict) + "\n").collect()
    }
}

pub fn format_atlas_line(set: &IndexSet, verdict: Verdict) -> String {
    format!("{set}\t{verdict}")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasParseError {
    #[error("line {line}: expected `<set>\\t<verdict>`")]
    Shape { line: usize },
    #[error("line {line}: bad index set: {reason}")]
    Set { line: usize, reason: String },
    #[error("unknown verdict {0:?}")]
    Verdict(String),
    #[error("line {line}: {source}")]
    LineVerdict { line: usize, source: Box<AtlasParseError> },
}

/// Parses atlas lines. Blank lines and lines starting with `#` are skipped.
pub fn parse_atlas_tsv(text: &str) -> Result<Vec<AtlasEntry>, AtlasParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim_end_matches('\r');
        if body.trim().is_empty() || body.starts_with('#') {
            continue;
        }
        let (set, verdict) = body.split_once('\t').ok_or(AtlasParseError::Shape { line })?;
        let values = crate::text::parse_list(set).map_err(|e| AtlasParseError::Set { line, reason: e.to_string() })?;
        let canonical =
            IndexSet::from_integers(values).map_err(|e| AtlasParseError::Set { line, reason: e.to_string() })?;
        let verdict = verdict.trim().parse().map_err(|e| AtlasParseError::LineVerdict { line, source: Box::new(e) })?;
        out.push(AtlasEntry { canonical, verdict });
    }
    Ok(out)
}

/// Canonical representatives of all affine classes of `set_size`-subsets of
/// `Z_L`, sorted, together with their orbit sizes.
pub fn affine_classes(modulus: u64, set_size: u32) -> Vec<(IndexSet, u64)> {
    let us = units(modulus);
    let k = set_size as usize;
    let mut classes: BTreeMap<IndexSet, u64> = BTreeMap::new();
    if k == 0 || k as u64 > modulus {
        return Vec::new();
    }
    // Every orbit meets the subsets containing 0; count those per class and
    // rescale (each set in an orbit of size s contains 0 in k of L shifts).
    let mut current: Vec<u64> = vec![0];
    fn rec(
        current: &mut Vec<u64>,
        next: u64,
        k: usize,
        modulus: u64,
        us: &[u64],
        classes: &mut BTreeMap<IndexSet, u64>,
    ) {
        if current.len() == k {
            let set = IndexSet::from_sorted_unchecked(current.clone());
            *classes.entry(canonicalize_with_units(&set, modulus, us).canonical).or_default() += 1;
            return;
        }
        for e in next..modulus {
            if modulus - e < (k - current.len()) as u64 {
                break;
            }
            current.push(e);
            rec(current, e + 1, k, modulus, us, classes);
            current.pop();
        }
    }
    rec(&mut current, 1, k, modulus, &us, &mut classes);
    classes.into_iter().map(|(set, with_zero)| (set, with_zero * modulus / k as u64)).collect()
}

/// Runs [`decide_valid_with`] on every affine class of `set_size`-subsets of
/// `Z_{q^n}`. Classes present in `done` are taken as given; `on_result` is
/// called once per newly decided class (from worker threads).
pub fn atlas_with<F>(
    q: u32,
    n: u32,
    set_size: u32,
    budget: Budget,
    done: &BTreeMap<IndexSet, Verdict>,
    on_result: F,
) -> Result<Atlas, SearchError>
where
    F: Fn(&IndexSet, Verdict) + Sync,
{
    let params = CycleParams::unreduced(q, n)?;
    if set_size != n {
        return Err(SearchError::SetSize { got: set_size as usize, expected: n });
    }
    let classes = affine_classes(params.modulus(), set_size);
    let decided: Vec<Result<AtlasEntry, SearchError>> = classes
        .into_par_iter()
        .map(|(canonical, _)| {
            if let Some(&verdict) = done.get(&canonical) {
                return Ok(AtlasEntry { canonical, verdict });
            }
            let cert = decide_valid_with(q, n, &canonical, budget)?;
            on_result(&canonical, cert.verdict);
            Ok(AtlasEntry { canonical, verdict: cert.verdict })
        })
        .collect();
    let classes = decided.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Atlas { q, n, set_size, classes })
}

pub fn atlas(q: u32, n: u32, set_size: u32) -> Result<Atlas, SearchError> {
    atlas_with(q, n, set_size, Budget::UNLIMITED, &BTreeMap::new(), |_, _| {})
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(e: &[u64], m: u64) -> IndexSet {
        IndexSet::new(e.iter().copied(), m).unwrap()
    }

    #[test]
    fn small_verdicts() {
        let c = decide_valid(2, 2, &set(&[0, 2], 4)).unwrap();
        assert_eq!(c.verdict, Verdict::Invalid);
        assert!(c.witness.is_none());
        let c = decide_valid(2, 2, &set(&[0, 1], 4)).unwrap();
        assert_eq!(c.verdict, Verdict::Valid);
        let c = decide_valid(2, 5, &IndexSet::contiguous(5)).unwrap();
        assert_eq!(c.verdict, Verdict::Valid);
        let c = decide_valid(2, 4, &set(&[0, 1, 2, 6], 16)).unwrap();
        assert_eq!(c.verdict, Verdict::Valid);
    }

    #[test]
    fn periodic_sets_are_refuted_directly() {
        let c = decide_valid(3, 3, &set(&[0, 9, 18], 27)).unwrap();
        assert_eq!(c.verdict, Verdict::Invalid);
        assert_eq!(c.refutation, Some(Refutation::PeriodicIndexSet { period: 9 }));
        assert_eq!(period_of(&[0, 1, 2], 27), None);
        assert_eq!(period_of(&[0, 2], 4), Some(2));
    }

    #[test]
    fn period_rule_agrees_with_exhaustion() {
        let plain = SearchOptions { period_rule: false, sub_pattern_pruning: false };
        for (q, n, e) in [(2u32, 2u32, vec![0u64, 2]), (4, 2, vec![0, 8]), (3, 3, vec![0, 9, 18])] {
            let i = set(&e, (q as u64).pow(n));
            let c = decide_valid_opts(q, n, &i, Budget::UNLIMITED, plain).unwrap();
            assert_eq!(c.verdict, Verdict::Invalid);
            assert_eq!(c.refutation, Some(Refutation::Exhausted));
        }
    }

    #[test]
    fn large_periodic_sets_skip_search() {
        let i = set(&[0, 20000, 40000, 60000, 80000], 100_000);
        assert_eq!(decide_valid(10, 5, &i).unwrap().verdict, Verdict::Invalid);
        let i = set(&[0, 1, 2, 3, 4], 100_000);
        assert!(matches!(decide_valid(10, 5, &i), Err(SearchError::TooLarge(_))));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(decide_valid(2, 3, &set(&[0, 1], 8)), Err(SearchError::SetSize { .. })));
        assert!(matches!(decide_valid(2, 2, &set(&[0, 5], 8)), Err(SearchError::OutOfRange { .. })));
        let r = decide_valid_with(2, 5, &set(&[0, 1, 2, 3, 12], 32), Budget::nodes(10));
        assert!(matches!(r, Err(SearchError::Inconclusive { .. })));
    }

    #[test]
    fn two_element_rule() {
        assert!(!two_element_validity(2, 2).unwrap());
        assert!(two_element_validity(2, 1).unwrap());
        assert!(!two_element_validity(6, 18).unwrap());
        assert!(two_element_validity(6, 12).unwrap());
        assert!(two_element_validity(6, 5).is_err());
        assert!(two_element_validity(2, 4).is_err());
    }

    #[test]
    fn sub_patterns_dedup_translates() {
        let p = sub_patterns(&[0, 1, 2], 8);
        // {0}, {0,1}, {0,2}, {0,1,2}: {1}, {2}, {1,2} collapse.
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn class_orbits_cover_all_subsets() {
        for (l, k) in [(8u64, 3u32), (9, 2), (16, 4), (27, 3)] {
            let classes = affine_classes(l, k);
            let total: u64 = classes.iter().map(|(_, s)| s).sum();
            let binom = (0..k as u64).fold(1u64, |acc, i| acc * (l - i) / (i + 1));
            assert_eq!(total, binom, "L={l} k={k}");
        }
    }

    #[test]
    fn atlas_tsv_round_trip() {
        let a = atlas(2, 3, 3).unwrap();
        let parsed = parse_atlas_tsv(&a.to_tsv()).unwrap();
        assert_eq!(parsed, a.classes);
        assert!(parse_atlas_tsv("0,1\tmaybe\n").is_err());
        assert!(parse_atlas_tsv("0,1 valid\n").is_err());
        assert!(parse_atlas_tsv("# header\n\n0,1\tvalid\n").is_ok());
    }
}
