//! Arithmetic-progression cycles from de Bruijn cycles.
//!
//! The difference map `lambda(x) = (x_1 - x_2, ..., x_{n-1} - x_n)` identifies
//! vertices of `D_q^n` that differ by a constant vector, and the quotient is
//! `D_q^{n-1}`. A cycle of `D_q^{n-1}` with symbol sum `0 (mod q)` lifts to a
//! cycle of `D_q^n` meeting each class once; its `q` constant translates
//! partition the vertices, and interleaving them with stride `q` gives an
//! `AP(n, q)`-cycle.
//!
//! [`double_ap3`] turns an `AP(3, d)`-cycle over `q` symbols into an
//! `AP(3, 8d)`-cycle over `2q` symbols.

use thiserror::Error;

use crate::debruijn::{de_bruijn_sequence, DeBruijnError};
use crate::pack::{class_circuit, pack_connected, PackOutcome, Piece};
use crate::types::{CycleParams, CyclicString, IndexSet, ParamError, Symbol, Word};
use crate::verify::{verify_cover, VerifyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    DeBruijn(#[from] DeBruijnError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("symbol sum {sum} is not divisible by q = {q}")]
    ZeroSumViolation { sum: u64, q: u32 },
    #[error("vertices {0} and {1} are not consecutive in the de Bruijn digraph")]
    NotAdjacent(usize, usize),
    #[error("vertex cycle has mixed or empty vertex lengths")]
    VertexShape,
    #[error("window size must be at least 2 for the difference map")]
    ShortWord,
    #[error("AP({n},{q}) needs a seed with symbol sum divisible by q, which fails for n = 2 and even q")]
    UnsupportedAp { q: u32, n: u32 },
    #[error("seed is not a de Bruijn cycle of order {0}")]
    BadSeed(u32),
    #[error("8 does not divide q^3/d = {0}")]
    DivisibilityViolation(String),
    #[error("input is not an AP(3,{d})-cycle: {missing} words missing")]
    InvalidInput { d: u64, missing: usize },
    #[error("could not pack the doubling gadgets into trails")]
    PackingFailed,
    #[error("internal error: output failed verification")]
    OutputRejected,
}

/// `lambda(x)`: consecutive differences `x_j - x_{j+1} mod q`.
pub fn quotient_lambda(x: &Word, q: u32) -> Result<Word, LiftError> {
    let s = x.symbols();
    if s.len() < 2 {
        return Err(LiftError::ShortWord);
    }
    let diffs = s.windows(2).map(|w| (w[0] + q - w[1] % q) % q).collect();
    Ok(Word::new(diffs, q)?)
}

/// A closed walk in `D_q^order`, stored as the cyclic symbol sequence read
/// along it: vertex `i` is `(s_i, s_{i+1}, ..., s_{i+order-1})`, indices
/// cyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCycle {
    q: u32,
    order: u32,
    symbols: Vec<Symbol>,
}

impl VertexCycle {
    pub fn new(q: u32, order: u32, symbols: Vec<Symbol>) -> Result<Self, LiftError> {
        if order == 0 {
            return Err(LiftError::VertexShape);
        }
        CyclicString::new(q, symbols.clone())?;
        Ok(Self { q, order, symbols })
    }

    /// Builds the cycle from explicit vertices, checking every overlap
    /// including the wrap-around pair.
    pub fn from_vertices(q: u32, vertices: &[Word]) -> Result<Self, LiftError> {
        let order = vertices.first().map(Word::len).ok_or(LiftError::VertexShape)?;
        if order == 0 || vertices.iter().any(|v| v.len() != order) {
            return Err(LiftError::VertexShape);
        }
        for v in vertices {
            Word::new(v.symbols().to_vec(), q)?;
        }
        let r = vertices.len();
        for i in 0..r {
            let (a, b) = (vertices[i].symbols(), vertices[(i + 1) % r].symbols());
            if a[1..] != b[..order - 1] {
                return Err(LiftError::NotAdjacent(i, (i + 1) % r));
            }
        }
        let symbols = vertices.iter().map(|v| v.symbols()[0]).collect();
        let cycle = Self { q, order: order as u32, symbols };
        // Short cycles wrap through their own symbols; make sure the
        // sequence reproduces the given vertices.
        if (0..r).any(|i| cycle.vertex(i) != vertices[i]) {
            return Err(LiftError::NotAdjacent(r - 1, 0));
        }
        Ok(cycle)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn vertex(&self, i: usize) -> Word {
        let r = self.symbols.len();
        let s = (0..self.order as usize).map(|j| self.symbols[(i + j) % r]).collect();
        Word::new(s, self.q).expect("symbols are in range")
    }

    pub fn vertices(&self) -> Vec<Word> {
        (0..self.len()).map(|i| self.vertex(i)).collect()
    }

    pub fn symbol_sum(&self) -> u64 {
        self.symbols.iter().map(|&s| s as u64).sum()
    }

    /// Adds `c` to every symbol.
    pub fn translated(&self, c: Symbol) -> Self {
        let q = self.q;
        Self { q, order: self.order, symbols: self.symbols.iter().map(|&s| (s + c % q) % q).collect() }
    }

    /// `lambda` applied to every vertex.
    pub fn quotient(&self) -> Result<VertexCycle, LiftError> {
        if self.order < 2 {
            return Err(LiftError::ShortWord);
        }
        let q = self.q;
        let r = self.symbols.len();
        let diffs = (0..r).map(|i| (self.symbols[i] + q - self.symbols[(i + 1) % r]) % q).collect();
        VertexCycle::new(q, self.order - 1, diffs)
    }
}

/// Lifts a zero-sum cycle of `D_q^{n-1}` to `D_q^n` along `lambda`.
///
/// The lifted sequence satisfies `p_i - p_{i+1} = c_i`, anchored at
/// `p_0 = c_0`.
pub fn lift_cycle(cycle: &VertexCycle) -> Result<VertexCycle, LiftError> {
    let q = cycle.q;
    let sum = cycle.symbol_sum();
    if !sum.is_multiple_of(q as u64) {
        return Err(LiftError::ZeroSumViolation { sum, q });
    }
    let c = &cycle.symbols;
    let mut p = Vec::with_capacity(c.len());
    let mut cur = c[0];
    for &ci in c {
        p.push(cur);
        cur = (cur + q - ci) % q;
    }
    debug_assert_eq!(cur, c[0]);
    VertexCycle::new(q, cycle.order + 1, p)
}

/// Interleaves `trails` (all of length `k`) with stride `trails.len()`:
/// `chi(a + D b) = trails[a][b]`.
pub fn interleave(q: u32, trails: &[Vec<Symbol>]) -> Result<CyclicString, ParamError> {
    let stride = trails.len();
    let k = trails.first().map_or(0, Vec::len);
    if trails.iter().any(|t| t.len() != k) {
        return Err(ParamError::EmptyString);
    }
    let mut out = vec![0; stride * k];
    for (a, t) in trails.iter().enumerate() {
        for (b, &s) in t.iter().enumerate() {
            out[a + stride * b] = s;
        }
    }
    CyclicString::new(q, out)
}

/// Inverse of [`interleave`]: `trails[a][b] = chi(a + d b)`.
pub fn deinterleave(chi: &CyclicString, d: usize) -> Vec<Vec<Symbol>> {
    let k = chi.len() / d;
    (0..d).map(|a| (0..k).map(|b| chi.symbols()[a + d * b]).collect()).collect()
}

/// An `AP(n, q)`-cycle of length `q^n` from the de Bruijn seed of order
/// `n - 1` built by [`de_bruijn_sequence`].
pub fn splice_ap_cycle(q: u32, n: u32) -> Result<CyclicString, LiftError> {
    CycleParams::unreduced(q, n)?;
    if n < 2 {
        return Err(LiftError::ShortWord);
    }
    let seed = de_bruijn_sequence(q, n - 1)?;
    splice_ap_cycle_from_seed(&seed, n)
}

/// Same as [`splice_ap_cycle`] with a caller-supplied de Bruijn cycle of
/// order `n - 1`. Residue class `a` of the output carries the translate of
/// the lift by `q - 1 - a`.
pub fn splice_ap_cycle_from_seed(seed: &CyclicString, n: u32) -> Result<CyclicString, LiftError> {
    let q = seed.q();
    if n < 2 {
        return Err(LiftError::ShortWord);
    }
    let seed_params = CycleParams::unreduced(q, n - 1)?;
    let seed_ok = seed.len() as u64 == seed_params.modulus()
        && verify_cover(seed, &seed_params, &IndexSet::contiguous(n - 1), false)?.complete;
    if !seed_ok {
        return Err(LiftError::BadSeed(n - 1));
    }
    let cycle = VertexCycle::new(q, n - 1, seed.symbols().to_vec())?;
    if cycle.symbol_sum() % q as u64 != 0 {
        return Err(LiftError::UnsupportedAp { q, n });
    }
    let lifted = lift_cycle(&cycle)?;
    let trails: Vec<Vec<Symbol>> = (0..q).map(|a| lifted.translated(q - 1 - a).symbols).collect();
    let chi = interleave(q, &trails)?;
    let params = CycleParams::unreduced(q, n)?;
    let index_set = IndexSet::arithmetic(n, q as u64, params.modulus())?;
    if !verify_cover(&chi, &params, &index_set, false)?.complete {
        return Err(LiftError::OutputRejected);
    }
    Ok(chi)
}

/// The closed walks over `D_{2q}^2` that, together with the even and odd
/// copies of `D_q^2`, partition its edges. Each entry is a cyclic symbol
/// sequence; consecutive triples are its edges.
///
/// * `[a, b, c, a+b+c]` for `a, b` even and `c` odd covers one edge of each
///   parity pattern EEO, EOO, OOE and OEE.
/// * With `e = 2u`, `o = 2v+1`, `[2u0, 2v0+1, 2u1, 2h+1]` for
///   `h = u0 + u1 - v0 (mod q)` covers two EOE and two OEO edges; the map
///   `(u0, v0, u1) -> (u1, h, u0)` is an involution on EOE edges.
/// * Its fixed points (`u1 = u0`, `v0 - u0` in `{0, q/2}`) are 2-cycles
///   `[2u0, 2v0+1]`. Fixed points with the same offset at `u = 2i` and
///   `u = 2i + 1` are merged with the 4-cycle through both into one closed
///   walk of 8 edges.
pub fn doubling_gadgets(q: u32) -> Vec<Vec<Symbol>> {
    assert!(q.is_multiple_of(2), "doubling gadgets need an even alphabet");
    let big = 2 * q;
    let mut out = Vec::new();
    for a in (0..big).step_by(2) {
        for b in (0..big).step_by(2) {
            for c in (1..big).step_by(2) {
                out.push(vec![a, b, c, (a + b + c) % big]);
            }
        }
    }
    let offsets = [0, q / 2];
    let special = |u0: u32, v0: u32| u0.is_multiple_of(2) && offsets.contains(&((v0 + q - u0) % q));
    // The 4-cycle (2i, 2i+delta, 2i+1, 2i+1+delta) absorbs two fixed
    // points; it is recognised from its even-u0 edge.
    let absorbing = |x0: u32, y0: u32, x1: u32| special(x0, y0) && x1 == x0 + 1;
    let mut seen = std::collections::HashSet::new();
    for u0 in 0..q {
        for v0 in 0..q {
            for u1 in 0..q {
                let h = (u0 + u1 + q - v0) % q;
                if u1 == u0 && h == v0 {
                    continue;
                }
                if !seen.insert((u0, v0, u1)) {
                    continue;
                }
                seen.insert((u1, h, u0));
                if absorbing(u0, v0, u1) {
                    out.push(absorbed_walk(q, u0, v0));
                } else if absorbing(u1, h, u0) {
                    out.push(absorbed_walk(q, u1, h));
                } else {
                    out.push(vec![2 * u0, 2 * v0 + 1, 2 * u1, 2 * h + 1]);
                }
            }
        }
    }
    out
}

/// The 4-cycle `[2x, 2y+1, 2x+2, 2y'+1]` (`y' = y + 1`, `y - x` in
/// `{0, q/2}`) with the fixed 2-cycles at `(x, y)` and `(x+1, y')` spliced
/// in where it passes them.
fn absorbed_walk(q: u32, x: u32, y: u32) -> Vec<Symbol> {
    let x1 = x + 1;
    let y1 = (y + 1) % q;
    vec![2 * x, 2 * y + 1, 2 * x, 2 * y + 1, 2 * x1, 2 * y1 + 1, 2 * x1, 2 * y1 + 1]
}

/// Node budget for packing the doubling gadgets.
const PACK_BUDGET: u64 = 50_000_000;

/// Doubles the alphabet of an `AP(3, d)`-cycle: the result is an
/// `AP(3, 8d)`-cycle over `2q` symbols of length `(2q)^3`.
///
/// The input is cut into its `d` closed trails of length `k = q^3 / d` (one
/// per residue mod `d`), copied onto the even and the odd symbols, and the
/// remaining edges of `D_{2q}^2` are covered by [`doubling_gadgets`] packed
/// into `6d` connected classes of `k` edges, each read as an Euler circuit.
pub fn double_ap3(chi: &CyclicString, d: u64) -> Result<CyclicString, LiftError> {
    let q = chi.q();
    let params = CycleParams::unreduced(q, 3)?;
    let l = params.modulus();
    if chi.len() as u64 != l {
        return Err(VerifyError::LengthMismatch { got: chi.len(), expected: l }.into());
    }
    if d == 0 || l % d != 0 || !(l / d).is_multiple_of(8) {
        let ratio = if d != 0 && l % d == 0 { (l / d).to_string() } else { format!("{l}/{d}") };
        return Err(LiftError::DivisibilityViolation(ratio));
    }
    let report = verify_cover(chi, &params, &IndexSet::arithmetic(3, d, l)?, false)?;
    if !report.complete {
        return Err(LiftError::InvalidInput { d, missing: report.missing_count() });
    }
    let k = (l / d) as usize;
    let big = 2 * q;
    let out_params = CycleParams::unreduced(big, 3)?;

    let mut trails: Vec<Vec<Symbol>> = Vec::with_capacity(8 * d as usize);
    let input = deinterleave(chi, d as usize);
    for parity in 0..2 {
        for t in &input {
            trails.push(t.iter().map(|&s| 2 * s + parity).collect());
        }
    }

    let vertex = |x: Symbol, y: Symbol| (x * big + y) as usize;
    let pieces: Vec<Piece> = doubling_gadgets(q)
        .into_iter()
        .map(|walk| {
            let r = walk.len();
            let edges = (0..r)
                .map(|i| (vertex(walk[i], walk[(i + 1) % r]), vertex(walk[(i + 1) % r], walk[(i + 2) % r])))
                .collect();
            Piece { edges }
        })
        .collect();
    let vertex_count = (big * big) as usize;
    let classes = match pack_connected(&pieces, vertex_count, k, PACK_BUDGET) {
        PackOutcome::Packed(c) => c,
        _ => return Err(LiftError::PackingFailed),
    };
    for class in &classes {
        let circuit = class_circuit(&pieces, class, vertex_count).ok_or(LiftError::PackingFailed)?;
        trails.push(circuit.into_iter().map(|v| v as Symbol / big).collect());
    }
    debug_assert_eq!(trails.len() as u64, 8 * d);

    let out = interleave(big, &trails)?;
    let ap = IndexSet::arithmetic(3, 8 * d, out_params.modulus())?;
    if !verify_cover(&out, &out_params, &ap, false)?.complete {
        return Err(LiftError::OutputRejected);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_cycle;
    use std::collections::HashMap;

    #[test]
    fn lambda_examples() {
        let w = |s: &[u32]| Word::new(s.to_vec(), 3).unwrap();
        assert_eq!(quotient_lambda(&w(&[1, 0, 0]), 3).unwrap(), Word::new(vec![1, 0], 3).unwrap());
        assert_eq!(quotient_lambda(&w(&[0, 0, 0]), 3).unwrap(), quotient_lambda(&w(&[1, 1, 1]), 3).unwrap());
        assert!(quotient_lambda(&w(&[1]), 3).is_err());
    }

    #[test]
    fn lambda_classes_biject_onto_smaller_digraph() {
        let mut classes: HashMap<Word, Vec<Word>> = HashMap::new();
        for code in 0..27 {
            let x = Word::decode(code, 3, 3);
            classes.entry(quotient_lambda(&x, 3).unwrap()).or_default().push(x);
        }
        assert_eq!(classes.len(), 9);
        for members in classes.values() {
            assert_eq!(members.len(), 3);
            // Members differ by constant vectors.
            let base = members[0].symbols();
            for m in members {
                let c = (m.symbols()[0] + 3 - base[0]) % 3;
                assert!(m.symbols().iter().zip(base).all(|(&a, &b)| (b + c) % 3 == a));
            }
        }
    }

    #[test]
    fn lift_of_the_worked_seed() {
        let c = VertexCycle::new(3, 2, vec![0, 0, 1, 1, 2, 2, 0, 2, 1]).unwrap();
        let lifted = lift_cycle(&c).unwrap();
        assert_eq!(lifted.symbols(), &[0, 0, 0, 2, 1, 2, 0, 0, 1]);
        assert_eq!(lifted.quotient().unwrap(), c);
        let expected = parse_cycle("100021200", 3).unwrap();
        let ours = CyclicString::new(3, lifted.symbols().to_vec()).unwrap();
        assert!(ours.equivalent_up_to_rotation_and_translate(&expected));
    }

    #[test]
    fn lift_rejects_nonzero_sum_and_handles_loops() {
        let c = VertexCycle::new(2, 1, vec![0, 1]).unwrap();
        assert_eq!(lift_cycle(&c), Err(LiftError::ZeroSumViolation { sum: 1, q: 2 }));
        let zero = VertexCycle::new(3, 2, vec![0]).unwrap();
        assert_eq!(lift_cycle(&zero).unwrap().symbols(), &[0]);
    }

    #[test]
    fn from_vertices_checks_overlaps() {
        let v = |s: &[u32]| Word::new(s.to_vec(), 2).unwrap();
        let ok = VertexCycle::from_vertices(2, &[v(&[0, 0]), v(&[0, 1]), v(&[1, 1]), v(&[1, 0])]).unwrap();
        assert_eq!(ok.symbols(), &[0, 0, 1, 1]);
        assert!(VertexCycle::from_vertices(2, &[v(&[0, 0]), v(&[1, 1])]).is_err());
    }

    #[test]
    fn splice_small_cases() {
        for (q, n) in [(2u32, 3u32), (3, 2), (3, 3), (2, 4), (4, 3), (5, 2)] {
            let chi = splice_ap_cycle(q, n).unwrap();
            assert_eq!(chi.len() as u64, (q as u64).pow(n));
        }
        assert!(matches!(splice_ap_cycle(2, 2), Err(LiftError::UnsupportedAp { .. })));
        assert!(matches!(splice_ap_cycle(4, 2), Err(LiftError::UnsupportedAp { .. })));
    }

    #[test]
    fn splice_from_the_worked_seed() {
        let seed = parse_cycle("001122021", 3).unwrap();
        let chi = splice_ap_cycle_from_seed(&seed, 3).unwrap();
        let expected = parse_cycle("021210210210102021102210210", 3).unwrap();
        assert!(chi.equivalent_up_to_rotation_and_translate(&expected));
        let bad = parse_cycle("001122012", 3).unwrap();
        assert_eq!(splice_ap_cycle_from_seed(&bad, 3), Err(LiftError::BadSeed(2)));
    }

    #[test]
    fn gadgets_partition_mixed_parity_edges() {
        for q in [2u32, 4, 6] {
            let big = 2 * q;
            let mut count = vec![0u32; (big * big * big) as usize];
            for walk in doubling_gadgets(q) {
                assert!(walk.len() == 4 || walk.len() == 8);
                let r = walk.len();
                for i in 0..r {
                    let e = (walk[i] * big + walk[(i + 1) % r]) * big + walk[(i + 2) % r];
                    count[e as usize] += 1;
                }
            }
            for e in 0..big * big * big {
                let (a, b, c) = (e / (big * big), e / big % big, e % big);
                let pure = a % 2 == b % 2 && b % 2 == c % 2;
                assert_eq!(count[e as usize], u32::from(!pure), "q={q} edge {a},{b},{c}");
            }
        }
    }

    #[test]
    fn double_once() {
        let chi = parse_cycle("00010111", 2).unwrap();
        let out = double_ap3(&chi, 1).unwrap();
        assert_eq!((out.q(), out.len()), (4, 64));
        assert!(matches!(double_ap3(&de_bruijn_sequence(3, 3).unwrap(), 1), Err(LiftError::DivisibilityViolation(_))));
        let broken = parse_cycle("00000111", 2).unwrap();
        assert!(matches!(double_ap3(&broken, 1), Err(LiftError::InvalidInput { .. })));
    }

    #[test]
    fn double_twice() {
        let first = double_ap3(&parse_cycle("00010111", 2).unwrap(), 1).unwrap();
        let second = double_ap3(&first, 8).unwrap();
        assert_eq!((second.q(), second.len()), (8, 512));
    }
}
