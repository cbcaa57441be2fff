//! The de Bruijn digraph `D_q^n` and classical de Bruijn sequences.

use thiserror::Error;

use crate::checked_pow;
use crate::euler::Multigraph;
use crate::types::{CyclicString, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeBruijnError {
    #[error("alphabet size must be at least 2, got {0}")]
    Alphabet(u32),
    #[error("D_{q}^{n} exceeds desk scale")]
    TooLarge { q: u32, n: u32 },
}

/// `D_q^n`: vertices are q-ary n-strings (radix-q codes), with an edge
/// `x -> y` whenever the last `n-1` symbols of `x` are the first `n-1` of
/// `y`. `n = 0` is the single vertex with `q` loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeBruijnGraph {
    q: u32,
    n: u32,
    vertices: u64,
}

impl DeBruijnGraph {
    pub fn new(q: u32, n: u32) -> Result<Self, DeBruijnError> {
        if q < 2 {
            return Err(DeBruijnError::Alphabet(q));
        }
        let vertices = checked_pow(q as u64, n).ok_or(DeBruijnError::TooLarge { q, n })?;
        checked_pow(q as u64, n + 1).ok_or(DeBruijnError::TooLarge { q, n })?;
        Ok(Self { q, n, vertices })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertices
    }

    pub fn edge_count(&self) -> u64 {
        self.vertices * self.q as u64
    }

    /// Successor of `v` along the edge labelled `s` (the appended symbol).
    pub fn successor(&self, v: u64, s: Symbol) -> u64 {
        (v * self.q as u64 + s as u64) % self.vertices
    }

    pub fn successors(&self, v: u64) -> impl Iterator<Item = u64> + '_ {
        (0..self.q).map(move |s| self.successor(v, s))
    }

    pub fn has_edge(&self, x: u64, y: u64) -> bool {
        x < self.vertices && y < self.vertices && (x * self.q as u64) % self.vertices == y - y % self.q as u64
    }

    /// All edges as `(tail, head)` pairs; edge `(x, s)` is the (n+1)-word
    /// `x s`.
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (0..self.vertices).flat_map(move |v| self.successors(v).map(move |w| (v, w)))
    }

    pub fn vertex_word(&self, v: u64) -> Word {
        Word::decode(v, self.q, self.n)
    }
}

/// A de Bruijn sequence of the given order: an Euler circuit of
/// `D_q^{order-1}` built by Hierholzer's algorithm with out-edges taken in
/// increasing symbol order, read off as edge labels.
pub fn de_bruijn_sequence(q: u32, order: u32) -> Result<CyclicString, DeBruijnError> {
    assert!(order >= 1, "order must be positive");
    let g = DeBruijnGraph::new(q, order - 1)?;
    if order == 1 {
        // One vertex with q loops: vertex labels carry no symbol.
        return Ok(CyclicString::from_raw(q, (0..q).collect()));
    }
    let mut mg = Multigraph::new(g.vertex_count() as usize);
    for v in 0..g.vertex_count() {
        for s in 0..q {
            mg.add_edge(v as usize, g.successor(v, s) as usize);
        }
    }
    let circuit = mg.euler_circuit(0).expect("de Bruijn digraphs are Eulerian");
    // The symbol appended along edge v_i -> v_{i+1} is v_{i+1} mod q.
    let len = circuit.len();
    let symbols: Vec<Symbol> = (0..len).map(|i| (circuit[(i + 1) % len] as u64 % q as u64) as Symbol).collect();
    Ok(CyclicString::from_raw(q, symbols))
}
