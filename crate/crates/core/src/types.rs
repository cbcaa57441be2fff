use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::checked_pow;

/// A symbol of the alphabet `{0, ..., q-1}`.
pub type Symbol = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("alphabet size must be at least 2, got {0}")]
    Alphabet(u32),
    #[error("window size must be at least 1")]
    EmptyWindow,
    #[error("q^n = {q}^{n} exceeds desk scale")]
    TooLarge { q: u32, n: u32 },
    #[error("index set must not be empty")]
    EmptyIndexSet,
    #[error("index {0} repeats modulo {1}")]
    DuplicateIndex(u64, u64),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("symbol {symbol} at position {position} is not below q = {q}")]
    SymbolOutOfRange { position: usize, symbol: Symbol, q: u32 },
    #[error("cyclic string must be non-empty")]
    EmptyString,
    #[error("word has length {got}, expected {expected}")]
    WordLength { got: usize, expected: usize },
}

/// Alphabet size, window size and the modulus the cycle lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleParams {
    q: u32,
    n: u32,
    modulus: u64,
}

impl CycleParams {
    /// Parameters of an (unreduced) I-cycle: modulus `q^n`.
    pub fn unreduced(q: u32, n: u32) -> Result<Self, ParamError> {
        let words = Self::word_count_of(q, n)?;
        Ok(Self { q, n, modulus: words })
    }

    /// Parameters of a reduced I*-cycle: modulus `q^n - 1`.
    pub fn reduced(q: u32, n: u32) -> Result<Self, ParamError> {
        let words = Self::word_count_of(q, n)?;
        Ok(Self { q, n, modulus: words - 1 })
    }

    fn word_count_of(q: u32, n: u32) -> Result<u64, ParamError> {
        if q < 2 {
            return Err(ParamError::Alphabet(q));
        }
        if n == 0 {
            return Err(ParamError::EmptyWindow);
        }
        checked_pow(q as u64, n).ok_or(ParamError::TooLarge { q, n })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of words, `q^n`.
    pub fn word_count(&self) -> u64 {
        (self.q as u64).pow(self.n)
    }

    pub fn is_reduced(&self) -> bool {
        self.modulus + 1 == self.word_count()
    }
}

/// A window shape: strictly increasing, pairwise distinct offsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet {
    elements: Vec<u64>,
}

impl IndexSet {
    /// Reduces every element modulo `modulus`, sorts, and rejects collisions.
    pub fn new(elements: impl IntoIterator<Item = u64>, modulus: u64) -> Result<Self, ParamError> {
        if modulus == 0 {
            return Err(ParamError::ZeroModulus);
        }
        Self::from_integers(elements.into_iter().map(|e| e % modulus)).map_err(|e| match e {
            ParamError::DuplicateIndex(v, _) => ParamError::DuplicateIndex(v, modulus),
            other => other,
        })
    }

    /// An index set of plain integers (no modulus), as used by approximate
    /// cycles.
    pub fn from_integers(elements: impl IntoIterator<Item = u64>) -> Result<Self, ParamError> {
        let mut elements: Vec<u64> = elements.into_iter().collect();
        if elements.is_empty() {
            return Err(ParamError::EmptyIndexSet);
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(ParamError::DuplicateIndex(w[0], 0));
        }
        Ok(Self { elements })
    }

    /// Contiguous window `{0, 1, ..., n-1}`.
    pub fn contiguous(n: u32) -> Self {
        Self { elements: (0..n as u64).collect() }
    }

    /// Arithmetic progression `{0, d, ..., (n-1)d}` reduced modulo `modulus`.
    pub fn arithmetic(n: u32, d: u64, modulus: u64) -> Result<Self, ParamError> {
        Self::new((0..n as u64).map(|j| j * d), modulus)
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn least(&self) -> u64 {
        self.elements[0]
    }

    pub fn greatest(&self) -> u64 {
        *self.elements.last().unwrap()
    }

    /// `greatest - least`.
    pub fn span(&self) -> u64 {
        self.greatest() - self.least()
    }

    /// Translate so that the least element is zero.
    pub fn normalized(&self) -> Self {
        let m = self.least();
        Self { elements: self.elements.iter().map(|e| e - m).collect() }
    }

    /// `k * I + b (mod modulus)`, sorted. Fails if the map is not injective
    /// on `I`.
    pub fn affine_image(&self, k: u64, b: u64, modulus: u64) -> Result<Self, ParamError> {
        Self::new(
            self.elements.iter().map(|&e| mulmod(k, e % modulus, modulus).wrapping_add(b % modulus) % modulus),
            modulus,
        )
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<u64>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self { elements }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// A q-ary word. The first symbol is the most significant digit of the
/// radix-q code, so numeric order on codes equals lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn new(symbols: Vec<Symbol>, q: u32) -> Result<Self, ParamError> {
        if let Some((position, &symbol)) = symbols.iter().enumerate().find(|(_, &s)| s >= q) {
            return Err(ParamError::SymbolOutOfRange { position, symbol, q });
        }
        Ok(Self { symbols })
    }

    pub fn decode(code: u64, q: u32, n: u32) -> Self {
        let mut symbols = vec![0; n as usize];
        let mut c = code;
        for s in symbols.iter_mut().rev() {
            *s = (c % q as u64) as Symbol;
            c /= q as u64;
        }
        Self { symbols }
    }

    pub fn encode(&self, q: u32) -> u64 {
        self.symbols.iter().fold(0u64, |acc, &s| acc * q as u64 + s as u64)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.symbols.iter().any(|&s| s >= 10);
        for (i, s) in self.symbols.iter().enumerate() {
            if wide && i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The map `chi: Z_N -> {0, ..., q-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicString {
    q: u32,
    symbols: Vec<Symbol>,
}

impl CyclicString {
    pub fn new(q: u32, symbols: Vec<Symbol>) -> Result<Self, ParamError> {
        if q < 2 {
            return Err(ParamError::Alphabet(q));
        }
        if symbols.is_empty() {
            return Err(ParamError::EmptyString);
        }
        if let Some((position, &symbol)) = symbols.iter().enumerate().find(|(_, &s)| s >= q) {
            return Err(ParamError::SymbolOutOfRange { position, symbol, q });
        }
        Ok(Self { q, symbols })
    }

    pub(crate) fn from_raw(q: u32, symbols: Vec<Symbol>) -> Self {
        debug_assert!(!symbols.is_empty() && symbols.iter().all(|&s| s < q));
        Self { q, symbols }
    }

    pub fn q(&self) -> u32 {
        self.q
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

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    /// `chi(i mod N)`.
    pub fn at(&self, i: u64) -> Symbol {
        self.symbols[(i % self.symbols.len() as u64) as usize]
    }

    /// `s -> chi(s + shift)`.
    pub fn rotated(&self, shift: u64) -> Self {
        let n = self.symbols.len();
        let r = (shift % n as u64) as usize;
        let mut symbols = Vec::with_capacity(n);
        symbols.extend_from_slice(&self.symbols[r..]);
        symbols.extend_from_slice(&self.symbols[..r]);
        Self { q: self.q, symbols }
    }

    /// `s -> chi(s) + c (mod q)`.
    pub fn translated(&self, c: Symbol) -> Self {
        let q = self.q;
        Self { q, symbols: self.symbols.iter().map(|&s| (s + c % q) % q).collect() }
    }

    /// `s -> chi(k s + b)`, the pull-back along an affine map of `Z_N`.
    pub fn pulled_back(&self, k: u64, b: u64) -> Self {
        let n = self.symbols.len() as u64;
        let symbols = (0..n).map(|s| self.at((mulmod(k % n, s, n) + b % n) % n)).collect();
        Self { q: self.q, symbols }
    }

    /// True if `other` equals `self` up to rotation and a constant symbol
    /// translate.
    pub fn equivalent_up_to_rotation_and_translate(&self, other: &CyclicString) -> bool {
        if self.q != other.q || self.len() != other.len() {
            return false;
        }
        let n = self.len() as u64;
        (0..self.q).any(|c| {
            let t = other.translated(c);
            (0..n).any(|r| self.rotated(r) == t)
        })
    }
}

impl fmt::Display for CyclicString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_cycle(self))
    }
}
