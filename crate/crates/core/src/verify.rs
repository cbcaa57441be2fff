//! The independent coverage checker.
//!
//! Everything produced elsewhere in the crate is handed to [`verify_cover`]
//! (or [`coverage`] for strings whose length is not `q^n`) before it is
//! returned. The checker does nothing clever: it reads every window once and
//! marks the word it sees in a dense table of size `q^n`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::types::{CycleParams, CyclicString, IndexSet, Symbol, Word};

const NO_WITNESS: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("string has length {got}, parameters require {expected}")]
    LengthMismatch { got: usize, expected: u64 },
    #[error("string alphabet {got} does not match q = {expected}")]
    AlphabetMismatch { got: u32, expected: u32 },
    #[error("index set has {got} elements, window size is {expected}")]
    WindowMismatch { got: usize, expected: u32 },
    #[error("reduced flag does not match modulus {modulus} for q^n = {words}")]
    ReducedMismatch { modulus: u64, words: u64 },
    #[error("word table of size {0} exceeds desk scale")]
    TooLarge(u128),
}

/// How many witnessing translates to keep per word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WitnessMode {
    /// The first translate at which each word occurs.
    #[default]
    First,
    /// Every translate, for debugging.
    All,
}

/// Verdict of the coverage checker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub complete: bool,
    pub reduced: bool,
    pub q: u32,
    pub n: u32,
    pub length: u64,
    pub index_set: Vec<u64>,
    /// Words that never occur, in increasing order.
    pub missing: Vec<Word>,
    witnesses: Vec<u64>,
    all_witnesses: Option<Vec<Vec<u64>>>,
    injective: bool,
}

impl CoverageReport {
    /// One translate `t` at which `word` occurs, if any.
    pub fn witness(&self, word: &Word) -> Option<u64> {
        let code = word.encode(self.q) as usize;
        self.witnesses.get(code).copied().filter(|&t| t != NO_WITNESS)
    }

    /// Every translate at which `word` occurs (only with [`WitnessMode::All`]).
    pub fn all_witnesses(&self, word: &Word) -> Option<&[u64]> {
        let code = word.encode(self.q) as usize;
        self.all_witnesses.as_ref().and_then(|all| all.get(code)).map(|v| v.as_slice())
    }

    /// True when no word was seen at two different translates.
    pub fn is_injective(&self) -> bool {
        self.injective
    }

    /// Achieved words with their first witness, in word order.
    pub fn hits(&self) -> impl Iterator<Item = (Word, u64)> + '_ {
        let (q, n) = (self.q, self.n);
        self.witnesses
            .iter()
            .enumerate()
            .filter(|(_, &t)| t != NO_WITNESS)
            .map(move |(code, &t)| (Word::decode(code as u64, q, n), t))
    }

    pub fn missing_count(&self) -> usize {
        self.missing.len()
    }

    /// The serializable summary, with at most `sample` witnesses.
    pub fn to_document(&self, sample: usize) -> CoverageDocument {
        CoverageDocument {
            schema: 1,
            complete: self.complete,
            reduced: self.reduced,
            q: self.q,
            n: self.n,
            length: self.length,
            index_set: self.index_set.clone(),
            missing: self.missing.iter().map(|w| w.to_string()).collect(),
            witness_sample: self
                .hits()
                .take(sample)
                .map(|(w, t)| WitnessEntry { word: w.to_string(), translate: t })
                .collect(),
        }
    }
}

/// JSON form of a [`CoverageReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverageDocument {
    pub schema: u32,
    pub complete: bool,
    pub reduced: bool,
    pub q: u32,
    pub n: u32,
    pub length: u64,
    pub index_set: Vec<u64>,
    pub missing: Vec<String>,
    pub witness_sample: Vec<WitnessEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessEntry {
    pub word: String,
    pub translate: u64,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed coverage document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("inconsistent document: {0}")]
    Inconsistent(&'static str),
}

impl CoverageDocument {
    /// Parses and sanity-checks a document produced by
    /// [`CoverageReport::to_document`].
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: CoverageDocument = serde_json::from_str(text)?;
        if doc.schema != 1 {
            return Err(DocumentError::Schema(doc.schema));
        }
        if doc.complete != doc.missing.is_empty() {
            return Err(DocumentError::Inconsistent("complete must equal missing.is_empty()"));
        }
        if doc.q < 2 || doc.n == 0 || doc.index_set.len() != doc.n as usize {
            return Err(DocumentError::Inconsistent("bad q, n or index_set"));
        }
        if doc.witness_sample.iter().any(|w| w.translate >= doc.length) {
            return Err(DocumentError::Inconsistent("witness translate out of range"));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coverage document serializes")
    }
}

/// The word read through `index_set` at translate `t`: its j-th symbol is
/// `chi[(i_j + t) mod N]`.
pub fn window(chi: &CyclicString, index_set: &IndexSet, t: u64) -> Word {
    let n = chi.len() as u64;
    let symbols: Vec<Symbol> = index_set.elements().iter().map(|&i| chi.at((i % n + t % n) % n)).collect();
    Word::new(symbols, chi.q()).expect("symbols of a cyclic string are below q")
}

/// Checks an I-cycle (or I*-cycle when `reduced`) against its parameters.
pub fn verify_cover(
    chi: &CyclicString,
    params: &CycleParams,
    index_set: &IndexSet,
    reduced: bool,
) -> Result<CoverageReport, VerifyError> {
    if chi.len() as u64 != params.modulus() {
        return Err(VerifyError::LengthMismatch { got: chi.len(), expected: params.modulus() });
    }
    if reduced != params.is_reduced() {
        return Err(VerifyError::ReducedMismatch { modulus: params.modulus(), words: params.word_count() });
    }
    if chi.q() != params.q() {
        return Err(VerifyError::AlphabetMismatch { got: chi.q(), expected: params.q() });
    }
    if index_set.len() != params.n() as usize {
        return Err(VerifyError::WindowMismatch { got: index_set.len(), expected: params.n() });
    }
    coverage_with(chi, index_set, reduced, WitnessMode::First)
}

/// Coverage of every `|I|`-word by the windows of a cyclic string of any
/// length. With `reduced`, the all-zeroes word is not required.
pub fn coverage(chi: &CyclicString, index_set: &IndexSet, reduced: bool) -> Result<CoverageReport, VerifyError> {
    coverage_with(chi, index_set, reduced, WitnessMode::First)
}

pub fn coverage_with(
    chi: &CyclicString,
    index_set: &IndexSet,
    reduced: bool,
    mode: WitnessMode,
) -> Result<CoverageReport, VerifyError> {
    let q = chi.q();
    let n = index_set.len() as u32;
    let words = (q as u128).pow(n);
    if words > crate::DESK_SCALE as u128 {
        return Err(VerifyError::TooLarge(words));
    }
    let words = words as u64;
    let len = chi.len() as u64;
    let offsets: Vec<u64> = index_set.elements().iter().map(|&i| i % len).collect();
    let symbols = chi.symbols();

    let mut witnesses = vec![NO_WITNESS; words as usize];
    let mut all = matches!(mode, WitnessMode::All).then(|| vec![Vec::new(); words as usize]);
    let mut injective = true;
    for t in 0..len {
        let mut code = 0u64;
        for &i in &offsets {
            let mut p = i + t;
            if p >= len {
                p -= len;
            }
            code = code * q as u64 + symbols[p as usize] as u64;
        }
        let slot = &mut witnesses[code as usize];
        if *slot == NO_WITNESS {
            *slot = t;
        } else {
            injective = false;
        }
        if let Some(all) = all.as_mut() {
            all[code as usize].push(t);
        }
    }

    let missing: Vec<Word> = witnesses
        .iter()
        .enumerate()
        .filter(|&(code, &t)| t == NO_WITNESS && !(reduced && code == 0))
        .map(|(code, _)| Word::decode(code as u64, q, n))
        .collect();
    Ok(CoverageReport {
        complete: missing.is_empty(),
        reduced,
        q,
        n,
        length: len,
        index_set: index_set.elements().to_vec(),
        missing,
        witnesses,
        all_witnesses: all,
        injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_cycle;
    use proptest::prelude::*;

    const REFERENCE_036: &str = "021210210210102021102210210";

    fn set(e: &[u64], m: u64) -> IndexSet {
        IndexSet::new(e.iter().copied(), m).unwrap()
    }

    #[test]
    fn window_examples() {
        let chi = parse_cycle("00010111", 2).unwrap();
        let i = IndexSet::contiguous(3);
        assert_eq!(window(&chi, &i, 0).to_string(), "000");
        assert_eq!(window(&chi, &i, 3).to_string(), "101");
        let big = parse_cycle(REFERENCE_036, 3).unwrap();
        assert_eq!(window(&big, &set(&[0, 3, 6], 27), 0).to_string(), "022");
    }

    #[test]
    fn classical_and_reference_cycles_are_complete() {
        let chi = parse_cycle("00010111", 2).unwrap();
        let p = CycleParams::unreduced(2, 3).unwrap();
        let r = verify_cover(&chi, &p, &IndexSet::contiguous(3), false).unwrap();
        assert!(r.complete && r.is_injective());
        assert_eq!(r.witness(&Word::new(vec![1, 0, 1], 2).unwrap()), Some(3));

        let big = parse_cycle(REFERENCE_036, 3).unwrap();
        let p = CycleParams::unreduced(3, 3).unwrap();
        assert!(verify_cover(&big, &p, &set(&[0, 3, 6], 27), false).unwrap().complete);
    }

    #[test]
    fn no_length_four_binary_string_is_a_0_2_cycle() {
        let p = CycleParams::unreduced(2, 2).unwrap();
        let i = set(&[0, 2], 4);
        for bits in 0..16u32 {
            let chi = CyclicString::new(2, (0..4).map(|k| (bits >> k) & 1).collect()).unwrap();
            assert!(!verify_cover(&chi, &p, &i, false).unwrap().complete);
        }
    }

    #[test]
    fn reduced_ignores_zero_word() {
        let chi = parse_cycle("0010111", 2).unwrap();
        let p = CycleParams::reduced(2, 3).unwrap();
        let r = verify_cover(&chi, &p, &IndexSet::contiguous(3), true).unwrap();
        assert!(r.complete);
        assert!(r.witness(&Word::decode(0, 2, 3)).is_none());
    }

    #[test]
    fn errors_and_missing() {
        let chi = parse_cycle("0001", 2).unwrap();
        let p = CycleParams::unreduced(2, 3).unwrap();
        assert!(matches!(
            verify_cover(&chi, &p, &IndexSet::contiguous(3), false),
            Err(VerifyError::LengthMismatch { .. })
        ));
        let p2 = CycleParams::unreduced(2, 2).unwrap();
        assert!(matches!(
            verify_cover(&chi, &p2, &IndexSet::contiguous(2), true),
            Err(VerifyError::ReducedMismatch { .. })
        ));
        let r = verify_cover(&chi, &p2, &IndexSet::contiguous(2), false).unwrap();
        assert_eq!(r.missing, vec![Word::decode(3, 2, 2)]);
        assert!(!r.is_injective());
    }

    #[test]
    fn all_witness_mode() {
        let chi = parse_cycle("0000", 2).unwrap();
        let r = coverage_with(&chi, &IndexSet::contiguous(2), false, WitnessMode::All).unwrap();
        assert_eq!(r.all_witnesses(&Word::decode(0, 2, 2)), Some(&[0, 1, 2, 3][..]));
    }

    #[test]
    fn document_round_trip_and_rejection() {
        let chi = parse_cycle("00010111", 2).unwrap();
        let r = coverage(&chi, &IndexSet::contiguous(3), false).unwrap();
        let doc = r.to_document(4);
        assert_eq!(doc.witness_sample.len(), 4);
        let parsed = CoverageDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(parsed, doc);
        let bad = doc.to_json().replace("\"complete\":true", "\"complete\":false");
        assert!(CoverageDocument::from_json(&bad).is_err());
        assert!(CoverageDocument::from_json("{").is_err());
    }

    fn brute_injective(chi: &CyclicString, i: &IndexSet) -> bool {
        let n = chi.len() as u64;
        let ws: Vec<Word> = (0..n).map(|t| window(chi, i, t)).collect();
        (0..ws.len()).all(|a| (a + 1..ws.len()).all(|b| ws[a] != ws[b]))
    }

    proptest! {
        // With N = q^n, complete <=> t -> window is injective.
        #[test]
        fn bijection_criterion(q in 2u32..4, n in 1u32..4, seed in any::<u64>()) {
            let len = q.pow(n) as u64;
            let mut s = seed;
            let mut next = || { s ^= s << 13; s ^= s >> 7; s ^= s << 17; s };
            let symbols: Vec<u32> = (0..len).map(|_| (next() % q as u64) as u32).collect();
            let chi = CyclicString::new(q, symbols).unwrap();
            let mut elems: Vec<u64> = (0..n as u64).map(|_| next() % len).collect();
            elems.sort_unstable();
            elems.dedup();
            prop_assume!(elems.len() == n as usize);
            let i = IndexSet::new(elems, len).unwrap();
            let r = verify_cover(&chi, &CycleParams::unreduced(q, n).unwrap(), &i, false).unwrap();
            prop_assert_eq!(r.complete, brute_injective(&chi, &i));
            prop_assert_eq!(r.complete, r.is_injective());
        }
    }
}
