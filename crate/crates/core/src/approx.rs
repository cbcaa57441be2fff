//! Approximate cycles: strings of any length whose windows through `I`
//! cover all words (Type I) or all but a few (Type II).
//!
//! The Type I builder doubles a random string `T1`, then repairs the words
//! it misses with a patch string `T2` built by dilation: choose a prime `p`
//! and a multiplier `k` so that the points `k i_j mod p` are pairwise at
//! circular distance at least `S`, write word `W_t` at the positions
//! `k i_j + t`, and read the result back through `s -> k s`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::types::{CyclicString, IndexSet, ParamError, Word};
use crate::verify::{coverage, VerifyError};

/// Largest `q^n` accepted by [`type1_construct`].
pub const MAX_WORDS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ApproxError {
    #[error("no multiplier separates the dilated indices by {needed}; best gap is {best}")]
    GapShortfall { needed: u64, best: u64 },
    #[error("word {0} has the wrong length or alphabet")]
    BadWord(usize),
    #[error("word {0} repeats")]
    RepeatedWord(usize),
    #[error("string length must be at least 1")]
    EmptyLength,
    #[error("index set has {got} elements, expected {expected}")]
    SetSize { got: usize, expected: u32 },
    #[error("q^n exceeds {MAX_WORDS}")]
    TooLarge,
    #[error("Delta and delta must be positive and mu non-negative")]
    BadBoundInput,
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// A prime modulus and multiplier for patching `S` words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DilationPlan {
    pub p: u64,
    pub k: u64,
    /// Least circular distance between the points `k i_j mod p`;
    /// `p` when there is only one point.
    pub min_gap: u64,
    pub words: u64,
}

fn next_prime_above(x: u64) -> u64 {
    let mut c = x + 1;
    while !crate::is_prime(c) {
        c += 1;
    }
    c
}

fn min_circular_gap(points: &mut [u64], p: u64) -> u64 {
    if points.len() < 2 {
        return p;
    }
    points.sort_unstable();
    let mut best = points[0] + p - points[points.len() - 1];
    for w in points.windows(2) {
        best = best.min(w[1] - w[0]);
    }
    best
}

/// `p` is the least prime above `n^2 (S + 3)`; `k` maximizes the least
/// circular gap of `{k i_j mod p}` over `1..p`, ties to the smallest `k`.
pub fn plan_dilation(index_set: &IndexSet, words: u64) -> Result<DilationPlan, ApproxError> {
    let n = index_set.len() as u64;
    let p = next_prime_above(n * n * (words + 3));
    let mut best = (0u64, 1u64);
    let mut points = vec![0u64; index_set.len()];
    for k in 1..p {
        for (slot, &i) in points.iter_mut().zip(index_set.elements()) {
            *slot = (k as u128 * i as u128 % p as u128) as u64;
        }
        let gap = min_circular_gap(&mut points, p);
        if gap > best.0 {
            best = (gap, k);
        }
    }
    let (min_gap, k) = best;
    if min_gap < words.max(1) {
        return Err(ApproxError::GapShortfall { needed: words.max(1), best: min_gap });
    }
    Ok(DilationPlan { p, k, min_gap, words })
}

/// A string of length `p` in which every given word appears through `I`.
/// Positions not forced by a word hold 0.
pub fn patch_sequence(index_set: &IndexSet, words: &[Word], q: u32) -> Result<CyclicString, ApproxError> {
    let n = index_set.len();
    let mut sorted: Vec<(usize, &Word)> = words.iter().enumerate().collect();
    for &(i, w) in &sorted {
        if w.len() != n || w.symbols().iter().any(|&s| s >= q) {
            return Err(ApproxError::BadWord(i));
        }
    }
    sorted.sort_by(|a, b| a.1.symbols().cmp(b.1.symbols()));
    if let Some(pair) = sorted.windows(2).find(|w| w[0].1 == w[1].1) {
        return Err(ApproxError::RepeatedWord(pair[1].0));
    }
    let plan = plan_dilation(index_set, words.len() as u64)?;
    let p = plan.p;
    let mut chi = vec![0u32; p as usize];
    for (t, w) in words.iter().enumerate() {
        let t = t as u64 + 1;
        for (&i, &s) in index_set.elements().iter().zip(w.symbols()) {
            let pos = ((plan.k as u128 * i as u128 + t as u128) % p as u128) as usize;
            chi[pos] = s;
        }
    }
    let dilated: Vec<u32> = (0..p).map(|s| chi[(plan.k as u128 * s as u128 % p as u128) as usize]).collect();
    Ok(CyclicString::new(q, dilated)?)
}

/// `m` uniform symbols from ChaCha8 seeded with `seed`, and the number of
/// `n`-words its windows miss. Longer strings extend shorter ones with the
/// same seed.
pub fn type2_random(
    q: u32,
    n: u32,
    index_set: &IndexSet,
    m: u64,
    seed: u64,
) -> Result<(CyclicString, usize), ApproxError> {
    if index_set.len() != n as usize {
        return Err(ApproxError::SetSize { got: index_set.len(), expected: n });
    }
    if m == 0 {
        return Err(ApproxError::EmptyLength);
    }
    let chi = random_string(q, m, seed)?;
    let missing = coverage(&chi, index_set, false)?.missing_count();
    Ok((chi, missing))
}

fn random_string(q: u32, m: u64, seed: u64) -> Result<CyclicString, ApproxError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbols = (0..m).map(|_| rng.gen_range(0..q)).collect();
    Ok(CyclicString::new(q, symbols)?)
}

/// Words missed by the windows that do not wrap around the end of `chi`.
/// Unlike the cyclic count this never grows when `chi` is extended.
pub fn missing_linear(chi: &CyclicString, index_set: &IndexSet) -> Result<usize, ApproxError> {
    let q = chi.q() as u64;
    let words =
        q.checked_pow(index_set.len() as u32).filter(|&w| w <= crate::DESK_SCALE).ok_or(ApproxError::TooLarge)?;
    let mut seen = vec![false; words as usize];
    let span = index_set.greatest();
    let len = chi.len() as u64;
    let mut t = 0;
    while t + span < len {
        let code = index_set.elements().iter().fold(0u64, |acc, &i| acc * q + chi.at(t + i) as u64);
        seen[code as usize] = true;
        t += 1;
    }
    Ok(seen.iter().filter(|&&s| !s).count())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockRole {
    Random,
    Patch,
    Repatch,
}

/// One building block of a Type I string: `copies` consecutive copies of a
/// string of length `len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub role: BlockRole,
    pub len: u64,
    pub copies: u64,
    /// Words the block was built to supply (0 for the random block).
    pub words: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub chi: CyclicString,
    pub seed: u64,
    pub blocks: Vec<Block>,
    /// Words the random block missed.
    pub missing_before_patch: usize,
}

impl ApproxResult {
    pub fn len(&self) -> u64 {
        self.chi.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.chi.is_empty()
    }
}

/// `max(1, ceil(4 q^n ln n))`.
pub fn random_block_length(q: u32, n: u32) -> u64 {
    let words = (q as f64).powi(n as i32);
    ((4.0 * words * (n as f64).ln()).ceil() as u64).max(1)
}

/// Copies needed so that any window starting in the first copy of a block
/// fits inside the repeated block: at least two.
fn copies_for(span: u64, len: u64) -> u64 {
    (span.div_ceil(len) + 1).max(2)
}

/// Type I approximate cycle: random block `T1`, patch block `T2` for the
/// words `T1` misses, each repeated, then further patch blocks until the
/// full cyclic string verifies.
pub fn type1_construct(q: u32, n: u32, index_set: &IndexSet, seed: u64) -> Result<ApproxResult, ApproxError> {
    if index_set.len() != n as usize {
        return Err(ApproxError::SetSize { got: index_set.len(), expected: n });
    }
    let words = crate::checked_pow(q as u64, n).filter(|&w| w <= MAX_WORDS).ok_or(ApproxError::TooLarge)?;
    let span = index_set.greatest();
    let m = random_block_length(q, n);
    let (t1, missing_before_patch) = type2_random(q, n, index_set, m, seed)?;
    let mut symbols: Vec<u32> = Vec::new();
    let mut blocks = Vec::new();
    let copies = copies_for(span, m);
    for _ in 0..copies {
        symbols.extend_from_slice(t1.symbols());
    }
    blocks.push(Block { role: BlockRole::Random, len: m, copies, words: 0 });
    let mut role = BlockRole::Patch;
    loop {
        let chi = CyclicString::new(q, symbols.clone())?;
        let report = coverage(&chi, index_set, false)?;
        if report.complete {
            assert!(chi.len() as u64 >= words, "a Type I string is never shorter than q^n");
            return Ok(ApproxResult { chi, seed, blocks, missing_before_patch });
        }
        let patch = patch_sequence(index_set, &report.missing, q)?;
        let len = patch.len() as u64;
        let copies = copies_for(span, len);
        for _ in 0..copies {
            symbols.extend_from_slice(patch.symbols());
        }
        blocks.push(Block { role, len, copies, words: report.missing.len() as u64 });
        role = BlockRole::Repatch;
    }
}

/// `exp(-min(mu^2 / (8 Delta), mu / 2, mu / (6 delta)))`.
pub fn janson_bound(mu: f64, big_delta: f64, delta: f64) -> Result<f64, ApproxError> {
    if !(mu >= 0.0 && big_delta > 0.0 && delta > 0.0) || !mu.is_finite() {
        return Err(ApproxError::BadBoundInput);
    }
    let e = (mu * mu / (8.0 * big_delta)).min(mu / 2.0).min(mu / (6.0 * delta));
    Ok((-e).exp())
}

/// The bound with `mu = m q^-n`, `Delta = n^2` and `delta = n^2 q^-n`.
pub fn janson_for_length(q: u32, n: u32, m: u64) -> f64 {
    let words = (q as f64).powi(n as i32);
    let nn = (n as f64) * (n as f64);
    janson_bound(m as f64 / words, nn.max(f64::MIN_POSITIVE), (nn / words).max(f64::MIN_POSITIVE))
        .expect("parameters are positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::IndexSet;

    fn ints(e: &[u64]) -> IndexSet {
        IndexSet::from_integers(e.iter().copied()).unwrap()
    }

    #[test]
    fn plans() {
        let p = plan_dilation(&ints(&[0, 1]), 1).unwrap();
        assert_eq!(p.p, 17);
        assert!(p.min_gap >= 1);
        assert_eq!(plan_dilation(&ints(&[0, 1]), 4).unwrap().p, 29);
        let p = plan_dilation(&ints(&[0]), 5).unwrap();
        assert_eq!((p.k, p.min_gap), (1, p.p));
    }

    #[test]
    fn patches() {
        let i = ints(&[0, 1]);
        let w = vec![Word::new(vec![1, 1], 2).unwrap()];
        let chi = patch_sequence(&i, &w, 2).unwrap();
        assert_eq!(chi.len(), 17);
        assert!(coverage(&chi, &i, false).unwrap().witness(&w[0]).is_some());
        let all: Vec<Word> = (0..4).map(|c| Word::decode(c, 2, 2)).collect();
        let chi = patch_sequence(&i, &all, 2).unwrap();
        assert_eq!(chi.len(), 29);
        assert!(coverage(&chi, &i, false).unwrap().complete);
        let chi = patch_sequence(&i, &[], 2).unwrap();
        assert!(chi.symbols().iter().all(|&s| s == 0));
        assert_eq!(patch_sequence(&i, &[all[1].clone(), all[1].clone()], 2), Err(ApproxError::RepeatedWord(1)));
    }

    #[test]
    fn type2_is_seeded_and_extends() {
        let i = IndexSet::contiguous(4);
        let (a, _) = type2_random(2, 4, &i, 40, 7).unwrap();
        let (b, _) = type2_random(2, 4, &i, 40, 7).unwrap();
        assert_eq!(a, b);
        let (c, _) = type2_random(2, 4, &i, 60, 7).unwrap();
        assert_eq!(&c.symbols()[..40], a.symbols());
        let (_, missing) = type2_random(2, 4, &i, 8, 1).unwrap();
        assert!(missing >= 8);
    }

    #[test]
    fn type1_examples() {
        let r = type1_construct(2, 6, &IndexSet::contiguous(6), 3).unwrap();
        assert!(coverage(&r.chi, &IndexSet::contiguous(6), false).unwrap().complete);
        assert!((r.len() as f64) <= 16.0 * 64.0 * 6f64.ln());
        let i = ints(&[0, 1, 3, 9]);
        let r = type1_construct(2, 4, &i, 0).unwrap();
        assert!(coverage(&r.chi, &i, false).unwrap().complete);
        let r = type1_construct(3, 1, &ints(&[0]), 0).unwrap();
        assert!(coverage(&r.chi, &ints(&[0]), false).unwrap().complete);
        let total: u64 = r.blocks.iter().map(|b| b.len * b.copies).sum();
        assert_eq!(total, r.len());
    }

    #[test]
    fn janson() {
        assert!((janson_bound(1.0, 1.0, 1.0).unwrap() - (-0.125f64).exp()).abs() < 1e-15);
        assert_eq!(janson_bound(0.0, 1.0, 1.0).unwrap(), 1.0);
        assert!(janson_bound(1.0, 0.0, 1.0).is_err());
        let mut prev = 1.0;
        for m in (64..2048).step_by(64) {
            let b = janson_for_length(2, 6, m);
            assert!(b <= prev);
            prev = b;
        }
    }
}
