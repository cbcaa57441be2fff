//! Affine equivalence of index sets under `s -> k s + b` on `Z_L`.

use serde::{Deserialize, Serialize};

use crate::gcd;
use crate::types::{mulmod, IndexSet};

/// An orbit representative together with the map that reaches it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineClass {
    /// Lexicographically least sorted member of the orbit.
    pub canonical: IndexSet,
    /// `canonical = sort(k * I + b mod L)`.
    pub multiplier: u64,
    pub shift: u64,
}

/// Units of `Z_L` in increasing order.
pub fn units(modulus: u64) -> Vec<u64> {
    if modulus == 1 {
        return vec![0];
    }
    (1..modulus).filter(|&k| gcd(k, modulus) == 1).collect()
}

/// Multiplicative inverse of a unit modulo `modulus`.
pub fn inverse_mod(k: u64, modulus: u64) -> Option<u64> {
    let (mut r0, mut r1) = (modulus as i128, (k % modulus) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quo = r0 / r1;
        (r0, r1) = (r1, r0 - quo * r1);
        (t0, t1) = (t1, t0 - quo * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(modulus as i128) as u64)
}

/// Canonical representative of the affine orbit of `index_set` in `Z_L`.
///
/// The least sorted member always contains 0, so only shifts that move an
/// element of `k I` to 0 need to be tried.
pub fn canonicalize_affine(index_set: &IndexSet, modulus: u64) -> AffineClass {
    canonicalize_with_units(index_set, modulus, &units(modulus))
}

pub(crate) fn canonicalize_with_units(index_set: &IndexSet, modulus: u64, units: &[u64]) -> AffineClass {
    let elems: Vec<u64> = index_set.elements().iter().map(|e| e % modulus).collect();
    let mut best: Option<(Vec<u64>, u64, u64)> = None;
    let mut image = vec![0u64; elems.len()];
    let mut cand = vec![0u64; elems.len()];
    for &k in units {
        for (dst, &e) in image.iter_mut().zip(&elems) {
            *dst = mulmod(k, e, modulus);
        }
        for &anchor in &image {
            let b = (modulus - anchor) % modulus;
            for (dst, &x) in cand.iter_mut().zip(&image) {
                *dst = (x + b) % modulus;
            }
            cand.sort_unstable();
            if best.as_ref().is_none_or(|(v, _, _)| cand < *v) {
                best = Some((cand.clone(), k, b));
            }
        }
    }
    let (canonical, multiplier, shift) = best.expect("index sets are non-empty");
    AffineClass { canonical: IndexSet::from_sorted_unchecked(canonical), multiplier, shift }
}

/// Every member of the affine orbit, sorted and deduplicated.
pub fn orbit(index_set: &IndexSet, modulus: u64) -> Vec<IndexSet> {
    let mut members: Vec<IndexSet> = units(modulus)
        .into_iter()
        .flat_map(|k| (0..modulus).map(move |b| (k, b)))
        .map(|(k, b)| index_set.affine_image(k, b, modulus).expect("units act injectively"))
        .collect();
    members.sort();
    members.dedup();
    members
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(e: &[u64], m: u64) -> IndexSet {
        IndexSet::new(e.iter().copied(), m).unwrap()
    }

    #[test]
    fn translate_to_zero() {
        let c = canonicalize_affine(&set(&[1, 10, 19], 27), 27);
        assert_eq!(c.canonical.elements(), &[0, 9, 18]);
        let image = set(&[1, 10, 19], 27).affine_image(c.multiplier, c.shift, 27).unwrap();
        assert_eq!(image, c.canonical);
    }

    #[test]
    fn orbit_of_0_2_mod_4() {
        // Enumerate all 8 affine maps of Z_4 by hand.
        let mut seen = Vec::new();
        for k in [1u64, 3] {
            for b in 0..4 {
                let mut v = vec![b % 4, (2 * k + b) % 4];
                v.sort();
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
        }
        seen.sort();
        assert_eq!(seen, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(orbit(&set(&[0, 2], 4), 4).len(), 2);
        assert_eq!(canonicalize_affine(&set(&[1, 3], 4), 4).canonical.elements(), &[0, 2]);
    }

    #[test]
    fn ap_classes_are_distinct() {
        let a = canonicalize_affine(&set(&[0, 2, 4, 6], 16), 16).canonical;
        let b = canonicalize_affine(&set(&[0, 1, 2, 3], 16), 16).canonical;
        assert_eq!(a.elements(), &[0, 2, 4, 6]);
        assert_eq!(b.elements(), &[0, 1, 2, 3]);
        assert_ne!(a, b);
    }

    #[test]
    fn inverses() {
        assert_eq!(inverse_mod(5, 27), Some(11));
        assert_eq!(inverse_mod(3, 27), None);
        assert_eq!(units(8), vec![1, 3, 5, 7]);
    }

    proptest! {
        #[test]
        fn canonical_is_constant_on_orbits(l in 4u64..40, raw in prop::collection::vec(0u64..1000, 2..5), kr in 0usize..100, b in 0u64..1000) {
            let i = IndexSet::new(raw.iter().map(|x| x % l), l);
            prop_assume!(i.is_ok());
            let i = i.unwrap();
            let us = units(l);
            let k = us[kr % us.len()];
            let moved = i.affine_image(k, b, l).unwrap();
            let c = canonicalize_affine(&i, l).canonical;
            prop_assert_eq!(&canonicalize_affine(&moved, l).canonical, &c);
            // idempotent
            prop_assert_eq!(&canonicalize_affine(&c, l).canonical, &c);
            // least member of the explicit orbit
            prop_assert_eq!(&orbit(&i, l)[0], &c);
        }
    }
}
