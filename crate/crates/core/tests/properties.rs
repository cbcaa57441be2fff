use std::collections::BTreeSet;

use proptest::prelude::*;
use ucycle_core::affine::{inverse_mod, orbit, units};
use ucycle_core::approx::{missing_linear, type2_random};
use ucycle_core::decomp::{decompose_equal, TrailDecomposition};
use ucycle_core::galois::{
    build_reduced_cycle_in, classify_in, extension_field, lambda_sequence, primitive_polynomials, psi_via_lambda,
    psi_via_matrix, FieldCtx, Subfield, SubfieldBasis,
};
use ucycle_core::search::{decide_valid, decide_valid_opts, Budget, SearchOptions, Verdict};
use ucycle_core::text::{format_cycle, parse_cycle};
use ucycle_core::{canonicalize_affine, verify_cover, CycleParams, CyclicString, IndexSet};

/// Exhaustive oracle: tries every string of length q^n.
fn brute_force_valid(q: u32, n: u32, i: &[u64]) -> bool {
    let len = q.pow(n) as usize;
    let total = (q as u64).pow(len as u32);
    let mut chi = vec![0u32; len];
    'strings: for code in 0..total {
        let mut c = code;
        for slot in chi.iter_mut() {
            *slot = (c % q as u64) as u32;
            c /= q as u64;
        }
        let mut seen = vec![false; len];
        for t in 0..len {
            let w = i.iter().fold(0usize, |acc, &e| acc * q as usize + chi[(e as usize + t) % len] as usize);
            if seen[w] {
                continue 'strings;
            }
            seen[w] = true;
        }
        return true;
    }
    false
}

fn small_instance() -> impl Strategy<Value = (u32, u32, Vec<u64>)> {
    prop_oneof![Just((2u32, 2u32)), Just((2, 3)), Just((3, 2)), Just((2, 4))].prop_flat_map(|(q, n)| {
        let modulus = q.pow(n) as u64;
        (Just(q), Just(n), proptest::sample::subsequence((0..modulus).collect::<Vec<_>>(), n as usize))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn search_agrees_with_brute_force((q, n, elems) in small_instance()) {
        let i = IndexSet::from_integers(elems.iter().copied()).unwrap();
        let oracle = brute_force_valid(q, n, &elems);
        let pruned = decide_valid(q, n, &i).unwrap();
        let plain = decide_valid_opts(q, n, &i, Budget::UNLIMITED, SearchOptions { period_rule: false, sub_pattern_pruning: false }).unwrap();
        prop_assert_eq!(pruned.verdict == Verdict::Valid, oracle);
        prop_assert_eq!(plain.verdict, pruned.verdict);
        if let Some(w) = &pruned.witness {
            let params = CycleParams::unreduced(q, n).unwrap();
            prop_assert!(verify_cover(w, &params, &i, false).unwrap().complete);
        }
    }

    #[test]
    fn validity_is_affine_invariant((q, n, elems) in small_instance(), k_pick in 0usize..64, b in 0u64..64) {
        let modulus = q.pow(n) as u64;
        let us = units(modulus);
        let k = us[k_pick % us.len()];
        let i = IndexSet::from_integers(elems.iter().copied()).unwrap();
        let j = i.affine_image(k, b % modulus, modulus).unwrap();
        let vi = decide_valid(q, n, &i).unwrap();
        let vj = decide_valid(q, n, &j).unwrap();
        prop_assert_eq!(vi.verdict, vj.verdict);
        prop_assert_eq!(canonicalize_affine(&i, modulus).canonical, canonicalize_affine(&j, modulus).canonical);
        if let Some(w) = vj.witness {
            // chi covers kI + b, so chi(k s) covers I.
            let pulled = w.pulled_back(k, 0);
            let params = CycleParams::unreduced(q, n).unwrap();
            prop_assert!(verify_cover(&pulled, &params, &i, false).unwrap().complete);
        }
    }

    #[test]
    fn canonical_form_is_least_orbit_member((q, n, elems) in small_instance()) {
        let modulus = q.pow(n) as u64;
        let i = IndexSet::from_integers(elems).unwrap();
        let class = canonicalize_affine(&i, modulus);
        let members = orbit(&i, modulus);
        prop_assert!(members.contains(&class.canonical));
        prop_assert!(members.iter().all(|m| class.canonical.elements() <= m.elements()));
    }

    #[test]
    fn text_round_trip(q in 2u32..12, symbols in proptest::collection::vec(0u32..12, 1..40)) {
        let symbols: Vec<u32> = symbols.into_iter().map(|s| s % q).collect();
        let chi = CyclicString::new(q, symbols).unwrap();
        prop_assert_eq!(parse_cycle(&format_cycle(&chi), q).unwrap(), chi);
    }

    #[test]
    fn decomposition_certificates(n in 2usize..=7, pick in 0usize..32) {
        let divisors: Vec<usize> = (3..=n * n).filter(|d| (n * n) % d == 0).collect();
        prop_assume!(!divisors.is_empty());
        let d = divisors[pick % divisors.len()];
        let dec = decompose_equal(n, d).unwrap();
        // Independent check: the trails chain, have length d and use every
        // arc of the complete loop digraph exactly once.
        let mut used = BTreeSet::new();
        for t in &dec.trails {
            let e = t.edges();
            prop_assert_eq!(e.len(), d);
            for w in 0..e.len() {
                prop_assert_eq!(e[w].1, e[(w + 1) % e.len()].0);
                prop_assert!(used.insert(e[w]));
            }
        }
        prop_assert_eq!(used.len(), n * n);
        let back = TrailDecomposition::from_json(&dec.to_json()).unwrap();
        prop_assert_eq!(back, dec);
    }

    #[test]
    fn linear_coverage_is_monotone(n in 3u32..=6, seed in 0u64..1000, short in 8u64..200, extra in 1u64..200) {
        let i = IndexSet::contiguous(n);
        let (a, _) = type2_random(2, n, &i, short, seed).unwrap();
        let (b, _) = type2_random(2, n, &i, short + extra, seed).unwrap();
        prop_assert_eq!(&b.symbols()[..short as usize], a.symbols());
        prop_assert!(missing_linear(&b, &i).unwrap() <= missing_linear(&a, &i).unwrap());
    }
}

fn psi_table(ctx: &FieldCtx, sub: &Subfield, gen: u64, v: &[u32], i: &IndexSet) -> Vec<Vec<u32>> {
    let basis = SubfieldBasis::elementary(ctx, sub, 1).unwrap();
    let seq = lambda_sequence(ctx, sub, gen, &basis, v).unwrap();
    (0..ctx.size())
        .map(|g| {
            let a = psi_via_lambda(ctx, &seq, i, g);
            assert_eq!(a, psi_via_matrix(ctx, sub, gen, &basis, v, i, g));
            a
        })
        .collect()
}

#[test]
fn psi_is_additive_and_injective_for_ordinary_sets() {
    let (ctx, sub) = extension_field(2, 4).unwrap();
    let i = IndexSet::new([0, 1, 3, 7], 15).unwrap();
    let verdict = classify_in(&ctx, &sub, &i).unwrap();
    let ucycle_core::galois::ExceptionalVerdict::Ordinary(w) = verdict else { panic!("expected ordinary") };
    let psi = psi_table(&ctx, &sub, w.generator_exp, &[1, 0, 1, 1], &i);
    let distinct: BTreeSet<_> = psi.iter().collect();
    assert_eq!(distinct.len(), psi.len());
    for a in 0..ctx.size() {
        for b in 0..ctx.size() {
            let sum: Vec<u32> = psi[a as usize].iter().zip(&psi[b as usize]).map(|(&x, &y)| sub.add(x, y)).collect();
            assert_eq!(psi[ctx.add(a, b) as usize], sum);
        }
    }
}

fn all_subsets(modulus: u64, size: usize) -> Vec<Vec<u64>> {
    (0u64..1 << modulus)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..modulus).filter(|b| m >> b & 1 == 1).collect())
        .collect()
}

#[test]
fn classification_does_not_depend_on_field_modulus() {
    for (p, n) in [(2u32, 4u32), (3, 2), (2, 3)] {
        let (ctx, sub) = extension_field(p, n).unwrap();
        let polys = primitive_polynomials(&ctx, &sub);
        assert!(polys.len() >= 2);
        let other_poly = polys.iter().map(|(g, _)| g).find(|g| g.as_slice() != ctx.modulus()).unwrap();
        let other = FieldCtx::with_modulus(p, n, other_poly).unwrap();
        let other_sub = Subfield::new(&other, p).unwrap();
        let order = ctx.order();
        let params = CycleParams::reduced(p, n).unwrap();
        for elems in all_subsets(order, n as usize) {
            let i = IndexSet::new(elems, order).unwrap();
            let a = classify_in(&ctx, &sub, &i).unwrap();
            let b = classify_in(&other, &other_sub, &i).unwrap();
            assert_eq!(a.is_exceptional(), b.is_exceptional(), "p={p} n={n} I={i}");
            if !b.is_exceptional() {
                let seq = build_reduced_cycle_in(&other, &other_sub, &i).unwrap();
                assert!(verify_cover(&seq.chi, &params, &i, true).unwrap().complete);
            }
        }
    }
}

#[test]
fn inverse_mod_matches_units() {
    for modulus in 2..40u64 {
        for k in units(modulus) {
            let inv = inverse_mod(k, modulus).unwrap();
            assert_eq!(k * inv % modulus, 1 % modulus);
        }
    }
}
