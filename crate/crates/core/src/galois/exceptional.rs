use serde::{Deserialize, Serialize};

use super::field::FieldCtx;
use super::lambda::{lambda_sequence, LambdaSeq};
use super::subfield::{Subfield, SubfieldBasis};
use super::{extension_field, GaloisError};
use crate::types::{CycleParams, IndexSet, ParamError, Symbol};
use crate::verify::verify_cover;

/// A primitive polynomial `g` (coefficients over `F_q`, lowest degree first,
/// monic) such that no non-zero combination `sum c_j x^{i_j}` is divisible
/// by `g`, together with the root `x^generator_exp` it was found from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdinaryWitness {
    pub generator_exp: u64,
    pub min_poly: Vec<Symbol>,
}

/// For every generator `x^m`, a non-zero `c` with `sum c_j x^{m i_j} = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalWitness {
    pub dependencies: Vec<(u64, Vec<Symbol>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum ExceptionalVerdict {
    Ordinary(OrdinaryWitness),
    Exceptional(ExceptionalWitness),
}

impl ExceptionalVerdict {
    pub fn is_exceptional(&self) -> bool {
        matches!(self, ExceptionalVerdict::Exceptional(_))
    }
}

/// Classifies `I` (exponents taken mod `q^n - 1`) by testing, for every
/// generator `beta`, whether the powers `beta^{i_j}` are independent over
/// `F_q`.
pub fn is_exceptional_bruteforce(index_set: &IndexSet, q: u32, n: u32) -> Result<ExceptionalVerdict, GaloisError> {
    let (ctx, sub) = extension_field(q, n)?;
    classify_in(&ctx, &sub, index_set)
}

/// [`is_exceptional_bruteforce`] over caller-supplied tables for `F_{q^n}`.
pub fn classify_in(ctx: &FieldCtx, sub: &Subfield, index_set: &IndexSet) -> Result<ExceptionalVerdict, GaloisError> {
    let order = ctx.order();
    check_exponents(index_set, sub.degree(), order)?;
    let coords = SubfieldBasis::elementary(ctx, sub, 1)?;
    let mut dependencies = Vec::new();
    for m in ctx.generator_exponents() {
        let rows: Vec<Vec<Symbol>> =
            index_set.elements().iter().map(|&i| coords.coordinates(ctx.exp(mul_mod(m, i, order)))).collect();
        match sub.null_combination(&rows) {
            None => {
                return Ok(ExceptionalVerdict::Ordinary(OrdinaryWitness {
                    generator_exp: m,
                    min_poly: min_poly(ctx, sub, ctx.exp(m)),
                }))
            }
            Some(c) => dependencies.push((m, c)),
        }
    }
    Ok(ExceptionalVerdict::Exceptional(ExceptionalWitness { dependencies }))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn check_exponents(index_set: &IndexSet, n: u32, order: u64) -> Result<(), GaloisError> {
    if index_set.len() != n as usize {
        return Err(ParamError::WordLength { got: index_set.len(), expected: n as usize }.into());
    }
    let mut reduced: Vec<u64> = index_set.elements().iter().map(|&e| e % order).collect();
    reduced.sort_unstable();
    reduced.dedup();
    if reduced.len() != index_set.len() {
        return Err(GaloisError::NotDistinct(order));
    }
    Ok(())
}

/// Minimal polynomial of `beta` over `F_q` as symbols, lowest degree first.
pub fn min_poly(ctx: &FieldCtx, sub: &Subfield, beta: u32) -> Vec<Symbol> {
    // Product of (x - c) over the distinct Frobenius conjugates of beta.
    let q = sub.q() as u64;
    let mut conj = vec![beta];
    loop {
        let next = ctx.pow(*conj.last().unwrap(), q);
        if next == beta {
            break;
        }
        conj.push(next);
    }
    let mut poly: Vec<u32> = vec![1];
    for &c in &conj {
        let mut next = vec![0u32; poly.len() + 1];
        for (i, &a) in poly.iter().enumerate() {
            next[i + 1] = ctx.add(next[i + 1], a);
            next[i] = ctx.sub(next[i], ctx.mul(a, c));
        }
        poly = next;
    }
    poly.into_iter().map(|e| sub.symbol(e).expect("minimal polynomials lie over the subfield")).collect()
}

fn poly_code(poly: &[Symbol], q: u32) -> u64 {
    poly[..poly.len() - 1].iter().rev().fold(0u64, |acc, &c| acc * q as u64 + c as u64)
}

/// Primitive polynomials of degree `n` over `F_q` (the minimal polynomials
/// of generators), sorted by the integer encoding of their lower
/// coefficients, each with the least exponent `m` such that `x^m` is a root.
pub fn primitive_polynomials(ctx: &FieldCtx, sub: &Subfield) -> Vec<(Vec<Symbol>, u64)> {
    let mut out: Vec<(Vec<Symbol>, u64)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for m in ctx.generator_exponents() {
        let g = min_poly(ctx, sub, ctx.exp(m));
        if seen.insert(g.clone()) {
            out.push((g, m));
        }
    }
    out.sort_by_key(|(g, _)| poly_code(g, sub.q()));
    out
}

/// Closed form for two-element sets: ordinary iff `q + 1` does not divide
/// the difference (mod `q^2 - 1`).
pub fn two_element_ordinary(i: u64, j: u64, q: u32) -> bool {
    let order = q as u64 * q as u64 - 1;
    let diff = (i % order + order - j % order) % order;
    !diff.is_multiple_of(q as u64 + 1)
}

/// Re-checks an ordinary witness with polynomial arithmetic modulo `g` over
/// `F_q`, without the field tables: `g` must have `x` of order `q^n - 1`,
/// and the residues `x^{i_j} mod g` must be independent.
pub fn verify_ordinary(sub: &Subfield, index_set: &IndexSet, witness: &OrdinaryWitness) -> bool {
    let g = &witness.min_poly;
    let n = sub.degree() as usize;
    if g.len() != n + 1 || g[n] != 1 {
        return false;
    }
    let order = (sub.q() as u64).pow(n as u32) - 1;
    let x_pow = |e: u64| poly_pow_x(sub, g, e);
    let one: Vec<Symbol> = (0..n).map(|i| u32::from(i == 0)).collect();
    if x_pow(order) != one {
        return false;
    }
    let mut rest = order;
    let mut prime = 2;
    while rest > 1 {
        if rest.is_multiple_of(prime) {
            if x_pow(order / prime) == one {
                return false;
            }
            while rest.is_multiple_of(prime) {
                rest /= prime;
            }
        }
        prime += 1;
    }
    let rows: Vec<Vec<Symbol>> = index_set.elements().iter().map(|&i| x_pow(i % order)).collect();
    sub.rank(&rows) == n
}

/// `x^e mod g` over `F_q` (square and multiply), as `n` coefficients.
fn poly_pow_x(sub: &Subfield, g: &[Symbol], mut e: u64) -> Vec<Symbol> {
    let n = g.len() - 1;
    let mut result: Vec<Symbol> = (0..n).map(|i| u32::from(i == 0)).collect();
    let mut base: Vec<Symbol> = (0..n).map(|i| u32::from(i == 1 % n.max(2))).collect();
    if n == 1 {
        // x mod (x + g_0) is -g_0.
        base = vec![sub.neg(g[0])];
    }
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(sub, &result, &base, g);
        }
        base = poly_mul_mod(sub, &base, &base, g);
        e >>= 1;
    }
    result
}

fn poly_mul_mod(sub: &Subfield, a: &[Symbol], b: &[Symbol], g: &[Symbol]) -> Vec<Symbol> {
    let n = g.len() - 1;
    let mut prod = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = sub.add(prod[i + j], sub.mul(x, y));
        }
    }
    for top in (n..prod.len()).rev() {
        let c = prod[top];
        if c != 0 {
            for k in 0..=n {
                let idx = top - n + k;
                prod[idx] = sub.sub(prod[idx], sub.mul(c, g[k]));
            }
        }
    }
    prod.truncate(n);
    prod.resize(n, 0);
    prod
}

/// Re-checks an exceptional witness in field arithmetic: every generator
/// has a recorded non-zero `c` with `sum c_j beta^{i_j} = 0`.
pub fn verify_exceptional(ctx: &FieldCtx, sub: &Subfield, index_set: &IndexSet, witness: &ExceptionalWitness) -> bool {
    let order = ctx.order();
    let gens = ctx.generator_exponents();
    if witness.dependencies.len() != gens.len() {
        return false;
    }
    gens.iter().zip(&witness.dependencies).all(|(&m, (wm, c))| {
        m == *wm
            && c.len() == index_set.len()
            && c.iter().any(|&x| x != 0)
            && c.iter().all(|&x| x < sub.q())
            && index_set
                .elements()
                .iter()
                .zip(c)
                .fold(0, |acc, (&i, &cj)| ctx.add(acc, ctx.mul(sub.element(cj), ctx.exp(mul_mod(m, i, order)))))
                == 0
    })
}

/// A reduced `I*`-cycle for an ordinary `I`: the first primitive
/// polynomial `g` (in coefficient order) whose root `beta` has independent
/// powers `beta^{i_j}` gives `Lambda(beta, {beta^0..beta^{n-1}}, e_1)`,
/// which is then verified.
pub fn build_reduced_cycle(index_set: &IndexSet, q: u32, n: u32) -> Result<LambdaSeq, GaloisError> {
    let (ctx, sub) = extension_field(q, n)?;
    build_reduced_cycle_in(&ctx, &sub, index_set)
}

/// [`build_reduced_cycle`] over caller-supplied tables for `F_{q^n}`.
pub fn build_reduced_cycle_in(ctx: &FieldCtx, sub: &Subfield, index_set: &IndexSet) -> Result<LambdaSeq, GaloisError> {
    let (q, n) = (sub.q(), sub.degree());
    let order = ctx.order();
    check_exponents(index_set, n, order)?;
    let params = CycleParams::reduced(q, n)?;
    let reduced = IndexSet::new(index_set.elements().iter().copied(), order)?;
    let v: Vec<Symbol> = (0..n).map(|i| u32::from(i == 0)).collect();
    for (_, m) in primitive_polynomials(ctx, sub) {
        let basis = SubfieldBasis::elementary(ctx, sub, m)?;
        let rows: Vec<Vec<Symbol>> =
            reduced.elements().iter().map(|&i| basis.coordinates(ctx.exp(mul_mod(m, i, order)))).collect();
        if sub.rank(&rows) < n as usize {
            continue;
        }
        let seq = lambda_sequence(ctx, sub, m, &basis, &v)?;
        let report = verify_cover(&seq.chi, &params, &reduced, true).map_err(|_| GaloisError::ExhaustedPolynomials)?;
        if !report.complete {
            return Err(GaloisError::ExhaustedPolynomials);
        }
        return Ok(seq);
    }
    Err(GaloisError::ExceptionalInput)
}
