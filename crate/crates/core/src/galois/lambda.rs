use super::field::{Elem, FieldCtx};
use super::subfield::{mat_pow, mat_vec, multiplication_matrix, Subfield, SubfieldBasis};
use super::GaloisError;
use crate::affine::inverse_mod;
use crate::types::{CyclicString, IndexSet, Symbol};

/// `Lambda(alpha, B, v)` with `alpha = x^generator_exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSeq {
    pub chi: CyclicString,
    pub generator_exp: u64,
    pub basis: Vec<Elem>,
    pub v: Vec<Symbol>,
}

/// `Lambda_j = v . f_B(alpha^j)` for `0 <= j < q^n - 1`.
pub fn lambda_sequence(
    ctx: &FieldCtx,
    sub: &Subfield,
    generator_exp: u64,
    basis: &SubfieldBasis,
    v: &[Symbol],
) -> Result<LambdaSeq, GaloisError> {
    let n = ctx.order();
    if crate::gcd(generator_exp % n, n) != 1 && n > 1 {
        return Err(GaloisError::NotGenerator(generator_exp));
    }
    if v.len() != basis.dimension() || v.iter().all(|&c| c == 0) || v.iter().any(|&c| c >= sub.q()) {
        return Err(GaloisError::BadVector);
    }
    let symbols: Vec<Symbol> = (0..n).map(|j| sub.dot(v, &basis.coordinates(ctx.exp(j * generator_exp % n)))).collect();
    let chi = CyclicString::new(sub.q(), symbols)?;
    Ok(LambdaSeq { chi, generator_exp, basis: basis.elements().to_vec(), v: v.to_vec() })
}

/// `Psi(gamma)`: 0 for `gamma = 0`, otherwise `Phi(t)` for `gamma = alpha^t`,
/// read off the sequence.
pub fn psi_via_lambda(ctx: &FieldCtx, seq: &LambdaSeq, index_set: &IndexSet, gamma: Elem) -> Vec<Symbol> {
    let n = ctx.order();
    let Some(l) = ctx.log(gamma) else {
        return vec![0; index_set.len()];
    };
    let inv = inverse_mod(seq.generator_exp % n, n).unwrap_or(0);
    let t = (l as u128 * inv as u128 % n as u128) as u64;
    index_set.elements().iter().map(|&i| seq.chi.at((i % n + t) % n)).collect()
}

/// `Psi(gamma) = sum_j e_j v^T M^{i_j} f_B(gamma)` with `M` the matrix of
/// multiplication by `alpha` in `B`.
pub fn psi_via_matrix(
    ctx: &FieldCtx,
    sub: &Subfield,
    generator_exp: u64,
    basis: &SubfieldBasis,
    v: &[Symbol],
    index_set: &IndexSet,
    gamma: Elem,
) -> Vec<Symbol> {
    let m = multiplication_matrix(ctx, basis, ctx.exp(generator_exp));
    let f = basis.coordinates(gamma);
    index_set.elements().iter().map(|&i| sub.dot(v, &mat_vec(sub, &mat_pow(sub, &m, i), &f))).collect()
}
