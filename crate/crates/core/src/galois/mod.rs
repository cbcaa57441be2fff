//! Finite-field constructions of reduced cycles and the ordinary/exceptional
//! classification of index sets.
//!
//! For a generator `alpha` of `F_{q^n}^*`, a basis `B` of `F_{q^n}` over
//! `F_q` and a non-zero `v` in `F_q^n`, the string
//! `Lambda_j = v . f_B(alpha^j)` (`0 <= j < q^n - 1`) contains every non-zero
//! word on translates of `I` whenever the powers `alpha^{i_j}` are linearly
//! independent over `F_q`. An index set is *exceptional* when no generator
//! gives independent powers, and *ordinary* otherwise.

mod cache;
mod exceptional;
mod field;
mod jacobi;
mod lambda;
mod subfield;
mod triple;

use thiserror::Error;

pub use cache::{field_from_text, field_to_text, FieldCache, FieldTableError};
pub use exceptional::{
    build_reduced_cycle, build_reduced_cycle_in, classify_in, is_exceptional_bruteforce, min_poly,
    primitive_polynomials, two_element_ordinary, verify_exceptional, verify_ordinary, ExceptionalVerdict,
    ExceptionalWitness, OrdinaryWitness,
};
pub use field::{prime_power, Elem, FieldCtx, MAX_FIELD_SIZE};
pub use jacobi::{jacobi_log, jacobi_log_for, JacobiTable};
pub use lambda::{lambda_sequence, psi_via_lambda, psi_via_matrix, LambdaSeq};
pub use subfield::{mat_mul, mat_pow, mat_vec, multiplication_matrix, Subfield, SubfieldBasis};
pub use triple::{exceptional_triple, TripleVerdict};

use crate::types::ParamError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field of size {p}^{m} exceeds desk scale")]
    TooLarge { p: u32, m: u32 },
    #[error("modulus must be monic of the stated degree with coefficients below p")]
    BadModulus,
    #[error("modulus is reducible")]
    NotIrreducible,
    #[error("modulus is irreducible but x is not a primitive element")]
    NotPrimitive,
    #[error("F_{q} is not a subfield of the field with {size} elements")]
    NotSubfield { q: u32, size: u32 },
    #[error("basis has {got} elements, expected {expected}")]
    BasisSize { got: usize, expected: usize },
    #[error("basis elements are linearly dependent")]
    DependentBasis,
    #[error("weight vector must be non-zero and of length n")]
    BadVector,
    #[error("x^{0} is not a generator of the multiplicative group")]
    NotGenerator(u64),
    #[error("index set is exceptional for this alphabet")]
    ExceptionalInput,
    #[error("no primitive polynomial produced a verified reduced cycle")]
    ExhaustedPolynomials,
    #[error("Jacobi logarithm is undefined at {0}")]
    ExcludedPoint(u64),
    #[error("indices must be pairwise distinct modulo {0}")]
    NotDistinct(u64),
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// `F_{q^n}` together with its subfield `F_q`.
pub fn extension_field(q: u32, n: u32) -> Result<(FieldCtx, Subfield), GaloisError> {
    let (p, k) = prime_power(q as u64).ok_or(GaloisError::NotPrimePower(q))?;
    if n == 0 {
        return Err(ParamError::EmptyWindow.into());
    }
    let m = k.checked_mul(n).ok_or(GaloisError::TooLarge { p, m: u32::MAX })?;
    let ctx = FieldCtx::build(p, m)?;
    let sub = Subfield::new(&ctx, q)?;
    Ok((ctx, sub))
}
