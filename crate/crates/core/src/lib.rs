//! Generalized de Bruijn cycles.
//!
//! A q-ary *I-cycle* for an index set `I = {i_1 < ... < i_n}` is a cyclic
//! string `chi: Z_{q^n} -> {0, ..., q-1}` in which every q-ary word of length
//! `n` appears as `(chi(i_1 + t), ..., chi(i_n + t))` for some translate `t`.
//! The reduced variant (an *I\*-cycle*) lives on `Z_{q^n - 1}` and may skip
//! the all-zeroes word.
//!
//! The crate is organised around a single independent checker,
//! [`verify::verify_cover`], through which every construction in the other
//! modules is routed before it is handed back to the caller:
//!
//! * [`search`] decides validity of an index set by pruned exhaustive search
//!   and enumerates affine classes ("atlases").
//! * [`lift`] builds `AP(n, q)`-cycles by lifting de Bruijn cycles through the
//!   difference quotient, and doubles `AP(3, d)`-cycles to alphabet `2q`.
//! * [`galois`] generates reduced cycles from finite-field sequences and
//!   classifies index sets as ordinary or exceptional.
//! * [`decomp`] decomposes the complete loop digraph into closed trails of
//!   equal length, which is equivalent to `{0, d}`-cycles.
//! * [`approx`] builds approximate cycles (longer strings that contain every
//!   word) by random sampling plus deterministic patching.

pub mod affine;
pub mod approx;
pub mod debruijn;
pub mod decomp;
pub mod euler;
pub mod galois;
pub mod lift;
mod pack;
pub mod search;
pub mod text;
pub mod types;
pub mod verify;

pub use affine::{canonicalize_affine, AffineClass};
pub use types::{CycleParams, CyclicString, IndexSet, ParamError, Symbol, Word};
pub use verify::{verify_cover, window, CoverageReport, VerifyError};

/// Upper bound on `q^n` for every dense table in the crate.
pub const DESK_SCALE: u64 = 1 << 32;

/// `base^exp`, or `None` when the result exceeds [`DESK_SCALE`].
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let v = base.checked_pow(exp)?;
    (v <= DESK_SCALE).then_some(v)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
