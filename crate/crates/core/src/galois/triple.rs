use serde::{Deserialize, Serialize};

use super::field::FieldCtx;
use super::jacobi::jacobi_log;
use super::{extension_field, GaloisError};

/// Outcome of the Jacobi-logarithm criterion for `{i, j, k}` with `n = 3`.
///
/// `exceptional` uses the quantifier "for every generator exponent `m`";
/// `for_some_reading` records the weaker existential variant so callers can
/// see where the two differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleVerdict {
    pub exceptional: bool,
    /// `Q` divides one of the pairwise differences.
    pub divisibility: bool,
    pub for_all_reading: bool,
    pub for_some_reading: bool,
}

impl TripleVerdict {
    pub fn readings_differ(&self) -> bool {
        !self.divisibility && self.for_all_reading != self.for_some_reading
    }
}

/// Exceptionality of `{i, j, k}` (mod `q^3 - 1`) from the Jacobi logarithm
/// of the tabled generator, with `Q = q^2 + q + 1`.
pub fn exceptional_triple(i: u64, j: u64, k: u64, q: u32) -> Result<TripleVerdict, GaloisError> {
    let (ctx, _) = extension_field(q, 3)?;
    triple_in(&ctx, q, i, j, k)
}

pub(crate) fn triple_in(ctx: &FieldCtx, q: u32, i: u64, j: u64, k: u64) -> Result<TripleVerdict, GaloisError> {
    let n = ctx.order();
    let (i, j, k) = (i % n, j % n, k % n);
    if i == j || j == k || i == k {
        return Err(GaloisError::NotDistinct(n));
    }
    let big_q = q as u64 * q as u64 + q as u64 + 1;
    let dji = (j + n - i) % n;
    let dki = (k + n - i) % n;
    let dkj = (k + n - j) % n;
    let divisibility = dji.is_multiple_of(big_q) || dki.is_multiple_of(big_q) || dkj.is_multiple_of(big_q);
    let table = jacobi_log(ctx);
    let holds = |m: u64| {
        let target = (m as u128 * dki as u128 % n as u128) as u64 % big_q;
        let step = (m as u128 * dji as u128 % n as u128) as u64;
        (0..q as u64 - 1).any(|a| match table.eval((a * big_q + step) % n) {
            Ok(l) => l % big_q == target,
            Err(_) => false,
        })
    };
    let gens = ctx.generator_exponents();
    let for_all_reading = gens.iter().all(|&m| holds(m));
    let for_some_reading = gens.iter().any(|&m| holds(m));
    Ok(TripleVerdict { exceptional: divisibility || for_all_reading, divisibility, for_all_reading, for_some_reading })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::is_exceptional_bruteforce;
    use crate::types::IndexSet;

    #[test]
    fn examples() {
        // For q = 2 the multiples of Q = 7 collapse mod 7, so (0, Q, 2Q) is
        // not a valid input there.
        assert_eq!(exceptional_triple(0, 7, 14, 2), Err(GaloisError::NotDistinct(7)));
        let v = exceptional_triple(0, 13, 1, 3).unwrap();
        assert!(v.divisibility && v.exceptional);
        let v = exceptional_triple(0, 1, 2, 2).unwrap();
        assert!(!v.exceptional);
        assert_eq!(exceptional_triple(0, 1, 8, 2), Err(GaloisError::NotDistinct(7)));
    }

    #[test]
    fn agrees_with_bruteforce_binary() {
        let (ctx, _) = extension_field(2, 3).unwrap();
        for j in 1..7u64 {
            for k in j + 1..7 {
                let v = triple_in(&ctx, 2, 0, j, k).unwrap();
                let set = IndexSet::new([0, j, k], 7).unwrap();
                let b = is_exceptional_bruteforce(&set, 2, 3).unwrap();
                assert_eq!(v.exceptional, b.is_exceptional(), "{{0,{j},{k}}}");
            }
        }
    }
}
