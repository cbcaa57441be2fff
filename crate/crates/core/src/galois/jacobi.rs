use super::field::FieldCtx;
use super::GaloisError;
use crate::affine::inverse_mod;

/// `L_alpha(t)` with `1 + alpha^t = alpha^{L_alpha(t)}`, defined on
/// `Z_N` minus the single point where `alpha^t = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiTable {
    order: u64,
    excluded: u64,
    values: Vec<u64>,
}

impl JacobiTable {
    /// The point where `1 + alpha^t = 0`: `N/2` in odd characteristic, 0 in
    /// characteristic 2.
    pub fn excluded(&self) -> u64 {
        self.excluded
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn eval(&self, t: u64) -> Result<u64, GaloisError> {
        let t = t % self.order;
        if t == self.excluded {
            return Err(GaloisError::ExcludedPoint(t));
        }
        Ok(self.values[t as usize])
    }
}

/// Jacobi logarithm for the tabled primitive element `x`.
pub fn jacobi_log(ctx: &FieldCtx) -> JacobiTable {
    jacobi_log_for(ctx, 1).expect("x is primitive")
}

/// Jacobi logarithm for the generator `alpha = x^generator_exp`.
pub fn jacobi_log_for(ctx: &FieldCtx, generator_exp: u64) -> Result<JacobiTable, GaloisError> {
    let order = ctx.order();
    let inv = inverse_mod(generator_exp % order, order)
        .filter(|_| order > 1 || generator_exp.is_multiple_of(order))
        .ok_or(GaloisError::NotGenerator(generator_exp))?;
    let inv = if order == 1 { 0 } else { inv };
    let excluded = if ctx.p() == 2 { 0 } else { order / 2 };
    let values = (0..order)
        .map(|t| {
            let s = ctx.add(1, ctx.exp(t * generator_exp % order));
            match ctx.log(s) {
                None => {
                    debug_assert_eq!(t, excluded);
                    u64::MAX
                }
                Some(l) => (l as u128 * inv as u128 % order as u128) as u64,
            }
        })
        .collect();
    Ok(JacobiTable { order, excluded, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_values() {
        let f = FieldCtx::build(2, 3).unwrap();
        let l = jacobi_log(&f);
        assert_eq!(l.eval(1), Ok(3));
        assert_eq!(l.excluded(), 0);
        assert_eq!(l.eval(0), Err(GaloisError::ExcludedPoint(0)));
        for t in 1..7 {
            let v = l.eval(t).unwrap();
            assert_ne!(v, 0);
            assert_eq!(f.add(1, f.exp(t)), f.exp(v));
        }
    }

    #[test]
    fn gf9_excludes_four() {
        let f = FieldCtx::build(3, 2).unwrap();
        let l = jacobi_log(&f);
        assert_eq!(l.excluded(), 4);
        assert_eq!(f.add(1, f.exp(4)), 0);
        assert!(l.eval(4).is_err());
        let other = jacobi_log_for(&f, 3).unwrap();
        // L_beta(a) = b iff L_alpha(a m) = b m for beta = alpha^m.
        for a in (0..8).filter(|&a| a != 4) {
            let b = other.eval(a).unwrap();
            assert_eq!(l.eval(a * 3).unwrap(), b * 3 % 8);
        }
        assert!(jacobi_log_for(&f, 2).is_err());
    }
}
