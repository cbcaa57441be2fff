use super::field::{Elem, FieldCtx};
use super::GaloisError;
use crate::types::Symbol;

/// The subfield `F_q` of a field `F_{q^n}`, with its elements numbered
/// `0..q` in increasing order of their encodings (so symbol 0 is the zero
/// element and symbol 1 is the unit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subfield {
    q: u32,
    n: u32,
    elements: Vec<Elem>,
    symbol_of: Vec<u32>,
    add: Vec<Symbol>,
    mul: Vec<Symbol>,
}

const NOT_IN_SUBFIELD: u32 = u32::MAX;

impl Subfield {
    /// `F_q` inside `ctx`, where `ctx` has `q^n` elements.
    pub fn new(ctx: &FieldCtx, q: u32) -> Result<Self, GaloisError> {
        let (p, k) = super::field::prime_power(q as u64).ok_or(GaloisError::NotPrimePower(q))?;
        if p != ctx.p() || !ctx.m().is_multiple_of(k) {
            return Err(GaloisError::NotSubfield { q, size: ctx.size() });
        }
        let n = ctx.m() / k;
        let step = ctx.order() / (q as u64 - 1);
        let mut elements: Vec<Elem> = std::iter::once(0).chain((0..q as u64 - 1).map(|j| ctx.exp(j * step))).collect();
        elements.sort_unstable();
        let mut symbol_of = vec![NOT_IN_SUBFIELD; ctx.size() as usize];
        for (s, &e) in elements.iter().enumerate() {
            symbol_of[e as usize] = s as u32;
        }
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                add[a * qs + b] = symbol_of[ctx.add(elements[a], elements[b]) as usize];
                mul[a * qs + b] = symbol_of[ctx.mul(elements[a], elements[b]) as usize];
            }
        }
        Ok(Self { q, n, elements, symbol_of, add, mul })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Degree of the big field over this subfield.
    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn element(&self, s: Symbol) -> Elem {
        self.elements[s as usize]
    }

    pub fn symbol(&self, e: Elem) -> Option<Symbol> {
        self.symbol_of.get(e as usize).copied().filter(|&s| s != NOT_IN_SUBFIELD)
    }

    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        self.add[(a * self.q + b) as usize]
    }

    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: Symbol) -> Symbol {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn sub(&self, a: Symbol, b: Symbol) -> Symbol {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Symbol) -> Option<Symbol> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    pub fn dot(&self, a: &[Symbol], b: &[Symbol]) -> Symbol {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Rank of the rows over `F_q`.
    pub fn rank(&self, rows: &[Vec<Symbol>]) -> usize {
        self.echelon(rows).0
    }

    /// A non-zero `c` with `sum_j c_j rows[j] = 0`, if the rows are
    /// dependent.
    pub fn null_combination(&self, rows: &[Vec<Symbol>]) -> Option<Vec<Symbol>> {
        let r = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        // Row-reduce the augmented matrix [rows | identity]; a zero left part
        // exposes the combination on the right.
        let augmented: Vec<Vec<Symbol>> = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut v = row.clone();
                v.extend((0..r).map(|j| u32::from(i == j)));
                v
            })
            .collect();
        let (rank, reduced) = self.echelon_limited(&augmented, width);
        (rank < r).then(|| reduced[rank][width..].to_vec())
    }

    fn echelon(&self, rows: &[Vec<Symbol>]) -> (usize, Vec<Vec<Symbol>>) {
        let width = rows.first().map_or(0, Vec::len);
        self.echelon_limited(rows, width)
    }

    /// Gaussian elimination pivoting only in the first `width` columns.
    fn echelon_limited(&self, rows: &[Vec<Symbol>], width: usize) -> (usize, Vec<Vec<Symbol>>) {
        let mut m: Vec<Vec<Symbol>> = rows.to_vec();
        let mut rank = 0;
        for col in 0..width {
            let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = self.inv(m[rank][col]).unwrap();
            let pivot_row: Vec<Symbol> = m[rank].iter().map(|&x| self.mul(x, inv)).collect();
            m[rank] = pivot_row.clone();
            for i in 0..m.len() {
                if i != rank && m[i][col] != 0 {
                    let f = m[i][col];
                    for (x, &pv) in m[i].iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(f, pv));
                    }
                }
            }
            rank += 1;
        }
        (rank, m)
    }
}

/// A basis `B = {b_1, ..., b_n}` of `F_{q^n}` over `F_q` with the
/// coordinate map `f_B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfieldBasis {
    basis: Vec<Elem>,
    /// Field element -> radix-q code of its coordinate vector.
    coords: Vec<u32>,
    q: u32,
}

impl SubfieldBasis {
    /// Builds `f_B` by enumerating all `q^n` combinations; fails when `B`
    /// is dependent.
    pub fn new(ctx: &FieldCtx, sub: &Subfield, basis: Vec<Elem>) -> Result<Self, GaloisError> {
        let n = sub.degree() as usize;
        let q = sub.q();
        if basis.len() != n || basis.iter().any(|&b| b >= ctx.size()) {
            return Err(GaloisError::BasisSize { got: basis.len(), expected: n });
        }
        let total = ctx.size() as usize;
        let mut coords = vec![u32::MAX; total];
        let mut c = vec![0u32; n];
        for code in 0..total as u32 {
            let mut rest = code;
            for j in (0..n).rev() {
                c[j] = rest % q;
                rest /= q;
            }
            let e = c.iter().zip(&basis).fold(0, |acc, (&cj, &bj)| ctx.add(acc, ctx.mul(sub.element(cj), bj)));
            if coords[e as usize] != u32::MAX {
                return Err(GaloisError::DependentBasis);
            }
            coords[e as usize] = code;
        }
        Ok(Self { basis, coords, q })
    }

    /// `E = {alpha^0, ..., alpha^{n-1}}` for the generator `alpha = x^gen`.
    pub fn elementary(ctx: &FieldCtx, sub: &Subfield, generator_exp: u64) -> Result<Self, GaloisError> {
        let basis = (0..sub.degree() as u64).map(|j| ctx.exp(j * generator_exp)).collect();
        Self::new(ctx, sub, basis)
    }

    pub fn elements(&self) -> &[Elem] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `f_B(gamma)` as symbols.
    pub fn coordinates(&self, gamma: Elem) -> Vec<Symbol> {
        let n = self.basis.len();
        let mut code = self.coords[gamma as usize];
        let mut out = vec![0; n];
        for j in (0..n).rev() {
            out[j] = code % self.q;
            code /= self.q;
        }
        out
    }

    /// Inverse of [`Self::coordinates`].
    pub fn element_of(&self, ctx: &FieldCtx, sub: &Subfield, coords: &[Symbol]) -> Elem {
        coords.iter().zip(&self.basis).fold(0, |acc, (&c, &b)| ctx.add(acc, ctx.mul(sub.element(c), b)))
    }
}

/// Matrix of multiplication by `gamma` in the basis `B`: column `j` is
/// `f_B(gamma b_j)`, so `M f_B(x) = f_B(gamma x)`.
pub fn multiplication_matrix(ctx: &FieldCtx, basis: &SubfieldBasis, gamma: Elem) -> Vec<Vec<Symbol>> {
    let n = basis.dimension();
    let cols: Vec<Vec<Symbol>> = basis.elements().iter().map(|&b| basis.coordinates(ctx.mul(gamma, b))).collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

pub fn mat_vec(sub: &Subfield, m: &[Vec<Symbol>], v: &[Symbol]) -> Vec<Symbol> {
    m.iter().map(|row| sub.dot(row, v)).collect()
}

pub fn mat_mul(sub: &Subfield, a: &[Vec<Symbol>], b: &[Vec<Symbol>]) -> Vec<Vec<Symbol>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n).map(|j| row.iter().zip(b).fold(0, |acc, (&x, brow)| sub.add(acc, sub.mul(x, brow[j])))).collect()
        })
        .collect()
}

pub fn mat_pow(sub: &Subfield, m: &[Vec<Symbol>], mut e: u64) -> Vec<Vec<Symbol>> {
    let n = m.len();
    let mut result: Vec<Vec<Symbol>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    let mut base = m.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(sub, &result, &base);
        }
        base = mat_mul(sub, &base, &base);
        e >>= 1;
    }
    result
}
