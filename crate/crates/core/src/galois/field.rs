use super::GaloisError;
use crate::is_prime;

/// An element of `F_{p^m}`, encoded as the base-p number whose i-th digit
/// (least significant first) is the coefficient of `x^i`.
pub type Elem = u32;

/// Largest field the crate builds tables for.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;

/// `F_{p^m} = F_p[x] / (g)` with exp/log tables for the primitive element
/// `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    size: u32,
    /// Coefficients of the monic modulus, lowest degree first, length m+1.
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

/// `q = p^k` with `p` prime, or `None`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

impl FieldCtx {
    /// `F_{p^m}` modulo the first primitive polynomial, ordering monic
    /// polynomials by the integer encoding of their lower coefficients.
    pub fn build(p: u32, m: u32) -> Result<Self, GaloisError> {
        let size = Self::check_size(p, m)?;
        for lower in 0..size {
            let mut modulus = digits(lower, p, m);
            modulus.push(1);
            if let Some(exp) = power_table(p, m, &modulus) {
                return Ok(Self::from_exp(p, m, modulus, exp));
            }
        }
        unreachable!("a primitive polynomial of every degree exists")
    }

    /// `F_{p^m}` modulo a caller-chosen monic polynomial (coefficients lowest
    /// degree first, leading 1 included), which must be primitive.
    pub fn with_modulus(p: u32, m: u32, modulus: &[u32]) -> Result<Self, GaloisError> {
        Self::check_size(p, m)?;
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(GaloisError::BadModulus);
        }
        match power_table(p, m, modulus) {
            Some(exp) => Ok(Self::from_exp(p, m, modulus.to_vec(), exp)),
            None if is_irreducible(p, modulus) => Err(GaloisError::NotPrimitive),
            None => Err(GaloisError::NotIrreducible),
        }
    }

    fn check_size(p: u32, m: u32) -> Result<u32, GaloisError> {
        if !is_prime(p as u64) {
            return Err(GaloisError::NotPrime(p));
        }
        if m == 0 {
            return Err(GaloisError::BadModulus);
        }
        match (p as u64).checked_pow(m) {
            Some(s) if s <= MAX_FIELD_SIZE => Ok(s as u32),
            _ => Err(GaloisError::TooLarge { p, m }),
        }
    }

    fn from_exp(p: u32, m: u32, modulus: Vec<u32>, exp: Vec<Elem>) -> Self {
        let size = p.pow(m);
        let mut log = vec![u32::MAX; size as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        Self { p, m, size, modulus, exp, log }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of the multiplicative group.
    pub fn order(&self) -> u64 {
        self.size as u64 - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Integer encoding of the modulus' lower coefficients.
    pub fn modulus_code(&self) -> u32 {
        self.modulus[..self.m as usize].iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn exp_table(&self) -> &[Elem] {
        &self.exp
    }

    /// `x^(t mod N)`.
    pub fn exp(&self, t: u64) -> Elem {
        self.exp[(t % self.order()) as usize]
    }

    /// Discrete log base `x`; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u64> {
        (a != 0).then(|| self.log[a as usize] as u64)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (p, mut a, mut b) = (self.p, a, b);
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        let (p, mut a) = (self.p, a);
        let (mut out, mut place) = (0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Multiplies by a prime-field scalar `c` in `0..p`.
    pub fn scale(&self, c: u32, a: Elem) -> Elem {
        (0..c % self.p).fold(0, |acc, _| self.add(acc, a))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.order();
        self.exp[((self.log[a as usize] as u64 + self.log[b as usize] as u64) % n) as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        self.log(a).map(|l| self.exp((self.order() - l) % self.order()))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        match self.log(a) {
            None => 0,
            Some(l) => self.exp((l as u128 * e as u128 % self.order() as u128) as u64),
        }
    }

    /// Multiplicative order of a non-zero element.
    pub fn element_order(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)?;
        Some(self.order() / crate::gcd(l, self.order()))
    }

    /// Generators of the multiplicative group as exponents `m` of `x`, i.e.
    /// all `m` coprime to `N`, increasing.
    pub fn generator_exponents(&self) -> Vec<u64> {
        let n = self.order();
        (1..=n).filter(|&k| crate::gcd(k, n) == 1).map(|k| k % n).collect()
    }
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

/// Powers `x^0, ..., x^{N-1}` modulo `g` when `x` has order exactly
/// `N = p^m - 1`; otherwise `None`.
fn power_table(p: u32, m: u32, modulus: &[u32]) -> Option<Vec<Elem>> {
    let n = (p as u64).pow(m) - 1;
    let mut exp = Vec::with_capacity(n as usize);
    let mut cur = vec![0u32; m as usize];
    cur[0] = 1 % p;
    if m == 1 {
        // F_p: x is the residue -g_0.
        let x = (p - modulus[0]) % p;
        let mut e = 1u32;
        for i in 0..n {
            if i > 0 && e == 1 {
                return None;
            }
            exp.push(e);
            e = (e as u64 * x as u64 % p as u64) as u32;
        }
        return (e == 1).then_some(exp);
    }
    for i in 0..n {
        let code = cur.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        if i > 0 && code == 1 {
            return None;
        }
        exp.push(code);
        // Multiply by x: shift up and reduce the overflow coefficient.
        let top = cur[m as usize - 1];
        for j in (1..m as usize).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..m as usize {
                cur[j] = ((cur[j] as u64 + p as u64 * p as u64 - top as u64 * modulus[j] as u64 % p as u64) % p as u64)
                    as u32;
            }
        }
    }
    let back = cur.iter().rev().fold(0u32, |acc, &c| acc * p + c);
    (back == 1).then_some(exp)
}

/// Irreducibility over `F_p` by trial division with monic polynomials of
/// degree up to `deg / 2`.
pub(crate) fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for lower in 0..count {
            let mut divisor = digits(lower as u32, p, d as u32);
            divisor.push(1);
            if poly_rem(p, poly, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `a` by monic `b` over `F_p`.
fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (j, &bc) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p * p - lead * bc % p) % p;
            }
        }
        r.pop();
    }
    r
}
