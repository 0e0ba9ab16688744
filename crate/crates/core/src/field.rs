//! Arithmetic in GF(q), q = p^m.
//!
//! Elements are encoded as integers `0..q` by packing base-p digits: the
//! digit of weight `p^i` is the coefficient of `x^i` in the residue modulo
//! the reduction polynomial. For `m = 1` this is the usual residue mod p.
//! Multiplication goes through exp/log tables built once at construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`FiniteField::new`].
pub const MAX_ORDER: u64 = 1 << 20;

/// Minimal-weight irreducible polynomials over GF(2), degrees 2..=20, encoded
/// as bit masks (bit i = coefficient of x^i). Among the polynomials of least
/// weight the numerically smallest is taken.
pub const GF2_REDUCTION: [u32; 19] = [
    0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b, 0x20009, 0x40009, 0x80027, 0x100009,
];

pub fn is_prime(n: u64) -> bool {
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

/// Splits `q` as `p^m` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Serializable description of a field: characteristic, degree and the
/// reduction polynomial coefficients (low degree first; empty for prime fields).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub poly: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct FieldKey {
    p: u32,
    m: u32,
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    poly: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

// Polynomials over GF(p) as coefficient vectors, low degree first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `b`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &c) in b.iter().enumerate() {
            let sub = (lead as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

/// True iff the monic polynomial `f` of degree m has no monic factor of degree
/// 1..=m/2, checked by trial division against every such factor.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn default_reduction(p: u32, m: u32) -> Vec<u32> {
    if p == 2 && (2..=20).contains(&m) {
        let mask = GF2_REDUCTION[(m - 2) as usize];
        return (0..=m).map(|i| (mask >> i) & 1).collect();
    }
    // first monic irreducible in increasing base-p encoding
    let base = (p as u64).pow(m);
    (0..base)
        .map(|low| {
            let mut f = digits(low, p, m as usize);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists")
}

impl FiniteField {
    /// Builds GF(p^m) with the default reduction polynomial.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::BadDegree(m));
        }
        let order = (p as u128).pow(m);
        if order > MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge { order: order.min(u64::MAX as u128) as u64, cap: MAX_ORDER });
        }
        let p = p as u32;
        let poly = if m == 1 { Vec::new() } else { default_reduction(p, m) };
        Self::with_reduction(p, m, poly)
    }

    /// Builds GF(q) for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, m)
    }

    /// Builds GF(p^m) over an explicit monic reduction polynomial, which is
    /// checked for irreducibility.
    pub fn with_reduction(p: u32, m: u32, poly: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m > 1 {
            if poly.len() != m as usize + 1 || poly[m as usize] != 1 || poly.iter().any(|&c| c >= p) {
                return Err(Error::InvalidParameter(format!(
                    "reduction polynomial must be monic of degree {m} over GF({p})"
                )));
            }
            if !is_irreducible(&poly, p) {
                return Err(Error::InvalidParameter("reduction polynomial is reducible".into()));
            }
        }
        let q = p.pow(m);
        let mut f = FiniteField { p, m, q, poly, exp: Vec::new(), log: Vec::new() };
        f.build_tables();
        Ok(f)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let m = self.m as usize;
        let da = digits(a as u64, self.p, m);
        let db = digits(b as u64, self.p, m);
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let r = poly_rem(&prod, &self.poly, self.p);
        self.pack(&r)
    }

    fn pack(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let mut generator = 1;
        if q > 2 {
            generator = (2..q)
                .find(|&g| factors.iter().all(|&r| self.slow_pow(g, order / r) != 1))
                .expect("the multiplicative group is cyclic");
        }
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = self.slow_mul(x, generator);
        }
        self.exp = exp;
        self.log = log;
    }

    fn slow_pow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn reduction(&self) -> &[u32] {
        &self.poly
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, m: self.m, poly: self.poly.clone() }
    }

    fn key(&self) -> FieldKey {
        FieldKey { p: self.p, m: self.m }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b, mut out, mut w) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * w;
            a /= self.p;
            b /= self.p;
            w *= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut w) = (a, 0, 1);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * w;
            a /= self.p;
            w *= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let e = self.log[a as usize] + self.log[b as usize];
        self.exp[(if e >= n { e - n } else { e }) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    pub fn vector(&self, coords: Vec<u32>) -> Result<FieldVector> {
        if let Some(&bad) = coords.iter().find(|&&c| c >= self.q) {
            return Err(Error::ElementOutOfRange { value: bad, order: self.q });
        }
        Ok(FieldVector { key: self.key(), coords })
    }

    /// `Σ u_i v_i`.
    pub fn inner_product(&self, u: &FieldVector, v: &FieldVector) -> Result<u32> {
        if u.key != self.key() || v.key != self.key() {
            return Err(Error::FieldMismatch);
        }
        if u.len() != v.len() {
            return Err(Error::LengthMismatch { left: u.len(), right: v.len() });
        }
        Ok(self.dot(&u.coords, &v.coords))
    }

    /// Unchecked inner product on raw coordinate slices of equal length.
    #[inline]
    pub fn dot(&self, u: &[u32], v: &[u32]) -> u32 {
        u.iter().zip(v).fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }
}

/// A fixed-length vector of field elements tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldVector {
    key: FieldKey,
    coords: Vec<u32>,
}

impl FieldVector {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, field: &FiniteField, other: &FieldVector) -> Result<FieldVector> {
        if self.key != other.key || self.key != field.key() {
            return Err(Error::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| field.add(a, b)).collect();
        Ok(FieldVector { key: self.key, coords })
    }
}
