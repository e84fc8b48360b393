//! Exact arithmetic in GF(p^n).
//!
//! Elements are carried as the integer encoding of their coefficient vector
//! `(c_0, ..., c_{n-1})` in little-endian base p, with respect to the power
//! basis of a root of the field's modulus. Multiplication and inversion go
//! through discrete exp/log tables over a primitive element whenever
//! `q <= 4096`; larger fields fall back to polynomial arithmetic.

mod ext;
pub(crate) mod polymod;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ext::{ExtCtx, ExtElem, DEFAULT_EXT_MAX_Q};

/// Default upper bound on `q` accepted by [`FieldCtx::new`].
pub const DEFAULT_MAX_Q: u64 = 1024;

const TABLE_MAX_Q: u32 = 4096;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serialized form of a field: `{"p": .., "n": .., "modulus": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug)]
struct Tables {
    // exp has length 2(q-1) so a product of two logs indexes it directly.
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    tables: Option<Tables>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

/// Write `q` as `p^n`, if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut n = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        n += 1;
    }
    Some((p as u32, n))
}

/// The monic irreducible of degree n over GF(p) with the smallest encoding.
/// Degree one uses the modulus `x`.
pub fn canonical_modulus(p: u32, n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(n);
    for enc in 0..count {
        let mut m = polymod::digits(p, enc, n as usize);
        m.push(1);
        if m[0] != 0 && polymod::is_irreducible(p, &m) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

impl FieldCtx {
    /// GF(p^n) with the canonical modulus and the default size bound.
    pub fn new(p: u32, n: u32) -> Result<Self> {
        Self::with_bound(p, n, DEFAULT_MAX_Q)
    }

    pub fn with_bound(p: u32, n: u32, max_q: u64) -> Result<Self> {
        check_size(p, n, max_q)?;
        Self::build(p, canonical_modulus(p, n))
    }

    /// GF(p^n) over an explicit monic irreducible modulus of degree n.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        let n = (modulus.len() - 1) as u32;
        check_size(p, n, DEFAULT_MAX_Q)?;
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(format!("coefficient out of range for p = {p}")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if n == 1 {
            if modulus != [0, 1] {
                return Err(Error::InvalidModulus("degree-one fields use the modulus x".into()));
            }
        } else if !polymod::is_irreducible(p, modulus) {
            return Err(Error::InvalidModulus(format!("{modulus:?} is reducible over GF({p})")));
        }
        Self::build(p, modulus.to_vec())
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self> {
        let ctx = Self::with_modulus(desc.p, &desc.modulus)?;
        if ctx.n != desc.n {
            return Err(Error::InvalidModulus(format!(
                "descriptor degree {} disagrees with modulus degree {}",
                desc.n, ctx.n
            )));
        }
        Ok(ctx)
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let n = (modulus.len() - 1) as u32;
        let q = p.pow(n);
        let mut ctx = FieldCtx { p, n, q, modulus, primitive: Elem::ONE, tables: None };
        ctx.primitive = ctx.search_primitive();
        if q <= TABLE_MAX_Q {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn search_primitive(&self) -> Elem {
        if self.q == 2 {
            return Elem::ONE;
        }
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        (1..self.q)
            .map(Elem)
            .find(|&g| factors.iter().all(|&r| self.pow(g, order / r) != Elem::ONE))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let q1 = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * q1];
        let mut log = vec![0u32; self.q as usize];
        let mut x = Elem::ONE;
        for i in 0..q1 {
            exp[i] = x.0;
            exp[i + q1] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, self.primitive);
        }
        Tables { exp, log }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, n: self.n, modulus: self.modulus.clone() }
    }

    pub fn is_prime_field(&self) -> bool {
        self.n == 1
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// Checked conversion from an integer encoding.
    pub fn elem(&self, value: u32) -> Result<Elem> {
        if value < self.q {
            Ok(Elem(value))
        } else {
            Err(Error::FieldMismatch(format!("{value} is not an element of GF({})", self.q)))
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    /// Embedding of the prime field element `k mod p`.
    pub fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.n == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.n == 1 {
            return Elem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            let d = (self.p - x % self.p) % self.p;
            out += d * place;
            place *= self.p;
            x /= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        if self.n == 1 {
            return Elem((a.0 as u64 * b.0 as u64 % self.p as u64) as u32);
        }
        let n = self.n as usize;
        let da = polymod::digits(self.p, a.0 as u64, n);
        let db = polymod::digits(self.p, b.0 as u64, n);
        let prod = polymod::mul(self.p, &da, &db);
        let r = polymod::rem_monic(self.p, &prod, &self.modulus);
        self.encode_digits(&r)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as usize;
                let q1 = (self.q - 1) as usize;
                Elem(t.exp[(q1 - l) % q1])
            }
            None => self.pow(a, (self.q - 2) as u64),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with the convention `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        if let Some(t) = &self.tables {
            let q1 = (self.q - 1) as u64;
            let l = t.log[a.0 as usize] as u64;
            return Elem(t.exp[((l * (e % q1)) % q1) as usize]);
        }
        let mut base = a;
        let mut acc = Elem::ONE;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// The generator of GF(q)* used for the exp/log tables; it has order q-1.
    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let mut order = (self.q - 1) as u64;
        for r in prime_factors(order) {
            while order.is_multiple_of(r) && self.pow(a, order / r) == Elem::ONE {
                order /= r;
            }
        }
        Ok(order)
    }

    /// The subfield GF(p^m) as `{ x : x^(p^m) = x }`.
    pub fn subfield_elements(&self, m: u32) -> Result<BTreeSet<Elem>> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(Error::NotADivisor { m, n: self.n });
        }
        let pm = (self.p as u64).pow(m);
        Ok(self.elements().filter(|&x| self.pow(x, pm) == x).collect())
    }

    pub fn digits(&self, a: Elem) -> Vec<u32> {
        polymod::digits(self.p, a.0 as u64, self.n as usize)
    }

    fn encode_digits(&self, d: &[u32]) -> Elem {
        Elem(d.iter().rev().fold(0u32, |acc, &c| acc * self.p + c))
    }
}

fn check_size(p: u32, n: u32, max_q: u64) -> Result<u64> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if n == 0 {
        return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
    }
    let q = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
    if q > max_q || q > u32::MAX as u64 {
        return Err(Error::FieldTooLarge { q, bound: max_q });
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent check: no monic polynomial with smaller encoding is
    /// irreducible, found by brute-force root and quadratic-factor search.
    fn brute_force_smallest(p: u32, n: u32) -> Vec<u32> {
        assert!(n <= 4);
        let eval = |m: &[u32], x: u32| m.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64);
        let count = (p as u64).pow(n);
        for enc in 0..count {
            let mut m = polymod::digits(p, enc, n as usize);
            m.push(1);
            let has_root = (0..p).any(|x| eval(&m, x) == 0);
            if has_root {
                continue;
            }
            if n == 4 {
                // no roots: reducible only as a product of two quadratics
                let mut splits = false;
                for a in 0..p * p {
                    for b in 0..p * p {
                        let qa = vec![a % p, a / p, 1];
                        let qb = vec![b % p, b / p, 1];
                        if polymod::mul(p, &qa, &qb) == m {
                            splits = true;
                        }
                    }
                }
                if splits {
                    continue;
                }
            }
            return m;
        }
        unreachable!()
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(FieldCtx::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FieldCtx::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        let gf16 = FieldCtx::new(2, 4).unwrap();
        assert_eq!(gf16.modulus(), brute_force_smallest(2, 4).as_slice());
        assert_eq!(gf16.modulus(), &[1, 1, 0, 0, 1]);
        for (p, n) in [(2, 2), (2, 3), (3, 2), (5, 2), (3, 3), (7, 2)] {
            assert_eq!(canonical_modulus(p, n), brute_force_smallest(p, n), "GF({p}^{n})");
        }
    }

    #[test]
    fn deterministic_construction() {
        assert_eq!(FieldCtx::new(5, 2).unwrap(), FieldCtx::new(5, 2).unwrap());
        assert_eq!(FieldCtx::new(2, 6).unwrap().modulus(), FieldCtx::new(2, 6).unwrap().modulus());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldCtx::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(FieldCtx::new(2, 11), Err(Error::FieldTooLarge { .. })));
        assert!(FieldCtx::with_bound(2, 11, 4096).is_ok());
        assert!(matches!(FieldCtx::with_modulus(3, &[2, 0, 1]), Err(Error::InvalidModulus(_))));
    }

    #[test]
    fn small_identities() {
        let gf2 = FieldCtx::new(2, 1).unwrap();
        assert_eq!(gf2.add(Elem::ONE, Elem::ONE), Elem::ZERO);
        assert_eq!(gf2.primitive_element(), Elem::ONE);

        let gf9 = FieldCtx::new(3, 2).unwrap();
        for a in gf9.elements().skip(1) {
            assert_eq!(gf9.pow(a, 8), Elem::ONE);
            assert_eq!(gf9.mul(a, gf9.inv(a).unwrap()), Elem::ONE);
        }
        assert!(matches!(gf9.inv(Elem::ZERO), Err(Error::ZeroInverse)));
        let g = gf9.primitive_element();
        assert_ne!(gf9.pow(g, 4), Elem::ONE);
        assert_eq!(gf9.pow(g, 8), Elem::ONE);
    }

    #[test]
    fn three_is_primitive_mod_seven() {
        let gf7 = FieldCtx::new(7, 1).unwrap();
        let powers: Vec<u32> = (1..=6).map(|k| gf7.pow(Elem(3), k).0).collect();
        assert_eq!(powers, vec![3, 2, 6, 4, 5, 1]);
        assert_eq!(gf7.order(Elem(3)).unwrap(), 6);
        assert_eq!(gf7.order(gf7.primitive_element()).unwrap(), 6);
    }

    #[test]
    fn table_and_slow_paths_agree() {
        for (p, n) in [(2, 4), (3, 2), (5, 2), (7, 1), (2, 5)] {
            let f = FieldCtx::new(p, n).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                }
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = FieldCtx::with_bound(2, 13, 1 << 13).unwrap();
        assert!(!f.has_tables());
        let g = f.primitive_element();
        assert_eq!(f.order(g).unwrap(), 8191);
        let x = Elem(1234);
        assert_eq!(f.mul(x, f.inv(x).unwrap()), Elem::ONE);
    }

    #[test]
    fn subfields() {
        let gf9 = FieldCtx::new(3, 2).unwrap();
        let prime = gf9.subfield_elements(1).unwrap();
        assert_eq!(prime, [Elem(0), Elem(1), Elem(2)].into_iter().collect());

        let gf16 = FieldCtx::new(2, 4).unwrap();
        let expected: BTreeSet<Elem> = gf16.elements().filter(|&x| gf16.pow(x, 4) == x).collect();
        let sub = gf16.subfield_elements(2).unwrap();
        assert_eq!(sub.len(), 4);
        assert_eq!(sub, expected);
        for &a in &sub {
            for &b in &sub {
                assert!(sub.contains(&gf16.add(a, b)));
                assert!(sub.contains(&gf16.mul(a, b)));
            }
        }

        let gf4 = FieldCtx::new(2, 2).unwrap();
        assert_eq!(gf4.subfield_elements(2).unwrap().len(), 4);
        assert!(matches!(gf16.subfield_elements(3), Err(Error::NotADivisor { m: 3, n: 4 })));
    }

    #[test]
    fn frobenius_is_a_field_automorphism() {
        for (p, n) in [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (2, 6), (7, 2)] {
            let f = FieldCtx::new(p, n).unwrap();
            if f.q() > 64 {
                continue;
            }
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn descriptor_round_trip() {
        let f = FieldCtx::new(5, 2).unwrap();
        let json = serde_json::to_string(&f.descriptor()).unwrap();
        assert_eq!(json, r#"{"p":5,"n":2,"modulus":[2,0,1]}"#);
        let back: FieldDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(FieldCtx::from_descriptor(&back).unwrap(), f);
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_factors(63), vec![3, 7]);
    }
}
