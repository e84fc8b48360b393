//! The cubic extension GF(q^3) over a base field GF(q).
//!
//! Elements are coordinate triples over the basis `{1, b, b^2}` where `b` is a
//! root of the cubic modulus. Reading those coordinates as homogeneous
//! coordinates identifies `GF(q^3)* / GF(q)*` with the points of PG(2,q).

use std::sync::Arc;

use super::{prime_factors, Elem, FieldCtx};
use crate::error::{Error, Result};

/// Default upper bound on the base field order for [`ExtCtx::new`].
pub const DEFAULT_EXT_MAX_Q: u32 = 128;

pub type ExtElem = [Elem; 3];

#[derive(Clone, Debug)]
pub struct ExtCtx {
    base: Arc<FieldCtx>,
    // monic: x^3 + c2 x^2 + c1 x + c0, stored as [c0, c1, c2]
    cubic: [Elem; 3],
    generator: ExtElem,
}

impl ExtCtx {
    pub fn new(base: Arc<FieldCtx>) -> Result<Self> {
        Self::with_bound(base, DEFAULT_EXT_MAX_Q)
    }

    pub fn with_bound(base: Arc<FieldCtx>, max_q: u32) -> Result<Self> {
        let q = base.q();
        if q > max_q {
            return Err(Error::FieldTooLarge { q: q as u64, bound: max_q as u64 });
        }
        let cubic = smallest_irreducible_cubic(&base);
        let mut ctx = ExtCtx { base, cubic, generator: [Elem::ONE, Elem::ZERO, Elem::ZERO] };
        ctx.generator = ctx.search_generator();
        Ok(ctx)
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    /// Cubic modulus as a little-endian coefficient vector including the
    /// leading 1.
    pub fn cubic_modulus(&self) -> [Elem; 4] {
        [self.cubic[0], self.cubic[1], self.cubic[2], Elem::ONE]
    }

    pub fn generator(&self) -> ExtElem {
        self.generator
    }

    /// `q^3 - 1`.
    pub fn group_order(&self) -> u64 {
        (self.base.q() as u64).pow(3) - 1
    }

    pub fn one(&self) -> ExtElem {
        [Elem::ONE, Elem::ZERO, Elem::ZERO]
    }

    /// Integer encoding `c0 + c1 q + c2 q^2`.
    pub fn encode(&self, x: ExtElem) -> u64 {
        let q = self.base.q() as u64;
        x[0].0 as u64 + q * x[1].0 as u64 + q * q * x[2].0 as u64
    }

    pub fn decode(&self, v: u64) -> ExtElem {
        let q = self.base.q() as u64;
        [Elem((v % q) as u32), Elem((v / q % q) as u32), Elem((v / (q * q)) as u32)]
    }

    /// Coordinates of `x` on the basis `{1, b, b^2}`.
    pub fn coordinates(&self, x: ExtElem) -> [Elem; 3] {
        x
    }

    pub fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let f = &self.base;
        [f.add(a[0], b[0]), f.add(a[1], b[1]), f.add(a[2], b[2])]
    }

    pub fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let f = &self.base;
        let mut prod = [Elem::ZERO; 5];
        for i in 0..3 {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
            }
        }
        // b^3 = -(c2 b^2 + c1 b + c0)
        for k in (3..5).rev() {
            let lead = prod[k];
            if lead.is_zero() {
                continue;
            }
            prod[k] = Elem::ZERO;
            for (i, &c) in self.cubic.iter().enumerate() {
                prod[k - 3 + i] = f.sub(prod[k - 3 + i], f.mul(lead, c));
            }
        }
        [prod[0], prod[1], prod[2]]
    }

    pub fn pow(&self, a: ExtElem, mut e: u64) -> ExtElem {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// True when `x` lies in the base field GF(q).
    pub fn is_base(&self, x: ExtElem) -> bool {
        x[1].is_zero() && x[2].is_zero()
    }

    fn search_generator(&self) -> ExtElem {
        let order = self.group_order();
        let factors = prime_factors(order);
        let one = self.one();
        (1..=order)
            .map(|v| self.decode(v))
            .find(|&g| factors.iter().all(|&r| self.pow(g, order / r) != one))
            .expect("GF(q^3)* is cyclic")
    }
}

fn smallest_irreducible_cubic(f: &FieldCtx) -> [Elem; 3] {
    let q = f.q() as u64;
    for enc in 0..q * q * q {
        let c = [Elem((enc % q) as u32), Elem((enc / q % q) as u32), Elem((enc / (q * q)) as u32)];
        // a cubic is irreducible iff it has no root
        let has_root = f.elements().any(|x| {
            let x2 = f.mul(x, x);
            let v = f.add(f.add(f.mul(x2, x), f.mul(c[2], x2)), f.add(f.mul(c[1], x), c[0]));
            v.is_zero()
        });
        if !has_root {
            return c;
        }
    }
    unreachable!("irreducible cubics exist over every finite field")
}
