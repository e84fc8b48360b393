use std::collections::BTreeMap;

use super::{Node, PolyExpr};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};

pub const DEFAULT_TERM_GUARD: u64 = 1_000_000;

/// Fully expanded homogeneous polynomial; exponent triples map to nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    degree: u32,
    terms: BTreeMap<[u32; 3], Elem>,
}

/// Counts intermediate terms produced during expansion. Every generated
/// monomial product and every stored term is charged one unit.
struct Budget {
    guard: u64,
    used: u64,
}

impl Budget {
    fn charge(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.guard {
            Err(Error::TermGuard { guard: self.guard })
        } else {
            Ok(())
        }
    }
}

impl SparsePoly {
    pub fn zero(degree: u32) -> Self {
        SparsePoly { degree, terms: BTreeMap::new() }
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeats and
    /// dropping zero coefficients.
    pub fn from_terms(
        field: &FieldCtx,
        degree: u32,
        terms: impl IntoIterator<Item = ([u32; 3], Elem)>,
    ) -> Result<Self> {
        let mut out = SparsePoly::zero(degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: e.iter().sum() });
            }
            field.elem(c.0)?;
            out.add_term(field, e, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, field: &FieldCtx, e: [u32; 3], c: Elem) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert(Elem::ZERO);
        *entry = field.add(*entry, c);
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<[u32; 3], Elem> {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, field: &FieldCtx, v: [Elem; 3]) -> Elem {
        self.terms.iter().fold(Elem::ZERO, |acc, (e, &c)| {
            let m = (0..3).fold(c, |m, i| field.mul(m, field.pow(v[i], e[i] as u64)));
            field.add(acc, m)
        })
    }

    pub fn scale(&self, field: &FieldCtx, c: Elem) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.degree);
        }
        SparsePoly { degree: self.degree, terms: self.terms.iter().map(|(&e, &a)| (e, field.mul(a, c))).collect() }
    }

    /// True when one polynomial is a scalar multiple of the other (the zero
    /// polynomial is a multiple of everything).
    pub fn is_proportional(&self, field: &FieldCtx, other: &SparsePoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return true;
        }
        if self.degree != other.degree || self.terms.len() != other.terms.len() {
            return false;
        }
        let (e0, &a0) = self.terms.iter().next().unwrap();
        let Some(&b0) = other.terms.get(e0) else {
            return false;
        };
        let ratio = field.div(a0, b0).expect("stored coefficients are nonzero");
        self.terms.iter().all(|(e, &a)| other.terms.get(e).is_some_and(|&b| field.mul(b, ratio) == a))
    }

    /// Converts back to an expression: a sum of scaled monomials.
    pub fn to_expr(&self) -> PolyExpr {
        if self.is_zero() {
            return zero_expr(self.degree);
        }
        let terms = self
            .terms
            .iter()
            .map(|(&e, &c)| {
                let m = PolyExpr::monomial(e);
                if c == Elem::ONE {
                    m
                } else {
                    PolyExpr::smul(c, m)
                }
            })
            .collect();
        PolyExpr::sum(terms).expect("all monomials share the degree")
    }

    fn add(&self, field: &FieldCtx, other: &SparsePoly, budget: &mut Budget) -> Result<SparsePoly> {
        budget.charge(other.terms.len() as u64)?;
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(field, e, c);
        }
        Ok(out)
    }

    fn mul(&self, field: &FieldCtx, other: &SparsePoly, budget: &mut Budget) -> Result<SparsePoly> {
        budget.charge(self.terms.len() as u64 * other.terms.len() as u64)?;
        let mut out = SparsePoly::zero(self.degree + other.degree);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(field, e, field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    fn pow(&self, field: &FieldCtx, k: u32, budget: &mut Budget) -> Result<SparsePoly> {
        let mut acc: Option<SparsePoly> = None;
        let mut base = self.clone();
        let mut k = k;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(field, &base, budget)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(field, &base, budget)?;
        }
        Ok(acc.expect("exponent is positive"))
    }
}

/// The zero polynomial of a given degree, as an expression.
pub(crate) fn zero_expr(degree: u32) -> PolyExpr {
    if degree == 0 {
        PolyExpr::scalar(Elem::ZERO)
    } else {
        PolyExpr::smul(Elem::ZERO, PolyExpr::monomial([degree, 0, 0]))
    }
}

/// Expands `expr` into sparse form, failing with [`Error::TermGuard`] once
/// the number of intermediate terms produced exceeds `term_guard`.
pub fn expand(field: &FieldCtx, expr: &PolyExpr, term_guard: u64) -> Result<SparsePoly> {
    let mut budget = Budget { guard: term_guard, used: 0 };
    expand_inner(field, expr, &mut budget)
}

fn expand_inner(field: &FieldCtx, expr: &PolyExpr, budget: &mut Budget) -> Result<SparsePoly> {
    let out = match expr.node() {
        Node::Scalar(c) => SparsePoly::from_terms(field, 0, [([0, 0, 0], *c)])?,
        Node::Linear([a, b, c]) => {
            SparsePoly::from_terms(field, 1, [([1, 0, 0], *a), ([0, 1, 0], *b), ([0, 0, 1], *c)])?
        }
        Node::Power(e, k) => expand_inner(field, e, budget)?.pow(field, *k, budget)?,
        Node::Product(es) => {
            let mut acc = expand_inner(field, &es[0], budget)?;
            for e in &es[1..] {
                let next = expand_inner(field, e, budget)?;
                acc = acc.mul(field, &next, budget)?;
            }
            acc
        }
        Node::Sum(es) => {
            let mut acc = SparsePoly::zero(expr.degree());
            for e in es {
                let next = expand_inner(field, e, budget)?;
                acc = acc.add(field, &next, budget)?;
            }
            acc
        }
        Node::ScalarMul(c, e) => {
            if c.is_zero() {
                SparsePoly::zero(expr.degree())
            } else {
                expand_inner(field, e, budget)?.scale(field, *c)
            }
        }
    };
    budget.charge(out.term_count() as u64)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::Plane;
    use crate::poly::all_lines_product;

    #[test]
    fn frobenius_square_in_char_two() {
        let f = FieldCtx::new(2, 1).unwrap();
        let e = PolyExpr::pow(PolyExpr::linear([Elem(1), Elem(1), Elem(0)]), 2).unwrap();
        let s = expand(&f, &e, DEFAULT_TERM_GUARD).unwrap();
        let expect = SparsePoly::from_terms(&f, 2, [([2, 0, 0], Elem(1)), ([0, 2, 0], Elem(1))]).unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn guard_trips_on_large_product() {
        let f = FieldCtx::new(31, 1).unwrap();
        let factors: Vec<PolyExpr> =
            (1..=21u32).map(|i| PolyExpr::linear([Elem(1), Elem(i), Elem(i * i % 31)])).collect();
        let e = PolyExpr::product(factors).unwrap();
        assert_eq!(e.degree(), 21);
        assert!(matches!(expand(&f, &e, 1_000), Err(Error::TermGuard { guard: 1_000 })));
        assert!(expand(&f, &e, DEFAULT_TERM_GUARD).is_ok());
    }

    #[test]
    fn all_lines_product_expands_to_a_vanishing_form() {
        let plane = Plane::over(2, 2).unwrap();
        let h = all_lines_product(&plane);
        let full = expand(plane.field(), &h, DEFAULT_TERM_GUARD).unwrap();
        assert!(!full.is_zero());
        for p in plane.points() {
            assert!(full.eval(plane.field(), p.coords()).is_zero());
        }
    }

    #[test]
    fn proportionality() {
        let f = FieldCtx::new(5, 1).unwrap();
        let a = SparsePoly::from_terms(&f, 2, [([2, 0, 0], Elem(1)), ([0, 1, 1], Elem(3))]).unwrap();
        let b = a.scale(&f, Elem(4));
        assert!(a.is_proportional(&f, &b));
        let c = SparsePoly::from_terms(&f, 2, [([2, 0, 0], Elem(1)), ([0, 1, 1], Elem(2))]).unwrap();
        assert!(!a.is_proportional(&f, &c));
        assert!(a.is_proportional(&f, &SparsePoly::zero(2)));
    }

    #[test]
    fn round_trip_through_expr() {
        let f = FieldCtx::new(3, 1).unwrap();
        let a =
            SparsePoly::from_terms(&f, 3, [([3, 0, 0], Elem(2)), ([1, 1, 1], Elem(1)), ([0, 0, 3], Elem(1))]).unwrap();
        assert_eq!(expand(&f, &a.to_expr(), DEFAULT_TERM_GUARD).unwrap(), a);
        assert!(SparsePoly::from_terms(&f, 3, [([1, 0, 0], Elem(1))]).is_err());
    }
}
