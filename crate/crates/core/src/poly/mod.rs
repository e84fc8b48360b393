//! Homogeneous polynomials in `x, y, z` as expression DAGs.
//!
//! Indicator and interpolation polynomials have `q^2+q+1` summands of degree
//! `3(q-1)` and do not survive full expansion for moderate q, so the primary
//! representation is an unexpanded, shared tree that is evaluated directly.
//! [`SparsePoly`] is available when expansion stays under a term guard.

mod json;
mod sparse;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::plane::{Plane, ProjPoint};

pub use json::{ExprJson, SparseJson};
pub use sparse::{expand, SparsePoly, DEFAULT_TERM_GUARD};

#[derive(Debug)]
pub enum Node {
    Scalar(Elem),
    Linear([Elem; 3]),
    Power(PolyExpr, u32),
    Product(Vec<PolyExpr>),
    Sum(Vec<PolyExpr>),
    ScalarMul(Elem, PolyExpr),
}

#[derive(Debug)]
struct Inner {
    node: Node,
    degree: u32,
}

/// A homogeneous polynomial. Cloning shares the underlying node.
#[derive(Clone)]
pub struct PolyExpr(Arc<Inner>);

impl fmt::Debug for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Scalar(c) => write!(f, "{c}"),
            Node::Linear([a, b, c]) => write!(f, "({a}x+{b}y+{c}z)"),
            Node::Power(e, k) => write!(f, "{e:?}^{k}"),
            Node::Product(es) => f.debug_tuple("mul").field(es).finish(),
            Node::Sum(es) => f.debug_tuple("add").field(es).finish(),
            Node::ScalarMul(c, e) => write!(f, "{c}*{e:?}"),
        }
    }
}

impl PolyExpr {
    fn wrap(node: Node, degree: u32) -> Self {
        PolyExpr(Arc::new(Inner { node, degree }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn scalar(c: Elem) -> Self {
        Self::wrap(Node::Scalar(c), 0)
    }

    pub fn linear(coeffs: [Elem; 3]) -> Self {
        Self::wrap(Node::Linear(coeffs), 1)
    }

    /// The coordinate form `x`, `y` or `z` for `axis` 0, 1, 2.
    pub fn coordinate(axis: usize) -> Self {
        let mut c = [Elem::ZERO; 3];
        c[axis] = Elem::ONE;
        Self::linear(c)
    }

    pub fn pow(base: PolyExpr, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidExpr("exponent must be positive".into()));
        }
        let degree = base.degree().checked_mul(k).ok_or_else(|| Error::InvalidExpr("degree overflow".into()))?;
        Ok(Self::wrap(Node::Power(base, k), degree))
    }

    pub fn product(factors: Vec<PolyExpr>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidExpr("empty product".into()));
        }
        let degree = factors
            .iter()
            .try_fold(0u32, |acc, e| acc.checked_add(e.degree()))
            .ok_or_else(|| Error::InvalidExpr("degree overflow".into()))?;
        Ok(Self::wrap(Node::Product(factors), degree))
    }

    /// Sum of terms that all share one degree; mixed degrees are rejected.
    pub fn sum(terms: Vec<PolyExpr>) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(Error::InvalidExpr("empty sum".into()));
        };
        let degree = first.degree();
        if let Some(bad) = terms.iter().find(|t| t.degree() != degree) {
            return Err(Error::DegreeMismatch { left: degree, right: bad.degree() });
        }
        Ok(Self::wrap(Node::Sum(terms), degree))
    }

    pub fn smul(c: Elem, e: PolyExpr) -> Self {
        let degree = e.degree();
        Self::wrap(Node::ScalarMul(c, e), degree)
    }

    /// `a - b`.
    pub fn difference(field: &FieldCtx, a: PolyExpr, b: PolyExpr) -> Result<Self> {
        let minus_one = field.neg(Elem::ONE);
        Self::sum(vec![a, Self::smul(minus_one, b)])
    }

    /// `x^a y^b z^c`; the empty monomial is the scalar 1.
    pub fn monomial(exps: [u32; 3]) -> Self {
        let factors: Vec<PolyExpr> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(axis, &e)| {
                let c = Self::coordinate(axis);
                if e == 1 {
                    c
                } else {
                    Self::pow(c, e).expect("positive exponent")
                }
            })
            .collect();
        match factors.len() {
            0 => Self::scalar(Elem::ONE),
            1 => factors.into_iter().next().unwrap(),
            _ => Self::product(factors).expect("nonempty"),
        }
    }

    /// Value at the vector `v` (not necessarily normalized).
    pub fn eval(&self, field: &FieldCtx, v: [Elem; 3]) -> Elem {
        match self.node() {
            Node::Scalar(c) => *c,
            Node::Linear([a, b, c]) => {
                field.add(field.add(field.mul(*a, v[0]), field.mul(*b, v[1])), field.mul(*c, v[2]))
            }
            Node::Power(e, k) => field.pow(e.eval(field, v), *k as u64),
            Node::Product(es) => {
                let mut acc = Elem::ONE;
                for e in es {
                    acc = field.mul(acc, e.eval(field, v));
                    if acc.is_zero() {
                        break;
                    }
                }
                acc
            }
            Node::Sum(es) => es.iter().fold(Elem::ZERO, |acc, e| field.add(acc, e.eval(field, v))),
            Node::ScalarMul(c, e) => {
                if c.is_zero() {
                    Elem::ZERO
                } else {
                    field.mul(*c, e.eval(field, v))
                }
            }
        }
    }

    /// Value at the canonical representative of `p`. The result depends on
    /// the representative unless `(q-1)` divides the degree.
    pub fn eval_at(&self, field: &FieldCtx, p: &ProjPoint) -> Elem {
        self.eval(field, p.coords())
    }

    /// Whether `p` lies on the zero set; independent of the representative.
    pub fn is_zero_at(&self, field: &FieldCtx, p: &ProjPoint) -> bool {
        self.eval_at(field, p).is_zero()
    }

    /// True when the value on PG(2,q) does not depend on the representative.
    pub fn is_well_defined_function(&self, field: &FieldCtx) -> bool {
        self.degree().is_multiple_of(field.q() - 1)
    }

    /// Rejects constants that are not elements of `field`.
    pub fn check_field(&self, field: &FieldCtx) -> Result<()> {
        let mut seen = HashSet::new();
        self.check_field_inner(field, &mut seen)
    }

    fn check_field_inner(&self, field: &FieldCtx, seen: &mut HashSet<*const Inner>) -> Result<()> {
        if !seen.insert(Arc::as_ptr(&self.0)) {
            return Ok(());
        }
        let bad = |c: &Elem| -> Result<()> { field.elem(c.0).map(|_| ()) };
        match self.node() {
            Node::Scalar(c) => bad(c),
            Node::Linear(cs) => cs.iter().try_for_each(bad),
            Node::Power(e, _) => e.check_field_inner(field, seen),
            Node::Product(es) | Node::Sum(es) => es.iter().try_for_each(|e| e.check_field_inner(field, seen)),
            Node::ScalarMul(c, e) => {
                bad(c)?;
                e.check_field_inner(field, seen)
            }
        }
    }

    /// Number of distinct nodes in the DAG.
    pub fn node_count(&self) -> usize {
        fn walk(e: &PolyExpr, seen: &mut HashSet<*const Inner>) {
            if !seen.insert(Arc::as_ptr(&e.0)) {
                return;
            }
            match e.node() {
                Node::Scalar(_) | Node::Linear(_) => {}
                Node::Power(c, _) | Node::ScalarMul(_, c) => walk(c, seen),
                Node::Product(es) | Node::Sum(es) => es.iter().for_each(|c| walk(c, seen)),
            }
        }
        let mut seen = HashSet::new();
        walk(self, &mut seen);
        seen.len()
    }

    pub fn to_json(&self) -> ExprJson {
        ExprJson::from_expr(self)
    }

    pub fn from_json(field: &FieldCtx, json: &ExprJson) -> Result<Self> {
        json.to_expr(field)
    }
}

/// `s F + t G`.
pub fn linear_combination(s: Elem, t: Elem, f: &PolyExpr, g: &PolyExpr) -> Result<PolyExpr> {
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch { left: f.degree(), right: g.degree() });
    }
    if s.is_zero() && t.is_zero() {
        return Err(Error::ZeroVector);
    }
    PolyExpr::sum(vec![PolyExpr::smul(s, f.clone()), PolyExpr::smul(t, g.clone())])
}

/// Product of the linear forms of all `q^2+q+1` lines; vanishes on every
/// point of the plane.
pub fn all_lines_product(plane: &Plane) -> PolyExpr {
    let factors = plane.lines().iter().map(|l| PolyExpr::linear(l.coords())).collect();
    PolyExpr::product(factors).expect("a plane has lines")
}

/// A function `PG(2,q) -> GF(q)` stored by point index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointFunction {
    values: Vec<Elem>,
}

impl PointFunction {
    pub fn new(plane: &Plane, values: Vec<Elem>) -> Result<Self> {
        if values.len() != plane.size() {
            return Err(Error::FieldMismatch(format!(
                "point function has {} values for {} points",
                values.len(),
                plane.size()
            )));
        }
        if let Some(bad) = values.iter().find(|c| !plane.field().contains(**c)) {
            return Err(Error::FieldMismatch(format!("{bad} is not in GF({})", plane.q())));
        }
        Ok(PointFunction { values })
    }

    pub fn from_fn(plane: &Plane, mut f: impl FnMut(&ProjPoint) -> Elem) -> Self {
        PointFunction { values: plane.points().iter().map(&mut f).collect() }
    }

    pub fn indicator(plane: &Plane, index: usize) -> Self {
        let mut values = vec![Elem::ZERO; plane.size()];
        values[index] = Elem::ONE;
        PointFunction { values }
    }

    pub fn value(&self, index: usize) -> Elem {
        self.values[index]
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|c| c.is_zero())
    }
}
