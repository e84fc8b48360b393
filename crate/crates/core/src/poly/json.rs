use serde::{Deserialize, Serialize};

use super::{Node, PolyExpr, SparsePoly};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};

/// Wire form of an expression, tagged by `"op"`. Field elements are integer
/// encodings. Shared subexpressions are written out once per use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum ExprJson {
    Scalar { value: u32 },
    Linear { coeffs: [u32; 3] },
    Pow { base: Box<ExprJson>, exp: u32 },
    Mul { factors: Vec<ExprJson> },
    Add { terms: Vec<ExprJson> },
    Smul { scalar: u32, expr: Box<ExprJson> },
}

impl ExprJson {
    pub(super) fn from_expr(e: &PolyExpr) -> Self {
        match e.node() {
            Node::Scalar(c) => ExprJson::Scalar { value: c.0 },
            Node::Linear(cs) => ExprJson::Linear { coeffs: cs.map(|c| c.0) },
            Node::Power(b, k) => ExprJson::Pow { base: Box::new(Self::from_expr(b)), exp: *k },
            Node::Product(es) => ExprJson::Mul { factors: es.iter().map(Self::from_expr).collect() },
            Node::Sum(es) => ExprJson::Add { terms: es.iter().map(Self::from_expr).collect() },
            Node::ScalarMul(c, b) => ExprJson::Smul { scalar: c.0, expr: Box::new(Self::from_expr(b)) },
        }
    }

    /// Validates every constant against `field` and every sum for
    /// homogeneity.
    pub fn to_expr(&self, field: &FieldCtx) -> Result<PolyExpr> {
        Ok(match self {
            ExprJson::Scalar { value } => PolyExpr::scalar(field.elem(*value)?),
            ExprJson::Linear { coeffs } => {
                PolyExpr::linear([field.elem(coeffs[0])?, field.elem(coeffs[1])?, field.elem(coeffs[2])?])
            }
            ExprJson::Pow { base, exp } => PolyExpr::pow(base.to_expr(field)?, *exp)?,
            ExprJson::Mul { factors } => {
                PolyExpr::product(factors.iter().map(|e| e.to_expr(field)).collect::<Result<_>>()?)?
            }
            ExprJson::Add { terms } => PolyExpr::sum(terms.iter().map(|e| e.to_expr(field)).collect::<Result<_>>()?)?,
            ExprJson::Smul { scalar, expr } => PolyExpr::smul(field.elem(*scalar)?, expr.to_expr(field)?),
        })
    }
}

/// Wire form of a sparse polynomial: `{"degree": d, "terms": [[a,b,c,coef],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseJson {
    pub degree: u32,
    pub terms: Vec<[u32; 4]>,
}

impl SparseJson {
    pub fn from_sparse(s: &SparsePoly) -> Self {
        SparseJson { degree: s.degree(), terms: s.terms().iter().map(|(e, c)| [e[0], e[1], e[2], c.0]).collect() }
    }

    pub fn to_sparse(&self, field: &FieldCtx) -> Result<SparsePoly> {
        let mut seen = std::collections::BTreeSet::new();
        for t in &self.terms {
            if !seen.insert([t[0], t[1], t[2]]) {
                return Err(Error::InvalidExpr(format!("repeated exponent {:?}", &t[..3])));
            }
        }
        SparsePoly::from_terms(field, self.degree, self.terms.iter().map(|t| ([t[0], t[1], t[2]], Elem(t[3]))))
    }
}
