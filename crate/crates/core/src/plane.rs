//! The projective plane PG(2,q) and its dual.
//!
//! Points and lines are normalized so that the leftmost nonzero coordinate
//! is 1. Enumeration order is `[1:y:z]` by `(y, z)` encoding, then
//! `[0:1:z]`, then `[0:0:1]`, which makes the index of a normalized triple
//! computable in O(1). The same order is used for lines.

use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::pointset::PointSet;

/// Largest q for which a plane (and its incidence bitmap) is built.
pub const PLANE_MAX_Q: u32 = 128;

/// Scale `v` so that its leftmost nonzero entry is 1.
pub fn normalize<const K: usize>(field: &FieldCtx, v: [Elem; K]) -> Option<[Elem; K]> {
    let lead = *v.iter().find(|c| !c.is_zero())?;
    if lead == Elem::ONE {
        return Some(v);
    }
    let inv = field.inv(lead).ok()?;
    Some(v.map(|c| field.mul(c, inv)))
}

macro_rules! homogeneous_type {
    ($name:ident, $k:literal) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name([Elem; $k]);

        impl $name {
            /// Normalizes `v`; fails on the zero vector.
            pub fn new(field: &FieldCtx, v: [Elem; $k]) -> Result<Self> {
                if v.iter().any(|&c| !field.contains(c)) {
                    return Err(Error::FieldMismatch(format!("{v:?} has entries outside GF({})", field.q())));
                }
                normalize(field, v).map($name).ok_or(Error::ZeroVector)
            }

            pub fn from_raw(field: &FieldCtx, v: [u32; $k]) -> Result<Self> {
                Self::new(field, v.map(Elem))
            }

            pub fn coords(&self) -> [Elem; $k] {
                self.0
            }

            pub fn raw(&self) -> [u32; $k] {
                self.0.map(|c| c.0)
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                self.raw().serialize(s)
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
                write!(f, "[{}]", parts.join(":"))
            }
        }
    };
}

homogeneous_type!(ProjPoint, 3);
homogeneous_type!(ProjLine, 3);
homogeneous_type!(ProjParam, 2);

impl ProjParam {
    /// `[s:t]` for the canonical index: `[1:t]` at index `t`, `[0:1]` at `q`.
    pub fn from_index(q: u32, index: usize) -> ProjParam {
        if index < q as usize {
            ProjParam([Elem::ONE, Elem(index as u32)])
        } else {
            ProjParam([Elem::ZERO, Elem::ONE])
        }
    }

    pub fn index(&self, q: u32) -> usize {
        if self.0[0] == Elem::ONE {
            self.0[1].0 as usize
        } else {
            q as usize
        }
    }

    pub fn s(&self) -> Elem {
        self.0[0]
    }

    pub fn t(&self) -> Elem {
        self.0[1]
    }
}

/// Parameters of P^1(F_q) in canonical order.
pub fn params(q: u32) -> Vec<ProjParam> {
    (0..=q as usize).map(|i| ProjParam::from_index(q, i)).collect()
}

fn triple_index(q: u32, v: [Elem; 3]) -> usize {
    let q = q as usize;
    if v[0] == Elem::ONE {
        v[1].0 as usize * q + v[2].0 as usize
    } else if v[1] == Elem::ONE {
        q * q + v[2].0 as usize
    } else {
        q * q + q
    }
}

fn enumerate_triples(q: u32) -> Vec<[Elem; 3]> {
    let mut out = Vec::with_capacity((q * q + q + 1) as usize);
    for y in 0..q {
        for z in 0..q {
            out.push([Elem::ONE, Elem(y), Elem(z)]);
        }
    }
    for z in 0..q {
        out.push([Elem::ZERO, Elem::ONE, Elem(z)]);
    }
    out.push([Elem::ZERO, Elem::ZERO, Elem::ONE]);
    out
}

#[inline]
fn dot(field: &FieldCtx, a: [Elem; 3], b: [Elem; 3]) -> Elem {
    field.add(field.add(field.mul(a[0], b[0]), field.mul(a[1], b[1])), field.mul(a[2], b[2]))
}

#[derive(Debug)]
pub struct Plane {
    field: Arc<FieldCtx>,
    points: Vec<ProjPoint>,
    lines: Vec<ProjLine>,
    // incidence bitmap, one row per line
    line_rows: Vec<PointSet>,
    point_lines: Vec<Vec<u32>>,
}

impl Plane {
    pub fn new(field: Arc<FieldCtx>) -> Result<Self> {
        let q = field.q();
        if q > PLANE_MAX_Q {
            return Err(Error::FieldTooLarge { q: q as u64, bound: PLANE_MAX_Q as u64 });
        }
        let triples = enumerate_triples(q);
        let size = triples.len();
        let points: Vec<ProjPoint> = triples.iter().map(|&t| ProjPoint(t)).collect();
        let lines: Vec<ProjLine> = triples.iter().map(|&t| ProjLine(t)).collect();
        let mut line_rows = vec![PointSet::empty(size); size];
        let mut point_lines = vec![Vec::with_capacity(q as usize + 1); size];
        for (li, line) in lines.iter().enumerate() {
            for (pi, point) in points.iter().enumerate() {
                if dot(&field, line.0, point.0).is_zero() {
                    line_rows[li].insert(pi);
                    point_lines[pi].push(li as u32);
                }
            }
        }
        Ok(Plane { field, points, lines, line_rows, point_lines })
    }

    /// Convenience constructor for GF(p^n).
    pub fn over(p: u32, n: u32) -> Result<Self> {
        Self::new(Arc::new(FieldCtx::new(p, n)?))
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// `q^2 + q + 1`.
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn point(&self, index: usize) -> ProjPoint {
        self.points[index]
    }

    pub fn line(&self, index: usize) -> ProjLine {
        self.lines[index]
    }

    pub fn point_index(&self, p: &ProjPoint) -> usize {
        triple_index(self.q(), p.0)
    }

    pub fn line_index(&self, l: &ProjLine) -> usize {
        triple_index(self.q(), l.0)
    }

    /// Validates and normalizes a raw coordinate triple.
    pub fn point_from_raw(&self, v: [u32; 3]) -> Result<ProjPoint> {
        ProjPoint::from_raw(&self.field, v)
    }

    pub fn incident(&self, line: &ProjLine, point: &ProjPoint) -> Result<bool> {
        if line.0.iter().chain(point.0.iter()).any(|&c| !self.field.contains(c)) {
            return Err(Error::FieldMismatch(format!("{line} or {point} is not over GF({})", self.q())));
        }
        Ok(dot(&self.field, line.0, point.0).is_zero())
    }

    /// The line through two distinct points (cross product of coordinates).
    pub fn line_through(&self, a: &ProjPoint, b: &ProjPoint) -> Result<ProjLine> {
        if a == b {
            return Err(Error::SamePoint);
        }
        ProjLine::new(&self.field, cross(&self.field, a.0, b.0))
    }

    /// The common point of two distinct lines.
    pub fn meet(&self, a: &ProjLine, b: &ProjLine) -> Result<ProjPoint> {
        if a == b {
            return Err(Error::SamePoint);
        }
        ProjPoint::new(&self.field, cross(&self.field, a.0, b.0))
    }

    /// The q+1 lines through `p` in enumeration order.
    pub fn lines_through(&self, p: &ProjPoint) -> Vec<ProjLine> {
        self.point_lines[self.point_index(p)].iter().map(|&l| self.lines[l as usize]).collect()
    }

    pub fn lines_through_index(&self, point_index: usize) -> &[u32] {
        &self.point_lines[point_index]
    }

    /// Points of the line with the given index, as a bitmap row.
    pub fn line_points(&self, line_index: usize) -> &PointSet {
        &self.line_rows[line_index]
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.size())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.size())
    }

    pub fn set_of(&self, points: &[ProjPoint]) -> PointSet {
        PointSet::from_indices(self.size(), points.iter().map(|p| self.point_index(p)))
    }

    pub fn points_of(&self, set: &PointSet) -> Vec<ProjPoint> {
        set.iter().map(|i| self.points[i]).collect()
    }

    pub fn params(&self) -> Vec<ProjParam> {
        params(self.q())
    }
}

fn cross(f: &FieldCtx, a: [Elem; 3], b: [Elem; 3]) -> [Elem; 3] {
    [
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}
