//! Explicit pencils: point indicators, interpolation, realization of
//! partitions and covers, the single-base-point pencil of blocking curves,
//! and the extremal pencil built from a partition into Baer subplanes.

use std::sync::Arc;

use crate::bounds::exact_sqrt;
use crate::error::{Error, Result};
use crate::gf::{Elem, ExtCtx, FieldCtx};
use crate::pencil::{Partition, PartitionJson, Pencil};
use crate::plane::{normalize, Plane, ProjParam, ProjPoint};
use crate::pointset::PointSet;
use crate::poly::{all_lines_product, PointFunction, PolyExpr};

/// `w^(q-1)` for the three coordinates, shared between indicators.
struct CoordPowers([PolyExpr; 3]);

impl CoordPowers {
    fn new(q: u32) -> Self {
        CoordPowers([0, 1, 2].map(|axis| PolyExpr::pow(PolyExpr::coordinate(axis), q - 1).expect("q >= 2")))
    }
}

fn indicator_with(plane: &Plane, powers: &CoordPowers, index: usize) -> PolyExpr {
    let field = plane.field();
    let q = plane.q();
    let point = plane.point(index);
    let w = (0..3).rev().find(|&i| !point.coords()[i].is_zero()).expect("points are nonzero");
    let wq = powers.0[w].clone();
    let through = plane.lines_through_index(index);
    let mut factors = vec![wq.clone()];
    for &l in &through[..2] {
        let lq = PolyExpr::pow(PolyExpr::linear(plane.line(l as usize).coords()), q - 1).expect("q >= 2");
        factors.push(PolyExpr::difference(field, wq.clone(), lq).expect("equal degrees"));
    }
    PolyExpr::product(factors).expect("three factors")
}

/// `S_Q` of degree `3(q-1)`: equal to 1 at `Q` and 0 at every other point.
/// Built from the last nonzero coordinate `w` of `Q` and the first two
/// lines `L1, L2` through `Q` as `w^(q-1) (w^(q-1) - L1^(q-1)) (w^(q-1) - L2^(q-1))`.
pub fn indicator_poly(plane: &Plane, q_point: &ProjPoint) -> PolyExpr {
    indicator_with(plane, &CoordPowers::new(plane.q()), plane.point_index(q_point))
}

/// `R_f = sum f(Q) S_Q` of degree `3(q-1)`, agreeing with `f` on every point.
pub fn interpolate(plane: &Plane, f: &PointFunction) -> Result<PolyExpr> {
    interpolate_excluding(plane, f, &plane.empty_set())
}

/// Interpolation summing only over points outside `excluded`; the result
/// agrees with `f` off `excluded` and vanishes on it.
pub fn interpolate_excluding(plane: &Plane, f: &PointFunction, excluded: &PointSet) -> Result<PolyExpr> {
    if f.values().len() != plane.size() || excluded.universe() != plane.size() {
        return Err(Error::FieldMismatch("point function or set does not match the plane".into()));
    }
    let powers = CoordPowers::new(plane.q());
    let terms: Vec<PolyExpr> = (0..plane.size())
        .filter(|&i| !excluded.contains(i) && !f.value(i).is_zero())
        .map(|i| {
            let s = indicator_with(plane, &powers, i);
            if f.value(i) == Elem::ONE {
                s
            } else {
                PolyExpr::smul(f.value(i), s)
            }
        })
        .collect();
    if terms.is_empty() {
        return Err(Error::ZeroFunction);
    }
    Ok(PolyExpr::sum(terms).expect("indicators share the degree"))
}

/// `(x^q y - x y^q) z^(2q-4)` and `(x^q z - x z^q) y^(2q-4)`: two forms of
/// degree `3(q-1)` that vanish on every point and are not proportional.
fn vanishing_forms(field: &FieldCtx) -> [PolyExpr; 2] {
    let q = field.q();
    let make = |a: usize, b: usize| {
        let mut e1 = [0; 3];
        e1[0] = q;
        e1[a] = 1;
        let mut e2 = [0; 3];
        e2[0] = 1;
        e2[a] = q;
        let mut e3 = [0; 3];
        e3[b] = 2 * q - 4;
        let core = PolyExpr::difference(field, PolyExpr::monomial(e1), PolyExpr::monomial(e2)).expect("equal degrees");
        if q == 2 {
            core
        } else {
            PolyExpr::product(vec![core, PolyExpr::monomial(e3)]).expect("nonempty")
        }
    };
    [make(1, 2), make(2, 1)]
}

/// `q+1` point sets covering the plane that pairwise meet in the common set
/// `B`, which is also their intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    parts: Vec<PointSet>,
    common: PointSet,
}

impl CoverSpec {
    pub fn new(plane: &Plane, parts: Vec<PointSet>, common: PointSet) -> Result<Self> {
        let q = plane.q() as usize;
        if parts.len() != q + 1 {
            return Err(Error::InvalidCover(format!("expected {} parts, got {}", q + 1, parts.len())));
        }
        if common.universe() != plane.size() || parts.iter().any(|p| p.universe() != plane.size()) {
            return Err(Error::InvalidCover("set is not a subset of this plane".into()));
        }
        let mut union = plane.empty_set();
        let mut meet = plane.full_set();
        for p in &parts {
            union = union.union(p);
            meet = meet.intersection(p);
        }
        if union.len() != plane.size() {
            return Err(Error::InvalidCover(format!("{} points are not covered", plane.size() - union.len())));
        }
        if meet != common {
            return Err(Error::InvalidCover("common set is not the intersection of all parts".into()));
        }
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if parts[i].intersection(&parts[j]) != common {
                    return Err(Error::InvalidCover(format!("parts {i} and {j} meet outside the common set")));
                }
            }
        }
        Ok(CoverSpec { parts, common })
    }

    pub fn from_partition(plane: &Plane, partition: &Partition) -> Self {
        CoverSpec { parts: partition.parts().to_vec(), common: plane.empty_set() }
    }

    pub fn from_json(plane: &Plane, json: &PartitionJson) -> Result<Self> {
        let (parts, common) = json.point_sets(plane)?;
        Self::new(plane, parts, common.unwrap_or_else(|| plane.empty_set()))
    }

    pub fn to_json(&self, plane: &Plane) -> PartitionJson {
        PartitionJson::from_sets(plane, &self.parts, Some(&self.common))
    }

    pub fn parts(&self) -> &[PointSet] {
        &self.parts
    }

    pub fn common(&self) -> &PointSet {
        &self.common
    }
}

/// A pencil of degree `3(q-1)` with no base points whose member with the
/// i-th canonical parameter has point set exactly the i-th part.
pub fn realize_partition(plane: Arc<Plane>, partition: &Partition) -> Result<Pencil> {
    let spec = CoverSpec::from_partition(&plane, partition);
    realize_cover(plane, &spec)
}

/// A pencil whose i-th member has point set exactly `U_i`. Interpolation
/// runs over points outside `B`, so both forms vanish on `B`.
pub fn realize_cover(plane: Arc<Plane>, spec: &CoverSpec) -> Result<Pencil> {
    let field = plane.field().clone();
    let q = plane.q();
    let outside = spec.common.complement();
    let mut f = vec![Elem::ZERO; plane.size()];
    let mut g = vec![Elem::ZERO; plane.size()];
    let mut labels_used = std::collections::BTreeSet::new();
    for (i, part) in spec.parts.iter().enumerate() {
        let param = ProjParam::from_index(q, i);
        for pt in part.difference(&spec.common).iter() {
            f[pt] = param.s();
            g[pt] = param.t();
            labels_used.insert(i);
        }
    }
    debug_assert!(outside.iter().all(|pt| !f[pt].is_zero() || !g[pt].is_zero()));
    let f = PointFunction::new(&plane, f)?;
    let g = PointFunction::new(&plane, g)?;
    let [v1, v2] = vanishing_forms(&field);
    let rf = nonzero_or(interpolate_excluding(&plane, &f, &spec.common), v1.clone())?;
    let rg = nonzero_or(interpolate_excluding(&plane, &g, &spec.common), v2)?;
    let minus_one = field.neg(Elem::ONE);
    let mut big_f = PolyExpr::smul(minus_one, rg.0);
    if labels_used.len() <= 1 && rf.1 && rg.1 {
        // constant nonzero f and g give proportional interpolants
        big_f = PolyExpr::sum(vec![big_f, v1]).expect("equal degrees");
    }
    Pencil::unchecked(plane, big_f, rf.0)
}

fn nonzero_or(r: Result<PolyExpr>, fallback: PolyExpr) -> Result<(PolyExpr, bool)> {
    match r {
        Ok(e) => Ok((e, true)),
        Err(Error::ZeroFunction) => Ok((fallback, false)),
        Err(e) => Err(e),
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `m = max(0, q-3)`.
pub fn blocking_curve_shift(q: u32) -> u32 {
    q.saturating_sub(3)
}

/// `F = x^m H + y^D`, `G = x^m H + z^D` with `H` the product of all line
/// forms and `D = q^2+q+1+m`. Its only base point is `[1:0:0]` and every
/// member is a blocking curve.
pub fn blocking_curve_pencil(plane: Arc<Plane>) -> Result<Pencil> {
    let q = plane.q();
    let m = blocking_curve_shift(q);
    let big_d = q * q + q + 1 + m;
    assert_eq!(gcd(q as u64 - 1, big_d as u64), 1, "gcd(q-1, q^2+q+1+m) must be 1");
    let h = all_lines_product(&plane);
    let lead = if m == 0 { h } else { PolyExpr::product(vec![PolyExpr::monomial([m, 0, 0]), h])? };
    let f = PolyExpr::sum(vec![lead.clone(), PolyExpr::monomial([0, big_d, 0])])?;
    let g = PolyExpr::sum(vec![lead, PolyExpr::monomial([0, 0, big_d])])?;
    Pencil::new(plane, f, g)
}

/// Partition of PG(2,q), q square, into `q - sqrt(q) + 1` Baer subplanes:
/// the orbits of the subgroup of order `q + sqrt(q) + 1` of a Singer cycle.
/// Every part is checked to have size `q + sqrt(q) + 1` and to meet each
/// line in 1 or `sqrt(q) + 1` points.
pub fn baer_partition(plane: &Plane) -> Result<Vec<PointSet>> {
    let field = plane.field();
    let q = plane.q() as u64;
    let root = exact_sqrt(q).filter(|_| field.n().is_multiple_of(2)).ok_or(Error::NotSquare(q as u32))?;
    let ext = ExtCtx::new(field.clone())?;
    let n_points = plane.size();
    let mut log_to_point = Vec::with_capacity(n_points);
    let g = ext.generator();
    let mut x = ext.one();
    for _ in 0..n_points {
        let v = normalize(field, ext.coordinates(x)).expect("nonzero element");
        log_to_point.push(plane.point_index(&ProjPoint::from_raw(field, v.map(|c| c.0))?));
        x = ext.mul(x, g);
    }
    let part_size = (q + root + 1) as usize;
    let step = (q - root + 1) as usize;
    let parts: Vec<PointSet> = (0..step)
        .map(|j| PointSet::from_indices(n_points, (0..part_size).map(|k| log_to_point[j + k * step])))
        .collect();

    let mut seen = plane.empty_set();
    for (j, part) in parts.iter().enumerate() {
        if part.len() != part_size || seen.intersects(part) {
            return Err(Error::ConstructionCheck(format!("coset {j} is not a new set of {part_size} points")));
        }
        seen = seen.union(part);
        for l in 0..n_points {
            let k = plane.line_points(l).intersection_len(part) as u64;
            if k != 1 && k != root + 1 {
                return Err(Error::ConstructionCheck(format!("coset {j} meets line {l} in {k} points")));
            }
        }
    }
    if seen.len() != n_points {
        return Err(Error::ConstructionCheck("cosets do not cover the plane".into()));
    }
    Ok(parts)
}

/// The Baer partition padded with `sqrt(q)` empty parts, realized as a
/// pencil with exactly `sqrt(q)` nonblocking members.
pub fn extremal_pencil(plane: Arc<Plane>) -> Result<Pencil> {
    let mut parts = baer_partition(&plane)?;
    parts.resize(plane.q() as usize + 1, plane.empty_set());
    let partition = Partition::new(&plane, parts)?;
    realize_partition(plane, &partition)
}
