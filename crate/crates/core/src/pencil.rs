//! Pencils `<F, G>` of plane curves: members, base locus, induced
//! partitions and per-member blocking classification.
//!
//! A point `P` with `(F(P), G(P)) != (0, 0)` lies on exactly one member,
//! the one with parameter `[-G(P) : F(P)]`. Member point sets are therefore
//! computed in a single pass over the plane, bucketing points by that
//! parameter; points of the base locus are added to every member.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::blocking::{check_size_bounds, classify, BlockingClass};
use crate::bounds::{exact_sqrt, CheckResult};
use crate::error::{Error, Result};
use crate::gf::{is_prime, Elem, FieldCtx, FieldDescriptor};
use crate::plane::{normalize, Plane, ProjParam};
use crate::pointset::PointSet;
use crate::poly::{expand, linear_combination, ExprJson, PolyExpr, DEFAULT_TERM_GUARD};

/// The parameter of the member through a point with values `F(P) = f`,
/// `G(P) = g`, or `None` on the base locus.
pub fn member_param(field: &FieldCtx, f: Elem, g: Elem) -> Option<ProjParam> {
    let [s, t] = normalize(field, [field.neg(g), f])?;
    Some(ProjParam::new(field, [s, t]).expect("normalized and nonzero"))
}

/// Zero set of `expr` among the points of the plane, by direct evaluation.
pub fn zero_set(plane: &Plane, expr: &PolyExpr) -> PointSet {
    let field = plane.field();
    PointSet::from_indices(
        plane.size(),
        plane.points().iter().enumerate().filter(|(_, p)| expr.is_zero_at(field, p)).map(|(i, _)| i),
    )
}

pub struct Pencil {
    plane: Arc<Plane>,
    f: PolyExpr,
    g: PolyExpr,
    values: OnceLock<Vec<[Elem; 2]>>,
}

impl std::fmt::Debug for Pencil {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("Pencil").field("q", &self.plane.q()).field("degree", &self.degree()).finish()
    }
}

impl Pencil {
    pub fn new(plane: Arc<Plane>, f: PolyExpr, g: PolyExpr) -> Result<Self> {
        Self::with_term_guard(plane, f, g, DEFAULT_TERM_GUARD)
    }

    /// Builds a pencil, rejecting `F` and `G` that are scalar multiples of
    /// each other. Proportionality is first refuted by evaluation on the
    /// plane; when the two forms agree up to scale at every point, they are
    /// expanded (within `term_guard`) and compared coefficientwise.
    pub fn with_term_guard(plane: Arc<Plane>, f: PolyExpr, g: PolyExpr, term_guard: u64) -> Result<Self> {
        let pencil = Self::unchecked(plane, f, g)?;
        if pencil.functionally_proportional() {
            let field = pencil.plane.field();
            let fs = expand(field, &pencil.f, term_guard)?;
            let gs = expand(field, &pencil.g, term_guard)?;
            if fs.is_proportional(field, &gs) {
                return Err(Error::ProportionalForms);
            }
        }
        Ok(pencil)
    }

    /// Validates degrees and field membership only; callers guarantee that
    /// `F` and `G` are not proportional.
    pub(crate) fn unchecked(plane: Arc<Plane>, f: PolyExpr, g: PolyExpr) -> Result<Self> {
        if f.degree() != g.degree() {
            return Err(Error::DegreeMismatch { left: f.degree(), right: g.degree() });
        }
        if f.degree() == 0 {
            return Err(Error::InvalidExpr("a pencil needs forms of degree at least 1".into()));
        }
        f.check_field(plane.field())?;
        g.check_field(plane.field())?;
        Ok(Pencil { plane, f, g, values: OnceLock::new() })
    }

    fn functionally_proportional(&self) -> bool {
        let field = self.plane.field();
        let vals = self.values();
        let Some(&[f0, g0]) = vals.iter().find(|v| !v[0].is_zero() || !v[1].is_zero()) else {
            return true;
        };
        vals.iter().all(|&[f1, g1]| field.mul(f0, g1) == field.mul(f1, g0))
    }

    pub fn plane(&self) -> &Arc<Plane> {
        &self.plane
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.plane.field()
    }

    pub fn f(&self) -> &PolyExpr {
        &self.f
    }

    pub fn g(&self) -> &PolyExpr {
        &self.g
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    /// `(F(P), G(P))` at the canonical representative of every point.
    pub fn values(&self) -> &[[Elem; 2]] {
        self.values.get_or_init(|| {
            let field = self.plane.field();
            self.plane.points().iter().map(|p| [self.f.eval_at(field, p), self.g.eval_at(field, p)]).collect()
        })
    }

    pub fn base_locus_points(&self) -> PointSet {
        PointSet::from_indices(
            self.plane.size(),
            self.values().iter().enumerate().filter(|(_, v)| v[0].is_zero() && v[1].is_zero()).map(|(i, _)| i),
        )
    }

    /// `s F + t G`.
    pub fn member(&self, param: &ProjParam) -> PolyExpr {
        linear_combination(param.s(), param.t(), &self.f, &self.g).expect("parameters are nonzero and degrees agree")
    }

    /// Point sets of all q+1 members in canonical parameter order.
    pub fn member_point_sets(&self) -> Vec<PointSet> {
        let field = self.plane.field();
        let q = self.plane.q();
        let mut sets = vec![self.plane.empty_set(); q as usize + 1];
        let mut base = self.plane.empty_set();
        for (i, &[fv, gv]) in self.values().iter().enumerate() {
            match member_param(field, fv, gv) {
                Some(param) => sets[param.index(q)].insert(i),
                None => base.insert(i),
            }
        }
        if !base.is_empty() {
            for s in &mut sets {
                *s = s.union(&base);
            }
        }
        sets
    }

    pub fn member_points(&self, param: &ProjParam) -> PointSet {
        self.member_point_sets().swap_remove(param.index(self.plane.q()))
    }

    /// The partition of the plane cut out by the members; requires an empty
    /// base locus.
    pub fn induced_partition(&self) -> Result<Partition> {
        let base = self.base_locus_points();
        if !base.is_empty() {
            return Err(Error::BaseLocusNotEmpty(base.len()));
        }
        Partition::new(&self.plane, self.member_point_sets())
    }

    pub fn to_json(&self) -> PencilJson {
        PencilJson { field: self.field().descriptor(), f: self.f.to_json(), g: self.g.to_json() }
    }

    pub fn from_json(json: &PencilJson) -> Result<Self> {
        let field = Arc::new(FieldCtx::from_descriptor(&json.field)?);
        let plane = Arc::new(Plane::new(field)?);
        Self::from_json_on(plane, json)
    }

    /// Parses a pencil over an existing plane; the field descriptors must
    /// match.
    pub fn from_json_on(plane: Arc<Plane>, json: &PencilJson) -> Result<Self> {
        Self::from_json_guarded(plane, json, DEFAULT_TERM_GUARD)
    }

    pub fn from_json_guarded(plane: Arc<Plane>, json: &PencilJson, term_guard: u64) -> Result<Self> {
        if plane.field().descriptor() != json.field {
            return Err(Error::FieldMismatch(format!(
                "pencil is over {:?} but the plane is over {:?}",
                json.field,
                plane.field().descriptor()
            )));
        }
        let f = json.f.to_expr(plane.field())?;
        let g = json.g.to_expr(plane.field())?;
        Self::with_term_guard(plane, f, g, term_guard)
    }
}

/// Wire form of a pencil: the field descriptor and both forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilJson {
    pub field: FieldDescriptor,
    #[serde(rename = "F")]
    pub f: ExprJson,
    #[serde(rename = "G")]
    pub g: ExprJson,
}

/// q+1 pairwise disjoint point sets covering the plane, labelled by the
/// parameters of P^1 in canonical order. Empty parts are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<PointSet>,
}

impl Partition {
    pub fn new(plane: &Plane, parts: Vec<PointSet>) -> Result<Self> {
        let q = plane.q() as usize;
        if parts.len() != q + 1 {
            return Err(Error::InvalidPartition(format!("expected {} parts, got {}", q + 1, parts.len())));
        }
        if parts.iter().any(|p| p.universe() != plane.size()) {
            return Err(Error::InvalidPartition("part is not a subset of this plane".into()));
        }
        let mut seen = plane.empty_set();
        for (i, part) in parts.iter().enumerate() {
            if seen.intersects(part) {
                return Err(Error::InvalidPartition(format!("part {i} overlaps an earlier part")));
            }
            seen = seen.union(part);
        }
        if seen.len() != plane.size() {
            return Err(Error::InvalidPartition(format!("{} points are not covered", plane.size() - seen.len())));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[PointSet] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<PointSet> {
        self.parts
    }

    /// Index of the part containing each point.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.parts[0].universe()];
        for (i, part) in self.parts.iter().enumerate() {
            for pt in part.iter() {
                out[pt] = i;
            }
        }
        out
    }
}

/// Wire form for partitions and covers:
/// `{"q": .., "parts": [[[x,y,z],...],...], "common": [[x,y,z],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub q: u32,
    pub parts: Vec<Vec<[u32; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub common: Option<Vec<[u32; 3]>>,
}

impl PartitionJson {
    pub fn from_sets(plane: &Plane, parts: &[PointSet], common: Option<&PointSet>) -> Self {
        let raw = |s: &PointSet| plane.points_of(s).iter().map(|p| p.raw()).collect();
        PartitionJson { q: plane.q(), parts: parts.iter().map(raw).collect(), common: common.map(raw) }
    }

    pub fn point_sets(&self, plane: &Plane) -> Result<(Vec<PointSet>, Option<PointSet>)> {
        if self.q != plane.q() {
            return Err(Error::FieldMismatch(format!("file has q = {}, field has q = {}", self.q, plane.q())));
        }
        let to_set = |pts: &Vec<[u32; 3]>| -> Result<PointSet> {
            let mut s = plane.empty_set();
            for &v in pts {
                s.insert(plane.point_index(&plane.point_from_raw(v)?));
            }
            Ok(s)
        };
        let parts = self.parts.iter().map(to_set).collect::<Result<Vec<_>>>()?;
        let common = self.common.as_ref().map(to_set).transpose()?;
        Ok((parts, common))
    }

    pub fn to_partition(&self, plane: &Plane) -> Result<Partition> {
        let (parts, _) = self.point_sets(plane)?;
        Partition::new(plane, parts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberRecord {
    pub param: ProjParam,
    pub count: usize,
    pub class: BlockingClass,
}

/// Per-member classification of a pencil and the counting checks that
/// apply to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    pub d: u32,
    pub base_locus_size: usize,
    pub members: Vec<MemberRecord>,
    /// Number of blocking members.
    pub m: usize,
    pub nonblocking: usize,
    pub checks: BTreeMap<String, CheckResult>,
}

impl PencilReport {
    pub fn base_point_free(&self) -> bool {
        self.base_locus_size == 0
    }

    pub fn nontrivially_blocking(&self) -> usize {
        self.members.iter().filter(|m| m.class == BlockingClass::NontrivialBlocking).count()
    }

    pub fn any_check_failed(&self) -> bool {
        self.checks.values().any(|c| c.failed())
    }
}

pub fn classify_pencil(pencil: &Pencil) -> PencilReport {
    let plane = pencil.plane();
    let field = plane.field();
    let q = plane.q();
    let sets = pencil.member_point_sets();
    let base_locus_size = pencil.base_locus_points().len();
    let members: Vec<MemberRecord> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| MemberRecord { param: ProjParam::from_index(q, i), count: s.len(), class: classify(plane, s) })
        .collect();
    let m = members.iter().filter(|r| r.class.is_blocking()).count();
    let mut report = PencilReport {
        p: field.p(),
        n: field.n(),
        q,
        d: pencil.degree(),
        base_locus_size,
        members,
        m,
        nonblocking: q as usize + 1 - m,
        checks: BTreeMap::new(),
    };

    let mut checks = BTreeMap::new();
    if report.base_point_free() {
        let total: usize = report.members.iter().map(|r| r.count).sum();
        checks.insert(
            "partition".to_string(),
            CheckResult::from_bool(total == plane.size(), format!("member sizes sum to {total} of {}", plane.size())),
        );
        checks.insert(
            "at_least_one_nonblocking".to_string(),
            CheckResult::from_bool(report.nonblocking >= 1, format!("nonblocking = {}", report.nonblocking)),
        );
        let trivial = report.members.iter().filter(|r| matches!(r.class, BlockingClass::TrivialBlocking(_))).count();
        checks.insert(
            "at_most_one_trivial".to_string(),
            CheckResult::from_bool(trivial <= 1, format!("{trivial} trivially blocking member(s)")),
        );
        checks.insert("sqrt_bound".to_string(), check_sqrt_bound(&report).expect("base point free"));
        checks.insert("degree_bound".to_string(), check_degree_bound(&report).expect("base point free"));
        checks.insert(
            "prime_bound".to_string(),
            check_prime_bound(&report).unwrap_or_else(|e| CheckResult::skipped(e.to_string())),
        );
    } else {
        let why = format!("{base_locus_size} F_q-point(s) in the base locus");
        for name in ["sqrt_bound", "degree_bound", "prime_bound"] {
            checks.insert(name.to_string(), CheckResult::skipped(why.clone()));
        }
    }

    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, s) in sets.iter().enumerate() {
        if report.members[i].class != BlockingClass::NontrivialBlocking {
            continue;
        }
        checked += 1;
        let r = check_size_bounds(plane, s, Some(pencil.degree()));
        if r.any_failed() {
            failures.push(format!("member {}: size {}", report.members[i].param, r.size));
        }
    }
    checks.insert(
        "size_bounds".to_string(),
        if checked == 0 {
            CheckResult::skipped("no nontrivially blocking members")
        } else {
            CheckResult::from_bool(
                failures.is_empty(),
                if failures.is_empty() {
                    format!("{checked} nontrivially blocking member(s) meet every size bound")
                } else {
                    failures.join("; ")
                },
            )
        },
    );
    report.checks = checks;
    report
}

fn require_base_point_free(report: &PencilReport) -> Result<()> {
    if report.base_point_free() {
        Ok(())
    } else {
        Err(Error::BaseLocusNotEmpty(report.base_locus_size))
    }
}

/// At least `sqrt(q)` nonblocking members: `nonblocking^2 >= q`.
pub fn check_sqrt_bound(report: &PencilReport) -> Result<CheckResult> {
    require_base_point_free(report)?;
    let nb = report.nonblocking as u64;
    let q = report.q as u64;
    let relation = match exact_sqrt(q) {
        Some(r) if nb == r => "=",
        _ => ">=",
    };
    Ok(CheckResult::from_bool(
        nb * nb >= q,
        format!("nonblocking = {nb}, nonblocking^2 = {} {relation} q = {q}", nb * nb),
    ))
}

/// For degree `d <= q`, at least `(q+1)/(d+1)` nonblocking members.
pub fn check_degree_bound(report: &PencilReport) -> Result<CheckResult> {
    require_base_point_free(report)?;
    let (nb, d, q) = (report.nonblocking as u64, report.d as u64, report.q as u64);
    if d > q {
        return Ok(CheckResult::skipped(format!("d = {d} > q = {q}")));
    }
    Ok(CheckResult::from_bool(
        nb * (d + 1) > q,
        format!("nonblocking * (d+1) = {nb} * {} = {} >= q + 1 = {}", d + 1, nb * (d + 1), q + 1),
    ))
}

/// For q = p prime, at least `(p+1)/3` nonblocking members.
pub fn check_prime_bound(report: &PencilReport) -> Result<CheckResult> {
    require_base_point_free(report)?;
    let q = report.q as u64;
    if !is_prime(q) {
        return Err(Error::Inapplicable(format!("q = {q} is not prime")));
    }
    let nb = report.nonblocking as u64;
    Ok(CheckResult::from_bool(3 * nb > q, format!("3 * nonblocking = {} >= p + 1 = {}", 3 * nb, q + 1)))
}
