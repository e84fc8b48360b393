//! Blocking-set classification and line-intersection profiles.

use std::cmp::Ordering;

use serde::{Serialize, Serializer};

use crate::bounds::{blokhuis_threshold, bruen_threshold, curve_blocking_threshold, CheckResult};
use crate::gf::is_prime;
use crate::plane::{Plane, ProjLine};
use crate::pointset::PointSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockingClass {
    Nonblocking,
    /// Contains every point of the witness line.
    TrivialBlocking(ProjLine),
    NontrivialBlocking,
}

impl BlockingClass {
    pub fn is_blocking(&self) -> bool {
        !matches!(self, BlockingClass::Nonblocking)
    }

    pub fn label(&self) -> &'static str {
        match self {
            BlockingClass::Nonblocking => "non",
            BlockingClass::TrivialBlocking(_) => "trivial",
            BlockingClass::NontrivialBlocking => "nontrivial",
        }
    }
}

impl Serialize for BlockingClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// Every line meets `set`.
pub fn is_blocking(plane: &Plane, set: &PointSet) -> bool {
    (0..plane.size()).all(|l| plane.line_points(l).intersects(set))
}

pub fn classify(plane: &Plane, set: &PointSet) -> BlockingClass {
    if !is_blocking(plane, set) {
        return BlockingClass::Nonblocking;
    }
    match (0..plane.size()).find(|&l| plane.line_points(l).is_subset(set)) {
        Some(l) => BlockingClass::TrivialBlocking(plane.line(l)),
        None => BlockingClass::NontrivialBlocking,
    }
}

/// `t[i]` is the number of lines meeting the set in exactly `i` points,
/// for `i` in `0..=q+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceProfile {
    #[serde(rename = "N")]
    pub size: u64,
    pub t: Vec<u64>,
}

impl IncidenceProfile {
    pub fn line_count(&self) -> u64 {
        self.t.iter().sum()
    }

    /// `sum i * t_i`: point-line incidences inside the set.
    pub fn incidences(&self) -> u64 {
        self.t.iter().enumerate().map(|(i, &t)| i as u64 * t).sum()
    }

    /// `sum C(i,2) * t_i`: pairs of set points counted through their line.
    pub fn pair_count(&self) -> u64 {
        self.t.iter().enumerate().map(|(i, &t)| (i as u64 * i.saturating_sub(1) as u64 / 2) * t).sum()
    }

    /// The three double-counting identities for a set in PG(2,q).
    pub fn identities_hold(&self, q: u64) -> bool {
        let n = self.size;
        self.line_count() == q * q + q + 1
            && self.incidences() == (q + 1) * n
            && self.pair_count() == n * n.saturating_sub(1) / 2
    }
}

pub fn incidence_profile(plane: &Plane, set: &PointSet) -> IncidenceProfile {
    let q = plane.q() as usize;
    let mut t = vec![0u64; q + 2];
    for l in 0..plane.size() {
        t[plane.line_points(l).intersection_len(set)] += 1;
    }
    IncidenceProfile { size: set.len() as u64, t }
}

/// Size checks against the known lower bounds for nontrivial blocking sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeBoundReport {
    pub applicable: bool,
    pub size: u64,
    pub bruen: CheckResult,
    pub blokhuis: CheckResult,
    pub curve: CheckResult,
}

impl SizeBoundReport {
    pub fn any_failed(&self) -> bool {
        self.bruen.failed() || self.blokhuis.failed() || self.curve.failed()
    }
}

/// Checks `set` against the Bruen bound, the prime-field bound when q is
/// prime, and the degree-d curve bound when `degree` is given. A failure
/// means the set was misclassified, since all three are theorems.
pub fn check_size_bounds(plane: &Plane, set: &PointSet, degree: Option<u32>) -> SizeBoundReport {
    let size = set.len() as u64;
    let class = classify(plane, set);
    if class != BlockingClass::NontrivialBlocking {
        let why = format!("set is {} blocking", class.label());
        return SizeBoundReport {
            applicable: false,
            size,
            bruen: CheckResult::skipped(why.clone()),
            blokhuis: CheckResult::skipped(why.clone()),
            curve: CheckResult::skipped(why),
        };
    }
    let q = plane.q() as u64;
    let bruen = bruen_threshold(q);
    let bruen = CheckResult::from_bool(size >= bruen, format!("|S| = {size} >= {bruen} = q + 1 + ceil(sqrt({q}))"));
    let blokhuis = if is_prime(q) {
        let t = blokhuis_threshold(q).expect("q is prime");
        // |S| >= 3(p+1)/2  <=>  2|S| >= 3(p+1)
        CheckResult::from_bool(2 * size >= 3 * (q + 1), format!("|S| = {size} >= {t} = 3(p+1)/2"))
    } else {
        CheckResult::skipped(format!("q = {q} is not prime"))
    };
    let curve = match degree {
        Some(d) => {
            let t = curve_blocking_threshold(q, d as u64).expect("degree is positive");
            CheckResult::from_bool(
                t.cmp_int(size as i128) == Ordering::Greater,
                format!("|S| = {size} > {t} = q + (q + sqrt(q))/{d}"),
            )
        }
        None => CheckResult::skipped("no curve degree supplied"),
    };
    SizeBoundReport { applicable: true, size, bruen, blokhuis, curve }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::CheckStatus;

    #[test]
    fn basic_classification() {
        let plane = Plane::over(3, 1).unwrap();
        let line = plane.line_points(4).clone();
        assert!(is_blocking(&plane, &line));
        assert_eq!(classify(&plane, &line), BlockingClass::TrivialBlocking(plane.line(4)));
        assert_eq!(classify(&plane, &plane.empty_set()), BlockingClass::Nonblocking);
        let single = PointSet::from_indices(plane.size(), [0]);
        assert!(!is_blocking(&plane, &single));
        assert!(is_blocking(&plane, &plane.full_set()));
        // the full plane contains the first line
        assert_eq!(classify(&plane, &plane.full_set()), BlockingClass::TrivialBlocking(plane.line(0)));
    }

    #[test]
    fn profiles_in_pg22() {
        let plane = Plane::over(2, 1).unwrap();
        let one = PointSet::from_indices(7, [3]);
        assert_eq!(incidence_profile(&plane, &one).t, vec![4, 3, 0, 0]);
        let line = plane.line_points(0).clone();
        let prof = incidence_profile(&plane, &line);
        assert_eq!(prof.t, vec![0, 6, 0, 1]);
        assert!(prof.identities_hold(2));
        assert_eq!(serde_json::to_string(&prof).unwrap(), r#"{"N":3,"t":[0,6,0,1]}"#);
    }

    #[test]
    fn nonblocking_bounds_not_applicable() {
        let plane = Plane::over(5, 1).unwrap();
        let r = check_size_bounds(&plane, &PointSet::from_indices(plane.size(), [0, 1]), Some(2));
        assert!(!r.applicable);
        assert_eq!(r.bruen.status, CheckStatus::Skipped);
    }

    #[test]
    fn projective_triangle_is_nontrivial() {
        // The projective triangle in PG(2,3): a nontrivial blocking set of
        // size 3(q+1)/2 = 6, meeting the prime-field bound with equality.
        let plane = Plane::over(3, 1).unwrap();
        let pts: Vec<_> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 2], [1, 0, 2], [1, 2, 0]]
            .iter()
            .map(|&v| plane.point_from_raw(v).unwrap())
            .collect();
        let set = plane.set_of(&pts);
        assert_eq!(classify(&plane, &set), BlockingClass::NontrivialBlocking);
        let r = check_size_bounds(&plane, &set, None);
        assert!(r.applicable && r.bruen.passed() && r.blokhuis.passed());
        assert_eq!(r.curve.status, CheckStatus::Skipped);
        // 6 > 3 + (3 + sqrt 3)/3 ~ 4.58, but not > 3 + (3 + sqrt 3)/1
        assert!(check_size_bounds(&plane, &set, Some(3)).curve.passed());
        assert!(check_size_bounds(&plane, &set, Some(1)).curve.failed());
    }
}
