//! Brute-force oracles that only use field arithmetic and point
//! coordinates, independent of the incidence bitmap and bucketing code.

#![allow(dead_code)]

use pencil_core::{Elem, FieldCtx, Plane, PointSet};

fn on_line(field: &FieldCtx, line: [Elem; 3], point: [Elem; 3]) -> bool {
    let s = (0..3).fold(Elem::ZERO, |acc, i| field.add(acc, field.mul(line[i], point[i])));
    s.is_zero()
}

/// `t[i]` = number of lines meeting `set` in `i` points, by evaluating
/// every line form at every point.
pub fn naive_profile(plane: &Plane, set: &PointSet) -> Vec<u64> {
    let field = plane.field();
    let mut t = vec![0u64; plane.q() as usize + 2];
    for line in plane.lines() {
        let k = set.iter().filter(|&i| on_line(field, line.coords(), plane.point(i).coords())).count();
        t[k] += 1;
    }
    t
}

/// `(blocking, contains a full line)`.
pub fn naive_blocking(plane: &Plane, set: &PointSet) -> (bool, bool) {
    let q = plane.q() as usize;
    let t = naive_profile(plane, set);
    (t[0] == 0, t[q + 1] > 0)
}

/// Bruen: `|S| >= q + sqrt(q) + 1`, checked as `(|S| - q - 1)^2 >= q`.
pub fn meets_bruen(q: u64, size: u64) -> bool {
    size > q + 1 && (size - q - 1) * (size - q - 1) >= q
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(p, n)` for the prime powers used in the suites.
pub fn split(q: u32) -> (u32, u32) {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut n = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        n += 1;
    }
    (p, n)
}
