//! Exact thresholds for blocking-set sizes and pass/fail check records.
//!
//! Real-valued bounds involving `sqrt(q)` are represented exactly as
//! `a + b*sqrt(r)` with rational `a, b` and compared against integers by
//! squaring, so no verdict depends on floating point.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::is_prime;

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn ceil_sqrt(n: u64) -> u64 {
    let r = isqrt(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// `Some(sqrt(n))` when n is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// `rational + coeff * sqrt(radicand)`, kept exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Surd {
    rational: Ratio<i128>,
    coeff: Ratio<i128>,
    radicand: u64,
}

impl Surd {
    pub fn new(rational: Ratio<i128>, coeff: Ratio<i128>, radicand: u64) -> Self {
        match exact_sqrt(radicand) {
            Some(r) => Surd { rational: rational + coeff * r as i128, coeff: Ratio::from_integer(0), radicand: 0 },
            None => Surd { rational, coeff, radicand },
        }
    }

    pub fn from_rational(r: Ratio<i128>) -> Self {
        Surd::new(r, Ratio::from_integer(0), 0)
    }

    pub fn as_rational(&self) -> Option<Ratio<i128>> {
        (self.radicand == 0 || self.coeff == Ratio::from_integer(0)).then_some(self.rational)
    }

    /// Exact comparison `n.cmp(self)`.
    pub fn cmp_int(&self, n: i128) -> Ordering {
        let c = Ratio::from_integer(n) - self.rational;
        let zero = Ratio::from_integer(0);
        if self.radicand == 0 || self.coeff == zero {
            return c.cmp(&zero);
        }
        // compare c with coeff * sqrt(radicand)
        let rhs_sign = self.coeff.cmp(&zero);
        match (c.cmp(&zero), rhs_sign) {
            (Ordering::Less | Ordering::Equal, Ordering::Greater) => Ordering::Less,
            (Ordering::Greater | Ordering::Equal, Ordering::Less) => Ordering::Greater,
            (cs, _) => {
                let lhs_sq = c * c;
                let rhs_sq = self.coeff * self.coeff * self.radicand as i128;
                let mag = lhs_sq.cmp(&rhs_sq);
                if cs == Ordering::Greater {
                    mag
                } else {
                    mag.reverse()
                }
            }
        }
    }

    pub fn approx(&self) -> f64 {
        let r = *self.rational.numer() as f64 / *self.rational.denom() as f64;
        let c = *self.coeff.numer() as f64 / *self.coeff.denom() as f64;
        r + c * (self.radicand as f64).sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "{} + {}*sqrt({})", self.rational, self.coeff, self.radicand),
        }
    }
}

/// Smallest size of a nontrivial blocking set allowed by `q + sqrt(q) + 1`,
/// i.e. `q + 1 + ceil(sqrt(q))`.
pub fn bruen_threshold(q: u64) -> u64 {
    q + 1 + ceil_sqrt(q)
}

/// `3(p+1)/2`, the lower bound for nontrivial blocking sets over a prime
/// field.
pub fn blokhuis_threshold(p: u64) -> Result<Ratio<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(Ratio::new(3 * (p + 1), 2))
}

/// `q + (q + sqrt(q)) / d`: a degree-d curve whose points form a nontrivial
/// blocking set has strictly more points than this.
pub fn curve_blocking_threshold(q: u64, d: u64) -> Result<Surd> {
    if d == 0 {
        return Err(Error::InvalidExpr("degree must be at least 1".into()));
    }
    let d = d as i128;
    let q = q as i128;
    Ok(Surd::new(Ratio::from_integer(q) + Ratio::new(q, d), Ratio::new(1, d), q as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one theorem check with the exact values that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub status: CheckStatus,
    pub evidence: String,
}

impl CheckResult {
    pub fn from_bool(ok: bool, evidence: String) -> Self {
        CheckResult { status: if ok { CheckStatus::Pass } else { CheckStatus::Fail }, evidence }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        CheckResult { status: CheckStatus::Skipped, evidence: reason.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        assert_eq!(bruen_threshold(9), 13);
        assert_eq!(bruen_threshold(4), 7);
        // 2 + sqrt(2) + 1 = 4.41.., smallest integer above is 5
        assert_eq!(bruen_threshold(2), 5);
        assert_eq!(blokhuis_threshold(7).unwrap(), Ratio::from_integer(12));
        assert_eq!(blokhuis_threshold(2).unwrap(), Ratio::new(9, 2));
        assert!(matches!(blokhuis_threshold(9), Err(Error::NotPrime(9))));
        assert_eq!(curve_blocking_threshold(4, 9).unwrap().as_rational(), Some(Ratio::new(14, 3)));
        assert!(curve_blocking_threshold(5, 0).is_err());
    }

    #[test]
    fn surd_comparisons() {
        // 5 + (5 + sqrt5)/33 ~ 5.219
        let t = curve_blocking_threshold(5, 33).unwrap();
        assert!(t.as_rational().is_none());
        assert_eq!(t.cmp_int(5), Ordering::Less);
        assert_eq!(t.cmp_int(6), Ordering::Greater);
        // 1 + sqrt(2) vs 2 and 3
        let s = Surd::new(Ratio::from_integer(1), Ratio::from_integer(1), 2);
        assert_eq!(s.cmp_int(2), Ordering::Less);
        assert_eq!(s.cmp_int(3), Ordering::Greater);
        // 3 - sqrt(2) ~ 1.586
        let s = Surd::new(Ratio::from_integer(3), Ratio::from_integer(-1), 2);
        assert_eq!(s.cmp_int(1), Ordering::Less);
        assert_eq!(s.cmp_int(2), Ordering::Greater);
        assert_eq!(Surd::new(Ratio::from_integer(1), Ratio::from_integer(1), 9).cmp_int(4), Ordering::Equal);
    }

    #[test]
    fn sqrt_helpers() {
        assert_eq!(ceil_sqrt(2), 2);
        assert_eq!(ceil_sqrt(16), 4);
        assert_eq!(ceil_sqrt(17), 5);
        assert_eq!(exact_sqrt(25), Some(5));
        assert_eq!(exact_sqrt(24), None);
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }
}
