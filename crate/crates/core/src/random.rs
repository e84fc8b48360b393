//! Seeded generators for randomized experiments.
//!
//! All streams come from `ChaCha8Rng::seed_from_u64`, which is specified
//! bit-for-bit and platform independent, so a seed fixes every sample.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gf::{Elem, FieldCtx};
use crate::pencil::Partition;
use crate::plane::Plane;
use crate::pointset::PointSet;
use crate::poly::{PointFunction, PolyExpr, SparsePoly};

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_elem<R: Rng>(field: &FieldCtx, rng: &mut R) -> Elem {
    Elem(rng.gen_range(0..field.q()))
}

/// Each point gets an independent uniform label in `0..=q`.
pub fn random_partition<R: Rng>(plane: &Plane, rng: &mut R) -> Partition {
    let q = plane.q() as usize;
    let mut parts = vec![plane.empty_set(); q + 1];
    for i in 0..plane.size() {
        parts[rng.gen_range(0..=q)].insert(i);
    }
    Partition::new(plane, parts).expect("labels cover every point once")
}

/// Each point is included independently with probability 1/2.
pub fn random_point_set<R: Rng>(plane: &Plane, rng: &mut R) -> PointSet {
    PointSet::from_indices(plane.size(), (0..plane.size()).filter(|_| rng.gen_bool(0.5)))
}

/// Uniform values, resampled until not identically zero.
pub fn random_point_function<R: Rng>(plane: &Plane, rng: &mut R) -> PointFunction {
    loop {
        let f = PointFunction::from_fn(plane, |_| random_elem(plane.field(), rng));
        if !f.is_zero() {
            return f;
        }
    }
}

/// Exponent triples of all monomials of the given degree.
pub fn monomials(degree: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            out.push([a, b, degree - a - b]);
        }
    }
    out
}

/// A nonzero form with independent uniform coefficients on every monomial.
pub fn random_form<R: Rng>(field: &FieldCtx, degree: u32, rng: &mut R) -> Result<PolyExpr> {
    let mons = monomials(degree);
    loop {
        let terms: Vec<_> = mons.iter().map(|&e| (e, random_elem(field, rng))).collect();
        let poly = SparsePoly::from_terms(field, degree, terms)?;
        if !poly.is_zero() {
            return Ok(poly.to_expr());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let plane = Plane::over(3, 1).unwrap();
        let a = random_partition(&plane, &mut seeded_rng(7));
        let b = random_partition(&plane, &mut seeded_rng(7));
        assert_eq!(a, b);
        let c = random_point_set(&plane, &mut seeded_rng(7));
        assert_eq!(c, random_point_set(&plane, &mut seeded_rng(7)));
    }

    #[test]
    fn monomial_count() {
        for d in 0..6u32 {
            let m = monomials(d);
            assert_eq!(m.len() as u32, (d + 1) * (d + 2) / 2);
            assert!(m.iter().all(|e| e.iter().sum::<u32>() == d));
        }
    }

    #[test]
    fn forms_have_requested_degree() {
        let field = FieldCtx::new(5, 1).unwrap();
        let mut rng = seeded_rng(1);
        for d in 1..4 {
            assert_eq!(random_form(&field, d, &mut rng).unwrap().degree(), d);
        }
        let plane = Plane::over(2, 1).unwrap();
        assert!(!random_point_function(&plane, &mut rng).is_zero());
    }
}
