//! Bitsets over the point indices of a plane.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    words: Vec<u64>,
    universe: usize,
}

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        PointSet { words: vec![0; universe.div_ceil(64)], universe }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "point index {i} out of range");
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.universe {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + bit)
            })
        })
    }

    #[inline]
    pub fn intersects(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn intersection_len(&self, other: &PointSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> PointSet {
        PointSet::full(self.universe).difference(self)
    }

    fn zip_with(&self, other: &PointSet, op: impl Fn(u64, u64) -> u64) -> PointSet {
        assert_eq!(self.universe, other.universe, "point sets over different planes");
        PointSet {
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
            universe: self.universe,
        }
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
