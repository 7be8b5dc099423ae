//! Bitsets over dense index universes.
//!
//! [`ElemSet`] covers lattice elements (at most 64 of them) and fits in one
//! word. [`VecSet`] covers quasimodule carriers of arbitrary size.

use std::cmp::Ordering;
use std::fmt;

/// A subset of lattice elements, bit `i` set iff element `i` is a member.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(x: usize) -> Self {
        ElemSet(1u64 << x)
    }

    /// The set `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for x in it {
            s.insert(x);
        }
        s
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x < 64 && self.0 & (1u64 << x) != 0
    }

    #[inline]
    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u64 << x;
    }

    #[inline]
    pub fn remove(&mut self, x: usize) {
        self.0 &= !(1u64 << x);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    /// Members in increasing index order.
    pub fn iter(self) -> ElemIter {
        ElemIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for ElemSet {
    type Item = usize;
    type IntoIter = ElemIter;
    fn into_iter(self) -> ElemIter {
        self.iter()
    }
}

pub struct ElemIter(u64);

impl Iterator for ElemIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// A subset of a quasimodule carrier.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VecSet {
    universe: usize,
    words: Vec<u64>,
}

impl VecSet {
    pub fn new(universe: usize) -> Self {
        VecSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = VecSet::new(universe);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, it: I) -> Self {
        let mut s = VecSet::new(universe);
        for x in it {
            s.insert(x);
        }
        s
    }

    /// Builds the subset whose bits are the low `universe` bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= 64);
        let mut s = VecSet::new(universe);
        if universe > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.universe % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.words[x / 64] & (1u64 << (x % 64)) != 0
    }

    /// Inserts `x`, returning `true` if it was not already present.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.universe, "index {x} outside universe {}", self.universe);
        let w = &mut self.words[x / 64];
        let mask = 1u64 << (x % 64);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    pub fn remove(&mut self, x: usize) -> bool {
        if x >= self.universe {
            return false;
        }
        let w = &mut self.words[x / 64];
        let mask = 1u64 << (x % 64);
        let had = *w & mask != 0;
        *w &= !mask;
        had
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn is_subset(&self, other: &VecSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &VecSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &VecSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn difference_with(&mut self, other: &VecSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn union(&self, other: &VecSet) -> VecSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VecSet) -> VecSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VecSet) -> VecSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    /// Members in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            ElemIter(w).map(move |b| wi * 64 + b)
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical order: by cardinality, then lexicographically by the sorted
    /// member list.
    pub fn canonical_cmp(&self, other: &VecSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for VecSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
