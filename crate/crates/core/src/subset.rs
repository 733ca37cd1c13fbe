//! Fixed-width bitmask subsets.
//!
//! A [`Subset`] is tagged with a zero-sized carrier marker so that subsets of
//! the group and subsets of the acted-on space cannot be mixed up at compile
//! time. Width mismatches (two different groups) are caught at runtime.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

/// Marker for subsets of a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OnGroup;

/// Marker for subsets of a space acted on by a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OnSpace;

/// Marker for subsets of local index ranges (solver internals).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Local;

pub type GSet = Subset<OnGroup>;
pub type ESet = Subset<OnSpace>;
pub type LocalSet = Subset<Local>;

const WORD: usize = 64;

pub struct Subset<C> {
    len: usize,
    words: Vec<u64>,
    _carrier: PhantomData<C>,
}

impl<C> Clone for Subset<C> {
    fn clone(&self) -> Self {
        Subset { len: self.len, words: self.words.clone(), _carrier: PhantomData }
    }
}

impl<C> PartialEq for Subset<C> {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.words == other.words
    }
}

impl<C> Eq for Subset<C> {}

impl<C> Hash for Subset<C> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.len.hash(state);
        self.words.hash(state);
    }
}

/// Lexicographic order on the sorted member lists.
impl<C> Ord for Subset<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter()).then(self.len.cmp(&other.len))
    }
}

impl<C> PartialOrd for Subset<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serializes as the sorted array of members.
impl<C> serde::Serialize for Subset<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<C> fmt::Debug for Subset<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<C> Subset<C> {
    pub fn empty(len: usize) -> Self {
        Subset { len, words: vec![0; len.div_ceil(WORD)], _carrier: PhantomData }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn singleton(len: usize, x: usize) -> Self {
        let mut s = Self::empty(len);
        s.insert(x);
        s
    }

    /// Builds a subset from element indices; indices out of range panic.
    pub fn from_elements<I: IntoIterator<Item = usize>>(len: usize, elements: I) -> Self {
        let mut s = Self::empty(len);
        for x in elements {
            s.insert(x);
        }
        s
    }

    /// Reinterprets the same bits under another carrier marker.
    pub fn recast<D>(self) -> Subset<D> {
        Subset { len: self.len, words: self.words, _carrier: PhantomData }
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Width of the ambient carrier (not the number of members).
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.len && (self.words[x / WORD] >> (x % WORD)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.len, "element {x} out of range for width {}", self.len);
        let w = &mut self.words[x / WORD];
        let bit = 1u64 << (x % WORD);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, x: usize) -> bool {
        if x >= self.len {
            return false;
        }
        let w = &mut self.words[x / WORD];
        let bit = 1u64 << (x % WORD);
        let present = *w & bit != 0;
        *w &= !bit;
        present
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> SubsetIter<'_> {
        SubsetIter { words: &self.words, index: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn same_width(&self, other: &Self) -> bool {
        self.len == other.len
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersection_count(&self, other: &Self) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }
}

pub struct SubsetIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for SubsetIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a, C> IntoIterator for &'a Subset<C> {
    type Item = usize;
    type IntoIter = SubsetIter<'a>;

    fn into_iter(self) -> SubsetIter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_trims_tail_bits() {
        let s = GSet::full(70);
        assert_eq!(s.count(), 70);
        assert!(s.is_full());
        assert_eq!(s.complement().count(), 0);
    }

    #[test]
    fn iteration_is_sorted() {
        let s = GSet::from_elements(200, [130, 3, 64, 63, 199]);
        assert_eq!(s.to_vec(), vec![3, 63, 64, 130, 199]);
        assert_eq!(s.first(), Some(3));
        assert_eq!(GSet::empty(10).first(), None);
    }

    #[test]
    fn lexicographic_order_on_members() {
        let a = GSet::from_elements(100, [10]);
        let b = GSet::from_elements(100, [90]);
        let c = GSet::from_elements(100, [10, 90]);
        assert!(a < b);
        assert!(a < c);
        assert!(c < b);
    }

    #[test]
    fn set_algebra() {
        let a = GSet::from_elements(8, [0, 1, 2]);
        let b = GSet::from_elements(8, [2, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 1]);
        assert!(a.intersects(&b));
        assert!(!a.is_subset(&b));
        assert!(a.intersection(&b).is_subset(&a));
        assert_eq!(a.intersection_count(&b), 1);
    }
}
