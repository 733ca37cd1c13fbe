//! Exact branch-and-bound solvers for the two NP-hard kernels behind the
//! covering and thickness numbers, plus their greedy counterparts.
//!
//! Both solvers are generic over [`Bits`] so that instances on at most 64
//! local indices run on plain `u64` masks.

mod independent_set;
mod set_cover;

pub use independent_set::{exact_independent_set, greedy_independent_set};
pub use set_cover::{exact_set_cover, greedy_set_cover};

use crate::subset::LocalSet;

/// Default node limit for exact searches on instances above the 64-element
/// guarantee.
pub const LARGE_INSTANCE_NODE_LIMIT: u64 = 2_000_000;

pub trait Bits: Clone + PartialEq {
    fn empty(width: usize) -> Self;
    fn insert(&mut self, i: usize);
    fn remove(&mut self, i: usize);
    fn contains(&self, i: usize) -> bool;
    fn count(&self) -> usize;
    fn is_empty(&self) -> bool;
    fn first(&self) -> Option<usize>;
    fn and(&self, other: &Self) -> Self;
    fn and_not(&self, other: &Self) -> Self;
    fn is_subset(&self, other: &Self) -> bool;
    fn members(&self) -> Vec<usize>;

    fn and_count(&self, other: &Self) -> usize {
        self.and(other).count()
    }
}

impl Bits for u64 {
    fn empty(width: usize) -> Self {
        debug_assert!(width <= 64);
        0
    }
    #[inline]
    fn insert(&mut self, i: usize) {
        *self |= 1 << i;
    }
    #[inline]
    fn remove(&mut self, i: usize) {
        *self &= !(1 << i);
    }
    #[inline]
    fn contains(&self, i: usize) -> bool {
        (self >> i) & 1 == 1
    }
    #[inline]
    fn count(&self) -> usize {
        self.count_ones() as usize
    }
    #[inline]
    fn is_empty(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn first(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }
    #[inline]
    fn and(&self, other: &Self) -> Self {
        self & other
    }
    #[inline]
    fn and_not(&self, other: &Self) -> Self {
        self & !other
    }
    #[inline]
    fn is_subset(&self, other: &Self) -> bool {
        self & !other == 0
    }
    fn members(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.count_ones() as usize);
        let mut w = *self;
        while w != 0 {
            out.push(w.trailing_zeros() as usize);
            w &= w - 1;
        }
        out
    }
    #[inline]
    fn and_count(&self, other: &Self) -> usize {
        (self & other).count_ones() as usize
    }
}

impl Bits for LocalSet {
    fn empty(width: usize) -> Self {
        LocalSet::empty(width)
    }
    fn insert(&mut self, i: usize) {
        LocalSet::insert(self, i);
    }
    fn remove(&mut self, i: usize) {
        LocalSet::remove(self, i);
    }
    fn contains(&self, i: usize) -> bool {
        LocalSet::contains(self, i)
    }
    fn count(&self) -> usize {
        LocalSet::count(self)
    }
    fn is_empty(&self) -> bool {
        LocalSet::is_empty(self)
    }
    fn first(&self) -> Option<usize> {
        LocalSet::first(self)
    }
    fn and(&self, other: &Self) -> Self {
        self.intersection(other)
    }
    fn and_not(&self, other: &Self) -> Self {
        self.difference(other)
    }
    fn is_subset(&self, other: &Self) -> bool {
        LocalSet::is_subset(self, other)
    }
    fn members(&self) -> Vec<usize> {
        self.to_vec()
    }
    fn and_count(&self, other: &Self) -> usize {
        self.intersection_count(other)
    }
}

/// Outcome of a possibly node-limited exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// Chosen local indices, sorted.
    pub chosen: Vec<usize>,
    /// Whether the search ran to completion, so `chosen` is optimal.
    pub optimal: bool,
}
