//! Fixed-width bit sets over an indexed universe.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

/// Number of 64-bit words backing every [`ElementSet`].
pub const WORDS: usize = 16;

/// Largest universe an [`ElementSet`] can address.
pub const MAX_ELEMENTS: usize = WORDS * 64;

/// A subset of a universe of `width` elements.
///
/// Bits at positions `>= width` are always zero, so derived equality and
/// hashing are set equality. Two sets of different widths never compare equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: [u64; WORDS],
    width: u16,
}

impl ElementSet {
    pub fn empty(width: usize) -> Self {
        assert!(width <= MAX_ELEMENTS, "width {width} exceeds {MAX_ELEMENTS}");
        Self {
            words: [0; WORDS],
            width: width as u16,
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for w in 0..width / 64 {
            s.words[w] = u64::MAX;
        }
        if width % 64 != 0 {
            s.words[width / 64] = (1u64 << (width % 64)) - 1;
        }
        s
    }

    pub fn singleton(width: usize, index: usize) -> Self {
        let mut s = Self::empty(width);
        s.insert(index);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, indices: I) -> Self {
        let mut s = Self::empty(width);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Builds the set whose members are the one-bits of `mask`; only for
    /// universes of at most 64 elements.
    pub fn from_mask(width: usize, mask: u64) -> Self {
        assert!(width <= 64, "from_mask needs width <= 64");
        let mut s = Self::empty(width);
        s.words[0] = if width == 64 {
            mask
        } else {
            mask & ((1u64 << width) - 1)
        };
        s
    }

    /// Inverse of [`ElementSet::from_mask`].
    pub fn to_mask(&self) -> u64 {
        debug_assert!(self.width() <= 64);
        self.words[0]
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    #[inline]
    fn used_words(&self) -> usize {
        self.width().div_ceil(64)
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        index < self.width() && self.words[index / 64] & (1u64 << (index % 64)) != 0
    }

    pub fn insert(&mut self, index: usize) {
        assert!(
            index < self.width(),
            "index {index} out of range for width {}",
            self.width
        );
        self.words[index / 64] |= 1u64 << (index % 64);
    }

    pub fn remove(&mut self, index: usize) {
        if index < self.width() {
            self.words[index / 64] &= !(1u64 << (index % 64));
        }
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.words[..self.used_words()]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words[..self.used_words()].iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.width())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.words[..self.used_words()]
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.words[..self.used_words()]
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        *self | *other
    }

    pub fn intersection(&self, other: &Self) -> Self {
        *self & *other
    }

    pub fn difference(&self, other: &Self) -> Self {
        *self - *other
    }

    pub fn complement(&self) -> Self {
        !*self
    }

    /// Member indices in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words[0],
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

pub struct Iter<'a> {
    set: &'a ElementSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let tz = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * 64 + tz);
            }
            self.word += 1;
            if self.word >= self.set.used_words() {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait for ElementSet {
            type Output = ElementSet;

            #[inline]
            fn $method(mut self, rhs: ElementSet) -> ElementSet {
                debug_assert_eq!(self.width, rhs.width);
                let f = $op;
                for w in 0..self.used_words() {
                    self.words[w] = f(self.words[w], rhs.words[w]);
                }
                self
            }
        }
    };
}

binop!(BitOr, bitor, |a: u64, b: u64| a | b);
binop!(BitAnd, bitand, |a: u64, b: u64| a & b);
binop!(Sub, sub, |a: u64, b: u64| a & !b);

impl BitOrAssign for ElementSet {
    fn bitor_assign(&mut self, rhs: ElementSet) {
        *self = *self | rhs;
    }
}

impl BitAndAssign for ElementSet {
    fn bitand_assign(&mut self, rhs: ElementSet) {
        *self = *self & rhs;
    }
}

impl Not for ElementSet {
    type Output = ElementSet;

    fn not(self) -> ElementSet {
        ElementSet::full(self.width()) - self
    }
}

/// Canonical order: by cardinality, then lexicographically by member indices.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Every subset of a universe of at most 64 elements, in mask order.
pub fn all_subsets(width: usize) -> impl Iterator<Item = ElementSet> {
    assert!(width < 64, "cannot enumerate subsets of {width} elements");
    (0..1u64 << width).map(move |m| ElementSet::from_mask(width, m))
}
