//! Partial orders on a universe and the increasing/decreasing set machinery
//! built on them.
//!
//! A set `A` is *increasing* when `a ∈ A` and `a ≤ x` imply `x ∈ A` (an
//! up-set), and *decreasing* when `a ∈ A` and `x ≤ a` imply `x ∈ A`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::ElementSet;
use crate::universe::Universe;

/// Which kind of monotone set an operator works with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Inc,
    Dec,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Inc, Direction::Dec];

    pub fn opposite(self) -> Self {
        match self {
            Direction::Inc => Direction::Dec,
            Direction::Dec => Direction::Inc,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Inc => "inc",
            Direction::Dec => "dec",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "inc" => Ok(Direction::Inc),
            "dec" => Ok(Direction::Dec),
            other => Err(format!("unknown direction {other:?} (expected inc or dec)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("pair index {index} out of range for a universe of {size} elements")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("relation covers {relation} elements but the universe has {universe}")]
    SizeMismatch { relation: usize, universe: usize },
    #[error("order is not reflexive: ({0}, {0}) is missing")]
    MissingReflexive(String),
    #[error("order is not antisymmetric: ({0}, {1}) and ({1}, {0}) are both present")]
    AntisymmetryViolation(String, String),
    #[error("order is not transitive: ({0}, {1}) and ({1}, {2}) are present but ({0}, {2}) is not")]
    TransitivityViolation(String, String, String),
}

/// A set of ordered index pairs over a universe of `size` elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRelation {
    size: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl RawRelation {
    /// Duplicate pairs collapse silently.
    pub fn new<I>(size: usize, pairs: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (x, y) in pairs {
            for index in [x, y] {
                if index >= size {
                    return Err(OrderError::IndexOutOfRange { index, size });
                }
            }
            set.insert((x, y));
        }
        Ok(Self { size, pairs: set })
    }

    pub fn from_labels<'a, I>(universe: &Universe, pairs: I) -> Result<Self, crate::UniverseError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut set = BTreeSet::new();
        for (x, y) in pairs {
            set.insert((universe.index_of(x)?, universe.index_of(y)?));
        }
        Ok(Self {
            size: universe.len(),
            pairs: set,
        })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            size,
            pairs: (0..size).map(|i| (i, i)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    /// `xR = { y : (x, y) ∈ R }` for every `x`.
    pub fn after_sets(&self) -> Vec<ElementSet> {
        let mut out = vec![ElementSet::empty(self.size); self.size];
        for &(x, y) in &self.pairs {
            out[x].insert(y);
        }
        out
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|x| self.contains(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs.iter().all(|&(x, y)| self.contains(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        let after = self.after_sets();
        self.pairs
            .iter()
            .all(|&(x, y)| after[y].is_subset(&after[x]))
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }
}

/// A validated partial order `≤` with up-sets and down-sets precomputed.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialOrder {
    upsets: Vec<ElementSet>,
    downsets: Vec<ElementSet>,
}

impl PartialOrder {
    /// Checks reflexivity, then antisymmetry, then transitivity, reporting
    /// the first offending elements found in index order.
    pub fn validate(rel: &RawRelation, universe: &Universe) -> Result<Self, OrderError> {
        let n = universe.len();
        if rel.size() != n {
            return Err(OrderError::SizeMismatch {
                relation: rel.size(),
                universe: n,
            });
        }
        let label = |i: usize| universe.label(i).to_owned();
        for x in 0..n {
            if !rel.contains(x, x) {
                return Err(OrderError::MissingReflexive(label(x)));
            }
        }
        for (x, y) in rel.pairs() {
            if x < y && rel.contains(y, x) {
                return Err(OrderError::AntisymmetryViolation(label(x), label(y)));
            }
        }
        let upsets = rel.after_sets();
        for (x, y) in rel.pairs() {
            if let Some(z) = (upsets[y] - upsets[x]).first() {
                return Err(OrderError::TransitivityViolation(label(x), label(y), label(z)));
            }
        }
        Ok(Self::from_upsets(upsets))
    }

    fn from_upsets(upsets: Vec<ElementSet>) -> Self {
        let n = upsets.len();
        let mut downsets = vec![ElementSet::empty(n); n];
        for (x, up) in upsets.iter().enumerate() {
            for y in up {
                downsets[y].insert(x);
            }
        }
        Self { upsets, downsets }
    }

    /// The equality order, under which every set is both increasing and
    /// decreasing.
    pub fn equality(size: usize) -> Self {
        Self::from_upsets((0..size).map(|i| ElementSet::singleton(size, i)).collect())
    }

    pub fn size(&self) -> usize {
        self.upsets.len()
    }

    /// `x ≤ y`.
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.upsets[x].contains(y)
    }

    pub fn upset(&self, x: usize) -> &ElementSet {
        &self.upsets[x]
    }

    pub fn downset(&self, x: usize) -> &ElementSet {
        &self.downsets[x]
    }

    fn cone(&self, x: usize, dir: Direction) -> &ElementSet {
        match dir {
            Direction::Inc => &self.upsets[x],
            Direction::Dec => &self.downsets[x],
        }
    }

    pub fn is_equality(&self) -> bool {
        self.upsets.iter().all(|u| u.len() == 1)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.upsets
            .iter()
            .enumerate()
            .flat_map(|(x, up)| up.iter().map(move |y| (x, y)))
    }

    pub fn to_relation(&self) -> RawRelation {
        RawRelation {
            size: self.size(),
            pairs: self.pairs().collect(),
        }
    }

    /// The dual order `≥`.
    pub fn reversed(&self) -> Self {
        Self {
            upsets: self.downsets.clone(),
            downsets: self.upsets.clone(),
        }
    }

    /// Smallest `dir`-monotone superset of `a`: the union of the up-sets
    /// (`Inc`) or down-sets (`Dec`) of its members.
    pub fn closure(&self, a: &ElementSet, dir: Direction) -> ElementSet {
        let mut out = *a;
        for x in a {
            out |= *self.cone(x, dir);
        }
        out
    }

    pub fn is_monotone(&self, a: &ElementSet, dir: Direction) -> bool {
        a.iter().all(|x| self.cone(x, dir).is_subset(a))
    }

    /// Greatest `dir`-monotone subset of `a`, `{ x ∈ a : cone(x) ⊆ a }`.
    pub fn max_monotone_subset(&self, a: &ElementSet, dir: Direction) -> ElementSet {
        let mut out = *a;
        for x in a {
            if !self.cone(x, dir).is_subset(a) {
                out.remove(x);
            }
        }
        out
    }
}

impl fmt::Debug for PartialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
