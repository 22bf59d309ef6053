use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::set::{ElementSet, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error("universe must contain at least one element")]
    Empty,
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("universe of {0} elements exceeds the limit of {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
}

/// A finite, non-empty, labeled ground set. Element `i` is the `i`-th label.
#[derive(Clone)]
pub struct Universe {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self, UniverseError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(UniverseError::Empty);
        }
        if labels.len() > MAX_ELEMENTS {
            return Err(UniverseError::TooLarge(labels.len()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(UniverseError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels, index })
    }

    /// Universe labeled `x0, x1, …`.
    pub fn indexed(size: usize) -> Result<Self, UniverseError> {
        Self::new((0..size).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, UniverseError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| UniverseError::UnknownLabel(label.to_owned()))
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.len())
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn set_of<I, S>(&self, labels: I) -> Result<ElementSet, UniverseError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut s = self.empty_set();
        for l in labels {
            s.insert(self.index_of(l.as_ref())?);
        }
        Ok(s)
    }

    /// Parses a comma-separated label list; blank input is the empty set.
    pub fn parse_set(&self, text: &str) -> Result<ElementSet, UniverseError> {
        self.set_of(text.split(',').map(str::trim).filter(|l| !l.is_empty()))
    }

    /// Member labels in universe order.
    pub fn labels_of(&self, set: &ElementSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn display<'a>(&'a self, set: &'a ElementSet) -> DisplaySet<'a> {
        DisplaySet {
            universe: self,
            set,
        }
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for Universe {}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Universe").field(&self.labels).finish()
    }
}

/// Renders a set as `{a, b}` in universe order.
pub struct DisplaySet<'a> {
    universe: &'a Universe,
    set: &'a ElementSet,
}

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, i) in self.set.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            f.write_str(self.universe.label(i))?;
        }
        f.write_str("}")
    }
}
