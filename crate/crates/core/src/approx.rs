//! Lower and upper approximations of the four kinds (plain `R`, semi,
//! pre and α), in both directions, with their regions and accuracies.
//!
//! With `int` and `cl` the directed interior and closure of one direction:
//!
//! | kind  | lower                     | upper                     |
//! |-------|---------------------------|---------------------------|
//! | R     | `int(A)`                  | `cl(A)`                   |
//! | S     | `A ∩ cl(int(A))`          | `A ∪ int(cl(A))`          |
//! | P     | `A ∩ int(cl(A))`          | `A ∪ cl(int(A))`          |
//! | α     | `A ∩ int(cl(int(A)))`     | `A ∪ cl(int(cl(A)))`      |

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::Direction;
use crate::set::ElementSet;
use crate::topology::Gotas;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ApproxKind {
    #[serde(rename = "r")]
    R,
    #[serde(rename = "s")]
    S,
    #[serde(rename = "p")]
    P,
    #[serde(rename = "alpha")]
    Alpha,
}

impl ApproxKind {
    pub const ALL: [ApproxKind; 4] = [ApproxKind::R, ApproxKind::S, ApproxKind::P, ApproxKind::Alpha];

    pub fn as_str(self) -> &'static str {
        match self {
            ApproxKind::R => "r",
            ApproxKind::S => "s",
            ApproxKind::P => "p",
            ApproxKind::Alpha => "alpha",
        }
    }
}

impl fmt::Display for ApproxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ApproxKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "r" => Ok(ApproxKind::R),
            "s" | "semi" => Ok(ApproxKind::S),
            "p" | "pre" => Ok(ApproxKind::P),
            "alpha" | "a" => Ok(ApproxKind::Alpha),
            other => Err(format!("unknown approximation kind {other:?}")),
        }
    }
}

/// Which upper approximation a negative region complements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NegConvention {
    /// `U − upper(A)` taken in the opposite direction.
    #[default]
    Cross,
    /// `U − upper(A)` taken in the same direction.
    Same,
}

impl FromStr for NegConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "cross" => Ok(NegConvention::Cross),
            "same" => Ok(NegConvention::Same),
            other => Err(format!("unknown negative-region convention {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("accuracy is undefined for the empty set")]
    EmptySetAccuracy,
}

/// Exact accuracy ratio `|lower| / |upper|`.
pub type Accuracy = Ratio<u64>;

impl Gotas {
    pub fn lower(&self, a: &ElementSet, kind: ApproxKind, dir: Direction) -> ElementSet {
        let int = |x: &ElementSet| self.directed_interior(x, dir);
        let cl = |x: &ElementSet| self.directed_closure(x, dir);
        match kind {
            ApproxKind::R => int(a),
            ApproxKind::S => *a & cl(&int(a)),
            ApproxKind::P => *a & int(&cl(a)),
            ApproxKind::Alpha => *a & int(&cl(&int(a))),
        }
    }

    pub fn upper(&self, a: &ElementSet, kind: ApproxKind, dir: Direction) -> ElementSet {
        let int = |x: &ElementSet| self.directed_interior(x, dir);
        let cl = |x: &ElementSet| self.directed_closure(x, dir);
        match kind {
            ApproxKind::R => cl(a),
            ApproxKind::S => *a | int(&cl(a)),
            ApproxKind::P => *a | cl(&int(a)),
            ApproxKind::Alpha => *a | cl(&int(&cl(a))),
        }
    }

    pub fn boundary(&self, a: &ElementSet, kind: ApproxKind, dir: Direction) -> ElementSet {
        self.upper(a, kind, dir) - self.lower(a, kind, dir)
    }

    pub fn positive(&self, a: &ElementSet, kind: ApproxKind, dir: Direction) -> ElementSet {
        self.lower(a, kind, dir)
    }

    pub fn negative(
        &self,
        a: &ElementSet,
        kind: ApproxKind,
        dir: Direction,
        conv: NegConvention,
    ) -> ElementSet {
        let upper_dir = match conv {
            NegConvention::Cross => dir.opposite(),
            NegConvention::Same => dir,
        };
        !self.upper(a, kind, upper_dir)
    }

    pub fn accuracy(
        &self,
        a: &ElementSet,
        kind: ApproxKind,
        dir: Direction,
    ) -> Result<Accuracy, ApproxError> {
        if a.is_empty() {
            return Err(ApproxError::EmptySetAccuracy);
        }
        let lower = self.lower(a, kind, dir).len() as u64;
        let upper = self.upper(a, kind, dir).len() as u64;
        Ok(Ratio::new(lower, upper))
    }

    pub fn is_exact(&self, a: &ElementSet, kind: ApproxKind, dir: Direction) -> bool {
        self.lower(a, kind, dir) == self.upper(a, kind, dir)
    }

    /// Every kind in both directions, plus the directed interior/closure
    /// compositions the operators are built from.
    pub fn report(&self, a: &ElementSet) -> ApproxReport {
        let components = Direction::BOTH.map(|dir| {
            let interior = self.directed_interior(a, dir);
            let closure = self.directed_closure(a, dir);
            DirectedComponents {
                direction: dir,
                interior,
                closure,
                closure_of_interior: self.directed_closure(&interior, dir),
                interior_of_closure: self.directed_interior(&closure, dir),
            }
        });
        let mut entries = Vec::with_capacity(8);
        for kind in ApproxKind::ALL {
            for dir in Direction::BOTH {
                let lower = self.lower(a, kind, dir);
                let upper = self.upper(a, kind, dir);
                let accuracy = if a.is_empty() {
                    None
                } else {
                    Some(Ratio::new(lower.len() as u64, upper.len() as u64))
                };
                entries.push(ApproxEntry {
                    kind,
                    direction: dir,
                    lower,
                    upper,
                    boundary: upper - lower,
                    positive: lower,
                    negative_same: !upper,
                    negative_cross: ElementSet::empty(a.width()),
                    exact: lower == upper,
                    accuracy,
                });
            }
        }
        // Cross negatives complement the opposite direction's upper, which
        // sits next to this entry.
        for pair in entries.chunks_mut(2) {
            let (inc, dec) = pair.split_at_mut(1);
            inc[0].negative_cross = dec[0].negative_same;
            dec[0].negative_cross = inc[0].negative_same;
        }
        ApproxReport {
            set: *a,
            components: components.to_vec(),
            entries,
        }
    }
}

/// Directed interior/closure and their two-step compositions for one
/// direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedComponents {
    pub direction: Direction,
    pub interior: ElementSet,
    pub closure: ElementSet,
    pub closure_of_interior: ElementSet,
    pub interior_of_closure: ElementSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxEntry {
    pub kind: ApproxKind,
    pub direction: Direction,
    pub lower: ElementSet,
    pub upper: ElementSet,
    pub boundary: ElementSet,
    pub positive: ElementSet,
    pub negative_cross: ElementSet,
    pub negative_same: ElementSet,
    pub exact: bool,
    /// `None` when the input set is empty.
    pub accuracy: Option<Accuracy>,
}

impl ApproxEntry {
    pub fn negative(&self, conv: NegConvention) -> ElementSet {
        match conv {
            NegConvention::Cross => self.negative_cross,
            NegConvention::Same => self.negative_same,
        }
    }
}

/// All approximations of one set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxReport {
    pub set: ElementSet,
    pub components: Vec<DirectedComponents>,
    /// Ordered by kind (R, S, P, α), then direction (inc, dec).
    pub entries: Vec<ApproxEntry>,
}

impl ApproxReport {
    pub fn entry(&self, kind: ApproxKind, dir: Direction) -> &ApproxEntry {
        self.entries
            .iter()
            .find(|e| e.kind == kind && e.direction == dir)
            .expect("report covers every kind and direction")
    }

    pub fn components(&self, dir: Direction) -> &DirectedComponents {
        self.components
            .iter()
            .find(|c| c.direction == dir)
            .expect("report covers both directions")
    }
}
