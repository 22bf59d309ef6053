//! Finite topologies generated by a relation or an explicit family, and the
//! order-directed interior and closure operators of an ordered space.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::{Direction, PartialOrder, RawRelation};
use crate::set::ElementSet;
use crate::universe::Universe;

/// Default bound on the number of open sets the enumeration oracle produces.
pub const DEFAULT_ENUMERATION_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("open-set enumeration exceeded the cap of {cap} sets (base has {base} members)")]
    CapExceeded { cap: usize, base: usize },
    #[error("topology is over {topology} elements but the order is over {order}")]
    UniverseMismatch { topology: usize, order: usize },
    #[error("family member has width {found}, expected {expected}")]
    WidthMismatch { expected: usize, found: usize },
}

/// Canonical base of a finite topology: sorted, deduplicated, closed under
/// pairwise intersection and containing the whole universe. `∅` may appear.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TopologyBase {
    members: Vec<ElementSet>,
}

impl TopologyBase {
    /// Builds the base from a generating family.
    ///
    /// Every point `x` gets its minimal neighbourhood, the intersection of
    /// all generators containing it (or the universe when none does). Those
    /// neighbourhoods together with the universe are then closed under
    /// pairwise intersection. Each member is an intersection of generators,
    /// so the result generates exactly the topology the generators do.
    fn generate(width: usize, generators: &[ElementSet]) -> Self {
        let full = ElementSet::full(width);
        let mut neighbourhoods = vec![full; width];
        for g in generators {
            for x in g {
                neighbourhoods[x] &= *g;
            }
        }
        let mut seen: HashSet<ElementSet> = HashSet::new();
        let mut members = Vec::new();
        for s in std::iter::once(full).chain(neighbourhoods) {
            if seen.insert(s) {
                members.push(s);
            }
        }
        let mut i = 0;
        while i < members.len() {
            for j in 0..i {
                let meet = members[i] & members[j];
                if seen.insert(meet) {
                    members.push(meet);
                }
            }
            i += 1;
        }
        members.sort();
        Self { members }
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn width(&self) -> usize {
        self.members[0].width()
    }
}

impl fmt::Debug for TopologyBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.members).finish()
    }
}

/// Builds the base generated by the after-sets `xR` of a relation.
pub fn base_from_relation(rel: &RawRelation, universe: &Universe) -> TopologyBase {
    debug_assert_eq!(rel.size(), universe.len());
    TopologyBase::generate(universe.len(), &rel.after_sets())
}

/// Builds the base generated by an explicitly given family.
pub fn base_from_family(
    sets: &[ElementSet],
    universe: &Universe,
) -> Result<TopologyBase, TopologyError> {
    if let Some(bad) = sets.iter().find(|s| s.width() != universe.len()) {
        return Err(TopologyError::WidthMismatch {
            expected: universe.len(),
            found: bad.width(),
        });
    }
    Ok(TopologyBase::generate(universe.len(), sets))
}

/// Whether [`interior`](FiniteTopology::interior) asks for open or closed sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Interior,
    Closure,
}

impl Operator {
    pub const BOTH: [Operator; 2] = [Operator::Interior, Operator::Closure];
}

/// The topology generated by a [`TopologyBase`].
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    universe: Universe,
    base: TopologyBase,
    /// Minimal open neighbourhood of every point.
    neighbourhoods: Vec<ElementSet>,
}

impl FiniteTopology {
    pub fn new(universe: Universe, base: TopologyBase) -> Self {
        let n = universe.len();
        assert_eq!(base.width(), n, "base width does not match universe");
        let mut neighbourhoods = vec![ElementSet::full(n); n];
        for m in base.members() {
            for x in m {
                neighbourhoods[x] &= *m;
            }
        }
        Self {
            universe,
            base,
            neighbourhoods,
        }
    }

    pub fn from_relation(universe: Universe, rel: &RawRelation) -> Self {
        let base = base_from_relation(rel, &universe);
        Self::new(universe, base)
    }

    pub fn from_family(universe: Universe, sets: &[ElementSet]) -> Result<Self, TopologyError> {
        let base = base_from_family(sets, &universe)?;
        Ok(Self::new(universe, base))
    }

    /// `{∅, U}`.
    pub fn indiscrete(universe: Universe) -> Self {
        Self::from_family(universe, &[]).expect("empty family")
    }

    /// Every subset open.
    pub fn discrete(universe: Universe) -> Self {
        let n = universe.len();
        let singletons: Vec<_> = (0..n).map(|i| ElementSet::singleton(n, i)).collect();
        Self::from_family(universe, &singletons).expect("singletons fit the universe")
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn base(&self) -> &TopologyBase {
        &self.base
    }

    pub fn neighbourhood(&self, x: usize) -> &ElementSet {
        &self.neighbourhoods[x]
    }

    /// Greatest open subset: the union of base members inside `a`, which is
    /// the set of points whose minimal neighbourhood lies inside `a`.
    pub fn interior(&self, a: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(a.width());
        for (x, nb) in self.neighbourhoods.iter().enumerate() {
            if nb.is_subset(a) {
                out.insert(x);
            }
        }
        out
    }

    /// Smallest closed superset, `U − interior(U − a)`.
    pub fn closure(&self, a: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(a.width());
        for (x, nb) in self.neighbourhoods.iter().enumerate() {
            if !nb.is_disjoint(a) {
                out.insert(x);
            }
        }
        out
    }

    pub fn apply(&self, op: Operator, a: &ElementSet) -> ElementSet {
        match op {
            Operator::Interior => self.interior(a),
            Operator::Closure => self.closure(a),
        }
    }

    pub fn is_open(&self, a: &ElementSet) -> bool {
        self.interior(a) == *a
    }

    pub fn is_closed(&self, a: &ElementSet) -> bool {
        self.closure(a) == *a
    }

    /// The blocks of the partition, when the distinct minimal
    /// neighbourhoods are pairwise disjoint (every open set is also closed).
    pub fn partition_blocks(&self) -> Option<Vec<ElementSet>> {
        let mut blocks: Vec<ElementSet> = Vec::new();
        for nb in &self.neighbourhoods {
            if blocks.contains(nb) {
                continue;
            }
            if blocks.iter().any(|b| !b.is_disjoint(nb)) {
                return None;
            }
            blocks.push(*nb);
        }
        blocks.sort();
        Some(blocks)
    }

    /// Every open set: all unions of base members, plus `∅`, in canonical
    /// order. Stops with [`TopologyError::CapExceeded`] once more than `cap`
    /// sets have been produced.
    pub fn enumerate_open_family(&self, cap: usize) -> Result<Vec<ElementSet>, TopologyError> {
        let exceeded = || TopologyError::CapExceeded {
            cap,
            base: self.base.len(),
        };
        let mut family: HashSet<ElementSet> = HashSet::new();
        family.insert(self.universe.empty_set());
        for m in self.base.members() {
            let unions: Vec<ElementSet> = family.iter().map(|f| *f | *m).collect();
            for s in unions {
                family.insert(s);
                if family.len() > cap {
                    return Err(exceeded());
                }
            }
        }
        let mut out: Vec<_> = family.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

impl fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteTopology")
            .field("universe", &self.universe)
            .field("base", &self.base)
            .finish()
    }
}

/// A finite universe with a generated topology and a partial order.
#[derive(Clone, PartialEq, Eq)]
pub struct Gotas {
    topology: FiniteTopology,
    order: PartialOrder,
}

impl Gotas {
    pub fn new(topology: FiniteTopology, order: PartialOrder) -> Result<Self, TopologyError> {
        if topology.universe().len() != order.size() {
            return Err(TopologyError::UniverseMismatch {
                topology: topology.universe().len(),
                order: order.size(),
            });
        }
        Ok(Self { topology, order })
    }

    pub fn universe(&self) -> &Universe {
        self.topology.universe()
    }

    pub fn topology(&self) -> &FiniteTopology {
        &self.topology
    }

    pub fn order(&self) -> &PartialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.universe().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Same topology with the equality order.
    pub fn with_equality_order(&self) -> Self {
        Self {
            topology: self.topology.clone(),
            order: PartialOrder::equality(self.len()),
        }
    }

    /// Greatest open `dir`-monotone subset of `a`.
    ///
    /// Iterates `X ← max_monotone_subset(interior(X))` from `X = a`. The
    /// sequence shrinks until it is stable, at which point `X` is open and
    /// monotone; every open monotone subset of `a` survives every step.
    pub fn directed_interior(&self, a: &ElementSet, dir: Direction) -> ElementSet {
        let mut x = *a;
        loop {
            let next = self
                .order
                .max_monotone_subset(&self.topology.interior(&x), dir);
            if next == x {
                return x;
            }
            x = next;
        }
    }

    /// Smallest closed `dir`-monotone superset of `a`, by the dual iteration
    /// `X ← order_closure(closure(X))`.
    pub fn directed_closure(&self, a: &ElementSet, dir: Direction) -> ElementSet {
        let mut x = *a;
        loop {
            let next = self.order.closure(&self.topology.closure(&x), dir);
            if next == x {
                return x;
            }
            x = next;
        }
    }

    pub fn directed(&self, op: Operator, a: &ElementSet, dir: Direction) -> ElementSet {
        match op {
            Operator::Interior => self.directed_interior(a, dir),
            Operator::Closure => self.directed_closure(a, dir),
        }
    }

    /// Enumeration oracle for the directed operators: lists every open (or
    /// closed) set, keeps the `dir`-monotone ones, and takes the union of
    /// those inside `a` (or the intersection of those containing `a`).
    pub fn oracle_directed(
        &self,
        a: &ElementSet,
        dir: Direction,
        op: Operator,
        cap: usize,
    ) -> Result<ElementSet, TopologyError> {
        let opens = self.topology.enumerate_open_family(cap)?;
        Ok(oracle_from_opens(&self.order, &opens, a, dir, op))
    }
}

/// Oracle evaluation against a pre-enumerated open family.
pub fn oracle_from_opens(
    order: &PartialOrder,
    opens: &[ElementSet],
    a: &ElementSet,
    dir: Direction,
    op: Operator,
) -> ElementSet {
    match op {
        Operator::Interior => opens
            .iter()
            .filter(|o| o.is_subset(a) && order.is_monotone(o, dir))
            .fold(ElementSet::empty(a.width()), |acc, o| acc | *o),
        Operator::Closure => opens
            .iter()
            .map(|o| !*o)
            .filter(|c| a.is_subset(c) && order.is_monotone(c, dir))
            .fold(ElementSet::full(a.width()), |acc, c| acc & c),
    }
}

impl fmt::Debug for Gotas {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gotas")
            .field("universe", self.universe())
            .field("base", self.topology.base())
            .field("order", &self.order)
            .finish()
    }
}
