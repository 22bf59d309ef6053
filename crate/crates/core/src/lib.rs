//! Rough approximations in finite ordered topological spaces.
//!
//! A [`Gotas`] bundles a finite [`Universe`], the topology generated by a
//! relation on it, and a partial order. On top of the order-directed
//! interior and closure the crate provides the plain, semi, pre and α
//! lower/upper approximations with their boundary, positive and negative
//! regions and exact accuracies ([`approx`]), readers and writers for the
//! JSON instance format and CSV information tables ([`ingest`]), and an
//! auditing engine that checks inclusion laws exhaustively or hunts for
//! counterexamples ([`audit`]).

pub mod approx;
pub mod audit;
pub mod fixtures;
pub mod ingest;
pub mod order;
pub mod set;
pub mod topology;
pub mod universe;

pub use approx::{Accuracy, ApproxEntry, ApproxError, ApproxKind, ApproxReport, NegConvention};
pub use order::{Direction, OrderError, PartialOrder, RawRelation};
pub use set::ElementSet;
pub use topology::{FiniteTopology, Gotas, Operator, TopologyBase, TopologyError};
pub use universe::{Universe, UniverseError};
