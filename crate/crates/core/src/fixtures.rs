//! The four-point worked example used throughout the tests, docs and CLI
//! demos: `U = {a, b, c, d}`, base granules `{a}`, `{a, b}`, `{c, d}`, and
//! the order `a ≤ b ≤ d`, `a ≤ c ≤ d`.

use crate::order::{PartialOrder, RawRelation};
use crate::set::ElementSet;
use crate::topology::{FiniteTopology, Gotas};
use crate::universe::Universe;

/// The example as a GOTAS document.
pub const FOUR_POINT_DOCUMENT: &str = include_str!("../fixtures/four_point.json");

pub fn example_universe() -> Universe {
    Universe::new(["a", "b", "c", "d"]).expect("valid labels")
}

pub fn example_order(u: &Universe) -> PartialOrder {
    let rel = RawRelation::from_labels(
        u,
        [
            ("a", "a"),
            ("b", "b"),
            ("c", "c"),
            ("d", "d"),
            ("a", "b"),
            ("b", "d"),
            ("a", "d"),
            ("a", "c"),
            ("c", "d"),
        ],
    )
    .expect("labels exist");
    PartialOrder::validate(&rel, u).expect("valid order")
}

pub fn example_base_family(u: &Universe) -> Vec<ElementSet> {
    ["a", "a,b", "c,d"]
        .iter()
        .map(|s| u.parse_set(s).expect("labels exist"))
        .collect()
}

pub fn example_gotas() -> Gotas {
    let u = example_universe();
    let order = example_order(&u);
    let family = example_base_family(&u);
    let topology = FiniteTopology::from_family(u, &family).expect("family fits");
    Gotas::new(topology, order).expect("same universe")
}
