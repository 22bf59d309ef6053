//! Reading and writing instances, and building relations and orders from
//! information tables.
//!
//! Instances are JSON documents keyed by element label:
//!
//! ```json
//! { "universe": ["a", "b"], "relation": [["a", "b"]], "order": [["a", "a"], ["b", "b"]] }
//! ```
//!
//! `relation` (pairs whose after-sets generate the topology) and `base` (an
//! explicit generating family) are each optional, but at least one must be
//! present. Written documents always carry the canonical `base`.

use std::io::Read;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::order::{OrderError, PartialOrder, RawRelation};
use crate::set::ElementSet;
use crate::topology::{FiniteTopology, Gotas};
use crate::universe::{Universe, UniverseError};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("unknown attribute {0:?}")]
    UnknownAttribute(String),
    #[error("attribute {0:?} is not ordinal")]
    NotOrdinal(String),
    #[error("at least one attribute is required")]
    NoAttributes,
    #[error("table error: {0}")]
    Table(String),
    #[error(transparent)]
    Universe(UniverseError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl From<UniverseError> for IngestError {
    fn from(e: UniverseError) -> Self {
        match e {
            UniverseError::UnknownLabel(l) => IngestError::UnknownLabel(l),
            other => IngestError::Universe(other),
        }
    }
}

/// The serialized form of an instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GotasDocument {
    pub universe: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<Vec<String>>>,
    pub order: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Map<String, Value>>,
}

impl GotasDocument {
    pub fn from_json(text: &str) -> Result<Self, IngestError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            IngestError::Schema {
                path: if path.is_empty() { "$".into() } else { path },
                message: e.into_inner().to_string(),
            }
        })
    }

    /// Canonical rendering: sorted keys, two-space indentation, trailing
    /// newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("document serializes");
        let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
        out.push('\n');
        out
    }

    /// Canonical document for an instance: base members and order pairs in
    /// canonical order, sets as label arrays in universe order.
    pub fn from_gotas(g: &Gotas) -> Self {
        let u = g.universe();
        let pair = |(x, y): (usize, usize)| (u.label(x).to_owned(), u.label(y).to_owned());
        Self {
            universe: u.labels().to_vec(),
            relation: None,
            base: Some(
                g.topology()
                    .base()
                    .members()
                    .iter()
                    .map(|m| u.labels_of(m))
                    .collect(),
            ),
            order: g.order().pairs().map(pair).collect(),
            metadata: None,
        }
    }

    pub fn to_gotas(&self) -> Result<Gotas, IngestError> {
        let universe = Universe::new(self.universe.iter().cloned())?;
        let to_relation = |pairs: &[(String, String)]| {
            RawRelation::from_labels(&universe, pairs.iter().map(|(x, y)| (x.as_str(), y.as_str())))
        };
        let from_base = match &self.base {
            Some(family) => {
                let sets = family
                    .iter()
                    .map(|m| universe.set_of(m))
                    .collect::<Result<Vec<ElementSet>, _>>()?;
                Some(FiniteTopology::from_family(universe.clone(), &sets).expect("widths match"))
            }
            None => None,
        };
        let from_relation = match &self.relation {
            Some(pairs) => Some(FiniteTopology::from_relation(universe.clone(), &to_relation(pairs)?)),
            None => None,
        };
        let topology = match (from_base, from_relation) {
            (Some(b), Some(r)) if b != r => {
                return Err(IngestError::Schema {
                    path: "base".into(),
                    message: "base and relation generate different topologies".into(),
                })
            }
            (Some(t), _) | (None, Some(t)) => t,
            (None, None) => {
                return Err(IngestError::Schema {
                    path: "$".into(),
                    message: "one of `relation` or `base` is required".into(),
                })
            }
        };
        let order = PartialOrder::validate(&to_relation(&self.order)?, &universe)?;
        Ok(Gotas::new(topology, order).expect("same universe"))
    }
}

pub fn parse_gotas(text: &str) -> Result<Gotas, IngestError> {
    GotasDocument::from_json(text)?.to_gotas()
}

pub fn serialize_gotas(g: &Gotas) -> String {
    GotasDocument::from_gotas(g).to_json()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttributeKind {
    Nominal,
    Ordinal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub name: String,
    pub kind: AttributeKind,
    /// Ordinal columns compare numerically when every cell parses as a
    /// finite number, lexicographically otherwise.
    numeric: bool,
}

/// Objects described by attribute values.
#[derive(Debug, Clone, PartialEq)]
pub struct InformationTable {
    objects: Vec<String>,
    attributes: Vec<Attribute>,
    /// Row-major, one row per object.
    values: Vec<Vec<String>>,
}

impl InformationTable {
    /// Columns named in neither list are treated as nominal.
    pub fn new(
        objects: Vec<String>,
        columns: Vec<String>,
        values: Vec<Vec<String>>,
        nominal: &[String],
        ordinal: &[String],
    ) -> Result<Self, IngestError> {
        if values.len() != objects.len() {
            return Err(IngestError::Table(format!(
                "{} objects but {} rows",
                objects.len(),
                values.len()
            )));
        }
        for (obj, row) in objects.iter().zip(&values) {
            if row.len() != columns.len() {
                return Err(IngestError::Table(format!(
                    "row {obj:?} has {} values, expected {}",
                    row.len(),
                    columns.len()
                )));
            }
        }
        for name in nominal.iter().chain(ordinal) {
            if !columns.contains(name) {
                return Err(IngestError::UnknownAttribute(name.clone()));
            }
        }
        if let Some(both) = nominal.iter().find(|n| ordinal.contains(n)) {
            return Err(IngestError::Table(format!(
                "attribute {both:?} declared both nominal and ordinal"
            )));
        }
        let attributes = columns
            .into_iter()
            .enumerate()
            .map(|(c, name)| {
                let kind = if ordinal.contains(&name) {
                    AttributeKind::Ordinal
                } else {
                    AttributeKind::Nominal
                };
                let numeric = values
                    .iter()
                    .all(|row| row[c].trim().parse::<f64>().is_ok_and(f64::is_finite));
                Attribute { name, kind, numeric }
            })
            .collect();
        Ok(Self {
            objects,
            attributes,
            values,
        })
    }

    /// Comma-delimited UTF-8 CSV: the header names the attributes after a
    /// leading object column, and each row starts with the object label.
    pub fn from_csv<R: Read>(
        reader: R,
        nominal: &[String],
        ordinal: &[String],
    ) -> Result<Self, IngestError> {
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(b',')
            .has_headers(true)
            .from_reader(reader);
        let header = rdr.headers()?.clone();
        if header.is_empty() {
            return Err(IngestError::Table("missing header row".into()));
        }
        let columns: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
        let mut objects = Vec::new();
        let mut values = Vec::new();
        for record in rdr.records() {
            let record = record?;
            let mut cells = record.iter();
            objects.push(cells.next().unwrap_or_default().to_owned());
            values.push(cells.map(str::to_owned).collect());
        }
        Self::new(objects, columns, values, nominal, ordinal)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn universe(&self) -> Result<Universe, IngestError> {
        Ok(Universe::new(self.objects.iter().cloned())?)
    }

    pub fn value(&self, object: usize, attribute: usize) -> &str {
        &self.values[object][attribute]
    }

    fn column(&self, name: &str) -> Result<usize, IngestError> {
        self.attributes
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| IngestError::UnknownAttribute(name.to_owned()))
    }

    fn le(&self, attr: usize, x: usize, y: usize) -> bool {
        let (a, b) = (self.value(x, attr), self.value(y, attr));
        if self.attributes[attr].numeric {
            let parse = |s: &str| s.trim().parse::<f64>().expect("checked numeric");
            parse(a) <= parse(b)
        } else {
            a <= b
        }
    }
}

/// Objects related iff they agree on every attribute in `attrs`.
pub fn indiscernibility(t: &InformationTable, attrs: &[String]) -> Result<RawRelation, IngestError> {
    if attrs.is_empty() {
        return Err(IngestError::NoAttributes);
    }
    let cols = attrs
        .iter()
        .map(|a| t.column(a))
        .collect::<Result<Vec<_>, _>>()?;
    let n = t.objects.len();
    let pairs = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| cols.iter().all(|&c| t.value(x, c) == t.value(y, c)));
    Ok(RawRelation::new(n, pairs).expect("indices in range"))
}

/// Componentwise dominance `x ≤ y` over ordinal attributes. Two distinct
/// objects tying on every attribute break antisymmetry and are rejected.
pub fn dominance_order(t: &InformationTable, attrs: &[String]) -> Result<PartialOrder, IngestError> {
    if attrs.is_empty() {
        return Err(IngestError::NoAttributes);
    }
    let mut cols = Vec::with_capacity(attrs.len());
    for a in attrs {
        let c = t.column(a)?;
        if t.attributes[c].kind != AttributeKind::Ordinal {
            return Err(IngestError::NotOrdinal(a.clone()));
        }
        cols.push(c);
    }
    let n = t.objects.len();
    let pairs = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| cols.iter().all(|&c| t.le(c, x, y)));
    let rel = RawRelation::new(n, pairs).expect("indices in range");
    Ok(PartialOrder::validate(&rel, &t.universe()?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_gotas, FOUR_POINT_DOCUMENT};
    use crate::topology::DEFAULT_ENUMERATION_CAP;
    use proptest::prelude::*;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_fixture() {
        let g = parse_gotas(FOUR_POINT_DOCUMENT).unwrap();
        assert_eq!(g, example_gotas());
        let opens = g.topology().enumerate_open_family(DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(opens.len(), 6);
    }

    #[test]
    fn missing_reflexive_pair_is_reported() {
        let doc = r#"{"universe":["a","b"],"base":[],"order":[["b","b"]]}"#;
        assert!(matches!(
            parse_gotas(doc),
            Err(IngestError::Order(OrderError::MissingReflexive(l))) if l == "a"
        ));
    }

    #[test]
    fn relation_form_matches_base_form() {
        let doc = r#"{
            "universe": ["a","b","c","d"],
            "relation": [["a","a"],["b","a"],["b","b"],["c","c"],["c","d"],["d","c"],["d","d"]],
            "order": [["a","a"],["b","b"],["c","c"],["d","d"],["a","b"],["b","d"],["a","d"],["a","c"],["c","d"]]
        }"#;
        let g = parse_gotas(doc).unwrap();
        assert_eq!(
            g.topology().enumerate_open_family(64).unwrap(),
            example_gotas().topology().enumerate_open_family(64).unwrap()
        );
    }

    #[test]
    fn schema_errors_carry_paths() {
        let err = parse_gotas(r#"{"universe":["a"],"base":[[1]],"order":[["a","a"]]}"#).unwrap_err();
        assert!(matches!(err, IngestError::Schema { ref path, .. } if path == "base[0][0]"), "{err}");
        let err = parse_gotas(r#"{"universe":["a"],"order":[["a","a"]]}"#).unwrap_err();
        assert!(matches!(err, IngestError::Schema { .. }));
        let err = parse_gotas(r#"{"universe":["a"],"base":[],"order":[["a","a"]],"extra":1}"#).unwrap_err();
        assert!(matches!(err, IngestError::Schema { .. }));
        let err = parse_gotas(r#"{"universe":["a"],"base":[["z"]],"order":[["a","a"]]}"#).unwrap_err();
        assert!(matches!(err, IngestError::UnknownLabel(ref l) if l == "z"));
    }

    #[test]
    fn inconsistent_base_and_relation_rejected() {
        let doc = r#"{"universe":["a","b"],"relation":[],"base":[["a"]],"order":[["a","a"],["b","b"]]}"#;
        assert!(matches!(parse_gotas(doc), Err(IngestError::Schema { .. })));
    }

    #[test]
    fn canonical_bytes_for_equal_instances() {
        let from_fixture = parse_gotas(FOUR_POINT_DOCUMENT).unwrap();
        assert_eq!(serialize_gotas(&from_fixture), serialize_gotas(&example_gotas()));
        let text = serialize_gotas(&from_fixture);
        assert_eq!(serialize_gotas(&parse_gotas(&text).unwrap()), text);
    }

    #[test]
    fn reserved_characters_round_trip() {
        let labels = ["quote\"d", "back\\slash", "new\nline", "ünï,cødé"];
        let u = Universe::new(labels).unwrap();
        let g = Gotas::new(
            FiniteTopology::discrete(u.clone()),
            PartialOrder::equality(u.len()),
        )
        .unwrap();
        let text = serialize_gotas(&g);
        assert!(text.contains(r#""quote\"d""#));
        assert_eq!(parse_gotas(&text).unwrap(), g);
    }

    fn color_price_table(colors: &[&str], prices: &[&str]) -> InformationTable {
        let n = colors.len();
        InformationTable::new(
            (1..=n).map(|i| format!("o{i}")).collect(),
            strings(&["color", "price"]),
            colors
                .iter()
                .zip(prices)
                .map(|(c, p)| strings(&[c, p]))
                .collect(),
            &strings(&["color"]),
            &strings(&["price"]),
        )
        .unwrap()
    }

    #[test]
    fn indiscernibility_partitions_by_value() {
        let t = color_price_table(&["r", "r", "g", "g"], &["1", "2", "3", "4"]);
        let rel = indiscernibility(&t, &strings(&["color"])).unwrap();
        assert!(rel.is_equivalence());
        let u = t.universe().unwrap();
        let top = FiniteTopology::from_relation(u.clone(), &rel);
        let blocks: Vec<_> = top.partition_blocks().unwrap().iter().map(|b| u.labels_of(b)).collect();
        assert_eq!(blocks, vec![strings(&["o1", "o2"]), strings(&["o3", "o4"])]);

        let same = color_price_table(&["r", "r", "r"], &["1", "1", "1"]);
        assert_eq!(indiscernibility(&same, &strings(&["color"])).unwrap().len(), 9);

        let one = color_price_table(&["r"], &["1"]);
        assert_eq!(indiscernibility(&one, &strings(&["color"])).unwrap(), RawRelation::identity(1));
        assert!(matches!(
            indiscernibility(&one, &strings(&["size"])),
            Err(IngestError::UnknownAttribute(_))
        ));
        assert!(matches!(indiscernibility(&one, &[]), Err(IngestError::NoAttributes)));
    }

    #[test]
    fn dominance_builds_chains_and_rejects_ties() {
        let t = color_price_table(&["r", "g", "b"], &["1", "5", "10"]);
        let po = dominance_order(&t, &strings(&["price"])).unwrap();
        assert!(po.le(0, 1) && po.le(1, 2) && po.le(0, 2) && !po.le(2, 0));

        let tied = color_price_table(&["r", "r"], &["3", "3"]);
        assert!(matches!(
            dominance_order(&tied, &strings(&["price"])),
            Err(IngestError::Order(OrderError::AntisymmetryViolation(x, y))) if x == "o1" && y == "o2"
        ));
        assert!(matches!(
            dominance_order(&t, &strings(&["color"])),
            Err(IngestError::NotOrdinal(_))
        ));
    }

    #[test]
    fn dominance_on_two_attributes_can_be_incomparable() {
        let t = InformationTable::new(
            strings(&["x", "y"]),
            strings(&["q1", "q2"]),
            vec![strings(&["1", "2"]), strings(&["2", "1"])],
            &[],
            &strings(&["q1", "q2"]),
        )
        .unwrap();
        let po = dominance_order(&t, &strings(&["q1", "q2"])).unwrap();
        assert!(!po.le(0, 1) && !po.le(1, 0));
    }

    #[test]
    fn numeric_columns_compare_numerically() {
        let t = color_price_table(&["r", "g"], &["9", "10"]);
        assert!(dominance_order(&t, &strings(&["price"])).unwrap().le(0, 1));
        let lex = color_price_table(&["r", "g"], &["9", "10x"]);
        assert!(dominance_order(&lex, &strings(&["price"])).unwrap().le(1, 0));
    }

    #[test]
    fn csv_ingestion() {
        let csv = "id,color,price\no1,r,1\no2,r,2\no3,g,3\no4,g,4\n";
        let t = InformationTable::from_csv(csv.as_bytes(), &strings(&["color"]), &strings(&["price"])).unwrap();
        assert_eq!(t.objects(), &strings(&["o1", "o2", "o3", "o4"])[..]);
        assert_eq!(t.attributes()[1].kind, AttributeKind::Ordinal);
        assert!(matches!(
            InformationTable::from_csv(csv.as_bytes(), &strings(&["weight"]), &[]),
            Err(IngestError::UnknownAttribute(_))
        ));
        let ragged = "id,color\no1,r,extra\n";
        assert!(InformationTable::from_csv(ragged.as_bytes(), &[], &[]).is_err());
    }

    fn arb_table() -> impl Strategy<Value = InformationTable> {
        (1usize..7, 1usize..4).prop_flat_map(|(n, m)| {
            proptest::collection::vec(proptest::collection::vec(0u8..3, m), n).prop_map(move |rows| {
                InformationTable::new(
                    (0..n).map(|i| format!("o{i}")).collect(),
                    (0..m).map(|j| format!("q{j}")).collect(),
                    rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect(),
                    &[],
                    &[],
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn indiscernibility_is_an_equivalence(t in arb_table()) {
            let attrs: Vec<String> = t.attributes().iter().map(|a| a.name.clone()).collect();
            prop_assert!(indiscernibility(&t, &attrs).unwrap().is_equivalence());
            prop_assert!(indiscernibility(&t, &attrs[..1]).unwrap().is_equivalence());
        }

        #[test]
        fn serialization_round_trips(seed in any::<u64>(), n in 1usize..9, p in 0.0f64..1.0, q in 0.0f64..1.0) {
            let g = crate::audit::random_gotas(&crate::audit::GenConfig {
                universe_size: n, relation_density: p, order_density: q, seed,
            }).unwrap();
            let text = serialize_gotas(&g);
            let back = parse_gotas(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(serialize_gotas(&back), text);
        }
    }
}
