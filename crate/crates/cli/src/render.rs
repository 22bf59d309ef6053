//! Table and JSON rendering of reports.

use gotas::audit::{AuditReport, Verdict, Witness};
use gotas::ingest::GotasDocument;
use gotas::{Accuracy, ApproxEntry, ElementSet, Gotas, NegConvention, Universe};
use serde_json::{json, Value};

/// Member labels in lexicographic order.
pub fn sorted_labels(u: &Universe, s: &ElementSet) -> Vec<String> {
    let mut labels = u.labels_of(s);
    labels.sort();
    labels
}

fn set_json(u: &Universe, s: &ElementSet) -> Value {
    json!(sorted_labels(u, s))
}

pub fn accuracy_text(a: Option<Accuracy>) -> String {
    match a {
        Some(r) => format!("{}/{}", r.numer(), r.denom()),
        None => "undefined".to_owned(),
    }
}

fn accuracy_json(a: Option<Accuracy>) -> Value {
    match a {
        Some(r) => json!({"num": r.numer(), "den": r.denom()}),
        None => json!("undefined"),
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json_text(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("value serializes");
    out.push('\n');
    out
}

pub fn approx_table(g: &Gotas, a: &ElementSet, entries: &[&ApproxEntry], neg: NegConvention) -> String {
    let u = g.universe();
    let mut out = format!("A = {}\n", u.display(a));
    let neg_name = match neg {
        NegConvention::Cross => "cross",
        NegConvention::Same => "same",
    };
    for e in entries {
        out.push_str(&format!("\n{} {}\n", e.kind, e.direction));
        let rows = [
            ("lower", u.display(&e.lower).to_string()),
            ("upper", u.display(&e.upper).to_string()),
            ("boundary", u.display(&e.boundary).to_string()),
            ("positive", u.display(&e.positive).to_string()),
            (
                "negative",
                format!("{} ({neg_name})", u.display(&e.negative(neg))),
            ),
            ("accuracy", accuracy_text(e.accuracy)),
            ("exact", if e.exact { "yes" } else { "no" }.to_owned()),
        ];
        for (name, value) in rows {
            out.push_str(&format!("  {name:<9} {value}\n"));
        }
    }
    out
}

pub fn approx_json(g: &Gotas, a: &ElementSet, entries: &[&ApproxEntry], neg: NegConvention) -> Value {
    let u = g.universe();
    let entries: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "kind": e.kind.as_str(),
                "direction": e.direction.as_str(),
                "lower": set_json(u, &e.lower),
                "upper": set_json(u, &e.upper),
                "boundary": set_json(u, &e.boundary),
                "positive": set_json(u, &e.positive),
                "negative": set_json(u, &e.negative(neg)),
                "accuracy": accuracy_json(e.accuracy),
                "exact": e.exact,
            })
        })
        .collect();
    json!({
        "set": set_json(u, a),
        "negative_convention": match neg {
            NegConvention::Cross => "cross",
            NegConvention::Same => "same",
        },
        "entries": entries,
    })
}

fn document_value(g: &Gotas) -> Value {
    serde_json::to_value(GotasDocument::from_gotas(g)).expect("document serializes")
}

pub fn witness_json(w: &Witness) -> Value {
    let g = &w.instance;
    let u = g.universe();
    let mut v = json!({
        "instance": document_value(g),
        "a": set_json(u, &w.a),
        "lhs": set_json(u, &w.violation.lhs),
        "rhs": set_json(u, &w.violation.rhs),
        "relation": w.violation.relation.symbol(),
    });
    let obj = v.as_object_mut().expect("object");
    if let Some(d) = w.direction {
        obj.insert("direction".into(), json!(d.as_str()));
    }
    if let Some(b) = &w.b {
        obj.insert("b".into(), set_json(u, b));
    }
    if let Some(detail) = &w.violation.detail {
        obj.insert("detail".into(), json!(detail));
    }
    v
}

pub fn witness_table(w: &Witness) -> String {
    let g = &w.instance;
    let u = g.universe();
    let mut out = String::new();
    let compact = serde_json::to_string(&document_value(g)).expect("value serializes");
    out.push_str(&format!("    instance  {compact}\n"));
    if let Some(d) = w.direction {
        out.push_str(&format!("    direction {d}\n"));
    }
    out.push_str(&format!("    A         {}\n", u.display(&w.a)));
    if let Some(b) = &w.b {
        out.push_str(&format!("    B         {}\n", u.display(b)));
    }
    let detail = w
        .violation
        .detail
        .as_ref()
        .map(|d| format!(" [{d}]"))
        .unwrap_or_default();
    out.push_str(&format!(
        "    expected  {} {} {}{detail}\n",
        u.display(&w.violation.lhs),
        w.violation.relation.symbol(),
        u.display(&w.violation.rhs)
    ));
    out
}

/// Verdict label for tables; refutations of statements not expected to
/// hold are marked as such.
pub fn verdict_text(r: &AuditReport, expected_to_hold: bool) -> &'static str {
    match (r.verdict, expected_to_hold) {
        (Verdict::Counterexample, false) => "refuted (expected)",
        (v, _) => v.as_str(),
    }
}

pub fn report_json(r: &AuditReport) -> Value {
    let mut v = json!({
        "prop": r.subject.to_string(),
        "verdict": r.verdict.as_str(),
        "instances": r.instances_checked,
        "subsets": r.subsets_checked,
    });
    if let Some(w) = &r.witness {
        v.as_object_mut()
            .expect("object")
            .insert("witness".into(), witness_json(w));
    }
    v
}
