//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gotas::audit::{
    audit_many, differential_many, exhaustive_search, find_counterexample, random_gotas,
    random_instances, random_partition_gotas, reduction_many, AuditOptions, AuditReport,
    AuditSubject, GenConfig, PropositionId, SweepConfig,
};
use gotas::ingest::{parse_gotas, serialize_gotas};
use gotas::topology::DEFAULT_ENUMERATION_CAP;
use gotas::{Accuracy, ApproxKind, Direction, ElementSet, Gotas, NegConvention};

type Outcome = Result<String, String>;

fn fixture_text() -> String {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/four_point.json");
    std::fs::read_to_string(path).expect("fixture readable")
}

fn fixture() -> Gotas {
    parse_gotas(&fixture_text()).expect("fixture parses")
}

fn describe(g: &Gotas, s: &ElementSet) -> String {
    g.universe().display(s).to_string()
}

fn expect_set(g: &Gotas, what: &str, got: ElementSet, want: &str, failures: &mut Vec<String>) {
    let want = g.universe().parse_set(want).expect("labels in fixture");
    if got != want {
        failures.push(format!("{what}: got {} want {}", describe(g, &got), describe(g, &want)));
    }
}

fn golden() -> Outcome {
    let start = Instant::now();
    let g = fixture();
    let a = g.universe().parse_set("a,c").unwrap();
    let r = g.report(&a);
    let elapsed = start.elapsed();
    let dec = Direction::Dec;
    let inc = Direction::Inc;
    let comps = r.components(dec);
    let mut bad = Vec::new();
    expect_set(&g, "R_Dec", r.entry(ApproxKind::R, dec).lower, "a", &mut bad);
    expect_set(&g, "cl_Dec(R_Dec)", comps.closure_of_interior, "a,b", &mut bad);
    expect_set(&g, "R^Dec", r.entry(ApproxKind::R, dec).upper, "a,b,c,d", &mut bad);
    expect_set(&g, "int_Dec(R^Dec)", comps.interior_of_closure, "a,b,c,d", &mut bad);
    expect_set(&g, "P_Dec", r.entry(ApproxKind::P, dec).lower, "a,c", &mut bad);
    expect_set(&g, "P^Dec", r.entry(ApproxKind::P, dec).upper, "a,b,c", &mut bad);
    expect_set(&g, "B_PDec", r.entry(ApproxKind::P, dec).boundary, "b", &mut bad);
    expect_set(
        &g,
        "Neg_PInc cross",
        r.entry(ApproxKind::P, inc).negative(NegConvention::Cross),
        "d",
        &mut bad,
    );
    expect_set(&g, "alpha_Dec", r.entry(ApproxKind::Alpha, dec).lower, "a", &mut bad);
    expect_set(&g, "alpha^Dec", r.entry(ApproxKind::Alpha, dec).upper, "a,b,c,d", &mut bad);
    expect_set(&g, "B_alphaDec", r.entry(ApproxKind::Alpha, dec).boundary, "b,c,d", &mut bad);
    expect_set(
        &g,
        "Neg_alphaInc cross",
        r.entry(ApproxKind::Alpha, inc).negative(NegConvention::Cross),
        "",
        &mut bad,
    );
    if elapsed >= Duration::from_secs(1) {
        bad.push(format!("runtime {elapsed:?} >= 1s"));
    }
    if bad.is_empty() {
        Ok(format!("12 sets exact, {elapsed:?}"))
    } else {
        Err(bad.join("; "))
    }
}

fn open_sets() -> Outcome {
    let g = fixture();
    let u = g.universe();
    let mut got = g
        .topology()
        .enumerate_open_family(DEFAULT_ENUMERATION_CAP)
        .map_err(|e| e.to_string())?;
    got.sort();
    let mut want: Vec<ElementSet> = ["", "a", "a,b", "c,d", "a,c,d", "a,b,c,d"]
        .iter()
        .map(|s| u.parse_set(s).unwrap())
        .collect();
    want.sort();
    let shown: Vec<String> = got.iter().map(|s| describe(&g, s)).collect();
    if got == want {
        Ok(format!("opens {}", shown.join(" ")))
    } else {
        Err(format!("opens {}", shown.join(" ")))
    }
}

/// Laws required to hold by the property criterion.
const SWEEP_LAWS: &[PropositionId] = &[
    PropositionId::AlphaUpperMonotone,
    PropositionId::AlphaUpperMeet,
    PropositionId::AlphaLowerMonotone,
    PropositionId::AlphaLowerMeet,
    PropositionId::AlphaLowerJoin,
    PropositionId::AlphaExactFromR,
    PropositionId::AlphaNegativeWithinPlain,
    PropositionId::AlphaNegativeJoin,
    PropositionId::AlphaNegativeMeet,
    PropositionId::PreUpperMonotone,
    PropositionId::PreUpperMeet,
    PropositionId::PreLowerMonotone,
    PropositionId::PreLowerMeet,
    PropositionId::PreLowerJoin,
    PropositionId::PreExactFromR,
    PropositionId::PreNegativeWithinPlain,
    PropositionId::PreNegativeJoin,
    PropositionId::PreNegativeMeet,
    PropositionId::LowerChain,
    PropositionId::AlphaLowerWithinPre,
    PropositionId::UpperChain,
    PropositionId::AccuracyOrder,
    PropositionId::BoundaryChain,
];

fn sweep_instances() -> Vec<Gotas> {
    let mut out = Vec::new();
    for (i, (rel, ord)) in [(0.2, 0.3), (0.4, 0.5), (0.6, 0.2), (0.3, 0.8)].into_iter().enumerate() {
        out.extend(
            random_instances(&SweepConfig {
                max_size: 7,
                relation_density: rel,
                order_density: ord,
                seed: 1000 + i as u64,
                count: 56,
            })
            .expect("valid sweep"),
        );
    }
    out
}

fn witness_line(r: &AuditReport) -> String {
    match &r.witness {
        None => String::new(),
        Some(w) => {
            let g = &w.instance;
            let u = g.universe();
            let order: Vec<String> = g
                .order()
                .pairs()
                .filter(|(x, y)| x != y)
                .map(|(x, y)| format!("{}<={}", u.label(x), u.label(y)))
                .collect();
            let base: Vec<String> = g.topology().base().members().iter().map(|s| describe(g, s)).collect();
            format!(
                " witness: n={} base [{}] order [{}] dir {} A={}{} : {} {} {}",
                g.len(),
                base.join(" "),
                order.join(" "),
                w.direction.map_or("-", |d| d.as_str()),
                describe(g, &w.a),
                w.b.map(|b| format!(" B={}", describe(g, &b))).unwrap_or_default(),
                describe(g, &w.violation.lhs),
                w.violation.relation.symbol(),
                describe(g, &w.violation.rhs),
            )
        }
    }
}

struct Sweep {
    reports: Vec<AuditReport>,
    elapsed: Duration,
    instances: usize,
}

fn run_sweep() -> Sweep {
    let instances = sweep_instances();
    let opts = AuditOptions {
        binary_exhaustive_max: 5,
        seed: 7,
        ..AuditOptions::default()
    };
    let start = Instant::now();
    let reports = audit_many(&instances, SWEEP_LAWS, &opts).expect("sweep runs");
    Sweep {
        reports,
        elapsed: start.elapsed(),
        instances: instances.len(),
    }
}

fn property_suite(sweep: &Sweep) -> Outcome {
    let mut failed = Vec::new();
    for r in &sweep.reports {
        let verified = r
            .witness
            .as_ref()
            .map_or(String::new(), |w| format!(" (re-verified: {})", w.recheck(r.subject)));
        println!(
            "      {:<18} {:<15} subsets {}{}{}",
            r.subject.to_string(),
            r.verdict.as_str(),
            r.subsets_checked,
            verified,
            witness_line(r)
        );
        if !r.holds() {
            failed.push(r.subject.to_string());
        }
    }
    let min_size_ok = sweep.instances >= 200;
    let time_ok = sweep.elapsed < Duration::from_secs(60);
    let summary = format!(
        "{} instances, {} laws, {:?}",
        sweep.instances,
        sweep.reports.len(),
        sweep.elapsed
    );
    if failed.is_empty() && min_size_ok && time_ok {
        Ok(summary)
    } else {
        Err(format!("{summary}; violated: {}", failed.join(", ")))
    }
}

fn statement_vs_proof() -> Outcome {
    let mut notes = Vec::new();
    let mut bad = Vec::new();
    for p in [PropositionId::AlphaUpperJoinStated, PropositionId::PreUpperJoinStated] {
        let small = exhaustive_search(p, 3).map_err(|e| e.to_string())?;
        let outcome = if small.report.witness.is_some() {
            small
        } else {
            let cfg = GenConfig {
                universe_size: 6,
                relation_density: 0.4,
                order_density: 0.4,
                seed: 42,
            };
            let hunt = find_counterexample(p, &cfg, 3000).map_err(|e| e.to_string())?;
            if hunt.report.witness.is_some() {
                hunt
            } else {
                notes.push(format!("{}: holds on every shape with n <= 3", p.id()));
                continue;
            }
        };
        let r = &outcome.report;
        let w = r.witness.as_ref().unwrap();
        if w.recheck(AuditSubject::Proposition(p)) {
            notes.push(format!("{}: refuted{}", p.id(), witness_line(r)));
        } else {
            bad.push(format!("{}: witness does not re-verify", p.id()));
        }
    }
    for p in [PropositionId::AlphaUpperJoin, PropositionId::PreUpperJoin] {
        let out = exhaustive_search(p, 4).map_err(|e| e.to_string())?;
        if out.exhaustive && out.report.holds() {
            notes.push(format!(
                "{}: holds on all {} shapes with n <= 4",
                p.id(),
                out.report.instances_checked
            ));
        } else {
            bad.push(format!("{}: violated{}", p.id(), witness_line(&out.report)));
        }
    }
    for n in &notes {
        println!("      {n}");
    }
    if bad.is_empty() {
        Ok(format!("{} findings", notes.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn oracle_equivalence() -> Outcome {
    let instances = random_instances(&SweepConfig {
        max_size: 6,
        relation_density: 0.35,
        order_density: 0.4,
        seed: 2024,
        count: 120,
    })
    .map_err(|e| e.to_string())?;
    let r = differential_many(&instances, DEFAULT_ENUMERATION_CAP, &AuditOptions::default())
        .map_err(|e| e.to_string())?;
    let summary = format!("{} instances, {} subsets x 2 directions", r.instances_checked, r.subsets_checked);
    if r.holds() && !r.sampled && r.instances_checked >= 100 {
        Ok(summary)
    } else {
        Err(format!("{summary}{}", witness_line(&r)))
    }
}

fn reductions() -> Outcome {
    let opts = AuditOptions::default();
    let unordered: Vec<Gotas> = random_instances(&SweepConfig {
        max_size: 7,
        relation_density: 0.3,
        order_density: 0.5,
        seed: 77,
        count: 70,
    })
    .map_err(|e| e.to_string())?
    .iter()
    .map(Gotas::with_equality_order)
    .collect();
    let plain = reduction_many(&unordered, &opts).map_err(|e| e.to_string())?;
    let partitions: Vec<Gotas> = (0..70)
        .map(|i| random_partition_gotas(1 + i % 7, 500 + i as u64))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let blocks = partitions
        .iter()
        .filter(|g| g.topology().partition_blocks().is_some())
        .count();
    let pawlak = reduction_many(&partitions, &opts).map_err(|e| e.to_string())?;
    let summary = format!(
        "equality order {} instances / {} subsets; partitions {} ({} with blocks) / {} subsets",
        plain.instances_checked,
        plain.subsets_checked,
        pawlak.instances_checked,
        blocks,
        pawlak.subsets_checked
    );
    let ok = plain.holds()
        && pawlak.holds()
        && plain.instances_checked >= 50
        && blocks >= 50
        && pawlak.instances_checked >= 50;
    if ok {
        Ok(summary)
    } else {
        Err(format!("{summary}{}{}", witness_line(&plain), witness_line(&pawlak)))
    }
}

fn accuracy_order(sweep: &Sweep) -> Outcome {
    let law = sweep
        .reports
        .iter()
        .find(|r| r.subject == AuditSubject::Proposition(PropositionId::AccuracyOrder))
        .expect("accuracy law in sweep");
    let g = fixture();
    let a = g.universe().parse_set("a,c").unwrap();
    let eta = |k| g.accuracy(&a, k, Direction::Dec).expect("nonempty");
    let (r, alpha, p) = (eta(ApproxKind::R), eta(ApproxKind::Alpha), eta(ApproxKind::P));
    let mut bad = Vec::new();
    if !law.holds() {
        bad.push(format!("sweep violated{}", witness_line(law)));
    }
    if r != Accuracy::new(1, 4) || alpha != Accuracy::new(1, 4) || p != Accuracy::new(2, 3) {
        bad.push(format!("spot values R {r} alpha {alpha} P {p}"));
    }
    if !(r <= alpha && alpha <= Accuracy::from_integer(1) && r <= p) {
        bad.push("spot values out of order".to_owned());
    }
    if bad.is_empty() {
        Ok(format!(
            "{} subsets in sweep; eta R {r} <= alpha {alpha} <= 1, R {r} <= P {p}",
            law.subsets_checked
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn performance() -> Outcome {
    let g = random_gotas(&GenConfig {
        universe_size: 64,
        relation_density: 0.08,
        order_density: 0.04,
        seed: 64,
    })
    .map_err(|e| e.to_string())?;
    let a = ElementSet::from_indices(64, (0..64).filter(|i| i % 3 != 1));
    let start = Instant::now();
    let report = g.report(&a);
    let elapsed = start.elapsed();
    let text = serialize_gotas(&g);
    let back = parse_gotas(&text).map_err(|e| e.to_string())?;
    let again = serialize_gotas(&back);
    let fixture_text = serialize_gotas(&fixture());
    let fixture_again = serialize_gotas(&parse_gotas(&fixture_text).map_err(|e| e.to_string())?);
    let mut bad = Vec::new();
    if elapsed >= Duration::from_millis(100) {
        bad.push(format!("report took {elapsed:?}"));
    }
    if report.entries.len() != 8 {
        bad.push(format!("{} report entries", report.entries.len()));
    }
    if text != again || back != g {
        bad.push("n=64 round trip not byte-stable".to_owned());
    }
    if fixture_text != fixture_again {
        bad.push("fixture round trip not byte-stable".to_owned());
    }
    if bad.is_empty() {
        Ok(format!(
            "n=64 report {elapsed:?}, base of {} sets, {} bytes round-tripped",
            g.topology().base().len(),
            text.len()
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn main() -> ExitCode {
    let sweep = run_sweep();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("C1 golden four-point example", Box::new(golden)),
        ("C2 open sets of the fixture", Box::new(open_sets)),
        ("C3 property suite", Box::new(|| property_suite(&sweep))),
        ("C4 statement vs proof", Box::new(statement_vs_proof)),
        ("C5 oracle equivalence", Box::new(oracle_equivalence)),
        ("C6 reductions", Box::new(reductions)),
        ("C7 accuracy ordering", Box::new(|| accuracy_order(&sweep))),
        ("C8 performance and round trip", Box::new(performance)),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("acceptance: {failures} failing criteria");
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
