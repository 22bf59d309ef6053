//! `gotas` command-line front end.
//!
//! Exit status: 0 on success, 1 when a counterexample or disagreement is
//! found, 2 on input or usage errors.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gotas::audit::{
    audit_many, differential_many, random_gotas, random_instances, AuditOptions, AuditSubject,
    GenConfig, PropositionId, SweepConfig,
};
use gotas::ingest::{dominance_order, indiscernibility, parse_gotas, GotasDocument, InformationTable};
use gotas::topology::DEFAULT_ENUMERATION_CAP;
use gotas::{ApproxKind, Direction, FiniteTopology, Gotas, NegConvention, PartialOrder};
use serde_json::{json, Value};

const EXIT_FOUND: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "gotas", version, about = "Directed rough approximations on finite ordered topological spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower/upper approximations, regions and accuracy of a set.
    Approx(ApproxArgs),
    /// Check catalog laws on a file or on random instances.
    Audit(AuditArgs),
    /// Print a random instance document.
    Gen(GenArgs),
    /// Build an instance document from a CSV information table.
    Ingest(IngestArgs),
    /// Compare fixpoint directed operators with the enumeration oracle.
    OracleDiff(OracleDiffArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    R,
    S,
    P,
    Alpha,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirArg {
    Inc,
    Dec,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum NegArg {
    Cross,
    Same,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    Indiscernibility,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Dominance,
    Equality,
}

#[derive(Args)]
struct ApproxArgs {
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated element labels; empty for the empty set.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    #[arg(long, value_enum, default_value = "all")]
    kind: KindArg,
    #[arg(long, value_enum, default_value = "all")]
    dir: DirArg,
    #[arg(long, value_enum, default_value = "cross")]
    neg: NegArg,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false)]
struct SourceArgs {
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    /// `n,density,seed,count`: `count` instances with sizes cycling through
    /// 1..=n; density applies to both relation and order.
    #[arg(long, group = "source")]
    random: Option<String>,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Comma-separated catalog ids, or `all`.
    #[arg(long)]
    props: String,
    /// Fail only on laws expected to hold; refuted statements are reported.
    #[arg(long)]
    expect_hold: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    size: usize,
    #[arg(long)]
    rel_density: f64,
    #[arg(long)]
    order_density: f64,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct IngestArgs {
    #[arg(long)]
    csv: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "")]
    nominal: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "")]
    ordinal: Vec<String>,
    #[arg(long, value_enum, default_value = "indiscernibility")]
    relation: RelationArg,
    /// Defaults to dominance when ordinal attributes are given, else equality.
    #[arg(long, value_enum)]
    order: Option<OrderArg>,
}

#[derive(Args)]
struct OracleDiffArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Largest open family the oracle may enumerate.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

fn read_instance(path: &Path) -> Result<Gotas> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_gotas(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_random(text: &str) -> Result<SweepConfig> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [n, density, seed, count] = parts[..] else {
        bail!("--random expects n,density,seed,count, got {text:?}");
    };
    let bad = |what: &str| anyhow!("--random: invalid {what} in {text:?}");
    let max_size: usize = n.parse().map_err(|_| bad("n"))?;
    let density: f64 = density.parse().map_err(|_| bad("density"))?;
    let seed: u64 = seed.parse().map_err(|_| bad("seed"))?;
    let count: usize = count.parse().map_err(|_| bad("count"))?;
    Ok(SweepConfig {
        max_size,
        relation_density: density,
        order_density: density,
        seed,
        count,
    })
}

fn instances(source: &SourceArgs) -> Result<Vec<Gotas>> {
    match (&source.input, &source.random) {
        (Some(path), _) => Ok(vec![read_instance(path)?]),
        (None, Some(text)) => Ok(random_instances(&parse_random(text)?)?),
        (None, None) => bail!("one of --input or --random is required"),
    }
}

fn parse_props(text: &str) -> Result<Vec<PropositionId>> {
    if text.trim().eq_ignore_ascii_case("all") {
        return Ok(PropositionId::ALL.to_vec());
    }
    let props = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<PropositionId>().map_err(|e| anyhow!("{e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if props.is_empty() {
        bail!("--props names no catalog ids");
    }
    Ok(props)
}

fn cmd_approx(args: &ApproxArgs) -> Result<u8> {
    let g = read_instance(&args.input)?;
    let a = g.universe().parse_set(&args.set)?;
    let kinds: Vec<ApproxKind> = match args.kind {
        KindArg::R => vec![ApproxKind::R],
        KindArg::S => vec![ApproxKind::S],
        KindArg::P => vec![ApproxKind::P],
        KindArg::Alpha => vec![ApproxKind::Alpha],
        KindArg::All => ApproxKind::ALL.to_vec(),
    };
    let dirs: Vec<Direction> = match args.dir {
        DirArg::Inc => vec![Direction::Inc],
        DirArg::Dec => vec![Direction::Dec],
        DirArg::All => Direction::BOTH.to_vec(),
    };
    let neg = match args.neg {
        NegArg::Cross => NegConvention::Cross,
        NegArg::Same => NegConvention::Same,
    };
    let report = g.report(&a);
    let entries: Vec<_> = kinds
        .iter()
        .flat_map(|k| dirs.iter().map(move |d| (*k, *d)))
        .map(|(k, d)| report.entry(k, d))
        .collect();
    match args.format {
        Format::Table => print!("{}", render::approx_table(&g, &a, &entries, neg)),
        Format::Json => print!("{}", render::to_json_text(&render::approx_json(&g, &a, &entries, neg))),
    }
    Ok(0)
}

fn cmd_audit(args: &AuditArgs) -> Result<u8> {
    let props = parse_props(&args.props)?;
    let batch = instances(&args.source)?;
    let opts = AuditOptions {
        seed: args.seed,
        ..AuditOptions::default()
    };
    let reports = audit_many(&batch, &props, &opts)?;
    let mut failing = false;
    let mut json_reports = Vec::new();
    let mut table = String::new();
    for (p, r) in props.iter().zip(&reports) {
        if let Some(w) = &r.witness {
            if !w.recheck(r.subject) {
                bail!("witness for {} failed re-verification", p.id());
            }
        }
        if !r.holds() && (p.expected_to_hold() || !args.expect_hold) {
            failing = true;
        }
        json_reports.push(render::report_json(r));
        table.push_str(&format!(
            "{:<18} {:<19} instances {:<6} subsets {}{}\n",
            p.id(),
            render::verdict_text(r, p.expected_to_hold()),
            r.instances_checked,
            r.subsets_checked,
            if r.sampled { " (sampled)" } else { "" },
        ));
        if let Some(w) = &r.witness {
            table.push_str(&render::witness_table(w));
        }
    }
    match args.format {
        Format::Table => print!("{table}"),
        Format::Json => print!("{}", render::to_json_text(&Value::Array(json_reports))),
    }
    Ok(if failing { EXIT_FOUND } else { 0 })
}

fn cmd_gen(args: &GenArgs) -> Result<u8> {
    let g = random_gotas(&GenConfig {
        universe_size: args.size,
        relation_density: args.rel_density,
        order_density: args.order_density,
        seed: args.seed,
    })?;
    print!("{}", gotas::ingest::serialize_gotas(&g));
    Ok(0)
}

fn cmd_ingest(args: &IngestArgs) -> Result<u8> {
    let clean = |v: &[String]| -> Vec<String> {
        v.iter().map(|s| s.trim().to_owned()).filter(|s| !s.is_empty()).collect()
    };
    let (nominal, ordinal) = (clean(&args.nominal), clean(&args.ordinal));
    let file = fs::File::open(&args.csv).with_context(|| format!("opening {}", args.csv.display()))?;
    let table = (InformationTable::from_csv(file, &nominal, &ordinal))?;
    let universe = table.universe()?;
    let RelationArg::Indiscernibility = args.relation;
    let relation_attrs: Vec<String> = if nominal.is_empty() {
        table.attributes().iter().map(|a| a.name.clone()).collect()
    } else {
        nominal.clone()
    };
    let rel = indiscernibility(&table, &relation_attrs)?;
    let order_kind = args.order.unwrap_or(if ordinal.is_empty() {
        OrderArg::Equality
    } else {
        OrderArg::Dominance
    });
    let (order, order_name, order_attrs) = match order_kind {
        OrderArg::Dominance => (dominance_order(&table, &ordinal)?, "dominance", ordinal.clone()),
        OrderArg::Equality => (PartialOrder::equality(universe.len()), "equality", Vec::new()),
    };
    let g = Gotas::new(FiniteTopology::from_relation(universe, &rel), order)
        .expect("table universe shared");
    let mut doc = GotasDocument::from_gotas(&g);
    let meta = json!({
        "relation": "indiscernibility",
        "relation_attributes": relation_attrs,
        "order": order_name,
        "order_attributes": order_attrs,
    });
    doc.metadata = meta.as_object().cloned();
    print!("{}", doc.to_json());
    Ok(0)
}

fn cmd_oracle_diff(args: &OracleDiffArgs) -> Result<u8> {
    let batch = instances(&args.source)?;
    let report = differential_many(&batch, args.cap, &AuditOptions::default())?;
    if let Some(w) = &report.witness {
        if !w.recheck(AuditSubject::OracleDiff) {
            bail!("disagreement failed re-verification");
        }
    }
    let evaluations = report.subsets_checked * 2 * 2;
    match args.format {
        Format::Table => {
            let verdict = if report.holds() { "agree" } else { "disagree" };
            println!(
                "{verdict} on {} instances, {} subsets x 2 directions x 2 operators = {evaluations} evaluations{}",
                report.instances_checked,
                report.subsets_checked,
                if report.sampled { " (sampled)" } else { "" },
            );
            if let Some(w) = &report.witness {
                print!("{}", render::witness_table(w));
            }
        }
        Format::Json => print!("{}", render::to_json_text(&render::report_json(&report))),
    }
    Ok(if report.holds() { 0 } else { EXIT_FOUND })
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Approx(a) => cmd_approx(a),
        Command::Audit(a) => cmd_audit(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Ingest(a) => cmd_ingest(a),
        Command::OracleDiff(a) => cmd_oracle_diff(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
