//! Machine checks for the inclusion laws of the approximation operators.
//!
//! Each law in the closed [`PropositionId`] catalog is evaluated on concrete
//! spaces, exhaustively over all subsets (or pairs of subsets) when the
//! universe is small enough and on seeded samples otherwise. Violations come
//! back as [`Witness`]es that can be re-evaluated independently.
//!
//! The catalog keeps two forms of a few union/intersection laws: the
//! inclusion as originally stated (`-as-stated`) and the direction its
//! derivation actually establishes (`-as-proved`). Only the latter is
//! expected to hold; the former is a search target.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::approx::ApproxKind;
use crate::order::{Direction, PartialOrder, RawRelation};
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::topology::{oracle_from_opens, FiniteTopology, Gotas, Operator, TopologyError};
use crate::universe::Universe;

/// Largest universe swept over all subsets for single-set laws.
pub const UNARY_EXHAUSTIVE_MAX: usize = 12;
/// Largest universe swept over all pairs of subsets for two-set laws.
pub const BINARY_EXHAUSTIVE_MAX: usize = 8;
/// Draws per instance when a universe is too large to sweep.
pub const DEFAULT_SAMPLES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("universe of {size} elements is too large for an exhaustive sweep (limit {limit})")]
    UniverseTooLarge { size: usize, limit: usize },
    #[error("blocks do not form a partition of the universe")]
    NotAPartition,
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

macro_rules! catalog {
    ($($variant:ident => $id:literal, $arity:ident, $holds:literal, $statement:literal;)*) => {
        /// The closed catalog of audited laws.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum PropositionId {
            $($variant,)*
        }

        impl PropositionId {
            pub const ALL: &'static [PropositionId] = &[$(PropositionId::$variant,)*];

            /// Catalog identifier, e.g. `P3.12`.
            pub fn id(self) -> &'static str {
                match self {
                    $(PropositionId::$variant => $id,)*
                }
            }

            pub fn arity(self) -> Arity {
                match self {
                    $(PropositionId::$variant => Arity::$arity,)*
                }
            }

            /// False only for the refutable as-stated variants.
            pub fn expected_to_hold(self) -> bool {
                match self {
                    $(PropositionId::$variant => $holds,)*
                }
            }

            /// The checked law, written for direction `d` (either direction).
            pub fn statement(self) -> &'static str {
                match self {
                    $(PropositionId::$variant => $statement,)*
                }
            }
        }
    };
}

catalog! {
    AlphaUpperMonotone => "P3.2.1", Binary, true, "A ⊆ B ⇒ α-upper_d(A) ⊆ α-upper_d(B)";
    AlphaUpperMeet => "P3.2.2", Binary, true, "α-upper_d(A ∩ B) ⊆ α-upper_d(A) ∩ α-upper_d(B)";
    AlphaUpperJoinStated => "P3.2.3-as-stated", Binary, false, "α-upper_d(A ∪ B) ⊆ α-upper_d(A) ∪ α-upper_d(B)";
    AlphaUpperJoin => "P3.2.3-as-proved", Binary, true, "α-upper_d(A ∪ B) ⊇ α-upper_d(A) ∪ α-upper_d(B)";
    AlphaLowerMonotone => "P3.3.1", Binary, true, "A ⊆ B ⇒ α-lower_d(A) ⊆ α-lower_d(B)";
    AlphaLowerMeet => "P3.3.2", Binary, true, "α-lower_d(A ∩ B) ⊆ α-lower_d(A) ∩ α-lower_d(B)";
    AlphaLowerJoin => "P3.3.3", Binary, true, "α-lower_d(A ∪ B) ⊇ α-lower_d(A) ∪ α-lower_d(B)";
    AlphaExactFromR => "P3.4", Unary, true, "A R-exact_d ⇒ A α-exact_d";
    AlphaNegativeWithinPlain => "P3.6.1", Unary, true, "U − cl(A) ⊇ α-neg_d(A)  (cross convention)";
    AlphaNegativeJoinStated => "P3.6.2-as-stated", Binary, false, "α-neg_d(A ∪ B) ⊆ α-neg_d(A) ∪ α-neg_d(B)";
    AlphaNegativeJoin => "P3.6.2-as-proved", Binary, true, "α-neg_d(A ∪ B) ⊆ α-neg_d(A) ∩ α-neg_d(B)";
    AlphaNegativeMeetStated => "P3.6.3-as-stated", Binary, false, "α-neg_d(A ∩ B) ⊇ α-neg_d(A) ∩ α-neg_d(B)";
    AlphaNegativeMeet => "P3.6.3-as-proved", Binary, true, "α-neg_d(A ∩ B) ⊇ α-neg_d(A) ∪ α-neg_d(B)";
    PreUpperMonotone => "P3.8.1", Binary, true, "A ⊆ B ⇒ P-upper_d(A) ⊆ P-upper_d(B)";
    PreUpperMeet => "P3.8.2", Binary, true, "P-upper_d(A ∩ B) ⊆ P-upper_d(A) ∩ P-upper_d(B)";
    PreUpperJoinStated => "P3.8.3-as-stated", Binary, false, "P-upper_d(A ∪ B) ⊆ P-upper_d(A) ∪ P-upper_d(B)";
    PreUpperJoin => "P3.8.3-as-proved", Binary, true, "P-upper_d(A ∪ B) ⊇ P-upper_d(A) ∪ P-upper_d(B)";
    PreLowerMonotone => "P3.9.1", Binary, true, "A ⊆ B ⇒ P-lower_d(A) ⊆ P-lower_d(B)";
    PreLowerMeet => "P3.9.2", Binary, true, "P-lower_d(A ∩ B) ⊆ P-lower_d(A) ∩ P-lower_d(B)";
    PreLowerJoin => "P3.9.3", Binary, true, "P-lower_d(A ∪ B) ⊇ P-lower_d(A) ∪ P-lower_d(B)";
    PreExactFromR => "P3.10", Unary, true, "A R-exact_d ⇒ A P-exact_d";
    PreNegativeWithinPlain => "P3.11.1", Unary, true, "U − cl(A) ⊇ P-neg_d(A)  (cross convention)";
    PreNegativeJoin => "P3.11.2", Binary, true, "P-neg_d(A ∪ B) ⊆ P-neg_d(A) ∩ P-neg_d(B)";
    PreNegativeMeet => "P3.11.3", Binary, true, "P-neg_d(A ∩ B) ⊇ P-neg_d(A) ∪ P-neg_d(B)";
    LowerChain => "P3.12", Unary, true, "R-lower_d(A) ⊆ α-lower_d(A) ⊆ S-lower_d(A)";
    AlphaLowerWithinPre => "P3.13", Unary, true, "α-lower_d(A) ⊆ P-lower_d(A)";
    UpperChain => "P3.14", Unary, true, "S-upper_d(A) ⊆ α-upper_d(A) ⊆ R-upper_d(A)";
    AccuracyOrder => "P3.17", Unary, true, "η_R,d(A) ≤ η_j,d(A) for j ∈ {α, P}, A ≠ ∅";
    BoundaryChain => "P3.19", Unary, true, "S-boundary_d(A) ⊆ α-boundary_d(A) ⊆ R-boundary_d(A)";
}

impl fmt::Display for PropositionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for PropositionId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        PropositionId::ALL
            .iter()
            .copied()
            .find(|p| p.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown proposition id {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    Unary,
    Binary,
}

/// What an [`AuditReport`] is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditSubject {
    Proposition(PropositionId),
    /// Fixpoint directed operators against the enumeration oracle.
    OracleDiff,
    /// Equality-order and partition reductions.
    Reduction,
}

impl fmt::Display for AuditSubject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditSubject::Proposition(p) => f.write_str(p.id()),
            AuditSubject::OracleDiff => f.write_str("oracle-diff"),
            AuditSubject::Reduction => f.write_str("reduction"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Counterexample,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Counterexample => "counterexample",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

/// The relation a law expects between its two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Subset,
    Superset,
    Equal,
    /// Accuracy of the left side at most that of the right side.
    AccuracyAtMost,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Subset => "⊆",
            Relation::Superset => "⊇",
            Relation::Equal => "=",
            Relation::AccuracyAtMost => "≤",
        }
    }
}

/// A failed comparison: `lhs relation rhs` was expected and does not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub lhs: ElementSet,
    pub rhs: ElementSet,
    pub relation: Relation,
    pub detail: Option<String>,
}

/// A concrete instance and input on which a law fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub instance: Gotas,
    pub direction: Option<Direction>,
    pub a: ElementSet,
    pub b: Option<ElementSet>,
    pub violation: Violation,
}

impl Witness {
    /// Re-evaluates the failing comparison through the public operators and
    /// returns whether it still fails.
    pub fn recheck(&self, subject: AuditSubject) -> bool {
        let g = &self.instance;
        match subject {
            AuditSubject::Proposition(p) => {
                let dir = self.direction.unwrap_or(Direction::Inc);
                check_law(p, &|x, d| Snapshot::direct(g, x, d), dir, &self.a, self.b.as_ref())
                    .is_some()
            }
            AuditSubject::OracleDiff => {
                let Some(dir) = self.direction else { return false };
                let op = if self.violation.detail.as_deref() == Some("closure") {
                    Operator::Closure
                } else {
                    Operator::Interior
                };
                match g.oracle_directed(&self.a, dir, op, crate::topology::DEFAULT_ENUMERATION_CAP) {
                    Ok(oracle) => oracle != g.directed(op, &self.a, dir),
                    Err(_) => false,
                }
            }
            AuditSubject::Reduction => reduction_violation(g, &self.a).is_some(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub subject: AuditSubject,
    pub instances_checked: usize,
    pub subsets_checked: usize,
    /// True when at least one instance was sampled rather than swept.
    pub sampled: bool,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl AuditReport {
    fn new(subject: AuditSubject) -> Self {
        Self {
            subject,
            instances_checked: 0,
            subsets_checked: 0,
            sampled: false,
            verdict: Verdict::Holds,
            witness: None,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    fn fail(&mut self, witness: Witness) {
        self.verdict = Verdict::Counterexample;
        self.witness = Some(witness);
    }
}

/// How subsets are visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    /// Sweep when under the limits, sample above them.
    Auto,
    /// Always sweep; error above the limits.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditOptions {
    pub coverage: Coverage,
    pub unary_exhaustive_max: usize,
    pub binary_exhaustive_max: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self {
            coverage: Coverage::Auto,
            unary_exhaustive_max: UNARY_EXHAUSTIVE_MAX,
            binary_exhaustive_max: BINARY_EXHAUSTIVE_MAX,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

/// Lower and upper approximations of every kind plus the plain closure, for
/// one set and one direction. Indexed by [`kind_index`].
#[derive(Clone, Copy)]
struct Snapshot {
    lower: [ElementSet; 4],
    upper: [ElementSet; 4],
    closure: ElementSet,
}

fn kind_index(kind: ApproxKind) -> usize {
    match kind {
        ApproxKind::R => 0,
        ApproxKind::S => 1,
        ApproxKind::P => 2,
        ApproxKind::Alpha => 3,
    }
}

impl Snapshot {
    /// Through the public `lower`/`upper` operators.
    fn direct(g: &Gotas, a: &ElementSet, dir: Direction) -> Self {
        Self {
            lower: ApproxKind::ALL.map(|k| g.lower(a, k, dir)),
            upper: ApproxKind::ALL.map(|k| g.upper(a, k, dir)),
            closure: g.topology().closure(a),
        }
    }

    /// Shares the directed interior/closure compositions between kinds.
    fn composed(g: &Gotas, a: &ElementSet, dir: Direction) -> Self {
        let int = g.directed_interior(a, dir);
        let cl = g.directed_closure(a, dir);
        let cl_int = g.directed_closure(&int, dir);
        let int_cl = g.directed_interior(&cl, dir);
        Self {
            lower: [
                int,
                *a & cl_int,
                *a & int_cl,
                *a & g.directed_interior(&cl_int, dir),
            ],
            upper: [cl, *a | int_cl, *a | cl_int, *a | g.directed_closure(&int_cl, dir)],
            closure: g.topology().closure(a),
        }
    }

    fn lower(&self, kind: ApproxKind) -> ElementSet {
        self.lower[kind_index(kind)]
    }

    fn upper(&self, kind: ApproxKind) -> ElementSet {
        self.upper[kind_index(kind)]
    }

    fn boundary(&self, kind: ApproxKind) -> ElementSet {
        self.upper(kind) - self.lower(kind)
    }
}

/// Snapshots of every subset of a small universe, indexed by mask.
struct SnapshotTable {
    width: usize,
    rows: Vec<[Snapshot; 2]>,
}

impl SnapshotTable {
    fn build(g: &Gotas) -> Self {
        let width = g.len();
        let rows = crate::set::all_subsets(width)
            .map(|a| Direction::BOTH.map(|d| Snapshot::composed(g, &a, d)))
            .collect();
        Self { width, rows }
    }

    fn get(&self, a: &ElementSet, dir: Direction) -> Snapshot {
        debug_assert_eq!(a.width(), self.width);
        self.rows[a.to_mask() as usize][dir as usize]
    }
}

fn subset(lhs: ElementSet, rhs: ElementSet) -> Option<Violation> {
    (!lhs.is_subset(&rhs)).then_some(Violation {
        lhs,
        rhs,
        relation: Relation::Subset,
        detail: None,
    })
}

fn superset(lhs: ElementSet, rhs: ElementSet) -> Option<Violation> {
    (!rhs.is_subset(&lhs)).then_some(Violation {
        lhs,
        rhs,
        relation: Relation::Superset,
        detail: None,
    })
}

fn ratio(s: &Snapshot, kind: ApproxKind) -> Ratio<u64> {
    Ratio::new(s.lower(kind).len() as u64, s.upper(kind).len() as u64)
}

/// Evaluates one law on one input; `Some` is a violation.
fn check_law(
    p: PropositionId,
    snap: &dyn Fn(&ElementSet, Direction) -> Snapshot,
    dir: Direction,
    a: &ElementSet,
    b: Option<&ElementSet>,
) -> Option<Violation> {
    use ApproxKind::*;
    use PropositionId::*;

    let neg = |x: &ElementSet, kind| !snap(x, dir.opposite()).upper(kind);
    let pair = || *b.expect("two-set law needs a second set");

    match p {
        AlphaUpperMonotone | AlphaLowerMonotone | PreUpperMonotone | PreLowerMonotone => {
            let b = pair();
            if !a.is_subset(&b) {
                return None;
            }
            let (sa, sb) = (snap(a, dir), snap(&b, dir));
            match p {
                AlphaUpperMonotone => subset(sa.upper(Alpha), sb.upper(Alpha)),
                AlphaLowerMonotone => subset(sa.lower(Alpha), sb.lower(Alpha)),
                PreUpperMonotone => subset(sa.upper(P), sb.upper(P)),
                _ => subset(sa.lower(P), sb.lower(P)),
            }
        }
        AlphaUpperMeet | AlphaLowerMeet | PreUpperMeet | PreLowerMeet => {
            let b = pair();
            let (sa, sb, sm) = (snap(a, dir), snap(&b, dir), snap(&(*a & b), dir));
            match p {
                AlphaUpperMeet => subset(sm.upper(Alpha), sa.upper(Alpha) & sb.upper(Alpha)),
                AlphaLowerMeet => subset(sm.lower(Alpha), sa.lower(Alpha) & sb.lower(Alpha)),
                PreUpperMeet => subset(sm.upper(P), sa.upper(P) & sb.upper(P)),
                _ => subset(sm.lower(P), sa.lower(P) & sb.lower(P)),
            }
        }
        AlphaUpperJoinStated | AlphaUpperJoin | AlphaLowerJoin | PreUpperJoinStated
        | PreUpperJoin | PreLowerJoin => {
            let b = pair();
            let (sa, sb, sj) = (snap(a, dir), snap(&b, dir), snap(&(*a | b), dir));
            match p {
                AlphaUpperJoinStated => subset(sj.upper(Alpha), sa.upper(Alpha) | sb.upper(Alpha)),
                AlphaUpperJoin => superset(sj.upper(Alpha), sa.upper(Alpha) | sb.upper(Alpha)),
                AlphaLowerJoin => superset(sj.lower(Alpha), sa.lower(Alpha) | sb.lower(Alpha)),
                PreUpperJoinStated => subset(sj.upper(P), sa.upper(P) | sb.upper(P)),
                PreUpperJoin => superset(sj.upper(P), sa.upper(P) | sb.upper(P)),
                _ => superset(sj.lower(P), sa.lower(P) | sb.lower(P)),
            }
        }
        AlphaExactFromR | PreExactFromR => {
            let s = snap(a, dir);
            if s.lower(R) != s.upper(R) {
                return None;
            }
            let kind = if p == AlphaExactFromR { Alpha } else { P };
            (s.lower(kind) != s.upper(kind)).then_some(Violation {
                lhs: s.lower(kind),
                rhs: s.upper(kind),
                relation: Relation::Equal,
                detail: None,
            })
        }
        AlphaNegativeWithinPlain | PreNegativeWithinPlain => {
            let kind = if p == AlphaNegativeWithinPlain { Alpha } else { P };
            superset(!snap(a, dir).closure, neg(a, kind))
        }
        AlphaNegativeJoinStated | AlphaNegativeJoin | PreNegativeJoin => {
            let b = pair();
            let kind = if p == PreNegativeJoin { P } else { Alpha };
            let (na, nb, nj) = (neg(a, kind), neg(&b, kind), neg(&(*a | b), kind));
            if p == AlphaNegativeJoinStated {
                subset(nj, na | nb)
            } else {
                subset(nj, na & nb)
            }
        }
        AlphaNegativeMeetStated | AlphaNegativeMeet | PreNegativeMeet => {
            let b = pair();
            let kind = if p == PreNegativeMeet { P } else { Alpha };
            let (na, nb, nm) = (neg(a, kind), neg(&b, kind), neg(&(*a & b), kind));
            if p == AlphaNegativeMeetStated {
                superset(nm, na & nb)
            } else {
                superset(nm, na | nb)
            }
        }
        LowerChain => {
            let s = snap(a, dir);
            subset(s.lower(R), s.lower(Alpha)).or_else(|| subset(s.lower(Alpha), s.lower(S)))
        }
        AlphaLowerWithinPre => {
            let s = snap(a, dir);
            subset(s.lower(Alpha), s.lower(P))
        }
        UpperChain => {
            let s = snap(a, dir);
            subset(s.upper(S), s.upper(Alpha)).or_else(|| subset(s.upper(Alpha), s.upper(R)))
        }
        AccuracyOrder => {
            if a.is_empty() {
                return None;
            }
            let s = snap(a, dir);
            let base = ratio(&s, R);
            [Alpha, P].into_iter().find_map(|j| {
                let other = ratio(&s, j);
                (base > other).then(|| Violation {
                    lhs: s.lower(R),
                    rhs: s.lower(j),
                    relation: Relation::AccuracyAtMost,
                    detail: Some(format!("η_r = {base} > η_{j} = {other}")),
                })
            })
        }
        BoundaryChain => {
            let s = snap(a, dir);
            subset(s.boundary(S), s.boundary(Alpha))
                .or_else(|| subset(s.boundary(Alpha), s.boundary(R)))
        }
    }
}

/// Sequence of inputs a law is evaluated on for one instance.
fn inputs(
    width: usize,
    arity: Arity,
    monotone_pairs: bool,
    opts: &AuditOptions,
    instance_seed: u64,
) -> Result<(Vec<(ElementSet, Option<ElementSet>)>, bool), AuditError> {
    let limit = match arity {
        Arity::Unary => opts.unary_exhaustive_max,
        Arity::Binary => opts.binary_exhaustive_max,
    };
    if width <= limit {
        let subsets: Vec<ElementSet> = crate::set::all_subsets(width).collect();
        let out = match arity {
            Arity::Unary => subsets.iter().map(|a| (*a, None)).collect(),
            Arity::Binary => subsets
                .iter()
                .flat_map(|a| {
                    subsets
                        .iter()
                        .filter(move |b| !monotone_pairs || a.is_subset(b))
                        .map(move |b| (*a, Some(*b)))
                })
                .collect(),
        };
        return Ok((out, false));
    }
    if opts.coverage == Coverage::Exhaustive {
        return Err(AuditError::UniverseTooLarge { size: width, limit });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ instance_seed);
    let draw = |rng: &mut ChaCha8Rng| {
        ElementSet::from_indices(width, (0..width).filter(|_| rng.gen_bool(0.5)))
    };
    let out = (0..opts.samples)
        .map(|_| {
            let a = draw(&mut rng);
            match arity {
                Arity::Unary => (a, None),
                Arity::Binary => {
                    let b = draw(&mut rng);
                    if monotone_pairs {
                        (a & b, Some(b))
                    } else {
                        (a, Some(b))
                    }
                }
            }
        })
        .collect();
    Ok((out, true))
}

fn is_monotonicity_law(p: PropositionId) -> bool {
    use PropositionId::*;
    matches!(
        p,
        AlphaUpperMonotone | AlphaLowerMonotone | PreUpperMonotone | PreLowerMonotone
    )
}

/// Audits `props` on one instance, sharing a snapshot table between them.
fn audit_instance(
    g: &Gotas,
    instance_index: usize,
    props: &[PropositionId],
    reports: &mut [AuditReport],
    opts: &AuditOptions,
) -> Result<(), AuditError> {
    let width = g.len();
    let table = (width <= opts.unary_exhaustive_max.max(opts.binary_exhaustive_max))
        .then(|| SnapshotTable::build(g));
    let snap = |x: &ElementSet, d: Direction| match &table {
        Some(t) => t.get(x, d),
        None => Snapshot::composed(g, x, d),
    };
    for (p, report) in props.iter().zip(reports.iter_mut()) {
        if report.witness.is_some() {
            continue;
        }
        let (cases, sampled) = inputs(
            width,
            p.arity(),
            is_monotonicity_law(*p),
            opts,
            instance_index as u64,
        )?;
        report.instances_checked += 1;
        report.sampled |= sampled;
        for (a, b) in cases {
            if *p == PropositionId::AccuracyOrder && a.is_empty() {
                continue;
            }
            report.subsets_checked += 1;
            for dir in Direction::BOTH {
                if let Some(violation) = check_law(*p, &snap, dir, &a, b.as_ref()) {
                    report.fail(Witness {
                        instance: g.clone(),
                        direction: Some(dir),
                        a,
                        b,
                        violation,
                    });
                    break;
                }
            }
            if report.witness.is_some() {
                break;
            }
        }
    }
    Ok(())
}

/// Audits one law on one instance.
pub fn audit_proposition(
    g: &Gotas,
    p: PropositionId,
    opts: &AuditOptions,
) -> Result<AuditReport, AuditError> {
    let mut reports = audit_many(std::slice::from_ref(g), &[p], opts)?;
    Ok(reports.remove(0))
}

/// Audits several laws over several instances. Each report stops at its
/// first violation, taken in instance order.
pub fn audit_many(
    instances: &[Gotas],
    props: &[PropositionId],
    opts: &AuditOptions,
) -> Result<Vec<AuditReport>, AuditError> {
    let mut reports: Vec<AuditReport> = props
        .iter()
        .map(|p| AuditReport::new(AuditSubject::Proposition(*p)))
        .collect();
    for (i, g) in instances.iter().enumerate() {
        audit_instance(g, i, props, &mut reports, opts)?;
    }
    Ok(reports)
}

/// Parameters of the random instance generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub universe_size: usize,
    pub relation_density: f64,
    pub order_density: f64,
    pub seed: u64,
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), AuditError> {
        if self.universe_size == 0 || self.universe_size > MAX_ELEMENTS {
            return Err(AuditError::InvalidConfig(format!(
                "universe size must be in 1..={MAX_ELEMENTS}, got {}",
                self.universe_size
            )));
        }
        for (name, p) in [
            ("relation density", self.relation_density),
            ("order density", self.order_density),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(AuditError::InvalidConfig(format!(
                    "{name} must be in [0, 1], got {p}"
                )));
            }
        }
        Ok(())
    }
}

/// Draws a random instance from a ChaCha8 stream seeded with `cfg.seed`.
///
/// The relation includes each ordered pair independently with probability
/// `relation_density`. The order adds each forward edge `i < j` with
/// probability `order_density` and then takes the reflexive-transitive
/// closure, so it is antisymmetric by construction.
pub fn random_gotas(cfg: &GenConfig) -> Result<Gotas, AuditError> {
    cfg.validate()?;
    let n = cfg.universe_size;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let universe = Universe::indexed(n).expect("size checked");
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if rng.gen_bool(cfg.relation_density) {
                pairs.push((x, y));
            }
        }
    }
    let rel = RawRelation::new(n, pairs).expect("indices in range");
    let mut edges = vec![false; n * n];
    for i in 0..n {
        for j in i + 1..n {
            edges[i * n + j] = rng.gen_bool(cfg.order_density);
        }
    }
    let order = forward_order(n, |i, j| edges[i * n + j], &universe);
    let topology = FiniteTopology::from_relation(universe, &rel);
    Ok(Gotas::new(topology, order).expect("same universe"))
}

/// Reflexive-transitive closure of a set of forward edges `i < j`.
fn forward_order(n: usize, edge: impl Fn(usize, usize) -> bool, u: &Universe) -> PartialOrder {
    let mut up: Vec<ElementSet> = (0..n).map(|i| ElementSet::singleton(n, i)).collect();
    for i in (0..n).rev() {
        for j in i + 1..n {
            if edge(i, j) {
                let reach = up[j];
                up[i] |= reach;
            }
        }
    }
    let rel = RawRelation::new(n, up.iter().enumerate().flat_map(|(i, s)| s.iter().map(move |j| (i, j))))
        .expect("indices in range");
    PartialOrder::validate(&rel, u).expect("forward closure is a partial order")
}

/// A batch of random instances. Sizes cycle through `1..=max_size` and the
/// per-instance seeds come from a stream seeded with `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub max_size: usize,
    pub relation_density: f64,
    pub order_density: f64,
    pub seed: u64,
    pub count: usize,
}

pub fn random_instances(sweep: &SweepConfig) -> Result<Vec<Gotas>, AuditError> {
    let mut seeds = ChaCha8Rng::seed_from_u64(sweep.seed);
    (0..sweep.count)
        .map(|i| {
            random_gotas(&GenConfig {
                universe_size: 1 + i % sweep.max_size.max(1),
                relation_density: sweep.relation_density,
                order_density: sweep.order_density,
                seed: seeds.next_u64(),
            })
        })
        .collect()
}

/// A random equivalence relation on `n` points, with the equality order.
pub fn random_partition_gotas(n: usize, seed: u64) -> Result<Gotas, AuditError> {
    GenConfig {
        universe_size: n,
        relation_density: 0.0,
        order_density: 0.0,
        seed,
    }
    .validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let rel = RawRelation::new(
        n,
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| labels[x] == labels[y]),
    )
    .expect("indices in range");
    let topology = FiniteTopology::from_relation(Universe::indexed(n).expect("valid size"), &rel);
    Ok(Gotas::new(topology, PartialOrder::equality(n)).expect("same universe"))
}

/// Every instance shape on `n` points: each distinct topology generated by
/// some relation, paired with each partial order. Intended for `n ≤ 4`.
pub fn enumerate_gotas(n: usize) -> Vec<Gotas> {
    assert!((1..=4).contains(&n), "exhaustive enumeration supports 1..=4 points");
    let universe = Universe::indexed(n).expect("valid size");
    let mut topologies: Vec<FiniteTopology> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for mask in 0u64..1 << (n * n) {
        let rel = RawRelation::new(
            n,
            (0..n * n).filter(|b| mask >> b & 1 == 1).map(|b| (b / n, b % n)),
        )
        .expect("indices in range");
        let t = FiniteTopology::from_relation(universe.clone(), &rel);
        if seen.insert(t.base().clone()) {
            topologies.push(t);
        }
    }
    let off_diagonal: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|(x, y)| x != y)
        .collect();
    let mut orders = Vec::new();
    for mask in 0u64..1 << off_diagonal.len() {
        let pairs = (0..n).map(|i| (i, i)).chain(
            off_diagonal
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, p)| *p),
        );
        let rel = RawRelation::new(n, pairs).expect("indices in range");
        if let Ok(po) = PartialOrder::validate(&rel, &universe) {
            orders.push(po);
        }
    }
    let mut out = Vec::with_capacity(topologies.len() * orders.len());
    for t in &topologies {
        for po in &orders {
            out.push(Gotas::new(t.clone(), po.clone()).expect("same universe"));
        }
    }
    out
}

/// Outcome of a counterexample hunt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub report: AuditReport,
    /// True when the search covered every instance shape it targeted.
    pub exhaustive: bool,
}

/// Hunts for a violation of `p` on up to `budget` random instances, smallest
/// universes first: sizes `1..=cfg.universe_size`, with the budget split
/// evenly between sizes. Deterministic given `cfg.seed`.
pub fn find_counterexample(
    p: PropositionId,
    cfg: &GenConfig,
    budget: usize,
) -> Result<SearchOutcome, AuditError> {
    cfg.validate()?;
    let budget = budget.max(1);
    let max = cfg.universe_size;
    let per_size = budget.div_ceil(max);
    let mut seeds = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = AuditReport::new(AuditSubject::Proposition(p));
    let opts = AuditOptions {
        seed: cfg.seed,
        ..AuditOptions::default()
    };
    'sizes: for size in 1..=max {
        for _ in 0..per_size {
            if report.instances_checked >= budget {
                break 'sizes;
            }
            let g = random_gotas(&GenConfig {
                universe_size: size,
                seed: seeds.next_u64(),
                ..*cfg
            })?;
            let index = report.instances_checked;
            audit_instance(&g, index, &[p], std::slice::from_mut(&mut report), &opts)?;
            if report.witness.is_some() {
                break 'sizes;
            }
        }
    }
    Ok(SearchOutcome {
        report,
        exhaustive: false,
    })
}

/// Checks `p` on every instance shape with `1..=max_size` points.
pub fn exhaustive_search(p: PropositionId, max_size: usize) -> Result<SearchOutcome, AuditError> {
    let mut report = AuditReport::new(AuditSubject::Proposition(p));
    let opts = AuditOptions {
        coverage: Coverage::Exhaustive,
        ..AuditOptions::default()
    };
    'sizes: for size in 1..=max_size {
        for g in enumerate_gotas(size) {
            let index = report.instances_checked;
            audit_instance(&g, index, &[p], std::slice::from_mut(&mut report), &opts)?;
            if report.witness.is_some() {
                break 'sizes;
            }
        }
    }
    let exhaustive = report.witness.is_none();
    Ok(SearchOutcome { report, exhaustive })
}

/// Classical approximations by a partition: the union of blocks inside `a`,
/// and the union of blocks meeting `a`.
pub fn pawlak_approx(
    partition: &[ElementSet],
    a: &ElementSet,
) -> Result<(ElementSet, ElementSet), AuditError> {
    let width = a.width();
    let mut covered = ElementSet::empty(width);
    for block in partition {
        if block.width() != width || block.is_empty() || !block.is_disjoint(&covered) {
            return Err(AuditError::NotAPartition);
        }
        covered |= *block;
    }
    if !covered.is_full() {
        return Err(AuditError::NotAPartition);
    }
    let mut lower = ElementSet::empty(width);
    let mut upper = ElementSet::empty(width);
    for block in partition {
        if block.is_subset(a) {
            lower |= *block;
        }
        if !block.is_disjoint(a) {
            upper |= *block;
        }
    }
    Ok((lower, upper))
}

/// Fixpoint directed operators against the enumeration oracle, over every
/// subset (or a sample above the unary limit), both directions, interior
/// and closure.
pub fn differential_directed(
    g: &Gotas,
    cap: usize,
    opts: &AuditOptions,
) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new(AuditSubject::OracleDiff);
    differential_into(g, 0, cap, opts, &mut report)?;
    Ok(report)
}

fn differential_into(
    g: &Gotas,
    instance_index: usize,
    cap: usize,
    opts: &AuditOptions,
    report: &mut AuditReport,
) -> Result<(), AuditError> {
    let opens = g.topology().enumerate_open_family(cap)?;
    let (cases, sampled) = inputs(g.len(), Arity::Unary, false, opts, instance_index as u64)?;
    report.instances_checked += 1;
    report.sampled |= sampled;
    for (a, _) in cases {
        report.subsets_checked += 1;
        for dir in Direction::BOTH {
            for op in Operator::BOTH {
                let fast = g.directed(op, &a, dir);
                let oracle = oracle_from_opens(g.order(), &opens, &a, dir, op);
                if fast != oracle {
                    report.fail(Witness {
                        instance: g.clone(),
                        direction: Some(dir),
                        a,
                        b: None,
                        violation: Violation {
                            lhs: fast,
                            rhs: oracle,
                            relation: Relation::Equal,
                            detail: Some(
                                match op {
                                    Operator::Interior => "interior",
                                    Operator::Closure => "closure",
                                }
                                .to_owned(),
                            ),
                        },
                    });
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

/// [`differential_directed`] over a batch, stopping at the first
/// disagreement.
pub fn differential_many(
    instances: &[Gotas],
    cap: usize,
    opts: &AuditOptions,
) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new(AuditSubject::OracleDiff);
    for (i, g) in instances.iter().enumerate() {
        differential_into(g, i, cap, opts, &mut report)?;
        if report.witness.is_some() {
            break;
        }
    }
    Ok(report)
}

/// The first disagreement between directed and plain operators (equality
/// order) or between plain-kind approximations and the partition oracle.
fn reduction_violation(g: &Gotas, a: &ElementSet) -> Option<(Option<Direction>, Violation)> {
    let t = g.topology();
    let neq = |lhs: ElementSet, rhs: ElementSet, what: &str| {
        (lhs != rhs).then(|| Violation {
            lhs,
            rhs,
            relation: Relation::Equal,
            detail: Some(what.to_owned()),
        })
    };
    if !g.order().is_equality() {
        return None;
    }
    for dir in Direction::BOTH {
        let found = neq(g.directed_interior(a, dir), t.interior(a), "directed interior vs interior")
            .or_else(|| neq(g.directed_closure(a, dir), t.closure(a), "directed closure vs closure"));
        if let Some(v) = found {
            return Some((Some(dir), v));
        }
    }
    if let Some(blocks) = t.partition_blocks() {
        let (lower, upper) = pawlak_approx(&blocks, a).expect("blocks partition the universe");
        for dir in Direction::BOTH {
            let found = neq(g.lower(a, ApproxKind::R, dir), lower, "R-lower vs partition lower")
                .or_else(|| neq(g.upper(a, ApproxKind::R, dir), upper, "R-upper vs partition upper"));
            if let Some(v) = found {
                return Some((Some(dir), v));
            }
        }
    }
    None
}

/// Checks the reductions to the unordered and the classical partition case:
/// not applicable unless the order is equality; the partition comparison
/// runs only when the topology's minimal neighbourhoods partition the
/// universe.
pub fn reduction_check(g: &Gotas, opts: &AuditOptions) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new(AuditSubject::Reduction);
    reduction_into(g, 0, opts, &mut report)?;
    Ok(report)
}

fn reduction_into(
    g: &Gotas,
    instance_index: usize,
    opts: &AuditOptions,
    report: &mut AuditReport,
) -> Result<(), AuditError> {
    if !g.order().is_equality() {
        if report.instances_checked == 0 {
            report.verdict = Verdict::NotApplicable;
        }
        return Ok(());
    }
    if report.verdict == Verdict::NotApplicable {
        report.verdict = Verdict::Holds;
    }
    let (cases, sampled) = inputs(g.len(), Arity::Unary, false, opts, instance_index as u64)?;
    report.instances_checked += 1;
    report.sampled |= sampled;
    for (a, _) in cases {
        report.subsets_checked += 1;
        if let Some((direction, violation)) = reduction_violation(g, &a) {
            report.fail(Witness {
                instance: g.clone(),
                direction,
                a,
                b: None,
                violation,
            });
            return Ok(());
        }
    }
    Ok(())
}

/// [`reduction_check`] over a batch.
pub fn reduction_many(instances: &[Gotas], opts: &AuditOptions) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new(AuditSubject::Reduction);
    for (i, g) in instances.iter().enumerate() {
        reduction_into(g, i, opts, &mut report)?;
        if report.witness.is_some() {
            break;
        }
    }
    Ok(report)
}
