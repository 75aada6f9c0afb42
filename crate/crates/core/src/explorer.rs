//! Exhaustive enumeration of possibility correspondences.
//!
//! Model `i` over `n` states assigns `P(s_k)` the event whose membership word
//! is digit `k` of `i` in base `2^n`, least significant state first.
//! Constraints filter that order without renumbering, so an index always
//! denotes the same correspondence.
//!
//! Parallel runs split the index space into contiguous ranges, one per
//! worker, and concatenate the per-range results in range order. Output is
//! therefore independent of the worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::claims::{verify_claim_with, ClaimId, StepStatus, Verdict};
use crate::error::{Error, Result};
use crate::event::Event;
use crate::formula::{eval_formula, Formula, Value};
use crate::operators::{self, Analyzer, OperatorKind};
use crate::properties::{check_property, PropertyId};
use crate::statespace::{classify, Limits, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    Serial,
    Reflexive,
    Transitive,
    Euclidean,
    Partitional,
    NonPartitional,
}

impl Constraint {
    pub const ALL: [Constraint; 6] = [
        Constraint::Serial,
        Constraint::Reflexive,
        Constraint::Transitive,
        Constraint::Euclidean,
        Constraint::Partitional,
        Constraint::NonPartitional,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Constraint::Serial => "serial",
            Constraint::Reflexive => "reflexive",
            Constraint::Transitive => "transitive",
            Constraint::Euclidean => "euclidean",
            Constraint::Partitional => "partitional",
            Constraint::NonPartitional => "non-partitional",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Constraint {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Constraint::ALL
            .into_iter()
            .find(|c| c.as_str() == s.replace('_', "-"))
            .ok_or_else(|| format!("unknown constraint `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumSpec {
    n: usize,
    constraints: Vec<Constraint>,
    workers: usize,
    #[serde(skip)]
    limits: Limits,
}

impl EnumSpec {
    pub fn new(n: usize, constraints: &[Constraint], workers: usize) -> Result<Self> {
        Self::with_limits(n, constraints, workers, Limits::default())
    }

    pub fn with_limits(
        n: usize,
        constraints: &[Constraint],
        workers: usize,
        limits: Limits,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyStateSpace);
        }
        // (2^n)^n must fit the index type.
        let cap = limits.max_enumeration_states.min(7);
        if n > cap {
            return Err(Error::EnumerationCapExceeded { n, cap });
        }
        if workers == 0 {
            return Err(Error::ZeroWorkers);
        }
        let mut constraints = constraints.to_vec();
        constraints.sort();
        constraints.dedup();
        let has = |c| constraints.contains(&c);
        if has(Constraint::Partitional) && has(Constraint::NonPartitional) {
            return Err(Error::ContradictoryConstraints(
                "partitional and non-partitional".into(),
            ));
        }
        if has(Constraint::NonPartitional)
            && has(Constraint::Reflexive)
            && has(Constraint::Transitive)
            && has(Constraint::Euclidean)
        {
            return Err(Error::ContradictoryConstraints(
                "reflexive, transitive and euclidean imply partitional".into(),
            ));
        }
        Ok(EnumSpec {
            n,
            constraints,
            workers,
            limits,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Size of the unconstrained index space, `(2^n)^n`.
    pub fn index_space(&self) -> u64 {
        1u64 << (self.n * self.n)
    }

    fn admits(&self, bits: &[u64]) -> bool {
        if self.constraints.is_empty() {
            return true;
        }
        if self.constraints.contains(&Constraint::Serial) && bits.contains(&0) {
            return false;
        }
        let m = self.decode_raw(bits);
        let c = classify(&m);
        self.constraints.iter().all(|k| match k {
            Constraint::Serial => c.serial,
            Constraint::Reflexive => c.reflexive,
            Constraint::Transitive => c.transitive,
            Constraint::Euclidean => c.euclidean,
            Constraint::Partitional => c.partitional,
            Constraint::NonPartitional => !c.partitional,
        })
    }

    fn digits(&self, index: u64, out: &mut [u64]) {
        let mask = (1u64 << self.n) - 1;
        for (k, d) in out.iter_mut().enumerate() {
            *d = (index >> (k * self.n)) & mask;
        }
    }

    fn decode_raw(&self, bits: &[u64]) -> Model {
        let labels = Model::canonical_labels(self.n);
        self.decode_with(labels, bits)
    }

    fn decode_with(&self, labels: Arc<[String]>, bits: &[u64]) -> Model {
        let p = bits.iter().map(|&b| Event::from_bits(self.n, b)).collect();
        Model::with_shared_labels(labels, p)
    }

    /// The model at `index` if it satisfies the constraints.
    pub fn model_at(&self, index: u64) -> Option<Model> {
        if index >= self.index_space() {
            return None;
        }
        let mut bits = vec![0; self.n];
        self.digits(index, &mut bits);
        self.admits(&bits)
            .then(|| self.decode_with(Model::canonical_labels(self.n), &bits))
    }

    fn models_in(&self, range: Range<u64>) -> impl Iterator<Item = (u64, Model)> + '_ {
        let labels = Model::canonical_labels(self.n);
        let mut bits = vec![0u64; self.n];
        range.filter_map(move |i| {
            self.digits(i, &mut bits);
            self.admits(&bits)
                .then(|| (i, self.decode_with(labels.clone(), &bits)))
        })
    }

    fn ranges(&self) -> Vec<Range<u64>> {
        let total = self.index_space();
        let w = (self.workers as u64).min(total).max(1);
        let chunk = total.div_ceil(w);
        (0..w)
            .map(|k| (k * chunk).min(total)..((k + 1) * chunk).min(total))
            .filter(|r| !r.is_empty())
            .collect()
    }

    /// Runs `f` over each contiguous range on its own thread and returns
    /// the results in range order.
    fn par_ranges<R, F>(&self, f: F) -> Result<Vec<R>>
    where
        R: Send,
        F: Fn(Range<u64>) -> Result<R> + Sync,
    {
        let ranges = self.ranges();
        if ranges.len() == 1 {
            return Ok(vec![f(ranges[0].clone())?]);
        }
        let f = &f;
        std::thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .into_iter()
                .map(|r| scope.spawn(move || f(r)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("explorer worker panicked"))
                .collect()
        })
    }
}

/// All models admitted by `spec`, in index order.
pub fn enumerate_models(spec: &EnumSpec) -> impl Iterator<Item = (u64, Model)> + '_ {
    spec.models_in(0..spec.index_space())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    /// Models where the property's outcome equals `holds`.
    Property {
        property: PropertyId,
        operator: OperatorKind,
        holds: bool,
    },
    /// Models where the claim's verdict equals `verdict`.
    Claim { claim: ClaimId, verdict: Verdict },
    /// Models satisfying a predicate formula.
    Formula(Formula),
}

impl Target {
    fn validate(&self) -> Result<()> {
        match self {
            Target::Formula(f) if !f.is_predicate() => Err(Error::NotAPredicate),
            _ => Ok(()),
        }
    }

    fn matches(&self, an: &Analyzer<'_>) -> Result<bool> {
        Ok(match self {
            Target::Property {
                property,
                operator,
                holds,
            } => check_property(an, *operator, *property)?.holds == *holds,
            Target::Claim { claim, verdict } => {
                verify_claim_with(an, *claim, None)?.verdict == *verdict
            }
            Target::Formula(f) => eval_formula(an, f)? == Value::Bool(true),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    First,
    All,
    Count,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub models_scanned: u64,
    pub match_count: u64,
    /// Matching models in index order: none for `Count`, at most one for
    /// `First`.
    pub matches: Vec<(u64, Model)>,
}

pub fn search(spec: &EnumSpec, target: &Target, mode: SearchMode) -> Result<SearchOutcome> {
    target.validate()?;
    let parts = spec.par_ranges(|range| {
        let mut scanned = 0u64;
        let mut count = 0u64;
        let mut found = Vec::new();
        for (i, m) in spec.models_in(range) {
            scanned += 1;
            let an = Analyzer::with_limits(&m, spec.limits);
            if target.matches(&an)? {
                count += 1;
                match mode {
                    SearchMode::Count => {}
                    SearchMode::All => found.push((i, m)),
                    SearchMode::First => {
                        found.push((i, m));
                        break;
                    }
                }
            }
        }
        Ok((scanned, count, found))
    })?;

    if mode == SearchMode::First {
        // Ranges are ordered, so the first non-empty range holds the minimum.
        let mut scanned = 0;
        for (s, _, found) in parts {
            scanned += s;
            if let Some(hit) = found.into_iter().next() {
                return Ok(SearchOutcome {
                    models_scanned: scanned,
                    match_count: 1,
                    matches: vec![hit],
                });
            }
        }
        return Ok(SearchOutcome {
            models_scanned: scanned,
            match_count: 0,
            matches: Vec::new(),
        });
    }

    let mut out = SearchOutcome {
        models_scanned: 0,
        match_count: 0,
        matches: Vec::new(),
    };
    for (s, c, found) in parts {
        out.models_scanned += s;
        out.match_count += c;
        out.matches.extend(found);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub index: u64,
    pub model: Model,
    pub check: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub spec: EnumSpec,
    pub models_scanned: u64,
    pub violations: Vec<Violation>,
    /// Number of scanned models on which each property holds. Keys are
    /// property names for the standard operator and `kprime.<name>` for
    /// the generalised one.
    pub counts: BTreeMap<String, u64>,
}

/// Names of the checks run by [`invariant_sweep`], in reporting order.
pub const SWEEP_CHECKS: [&str; 16] = [
    "necessitation",
    "monotonicity",
    "conjunction",
    "plausibility",
    "knowledge-unawareness-disjoint",
    "kprime-matches-k-on-proper-events",
    "unawareness-within-global",
    "remark1",
    "theorem1",
    "dlr-incompatibility",
    "fixpoint-early-exit",
    "partitional-characterization",
    "claims-never-refuted",
    "dlr-chain-never-closes",
    "dlrr-conclusion",
    "discussion-collapse",
];

/// Failed check names, and every (property, operator, holds) outcome.
pub type ModelInvariants = (Vec<&'static str>, Vec<(PropertyId, OperatorKind, bool)>);

fn count_key(p: PropertyId, kind: OperatorKind) -> String {
    match kind {
        OperatorKind::StandardK => p.cli_name(),
        OperatorKind::GeneralisedKPrime => format!("kprime.{}", p.cli_name()),
    }
}

/// Evaluates every unconditional invariant on one model. Returns the
/// failed check names and the per-property outcomes.
pub fn model_invariants(m: &Model, limits: Limits) -> Result<ModelInvariants> {
    let an = Analyzer::with_limits(m, limits);
    let mut outcomes = Vec::with_capacity(24);
    let mut holds = BTreeMap::new();
    for p in PropertyId::ALL {
        for kind in OperatorKind::ALL {
            let h = check_property(&an, kind, p)?.holds;
            outcomes.push((p, kind, h));
            holds.insert((p, kind), h);
        }
    }
    let std = |p| holds[&(p, OperatorKind::StandardK)];

    let st = an.table(OperatorKind::StandardK)?;
    let gt = an.table(OperatorKind::GeneralisedKPrime)?;
    let n = m.len();
    let omega = m.omega();
    let global = st.global_unawareness();
    let nontrivial = std(PropertyId::NontrivialUnawareness);

    let mut failed = Vec::new();
    let mut require = |name: &'static str, ok: bool| {
        if !ok {
            failed.push(name);
        }
    };

    require("necessitation", std(PropertyId::Necessitation));
    require("monotonicity", std(PropertyId::Monotonicity));
    require("conjunction", std(PropertyId::Conjunction));
    require("plausibility", std(PropertyId::Plausibility));
    require(
        "knowledge-unawareness-disjoint",
        Event::all(n).all(|e| (st.knowledge(e) & st.unawareness(e)).is_empty()),
    );
    require(
        "kprime-matches-k-on-proper-events",
        Event::all(n)
            .filter(|e| !e.is_full())
            .all(|e| gt.knowledge(e) == st.knowledge(e)),
    );
    require(
        "unawareness-within-global",
        Event::all(n).all(|e| st.unawareness(e).le(global)),
    );
    require(
        "remark1",
        !nontrivial || !std(PropertyId::NegativeIntrospection),
    );
    require("theorem1", !nontrivial || gt.knowledge(omega) != omega);
    require(
        "dlr-incompatibility",
        !(nontrivial && std(PropertyId::KuIntrospection) && std(PropertyId::AuIntrospection)),
    );
    let mut early_exit_ok = true;
    for e in Event::all(n) {
        if operators::unawareness(m, e)? != operators::unawareness_exhaustive(m, e)? {
            early_exit_ok = false;
        }
    }
    require("fixpoint-early-exit", early_exit_ok);
    let c = classify(m);
    require(
        "partitional-characterization",
        c.partitional == (c.reflexive && c.transitive && c.euclidean),
    );

    let mut refuted = false;
    for claim in [
        ClaimId::Remark1,
        ClaimId::Theorem1,
        ClaimId::Theorem2,
        ClaimId::Remark2,
    ] {
        refuted |= verify_claim_with(&an, claim, None)?.verdict == Verdict::RefutedStep;
    }
    require("claims-never-refuted", !refuted);

    let dlr = verify_claim_with(&an, ClaimId::DlrChain, None)?;
    let dlr_closes = dlr.premise_holds
        && dlr
            .steps
            .iter()
            .filter(|s| !s.is_conclusion)
            .all(|s| s.status != StepStatus::Fails);
    require("dlr-chain-never-closes", !dlr_closes);

    let dlrr = verify_claim_with(&an, ClaimId::DlrrChain, None)?;
    require(
        "dlrr-conclusion",
        !dlrr.premise_holds
            || dlrr
                .conclusion()
                .is_some_and(|s| s.status == StepStatus::Holds),
    );

    let mut collapse_ok = true;
    for e in Event::all(n) {
        let t = operators::unawareness_trace(m, e)?;
        if t.iterates.iter().any(|x| x.is_full()) && !t.result.is_empty() {
            collapse_ok = false;
        }
    }
    require("discussion-collapse", collapse_ok);

    Ok((failed, outcomes))
}

/// Runs every unconditional invariant on every model admitted by `spec`.
pub fn invariant_sweep(spec: &EnumSpec) -> Result<SweepReport> {
    let parts = spec.par_ranges(|range| {
        let mut scanned = 0u64;
        let mut violations = Vec::new();
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for (i, m) in spec.models_in(range) {
            scanned += 1;
            let (failed, outcomes) = model_invariants(&m, spec.limits)?;
            for (p, kind, h) in outcomes {
                *counts.entry(count_key(p, kind)).or_default() += h as u64;
            }
            for check in failed {
                violations.push(Violation {
                    index: i,
                    model: m.clone(),
                    check,
                });
            }
        }
        Ok((scanned, violations, counts))
    })?;

    let mut report = SweepReport {
        spec: spec.clone(),
        models_scanned: 0,
        violations: Vec::new(),
        counts: PropertyId::ALL
            .into_iter()
            .flat_map(|p| OperatorKind::ALL.map(|k| (count_key(p, k), 0)))
            .collect(),
    };
    for (s, v, c) in parts {
        report.models_scanned += s;
        report.violations.extend(v);
        for (k, x) in c {
            *report.counts.entry(k).or_default() += x;
        }
    }
    Ok(report)
}
