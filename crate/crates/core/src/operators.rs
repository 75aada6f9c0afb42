//! Knowledge, unawareness and awareness operators induced by a possibility
//! correspondence.
//!
//! Unawareness is the intersection of every iterate of "not knowing":
//! `X1 = ¬K(E)`, `X(i+1) = ¬K(Xi)`. On a finite lattice the iterate sequence
//! is eventually periodic, so the infinite intersection is exact once the
//! first repeated iterate is seen.

use std::cell::OnceCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::{full_mask, Event};
use crate::statespace::{Limits, Model};

/// Which knowledge operator drives a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OperatorKind {
    /// `K(E) = {s | P(s) ⊆ E}`.
    #[serde(rename = "K")]
    StandardK,
    /// `K'(E) = K(E) ∖ U(E)` for proper events, `K'(Ω) = Ω ∖ UΩ`.
    #[serde(rename = "K'")]
    GeneralisedKPrime,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 2] = [OperatorKind::StandardK, OperatorKind::GeneralisedKPrime];

    pub fn symbol(self) -> &'static str {
        match self {
            OperatorKind::StandardK => "K",
            OperatorKind::GeneralisedKPrime => "K'",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for OperatorKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "K" | "k" | "standard" => Ok(OperatorKind::StandardK),
            "K'" | "kprime" | "k-prime" | "generalised" | "generalized" => {
                Ok(OperatorKind::GeneralisedKPrime)
            }
            other => Err(format!("unknown operator `{other}` (expected k or kprime)")),
        }
    }
}

/// The iterates of one unawareness computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixpointTrace {
    /// `X1, X2, …` up to and including the first iterate equal to an
    /// earlier one.
    pub iterates: Vec<Event>,
    /// Index into `iterates` where the repeated event first appeared.
    pub cycle_start: usize,
    /// Intersection of all iterates.
    pub result: Event,
}

impl FixpointTrace {
    /// Number of distinct iterates before the sequence repeats. Prefix
    /// intersections of at least this depth equal the full result.
    pub fn stabilization_depth(&self) -> usize {
        self.iterates.len() - 1
    }

    /// Length of the periodic part of the iterate sequence.
    pub fn period(&self) -> usize {
        self.iterates.len() - 1 - self.cycle_start
    }
}

/// `{s | P(s) ⊆ e}` on raw membership words.
#[inline]
fn knowledge_bits(m: &Model, e: u64) -> u64 {
    let mut out = 0u64;
    for (s, p) in m.correspondence().iter().enumerate() {
        if p.bits() & !e == 0 {
            out |= 1 << s;
        }
    }
    out
}

fn check_universe(m: &Model, e: Event) -> Result<()> {
    if e.universe_size() == m.len() {
        Ok(())
    } else {
        Err(Error::UniverseMismatch {
            left: m.len(),
            right: e.universe_size(),
        })
    }
}

/// Seen-set for cycle detection: a linear scan over a small inline buffer,
/// spilling to a hash map for long orbits.
struct SeenSet {
    inline: [u64; 32],
    len: usize,
    spill: Option<HashMap<u64, usize>>,
}

impl SeenSet {
    fn new() -> Self {
        SeenSet {
            inline: [0; 32],
            len: 0,
            spill: None,
        }
    }

    /// Records `x` at the next position, or returns where it was first seen.
    fn insert(&mut self, x: u64) -> Option<usize> {
        if let Some(map) = &mut self.spill {
            if let Some(&i) = map.get(&x) {
                return Some(i);
            }
            map.insert(x, self.len);
            self.len += 1;
            return None;
        }
        if let Some(i) = self.inline[..self.len].iter().position(|&y| y == x) {
            return Some(i);
        }
        if self.len < self.inline.len() {
            self.inline[self.len] = x;
        } else {
            let mut map: HashMap<u64, usize> = self
                .inline
                .iter()
                .enumerate()
                .map(|(i, &y)| (y, i))
                .collect();
            map.insert(x, self.len);
            self.spill = Some(map);
        }
        self.len += 1;
        None
    }
}

/// Intersection of all iterates of `not_know` starting from `not_know(start)`.
pub(crate) fn negation_fixpoint(
    start: u64,
    full: u64,
    mut not_know: impl FnMut(u64) -> u64,
    early_exit: bool,
) -> u64 {
    let mut seen = SeenSet::new();
    let mut acc = full;
    let mut x = not_know(start);
    loop {
        if seen.insert(x).is_some() {
            return acc;
        }
        acc &= x;
        if early_exit && acc == 0 {
            return 0;
        }
        x = not_know(x);
    }
}

fn negation_trace(n: usize, start: u64, mut not_know: impl FnMut(u64) -> u64) -> FixpointTrace {
    let mut seen = SeenSet::new();
    let mut iterates = Vec::new();
    let mut acc = full_mask(n);
    let mut x = not_know(start);
    loop {
        iterates.push(Event::from_bits(n, x));
        if let Some(cycle_start) = seen.insert(x) {
            return FixpointTrace {
                iterates,
                cycle_start,
                result: Event::from_bits(n, acc),
            };
        }
        acc &= x;
        x = not_know(x);
    }
}

/// Standard knowledge `K(E) = {s | P(s) ⊆ E}`.
pub fn standard_knowledge(m: &Model, e: Event) -> Result<Event> {
    check_universe(m, e)?;
    Ok(Event::from_bits(m.len(), knowledge_bits(m, e.bits())))
}

/// Unawareness `⋂ (¬K)^i (E)`, with early exit once the running
/// intersection is empty.
pub fn unawareness(m: &Model, e: Event) -> Result<Event> {
    check_universe(m, e)?;
    let full = full_mask(m.len());
    let bits = negation_fixpoint(e.bits(), full, |x| !knowledge_bits(m, x) & full, true);
    Ok(Event::from_bits(m.len(), bits))
}

/// Same as [`unawareness`] without the early exit; used to cross-check it.
pub fn unawareness_exhaustive(m: &Model, e: Event) -> Result<Event> {
    check_universe(m, e)?;
    let full = full_mask(m.len());
    let bits = negation_fixpoint(e.bits(), full, |x| !knowledge_bits(m, x) & full, false);
    Ok(Event::from_bits(m.len(), bits))
}

pub fn unawareness_trace(m: &Model, e: Event) -> Result<FixpointTrace> {
    check_universe(m, e)?;
    let full = full_mask(m.len());
    Ok(negation_trace(m.len(), e.bits(), |x| {
        !knowledge_bits(m, x) & full
    }))
}

/// Depth-bounded unawareness `⋂_{i=1..depth} (¬K)^i (E)`.
pub fn unawareness_prefix(m: &Model, e: Event, depth: usize) -> Result<Event> {
    if depth == 0 {
        return Err(Error::ZeroDepth);
    }
    let trace = unawareness_trace(m, e)?;
    Ok(trace
        .iterates
        .iter()
        .take(depth)
        .fold(m.omega(), |acc, &x| acc & x))
}

/// Awareness `A(E) = Ω ∖ U(E)`.
pub fn awareness(m: &Model, e: Event) -> Result<Event> {
    Ok(!unawareness(m, e)?)
}

/// Knowledge under either operator kind, with default limits.
pub fn knowledge(m: &Model, kind: OperatorKind, e: Event) -> Result<Event> {
    Analyzer::new(m).knowledge(kind, e)
}

/// Union of `U(E)` over every event, with default limits.
pub fn global_unawareness(m: &Model) -> Result<Event> {
    Analyzer::new(m).global_unawareness()
}

/// Unawareness induced by iterating `¬knowledge(kind, ·)`, with default limits.
pub fn induced_unawareness(m: &Model, kind: OperatorKind, e: Event) -> Result<Event> {
    Analyzer::new(m).induced_unawareness(kind, e)
}

/// Knowledge and induced unawareness of every event, indexed by the event's
/// membership word.
#[derive(Debug, Clone)]
pub struct OperatorTable {
    kind: OperatorKind,
    universe: usize,
    knowledge: Vec<u64>,
    unawareness: Vec<u64>,
    global: u64,
}

impl OperatorTable {
    fn standard(m: &Model) -> Self {
        let n = m.len();
        let full = full_mask(n);
        let knowledge: Vec<u64> = (0..=full).map(|e| knowledge_bits(m, e)).collect();
        let unawareness: Vec<u64> = (0..=full)
            .map(|e| negation_fixpoint(e, full, |x| !knowledge[x as usize] & full, true))
            .collect();
        let global = unawareness.iter().fold(0, |acc, &u| acc | u);
        OperatorTable {
            kind: OperatorKind::StandardK,
            universe: n,
            knowledge,
            unawareness,
            global,
        }
    }

    fn generalised(standard: &OperatorTable) -> Self {
        let n = standard.universe;
        let full = full_mask(n);
        let knowledge: Vec<u64> = (0..=full)
            .map(|e| {
                if e == full {
                    full & !standard.global
                } else {
                    standard.knowledge[e as usize] & !standard.unawareness[e as usize]
                }
            })
            .collect();
        let unawareness = (0..=full)
            .map(|e| negation_fixpoint(e, full, |x| !knowledge[x as usize] & full, true))
            .collect();
        OperatorTable {
            kind: OperatorKind::GeneralisedKPrime,
            universe: n,
            knowledge,
            unawareness,
            global: standard.global,
        }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn knowledge(&self, e: Event) -> Event {
        debug_assert_eq!(e.universe_size(), self.universe);
        Event::from_bits(self.universe, self.knowledge[e.bits() as usize])
    }

    /// Unawareness induced by this table's operator: Eq.-2 style iteration
    /// of `¬K` for the standard kind, of `¬K'` for the generalised kind.
    #[inline]
    pub fn unawareness(&self, e: Event) -> Event {
        debug_assert_eq!(e.universe_size(), self.universe);
        Event::from_bits(self.universe, self.unawareness[e.bits() as usize])
    }

    /// Union of standard unawareness over all events.
    pub fn global_unawareness(&self) -> Event {
        Event::from_bits(self.universe, self.global)
    }

    pub fn events(&self) -> impl Iterator<Item = Event> {
        Event::all(self.universe)
    }
}

/// Per-model operator evaluation with lazily built whole-lattice tables.
///
/// Not `Sync`; build one per worker over a shared [`Model`].
pub struct Analyzer<'m> {
    model: &'m Model,
    limits: Limits,
    standard: OnceCell<OperatorTable>,
    generalised: OnceCell<OperatorTable>,
}

impl<'m> Analyzer<'m> {
    pub fn new(model: &'m Model) -> Self {
        Self::with_limits(model, Limits::default())
    }

    pub fn with_limits(model: &'m Model, limits: Limits) -> Self {
        Analyzer {
            model,
            limits,
            standard: OnceCell::new(),
            generalised: OnceCell::new(),
        }
    }

    pub fn model(&self) -> &'m Model {
        self.model
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    fn check_global_cap(&self) -> Result<()> {
        let n = self.model.len();
        if n > self.limits.max_global_states || n >= 64 {
            Err(Error::GlobalCapExceeded {
                n,
                cap: self.limits.max_global_states,
            })
        } else {
            Ok(())
        }
    }

    /// Whole-lattice table for `kind`. Subject to the global-unawareness cap.
    pub fn table(&self, kind: OperatorKind) -> Result<&OperatorTable> {
        self.check_global_cap()?;
        let standard = self
            .standard
            .get_or_init(|| OperatorTable::standard(self.model));
        Ok(match kind {
            OperatorKind::StandardK => standard,
            OperatorKind::GeneralisedKPrime => self
                .generalised
                .get_or_init(|| OperatorTable::generalised(standard)),
        })
    }

    pub fn knowledge(&self, kind: OperatorKind, e: Event) -> Result<Event> {
        check_universe(self.model, e)?;
        match kind {
            OperatorKind::StandardK => standard_knowledge(self.model, e),
            OperatorKind::GeneralisedKPrime => {
                if e.is_full() {
                    Ok(!self.global_unawareness()?)
                } else {
                    Ok(standard_knowledge(self.model, e)? - self.unawareness(e)?)
                }
            }
        }
    }

    /// Standard unawareness of `e` (no lattice-wide work).
    pub fn unawareness(&self, e: Event) -> Result<Event> {
        match self.standard.get() {
            Some(t) => {
                check_universe(self.model, e)?;
                Ok(t.unawareness(e))
            }
            None => unawareness(self.model, e),
        }
    }

    pub fn awareness(&self, e: Event) -> Result<Event> {
        Ok(!self.unawareness(e)?)
    }

    /// `UΩ`: the union of `U(E)` over all `2^n` events.
    pub fn global_unawareness(&self) -> Result<Event> {
        Ok(self.table(OperatorKind::StandardK)?.global_unawareness())
    }

    pub fn induced_unawareness(&self, kind: OperatorKind, e: Event) -> Result<Event> {
        check_universe(self.model, e)?;
        match kind {
            OperatorKind::StandardK => self.unawareness(e),
            OperatorKind::GeneralisedKPrime => {
                Ok(self.table(OperatorKind::GeneralisedKPrime)?.unawareness(e))
            }
        }
    }

    pub fn induced_unawareness_trace(&self, kind: OperatorKind, e: Event) -> Result<FixpointTrace> {
        check_universe(self.model, e)?;
        match kind {
            OperatorKind::StandardK => unawareness_trace(self.model, e),
            OperatorKind::GeneralisedKPrime => {
                let table = self.table(kind)?;
                let n = self.model.len();
                Ok(negation_trace(n, e.bits(), |x| {
                    (!table.knowledge(Event::from_bits(n, x))).bits()
                }))
            }
        }
    }
}
