//! Step-by-step verification of the derivation chains about knowledge and
//! unawareness on a concrete model.
//!
//! Every step records the sets it compared. A claim's conclusion is
//! evaluated directly rather than inferred from its intermediate steps, so
//! a chain can reach a true conclusion through a false intermediate
//! equality; that outcome is reported as [`Verdict::VerifiedConclusion`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::Event;
use crate::operators::{self, Analyzer, OperatorKind};
use crate::properties::{check_property, PropertyId};
use crate::statespace::{classify, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimId {
    Remark1,
    Theorem1,
    Theorem2,
    Remark2,
    Remark3Consistency,
    EqU02,
    EqU03,
    DlrChain,
    DlrrChain,
    Footnote8Symmetry,
    DiscussionCollapse,
}

impl ClaimId {
    pub const ALL: [ClaimId; 11] = [
        ClaimId::Remark1,
        ClaimId::Theorem1,
        ClaimId::Theorem2,
        ClaimId::Remark2,
        ClaimId::Remark3Consistency,
        ClaimId::EqU02,
        ClaimId::EqU03,
        ClaimId::DlrChain,
        ClaimId::DlrrChain,
        ClaimId::Footnote8Symmetry,
        ClaimId::DiscussionCollapse,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Remark1 => "remark1",
            ClaimId::Theorem1 => "theorem1",
            ClaimId::Theorem2 => "theorem2",
            ClaimId::Remark2 => "remark2",
            ClaimId::Remark3Consistency => "remark3-consistency",
            ClaimId::EqU02 => "eq-u02",
            ClaimId::EqU03 => "eq-u03",
            ClaimId::DlrChain => "dlr-chain",
            ClaimId::DlrrChain => "dlrr-chain",
            ClaimId::Footnote8Symmetry => "footnote8-symmetry",
            ClaimId::DiscussionCollapse => "discussion-collapse",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            ClaimId::Remark1 => "non-trivial unawareness breaks negative introspection",
            ClaimId::Theorem1 => "non-trivial unawareness breaks necessitation of K'",
            ClaimId::Theorem2 => "K' agrees with K on proper events and K'(Ω) = Ω ∖ UΩ",
            ClaimId::Remark2 => "every U(E) lies inside UΩ",
            ClaimId::Remark3Consistency => "UΩ equals the union of U(E) over all events",
            ClaimId::EqU02 => "U'(UΩ) = UΩ",
            ClaimId::EqU03 => "U'(∅) = UΩ",
            ClaimId::DlrChain => "AU/KU introspection with necessitation force U(E) = ∅",
            ClaimId::DlrrChain => "the same chain under K' ends in U(E) ⊆ UΩ",
            ClaimId::Footnote8Symmetry => "non-trivial unawareness breaks symmetry",
            ClaimId::DiscussionCollapse => "an iterate reaching Ω collapses unawareness to ∅",
        }
    }

    /// Claims whose chain starts from a chosen event.
    pub fn takes_event(self) -> bool {
        matches!(
            self,
            ClaimId::DlrChain | ClaimId::DlrrChain | ClaimId::DiscussionCollapse
        )
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('_', "-");
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == norm)
            .ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepStatus {
    Holds,
    Fails,
    NotApplicable,
}

impl StepStatus {
    fn of(b: bool) -> Self {
        if b {
            StepStatus::Holds
        } else {
            StepStatus::Fails
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StepStatus::Holds => "holds",
            StepStatus::Fails => "fails",
            StepStatus::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Premise met, every step and the conclusion hold.
    Verified,
    /// Premise met and the conclusion holds, but an intermediate step fails.
    VerifiedConclusion,
    /// The model lies outside the claim's standing hypotheses.
    PremiseNotMet,
    /// The conclusion fails on this model.
    RefutedStep,
    /// The claim is an implication whose antecedent is false here.
    Vacuous,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::VerifiedConclusion => "verified-conclusion",
            Verdict::PremiseNotMet => "premise-not-met",
            Verdict::RefutedStep => "refuted-step",
            Verdict::Vacuous => "vacuous",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [
            Verdict::Verified,
            Verdict::VerifiedConclusion,
            Verdict::PremiseNotMet,
            Verdict::RefutedStep,
            Verdict::Vacuous,
        ]
        .into_iter()
        .find(|v| v.as_str() == s.replace('_', "-"))
        .ok_or_else(|| format!("unknown verdict `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub description: String,
    pub sets: Vec<(String, Event)>,
    pub status: StepStatus,
    pub is_conclusion: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub claim: ClaimId,
    /// Event the chain was evaluated at, for event-driven claims.
    pub event: Option<Event>,
    pub steps: Vec<Step>,
    pub premise_holds: bool,
    pub verdict: Verdict,
}

impl ClaimReport {
    pub fn conclusion(&self) -> Option<&Step> {
        self.steps.iter().find(|s| s.is_conclusion)
    }

    /// 1-based index of the first failing step.
    pub fn first_failed_step(&self) -> Option<usize> {
        self.steps
            .iter()
            .position(|s| s.status == StepStatus::Fails)
            .map(|i| i + 1)
    }
}

struct Chain {
    steps: Vec<Step>,
}

impl Chain {
    fn new() -> Self {
        Chain { steps: Vec::new() }
    }

    fn push(&mut self, desc: &str, status: StepStatus, sets: &[(&str, Event)], concl: bool) {
        self.steps.push(Step {
            description: desc.to_string(),
            sets: sets.iter().map(|&(n, e)| (n.to_string(), e)).collect(),
            status,
            is_conclusion: concl,
        });
    }

    fn check(&mut self, desc: &str, holds: bool, sets: &[(&str, Event)]) -> bool {
        self.push(desc, StepStatus::of(holds), sets, false);
        holds
    }

    fn info(&mut self, desc: &str, sets: &[(&str, Event)]) {
        self.push(desc, StepStatus::NotApplicable, sets, false);
    }

    fn conclude(&mut self, desc: &str, holds: bool, sets: &[(&str, Event)]) {
        self.push(desc, StepStatus::of(holds), sets, true);
    }

    fn finish(self, claim: ClaimId, event: Option<Event>, premise: Premise) -> ClaimReport {
        let (premise_holds, verdict) = match premise {
            Premise::Met => {
                let concl_ok = self
                    .steps
                    .iter()
                    .filter(|s| s.is_conclusion)
                    .all(|s| s.status != StepStatus::Fails);
                let all_ok = self.steps.iter().all(|s| s.status != StepStatus::Fails);
                let v = if !concl_ok {
                    Verdict::RefutedStep
                } else if all_ok {
                    Verdict::Verified
                } else {
                    Verdict::VerifiedConclusion
                };
                (true, v)
            }
            Premise::Vacuous => (false, Verdict::Vacuous),
            Premise::NotMet => (false, Verdict::PremiseNotMet),
        };
        ClaimReport {
            claim,
            event,
            steps: self.steps,
            premise_holds,
            verdict,
        }
    }
}

enum Premise {
    Met,
    Vacuous,
    NotMet,
}

/// Verifies `claim` with default limits and default event choice.
pub fn verify_claim(m: &Model, claim: ClaimId) -> Result<ClaimReport> {
    verify_claim_with(&Analyzer::new(m), claim, None)
}

/// Verifies `claim`. `event` overrides the default starting event of the
/// event-driven claims and is ignored by the others.
pub fn verify_claim_with(
    an: &Analyzer<'_>,
    claim: ClaimId,
    event: Option<Event>,
) -> Result<ClaimReport> {
    let m = an.model();
    if let Some(e) = event {
        if e.universe_size() != m.len() {
            return Err(Error::UniverseMismatch {
                left: m.len(),
                right: e.universe_size(),
            });
        }
    }
    let std_t = an.table(OperatorKind::StandardK)?;
    let gen_t = an.table(OperatorKind::GeneralisedKPrime)?;
    let n = m.len();
    let omega = Event::full(n);
    let empty = Event::empty(n);
    let global = std_t.global_unawareness();
    let k = |e| std_t.knowledge(e);
    let u = |e| std_t.unawareness(e);
    let kp = |e| gen_t.knowledge(e);
    let up = |e| gen_t.unawareness(e);

    let first_unaware = std_t.events().find(|&e| !u(e).is_empty());
    let mut c = Chain::new();

    let premise_step = |c: &mut Chain| -> Premise {
        match first_unaware {
            Some(e) => {
                c.check("∃E: U(E) ≠ ∅", true, &[("E", e), ("U(E)", u(e))]);
                Premise::Met
            }
            None => {
                c.check("∃E: U(E) ≠ ∅", false, &[]);
                Premise::Vacuous
            }
        }
    };

    // Starting event for the two introspection chains.
    let chain_event = |c: &mut Chain| -> (Option<Event>, Premise) {
        match event.or(first_unaware) {
            Some(e) => {
                let ue = u(e);
                let ok = c.check("U(E) ≠ ∅", !ue.is_empty(), &[("E", e), ("U(E)", ue)]);
                (Some(e), if ok { Premise::Met } else { Premise::NotMet })
            }
            None => {
                c.check("∃E: U(E) ≠ ∅", false, &[]);
                (None, Premise::Vacuous)
            }
        }
    };

    let report = match claim {
        ClaimId::Remark1 => {
            let premise = premise_step(&mut c);
            if matches!(premise, Premise::Met) {
                let r = check_property(
                    an,
                    OperatorKind::StandardK,
                    PropertyId::NegativeIntrospection,
                )?;
                let sets: Vec<(&str, Event)> = r
                    .witness
                    .map(|w| vec![("E", w.event), ("¬K(E)", w.left), ("K(¬K(E))", w.right)])
                    .unwrap_or_default();
                c.conclude("∃E: ¬K(E) ⊄ K(¬K(E))", !r.holds, &sets);
            }
            c.finish(claim, None, premise)
        }
        ClaimId::Theorem1 => {
            let premise = premise_step(&mut c);
            if matches!(premise, Premise::Met) {
                let kp_empty = kp(empty);
                c.check("K'(∅) = ∅", kp_empty.is_empty(), &[("K'(∅)", kp_empty)]);
                let ni = check_property(
                    an,
                    OperatorKind::GeneralisedKPrime,
                    PropertyId::NegativeIntrospection,
                )?;
                let sets: Vec<(&str, Event)> = ni
                    .witness
                    .map(|w| vec![("E", w.event), ("¬K'(E)", w.left), ("K'(¬K'(E))", w.right)])
                    .unwrap_or_default();
                c.check("∃E: ¬K'(E) ⊄ K'(¬K'(E))", !ni.holds, &sets);
                c.info("UΩ", &[("UΩ", global)]);
                let kpo = kp(omega);
                c.conclude("K'(Ω) ≠ Ω", kpo != omega, &[("K'(Ω)", kpo), ("Ω", omega)]);
            }
            c.finish(claim, None, premise)
        }
        ClaimId::Theorem2 => {
            let bad = std_t
                .events()
                .filter(|e| !e.is_full())
                .find(|&e| kp(e) != k(e));
            let sets: Vec<(&str, Event)> = bad
                .map(|e| vec![("E", e), ("K'(E)", kp(e)), ("K(E)", k(e))])
                .unwrap_or_default();
            let proper_ok = c.check("K'(E) = K(E) for every E ≠ Ω", bad.is_none(), &sets);
            let overlap = std_t.events().find(|&e| !(k(e) & u(e)).is_empty());
            let sets: Vec<(&str, Event)> = overlap
                .map(|e| vec![("E", e), ("K(E)", k(e)), ("U(E)", u(e))])
                .unwrap_or_default();
            c.check("K(E) ∩ U(E) = ∅ for every E", overlap.is_none(), &sets);
            let kpo = kp(omega);
            let ko = k(omega);
            c.check(
                "K'(Ω) = K(Ω) ∖ UΩ",
                kpo == ko - global,
                &[("K'(Ω)", kpo), ("K(Ω)", ko), ("UΩ", global)],
            );
            c.check(
                "K(Ω) ∖ UΩ = Ω ∖ UΩ",
                ko - global == omega - global,
                &[("K(Ω) ∖ UΩ", ko - global), ("Ω ∖ UΩ", omega - global)],
            );
            c.conclude(
                "K'(E) = K(E) on proper events and K'(Ω) = Ω ∖ UΩ",
                proper_ok && kpo == omega - global,
                &[("K'(Ω)", kpo), ("Ω ∖ UΩ", omega - global)],
            );
            c.finish(claim, None, Premise::Met)
        }
        ClaimId::Remark2 => {
            let bad = std_t.events().find(|&e| !u(e).le(global));
            let mut sets = vec![("UΩ", global)];
            if let Some(e) = bad {
                sets.extend([("E", e), ("U(E)", u(e))]);
            }
            c.conclude("U(E) ⊆ UΩ for every E", bad.is_none(), &sets);
            c.finish(claim, None, Premise::Met)
        }
        ClaimId::Remark3Consistency => {
            let fresh = Event::all(n).try_fold(empty, |acc, e| {
                operators::unawareness(m, e).map(|ue| acc | ue)
            })?;
            let bad = std_t.events().find(|&e| !u(e).le(global));
            c.check("U(E) ⊆ UΩ for every E", bad.is_none(), &[("UΩ", global)]);
            c.info(
                "U(Ω) by direct iteration of ¬K",
                &[("U(Ω)", operators::unawareness(m, omega)?)],
            );
            c.conclude(
                "memoized UΩ = freshly recomputed ⋃ U(E)",
                fresh == global,
                &[("UΩ", global), ("⋃ U(E)", fresh)],
            );
            c.finish(claim, None, Premise::Met)
        }
        ClaimId::EqU02 => {
            let k1 = kp(global);
            let n1 = !k1;
            let n2 = !kp(n1);
            c.info("UΩ", &[("UΩ", global)]);
            c.check("K'(UΩ) = ∅", k1.is_empty(), &[("K'(UΩ)", k1)]);
            c.check("¬K'(UΩ) = Ω", n1 == omega, &[("¬K'(UΩ)", n1)]);
            c.check("¬K'¬K'(UΩ) = UΩ", n2 == global, &[("¬K'¬K'(UΩ)", n2)]);
            let res = up(global);
            c.conclude(
                "U'(UΩ) = UΩ",
                res == global,
                &[("U'(UΩ)", res), ("UΩ", global)],
            );
            c.finish(claim, None, Premise::Met)
        }
        ClaimId::EqU03 => {
            let k1 = kp(empty);
            let n1 = !k1;
            let k2 = kp(n1);
            let n2 = !k2;
            c.info("UΩ", &[("UΩ", global)]);
            c.check("K'(∅) = ∅", k1.is_empty(), &[("K'(∅)", k1)]);
            c.check("¬K'(∅) = Ω", n1 == omega, &[("¬K'(∅)", n1)]);
            c.check(
                "K'¬K'(∅) = Ω ∖ UΩ",
                k2 == omega - global,
                &[("K'¬K'(∅)", k2)],
            );
            c.check("¬K'¬K'(∅) = UΩ", n2 == global, &[("¬K'¬K'(∅)", n2)]);
            let res = up(empty);
            c.conclude(
                "U'(∅) = UΩ",
                res == global,
                &[("U'(∅)", res), ("UΩ", global)],
            );
            c.finish(claim, None, Premise::Met)
        }
        ClaimId::DlrChain => {
            let (e, premise) = chain_event(&mut c);
            if let (Some(e), Premise::Met) = (e, &premise) {
                let ue = u(e);
                let uue = u(ue);
                let nknk = !k(!k(ue));
                let nko = !k(omega);
                c.check(
                    "U(E) ⊆ U(U(E))",
                    ue.le(uue),
                    &[("U(E)", ue), ("U(U(E))", uue)],
                );
                c.check(
                    "U(U(E)) ⊆ ¬K¬K(U(E))",
                    uue.le(nknk),
                    &[("U(U(E))", uue), ("¬K¬K(U(E))", nknk)],
                );
                c.check(
                    "¬K¬K(U(E)) = ¬K(Ω)",
                    nknk == nko,
                    &[("K(U(E))", k(ue)), ("¬K¬K(U(E))", nknk), ("¬K(Ω)", nko)],
                );
                c.check("¬K(Ω) = ∅", nko.is_empty(), &[("¬K(Ω)", nko)]);
                c.conclude("U(E) ⊆ ∅", ue.is_empty(), &[("U(E)", ue)]);
            }
            c.finish(claim, e, premise)
        }
        ClaimId::DlrrChain => {
            let (e, premise) = chain_event(&mut c);
            if let (Some(e), Premise::Met) = (e, &premise) {
                let ue = u(e);
                let upue = up(ue);
                let uue = u(ue);
                let nkpnkp = !kp(!kp(ue));
                let nkpo = !kp(omega);
                c.check(
                    "U(E) ⊆ U'(U(E))",
                    ue.le(upue),
                    &[("U(E)", ue), ("U'(U(E))", upue)],
                );
                c.check(
                    "U(E) ⊆ U(U(E))",
                    ue.le(uue),
                    &[("U(E)", ue), ("U(U(E))", uue)],
                );
                c.check(
                    "U'(U(E)) ⊆ ¬K'¬K'(U(E))",
                    upue.le(nkpnkp),
                    &[("U'(U(E))", upue), ("¬K'¬K'(U(E))", nkpnkp)],
                );
                c.check(
                    "U(U(E)) ⊆ ¬K'¬K'(U(E))",
                    uue.le(nkpnkp),
                    &[("U(U(E))", uue), ("¬K'¬K'(U(E))", nkpnkp)],
                );
                c.check(
                    "¬K'¬K'(U(E)) = ¬K'(Ω)",
                    nkpnkp == nkpo,
                    &[
                        ("K'(U(E))", kp(ue)),
                        ("¬K'¬K'(U(E))", nkpnkp),
                        ("¬K'(Ω)", nkpo),
                    ],
                );
                c.check(
                    "¬K'(Ω) = UΩ",
                    nkpo == global,
                    &[("¬K'(Ω)", nkpo), ("UΩ", global)],
                );
                c.conclude("U(E) ⊆ UΩ", ue.le(global), &[("U(E)", ue), ("UΩ", global)]);
            }
            c.finish(claim, e, premise)
        }
        ClaimId::Footnote8Symmetry => {
            let premise = premise_step(&mut c);
            if matches!(premise, Premise::Met) {
                let r = check_property(an, OperatorKind::StandardK, PropertyId::Symmetry)?;
                let sets: Vec<(&str, Event)> = r
                    .witness
                    .map(|w| vec![("E", w.event), ("U(E)", w.left), ("U(¬E)", w.right)])
                    .unwrap_or_default();
                c.conclude("∃E: U(E) ≠ U(¬E)", !r.holds, &sets);
            }
            c.finish(claim, None, premise)
        }
        ClaimId::DiscussionCollapse => {
            let e = event.unwrap_or(empty);
            let serial = classify(m).serial;
            if !c.check("model is serial", serial, &[]) {
                return Ok(c.finish(claim, Some(e), Premise::NotMet));
            }
            let trace = operators::unawareness_trace(m, e)?;
            let names: Vec<String> = (1..=trace.iterates.len())
                .map(|i| format!("X{i}"))
                .collect();
            let sets: Vec<(&str, Event)> = names
                .iter()
                .map(String::as_str)
                .zip(trace.iterates.iter().copied())
                .collect();
            c.info("iterates of ¬K", &sets);
            let touches = trace.iterates.iter().any(|x| x.is_full());
            if !c.check("some iterate equals Ω", touches, &[]) {
                return Ok(c.finish(claim, Some(e), Premise::Vacuous));
            }
            let after = !k(omega);
            let again = !k(after);
            c.check("¬K(Ω) = ∅", after.is_empty(), &[("¬K(Ω)", after)]);
            c.check("¬K(∅) = Ω", again == omega, &[("¬K(∅)", again)]);
            c.conclude(
                "U(E) = ∅",
                trace.result.is_empty(),
                &[("U(E)", trace.result)],
            );
            c.finish(claim, Some(e), Premise::Met)
        }
    };
    Ok(report)
}
