//! Named knowledge/unawareness properties decided on a concrete model.
//!
//! Universal properties report the first failing event in bit order
//! (state 0 least significant); pair properties scan `(E1, E2)` with `E1`
//! as the major key. The existential `nontrivial-unawareness` instead
//! reports the first event it found when it holds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::Event;
use crate::operators::{Analyzer, OperatorKind, OperatorTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyId {
    Necessitation,
    RNecessitation,
    NonDelusion,
    Conjunction,
    Monotonicity,
    PositiveIntrospection,
    NegativeIntrospection,
    Plausibility,
    KuIntrospection,
    AuIntrospection,
    Symmetry,
    NontrivialUnawareness,
}

impl PropertyId {
    pub const ALL: [PropertyId; 12] = [
        PropertyId::Necessitation,
        PropertyId::RNecessitation,
        PropertyId::NonDelusion,
        PropertyId::Conjunction,
        PropertyId::Monotonicity,
        PropertyId::PositiveIntrospection,
        PropertyId::NegativeIntrospection,
        PropertyId::Plausibility,
        PropertyId::KuIntrospection,
        PropertyId::AuIntrospection,
        PropertyId::Symmetry,
        PropertyId::NontrivialUnawareness,
    ];

    /// Snake-case identifier.
    pub fn as_str(self) -> &'static str {
        match self {
            PropertyId::Necessitation => "necessitation",
            PropertyId::RNecessitation => "r_necessitation",
            PropertyId::NonDelusion => "non_delusion",
            PropertyId::Conjunction => "conjunction",
            PropertyId::Monotonicity => "monotonicity",
            PropertyId::PositiveIntrospection => "positive_introspection",
            PropertyId::NegativeIntrospection => "negative_introspection",
            PropertyId::Plausibility => "plausibility",
            PropertyId::KuIntrospection => "ku_introspection",
            PropertyId::AuIntrospection => "au_introspection",
            PropertyId::Symmetry => "symmetry",
            PropertyId::NontrivialUnawareness => "nontrivial_unawareness",
        }
    }

    /// Kebab-case identifier used on the command line and in JSON output.
    pub fn cli_name(self) -> String {
        self.as_str().replace('_', "-")
    }

    /// Existential properties are informational: failing them is not a
    /// defect of the model.
    pub fn is_existential(self) -> bool {
        self == PropertyId::NontrivialUnawareness
    }

    pub fn definition(self) -> &'static str {
        match self {
            PropertyId::Necessitation => "K(Ω) = Ω",
            PropertyId::RNecessitation => "K(Ω) = Ω ∖ UΩ",
            PropertyId::NonDelusion => "K(E) ⊆ E",
            PropertyId::Conjunction => "K(E1 ∩ E2) = K(E1) ∩ K(E2)",
            PropertyId::Monotonicity => "E1 ⊆ E2 ⇒ K(E1) ⊆ K(E2)",
            PropertyId::PositiveIntrospection => "K(E) ⊆ K(K(E))",
            PropertyId::NegativeIntrospection => "¬K(E) ⊆ K(¬K(E))",
            PropertyId::Plausibility => "U(E) ⊆ ¬K(E) ∩ ¬K(¬K(E))",
            PropertyId::KuIntrospection => "K(U(E)) = ∅",
            PropertyId::AuIntrospection => "U(E) ⊆ U(U(E))",
            PropertyId::Symmetry => "U(E) = U(¬E)",
            PropertyId::NontrivialUnawareness => "∃E: U(E) ≠ ∅",
        }
    }

    /// Names of the sets a [`Witness`] carries as `left` and `right`.
    pub fn sides(self) -> (&'static str, &'static str) {
        match self {
            PropertyId::Necessitation => ("K(Ω)", "Ω"),
            PropertyId::RNecessitation => ("K(Ω)", "Ω ∖ UΩ"),
            PropertyId::NonDelusion => ("K(E)", "E"),
            PropertyId::Conjunction => ("K(E1 ∩ E2)", "K(E1) ∩ K(E2)"),
            PropertyId::Monotonicity => ("K(E1)", "K(E2)"),
            PropertyId::PositiveIntrospection => ("K(E)", "K(K(E))"),
            PropertyId::NegativeIntrospection => ("¬K(E)", "K(¬K(E))"),
            PropertyId::Plausibility => ("U(E)", "¬K(E) ∩ ¬K(¬K(E))"),
            PropertyId::KuIntrospection => ("K(U(E))", "∅"),
            PropertyId::AuIntrospection => ("U(E)", "U(U(E))"),
            PropertyId::Symmetry => ("U(E)", "U(¬E)"),
            PropertyId::NontrivialUnawareness => ("U(E)", "∅"),
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cli_name())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        PropertyId::ALL
            .into_iter()
            .find(|p| p.as_str() == norm)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

/// The sets compared at a witness event: the property requires
/// `left ⊆ right` or `left = right` depending on its definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub event: Event,
    /// Second event for pair properties.
    pub second: Option<Event>,
    pub left: Event,
    pub right: Event,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: PropertyId,
    pub operator: OperatorKind,
    pub holds: bool,
    /// Present whenever a universal property fails, and whenever the
    /// existential property holds.
    pub witness: Option<Witness>,
}

fn single(e: Event, left: Event, right: Event) -> Witness {
    Witness {
        event: e,
        second: None,
        left,
        right,
    }
}

fn first_failure<F>(t: &OperatorTable, f: F) -> Option<Witness>
where
    F: Fn(Event) -> Option<Witness>,
{
    t.events().find_map(f)
}

fn decide(t: &OperatorTable, p: PropertyId) -> (bool, Option<Witness>) {
    let n = t.universe_size();
    let omega = Event::full(n);
    let empty = Event::empty(n);
    let k = |e| t.knowledge(e);
    let u = |e| t.unawareness(e);

    let universal = |w: Option<Witness>| (w.is_none(), w);

    match p {
        PropertyId::Necessitation => {
            let ko = k(omega);
            let w = (ko != omega).then(|| single(omega, ko, omega));
            universal(w)
        }
        PropertyId::RNecessitation => {
            let ko = k(omega);
            let target = omega - t.global_unawareness();
            universal((ko != target).then(|| single(omega, ko, target)))
        }
        PropertyId::NonDelusion => universal(first_failure(t, |e| {
            let ke = k(e);
            (!ke.le(e)).then(|| single(e, ke, e))
        })),
        PropertyId::PositiveIntrospection => universal(first_failure(t, |e| {
            let (ke, kke) = (k(e), k(k(e)));
            (!ke.le(kke)).then(|| single(e, ke, kke))
        })),
        PropertyId::NegativeIntrospection => universal(first_failure(t, |e| {
            let nke = !k(e);
            let knke = k(nke);
            (!nke.le(knke)).then(|| single(e, nke, knke))
        })),
        PropertyId::Plausibility => universal(first_failure(t, |e| {
            let nke = !k(e);
            let bound = nke & !k(nke);
            let ue = u(e);
            (!ue.le(bound)).then(|| single(e, ue, bound))
        })),
        PropertyId::KuIntrospection => universal(first_failure(t, |e| {
            let kue = k(u(e));
            (!kue.is_empty()).then(|| single(e, kue, empty))
        })),
        PropertyId::AuIntrospection => universal(first_failure(t, |e| {
            let (ue, uue) = (u(e), u(u(e)));
            (!ue.le(uue)).then(|| single(e, ue, uue))
        })),
        PropertyId::Symmetry => universal(first_failure(t, |e| {
            let (ue, une) = (u(e), u(!e));
            (ue != une).then(|| single(e, ue, une))
        })),
        PropertyId::Conjunction => universal(t.events().find_map(|a| {
            t.events().find_map(|b| {
                let (l, r) = (k(a & b), k(a) & k(b));
                (l != r).then_some(Witness {
                    event: a,
                    second: Some(b),
                    left: l,
                    right: r,
                })
            })
        })),
        PropertyId::Monotonicity => universal(t.events().find_map(|a| {
            t.events().filter(|&b| a.le(b)).find_map(|b| {
                let (l, r) = (k(a), k(b));
                (!l.le(r)).then_some(Witness {
                    event: a,
                    second: Some(b),
                    left: l,
                    right: r,
                })
            })
        })),
        PropertyId::NontrivialUnawareness => {
            let w = t.events().find_map(|e| {
                let ue = u(e);
                (!ue.is_empty()).then(|| single(e, ue, empty))
            });
            (w.is_some(), w)
        }
    }
}

/// Decides `p` for the operator `kind` on the analyzer's model. Unawareness
/// is the one induced by `kind`.
pub fn check_property(
    an: &Analyzer<'_>,
    kind: OperatorKind,
    p: PropertyId,
) -> Result<PropertyReport> {
    let t = an.table(kind)?;
    let (holds, witness) = decide(t, p);
    Ok(PropertyReport {
        property: p,
        operator: kind,
        holds,
        witness,
    })
}

/// Every property under both operators, property-major.
pub fn property_matrix(an: &Analyzer<'_>) -> Result<Vec<PropertyReport>> {
    let mut out = Vec::with_capacity(PropertyId::ALL.len() * 2);
    for p in PropertyId::ALL {
        for kind in OperatorKind::ALL {
            out.push(check_property(an, kind, p)?);
        }
    }
    Ok(out)
}
