//! Model checking for knowledge and unawareness over finite state spaces.
//!
//! A [`Model`] pairs a finite state space with a possibility correspondence.
//! The [`operators`] module computes knowledge, unawareness, awareness and
//! the generalised knowledge operator; [`properties`] and [`claims`] decide
//! named properties and derivation chains on concrete models; [`formula`]
//! provides a small expression language; [`explorer`] enumerates every
//! correspondence of a given size.

pub mod claims;
pub mod error;
pub mod event;
pub mod explorer;
pub mod formula;
pub mod operators;
pub mod properties;
pub mod statespace;

pub use claims::{
    verify_claim, verify_claim_with, ClaimId, ClaimReport, Step, StepStatus, Verdict,
};
pub use error::{Error, Result};
pub use event::Event;
pub use explorer::{
    enumerate_models, invariant_sweep, search, Constraint, EnumSpec, SearchMode, SearchOutcome,
    SweepReport, Target,
};
pub use formula::{eval_formula, parse_formula, print_formula, Formula, FormulaError, Value};
pub use operators::{
    awareness, global_unawareness, induced_unawareness, knowledge, standard_knowledge, unawareness,
    unawareness_prefix, unawareness_trace, Analyzer, FixpointTrace, OperatorKind,
};
pub use properties::{check_property, property_matrix, PropertyId, PropertyReport, Witness};
pub use statespace::{classify, parse_model, parse_model_with, Limits, Model, ModelClass, StateId};
