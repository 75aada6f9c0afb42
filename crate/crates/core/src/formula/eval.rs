use crate::error::{Error, Result};
use crate::event::Event;
use crate::operators::{Analyzer, OperatorKind};

use super::{BinOp, Formula, Operator, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Value {
    Set(Event),
    Bool(bool),
}

impl Value {
    pub fn as_set(self) -> Option<Event> {
        match self {
            Value::Set(e) => Some(e),
            Value::Bool(_) => None,
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(b),
            Value::Set(_) => None,
        }
    }
}

fn set(an: &Analyzer<'_>, f: &Formula) -> Result<Event> {
    let m = an.model();
    Ok(match f {
        Formula::SetLit(labels) => m.event(labels.iter().map(String::as_str))?,
        Formula::Omega => m.omega(),
        Formula::Empty => m.empty_event(),
        Formula::Var(v) => return Err(Error::UnboundVariable(v.clone())),
        Formula::Complement(c) => !set(an, c)?,
        Formula::Binary(op, l, r) => {
            let (l, r) = (set(an, l)?, set(an, r)?);
            match op {
                BinOp::Intersect => l & r,
                BinOp::Union => l | r,
                BinOp::Difference => l - r,
            }
        }
        Formula::Apply(op, c) => {
            let e = set(an, c)?;
            match op {
                Operator::K => an.knowledge(OperatorKind::StandardK, e)?,
                Operator::KPrime => an.knowledge(OperatorKind::GeneralisedKPrime, e)?,
                Operator::U if e.is_full() => an.global_unawareness()?,
                Operator::U | Operator::UIter => an.unawareness(e)?,
                Operator::UPrime => an.induced_unawareness(OperatorKind::GeneralisedKPrime, e)?,
                Operator::A => an.awareness(e)?,
            }
        }
        Formula::Predicate(..) => return Err(Error::NestedPredicate),
    })
}

/// Evaluates a formula: set-valued formulas yield [`Value::Set`], a
/// predicate at the root yields [`Value::Bool`].
pub fn eval_formula(an: &Analyzer<'_>, f: &Formula) -> Result<Value> {
    match f {
        Formula::Predicate(rel, l, r) => {
            let (l, r) = (set(an, l)?, set(an, r)?);
            Ok(Value::Bool(match rel {
                Relation::Equal => l == r,
                Relation::Subset => l.le(r),
                Relation::ProperSubset => l.le(r) && l != r,
            }))
        }
        other => set(an, other).map(Value::Set),
    }
}
