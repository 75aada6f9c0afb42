//! A small expression language over events.
//!
//! ```text
//! pred    := expr ( ('=' | '<=' | '<') expr )?
//! expr    := term ( '|' term )*
//! term    := factor ( ('&' | '\') factor )*
//! factor  := '~' factor | app | atom
//! app     := ('K' | "K'" | 'U' | "U'" | 'A' | 'Uiter') '(' expr ')'
//! atom    := 'omega' | 'empty' | setlit | ident | '(' expr ')'
//! setlit  := '{' ( label ( ','? label )* )? '}'
//! ```
//!
//! `U(E)` resolves to the global union `UΩ` whenever `E` evaluates to the
//! full state space; `Uiter` always iterates `¬K` literally.

mod eval;
mod lexer;
mod parser;
mod printer;

use std::fmt;

use thiserror::Error;

pub use eval::{eval_formula, Value};
pub use parser::parse_formula;
pub use printer::print_formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    K,
    KPrime,
    U,
    UPrime,
    A,
    UIter,
}

impl Operator {
    pub fn keyword(self) -> &'static str {
        match self {
            Operator::K => "K",
            Operator::KPrime => "K'",
            Operator::U => "U",
            Operator::UPrime => "U'",
            Operator::A => "A",
            Operator::UIter => "Uiter",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Intersect,
    Union,
    Difference,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Intersect => "&",
            BinOp::Union => "|",
            BinOp::Difference => "\\",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Union => 1,
            BinOp::Intersect | BinOp::Difference => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Equal,
    Subset,
    ProperSubset,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Equal => "=",
            Relation::Subset => "<=",
            Relation::ProperSubset => "<",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    SetLit(Vec<String>),
    Omega,
    Empty,
    /// A bare identifier. Parsed and printed, but there are no bindings
    /// yet, so evaluation rejects it.
    Var(String),
    Apply(Operator, Box<Formula>),
    Complement(Box<Formula>),
    Binary(BinOp, Box<Formula>, Box<Formula>),
    /// Only valid at the root.
    Predicate(Relation, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn is_predicate(&self) -> bool {
        matches!(self, Formula::Predicate(..))
    }

    pub fn apply(op: Operator, child: Formula) -> Formula {
        Formula::Apply(op, Box::new(child))
    }

    pub fn complement(child: Formula) -> Formula {
        Formula::Complement(Box::new(child))
    }

    pub fn binary(op: BinOp, l: Formula, r: Formula) -> Formula {
        Formula::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn predicate(rel: Relation, l: Formula, r: Formula) -> Formula {
        Formula::Predicate(rel, Box::new(l), Box::new(r))
    }

    pub fn set<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Formula {
        Formula::SetLit(labels.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaErrorKind {
    Lexical,
    Syntax,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} error at {line}:{column}: {message}", match .kind { FormulaErrorKind::Lexical => "lexical", FormulaErrorKind::Syntax => "parse" })]
pub struct FormulaError {
    pub kind: FormulaErrorKind,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    /// Byte offset into the input; equals the input length at end of input.
    pub offset: usize,
    /// Offending token text, empty at end of input.
    pub token: String,
    pub message: String,
}
