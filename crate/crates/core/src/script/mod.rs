//! The `.qsc` proof-script format.
//!
//! ```text
//! atoms A
//! theorem collapse:
//!   1: |- A & A^ premise
//!   2: A |- A by axiom()
//!   3: A & A^ |- A by and_refl(2)
//!   4: |- A by cut(1, 3)
//! qed
//! ```
//!
//! Each theorem is a flat list of numbered steps; its last step is the goal.
//! Connectives bind, loosest first: `@` (and `@~`), `&`, `#`, then postfix
//! `^` on atoms. All binary connectives associate to the left.

mod lexer;
mod parser;
mod render;

use std::fmt;

use thiserror::Error;

use crate::kernel::{Derivation, Param, RuleTag};
use crate::syntax::Sequent;

pub use parser::{parse_degree, parse_formula, parse_script, parse_sequent};
pub use render::{render, render_script, render_theorem, RenderStyle};

/// 1-based position of a token or construct in the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("{span}: syntax error: {message}")]
    SyntaxError { message: String, span: SourceSpan },
    #[error("{span}: undeclared atom `{name}`")]
    UnknownAtom { name: String, span: SourceSpan },
    #[error("{span}: unknown rule `{name}`")]
    UnknownRule { name: String, span: SourceSpan },
    #[error("{span}: step {id} is not defined before it is used")]
    DanglingReference { id: u32, span: SourceSpan },
    #[error("{span}: step {id} is defined twice")]
    DuplicateStepId { id: u32, span: SourceSpan },
}

impl ParseError {
    pub fn span(&self) -> SourceSpan {
        match self {
            ParseError::SyntaxError { span, .. }
            | ParseError::UnknownAtom { span, .. }
            | ParseError::UnknownRule { span, .. }
            | ParseError::DanglingReference { span, .. }
            | ParseError::DuplicateStepId { span, .. } => *span,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::SyntaxError { .. } => "SyntaxError",
            ParseError::UnknownAtom { .. } => "UnknownAtom",
            ParseError::UnknownRule { .. } => "UnknownRule",
            ParseError::DanglingReference { .. } => "DanglingReference",
            ParseError::DuplicateStepId { .. } => "DuplicateStepId",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub id: u32,
    pub sequent: Sequent,
    pub rule: RuleTag,
    pub param: Option<Param>,
    pub premises: Vec<u32>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem {
    pub name: String,
    pub steps: Vec<Step>,
    /// The derivation of the last step; shared premises are copied into
    /// every use.
    pub tree: Derivation,
    pub span: SourceSpan,
}

impl Theorem {
    pub fn goal(&self) -> &Sequent {
        &self.tree.conclusion
    }

    pub fn step(&self, id: u32) -> Option<&Step> {
        self.steps.iter().find(|s| s.id == id)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofScript {
    pub atoms: Vec<String>,
    pub theorems: Vec<Theorem>,
}

impl ProofScript {
    pub fn theorem(&self, name: &str) -> Option<&Theorem> {
        self.theorems.iter().find(|t| t.name == name)
    }
}
