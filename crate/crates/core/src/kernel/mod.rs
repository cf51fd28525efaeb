//! Derivation trees and the checker that validates them.
//!
//! The kernel never searches for proofs. Every node names its rule, and the
//! checker only confirms that the stated conclusion follows from the stated
//! premises under that rule. There is no tag for contraction, weakening or
//! permutation, so no checked tree can copy or discard a formula.

mod rules;

use std::fmt;

use thiserror::Error;

use crate::syntax::{Convention, Formula, Sequent};

pub use rules::{
    check_and, check_at, check_axiom, check_cut, check_epr, check_join, check_neg, check_par_form,
    check_parallel, check_rewrite, check_structural, epr_expansion,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogicMode {
    /// No active contexts around cut formulas or reflected conjunctions.
    Basic,
    /// A left context is admitted next to the active formula.
    IntuitionisticLeft,
}

impl fmt::Display for LogicMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogicMode::Basic => "basic",
            LogicMode::IntuitionisticLeft => "intuitionistic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JoinConnective {
    And,
    At,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleTag {
    /// A hypothesis declared by the script.
    Premise,
    Axiom,
    AndForm,
    AndRefl,
    ParForm,
    NegForm,
    NegRefl,
    Cut,
    AtForm,
    AtImplRefl,
    AtExplRefl,
    AtAxiom,
    SemiDistrib,
    QSplit,
    HRule,
    HInverse,
    CnotRule,
    EprRule,
    ParallelJoin(JoinConnective),
}

impl RuleTag {
    pub const ALL: [RuleTag; 20] = [
        RuleTag::Premise,
        RuleTag::Axiom,
        RuleTag::AndForm,
        RuleTag::AndRefl,
        RuleTag::ParForm,
        RuleTag::NegForm,
        RuleTag::NegRefl,
        RuleTag::Cut,
        RuleTag::AtForm,
        RuleTag::AtImplRefl,
        RuleTag::AtExplRefl,
        RuleTag::AtAxiom,
        RuleTag::SemiDistrib,
        RuleTag::QSplit,
        RuleTag::HRule,
        RuleTag::HInverse,
        RuleTag::CnotRule,
        RuleTag::EprRule,
        RuleTag::ParallelJoin(JoinConnective::And),
        RuleTag::ParallelJoin(JoinConnective::At),
    ];

    /// Name used in proof scripts. Both parallel joins share `par_join`;
    /// the connective is its bracketed parameter.
    pub fn script_name(self) -> &'static str {
        match self {
            RuleTag::Premise => "premise",
            RuleTag::Axiom => "axiom",
            RuleTag::AndForm => "and_form",
            RuleTag::AndRefl => "and_refl",
            RuleTag::ParForm => "par_form",
            RuleTag::NegForm => "neg_form",
            RuleTag::NegRefl => "neg_refl",
            RuleTag::Cut => "cut",
            RuleTag::AtForm => "at_form",
            RuleTag::AtImplRefl => "at_impl_refl",
            RuleTag::AtExplRefl => "at_expl_refl",
            RuleTag::AtAxiom => "at_axiom",
            RuleTag::SemiDistrib => "semi_distrib",
            RuleTag::QSplit => "qsplit",
            RuleTag::HRule => "h_rule",
            RuleTag::HInverse => "h_inverse",
            RuleTag::CnotRule => "cnot",
            RuleTag::EprRule => "epr",
            RuleTag::ParallelJoin(_) => "par_join",
        }
    }

    /// Label drawn next to inference bars in the two-dimensional layout.
    pub fn display_label(self) -> &'static str {
        match self {
            RuleTag::Premise => "premise",
            RuleTag::Axiom => "axiom",
            RuleTag::AndForm => "&-form",
            RuleTag::AndRefl => "&L",
            RuleTag::ParForm => "#-form",
            RuleTag::NegForm => "neg-form",
            RuleTag::NegRefl => "neg-refl",
            RuleTag::Cut => "cut",
            RuleTag::AtForm => "@-form",
            RuleTag::AtImplRefl => "@-impl.refl",
            RuleTag::AtExplRefl => "@-expl.refl",
            RuleTag::AtAxiom => "@-axiom",
            RuleTag::SemiDistrib => "semi-distrib",
            RuleTag::QSplit => "&-refl.axioms",
            RuleTag::HRule => "H",
            RuleTag::HInverse => "H^-1",
            RuleTag::CnotRule => "CNOT",
            RuleTag::EprRule => "EPR",
            RuleTag::ParallelJoin(JoinConnective::And) => "&R parallel",
            RuleTag::ParallelJoin(JoinConnective::At) => "@-form parallel",
        }
    }

    /// Admissible premise counts.
    pub fn arity(self) -> &'static [usize] {
        match self {
            RuleTag::Premise | RuleTag::Axiom | RuleTag::AtAxiom => &[0],
            RuleTag::ParForm
            | RuleTag::NegForm
            | RuleTag::NegRefl
            | RuleTag::SemiDistrib
            | RuleTag::HRule
            | RuleTag::HInverse
            | RuleTag::CnotRule => &[1],
            RuleTag::AndRefl | RuleTag::AtImplRefl => &[1, 2],
            RuleTag::AndForm
            | RuleTag::Cut
            | RuleTag::AtForm
            | RuleTag::AtExplRefl
            | RuleTag::EprRule
            | RuleTag::ParallelJoin(_) => &[2],
            RuleTag::QSplit => &[3],
        }
    }

    pub fn is_leaf(self) -> bool {
        self.arity() == [0]
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleTag::ParallelJoin(JoinConnective::And) => f.write_str("par_join[and]"),
            RuleTag::ParallelJoin(JoinConnective::At) => f.write_str("par_join[at]"),
            other => f.write_str(other.script_name()),
        }
    }
}

/// The four clauses of the CNOT rule, named by the polarity of control and
/// target in the premise: `a` is `B, A`, `b` is `B^, A`, `a'` is `B, A^`,
/// `b'` is `B^, A^`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CnotClause {
    A,
    B,
    APrime,
    BPrime,
}

impl CnotClause {
    pub fn of(control_negated: bool, target_negated: bool) -> Self {
        match (control_negated, target_negated) {
            (false, false) => CnotClause::A,
            (true, false) => CnotClause::B,
            (false, true) => CnotClause::APrime,
            (true, true) => CnotClause::BPrime,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CnotClause::A => "a",
            CnotClause::B => "b",
            CnotClause::APrime => "a'",
            CnotClause::BPrime => "b'",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "a" => CnotClause::A,
            "b" => CnotClause::B,
            "a'" => CnotClause::APrime,
            "b'" => CnotClause::BPrime,
            _ => return None,
        })
    }
}

/// Explicit rule parameter written in brackets after the rule name.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    /// The cut formula.
    Formula(Formula),
    /// Which @-formation convention should fire.
    Convention(Convention),
    Clause(CnotClause),
    /// Negation formation that carries the passive left context across the
    /// turnstile unchanged.
    Carry,
}

#[derive(Debug, Clone)]
pub struct Derivation {
    pub rule: RuleTag,
    pub param: Option<Param>,
    pub premises: Vec<Derivation>,
    pub conclusion: Sequent,
    /// Step id in the originating script, if any. Ignored by equality.
    pub step: Option<u32>,
}

impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        self.rule == other.rule
            && self.param == other.param
            && self.conclusion == other.conclusion
            && self.premises == other.premises
    }
}

impl Derivation {
    pub fn leaf(rule: RuleTag, conclusion: Sequent) -> Self {
        Derivation {
            rule,
            param: None,
            premises: Vec::new(),
            conclusion,
            step: None,
        }
    }

    pub fn premise(conclusion: Sequent) -> Self {
        Derivation::leaf(RuleTag::Premise, conclusion)
    }

    pub fn node(rule: RuleTag, premises: Vec<Derivation>, conclusion: Sequent) -> Self {
        Derivation {
            rule,
            param: None,
            premises,
            conclusion,
            step: None,
        }
    }

    pub fn with_param(mut self, param: Param) -> Self {
        self.param = Some(param);
        self
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// Visit nodes in post-order together with their paths.
    pub fn walk<'a>(&'a self, mut visit: impl FnMut(&str, &'a Derivation)) {
        fn go<'a>(
            node: &'a Derivation,
            path: String,
            visit: &mut impl FnMut(&str, &'a Derivation),
        ) {
            for (i, p) in node.premises.iter().enumerate() {
                go(p, format!("{path}.{i}"), visit);
            }
            visit(&path, node);
        }
        go(self, "root".to_string(), &mut visit);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("cut formula mismatch: {0}")]
    CutFormulaMismatch(String),
    #[error("visibility violation: {0}")]
    VisibilityViolation(String),
    #[error("conclusion mismatch: {0}")]
    ConclusionMismatch(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("wrong degrees: {0}")]
    WrongDegrees(String),
    #[error("branch failure: {0}")]
    BranchFailure(String),
    #[error("join mismatch: {0}")]
    JoinMismatch(String),
}

impl KernelError {
    pub fn kind(&self) -> &'static str {
        match self {
            KernelError::UnknownRule(_) => "UnknownRule",
            KernelError::CutFormulaMismatch(_) => "CutFormulaMismatch",
            KernelError::VisibilityViolation(_) => "VisibilityViolation",
            KernelError::ConclusionMismatch(_) => "ConclusionMismatch",
            KernelError::ContextMismatch(_) => "ContextMismatch",
            KernelError::DegreeMismatch(_) => "DegreeMismatch",
            KernelError::SchemaMismatch(_) => "SchemaMismatch",
            KernelError::WrongDegrees(_) => "WrongDegrees",
            KernelError::BranchFailure(_) => "BranchFailure",
            KernelError::JoinMismatch(_) => "JoinMismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeVerdict {
    pub path: String,
    pub step: Option<u32>,
    pub rule: RuleTag,
    pub conclusion: String,
    pub verdict: Result<(), KernelError>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub ok: bool,
    pub mode: LogicMode,
    /// One verdict per node, post-order.
    pub nodes: Vec<NodeVerdict>,
}

impl CheckReport {
    pub fn failures(&self) -> impl Iterator<Item = &NodeVerdict> {
        self.nodes.iter().filter(|n| n.verdict.is_err())
    }

    pub fn first_failure(&self) -> Option<&NodeVerdict> {
        self.failures().next()
    }
}

/// Check one inference locally: the node's conclusion against its direct
/// premises' conclusions.
pub fn check_step(node: &Derivation, mode: LogicMode) -> Result<(), KernelError> {
    let n = node.premises.len();
    if !node.rule.arity().contains(&n) {
        return Err(KernelError::BranchFailure(format!(
            "{} expects {:?} premise(s), found {n}",
            node.rule,
            node.rule.arity()
        )));
    }
    let prem: Vec<&Sequent> = node.premises.iter().map(|p| &p.conclusion).collect();
    let concl = &node.conclusion;
    let param = node.param.as_ref();
    match node.rule {
        RuleTag::Premise => Ok(()),
        RuleTag::Axiom => check_axiom(concl),
        RuleTag::Cut => {
            let cut_formula = match param {
                Some(Param::Formula(f)) => Some(f),
                None => None,
                Some(other) => return Err(bad_param(node.rule, other)),
            };
            check_cut(prem[0], prem[1], concl, mode, cut_formula)
        }
        RuleTag::AndForm | RuleTag::AndRefl => check_and(node.rule, &prem, concl, mode),
        RuleTag::ParForm => check_par_form(prem[0], concl),
        RuleTag::AtForm | RuleTag::AtImplRefl | RuleTag::AtExplRefl | RuleTag::AtAxiom => {
            let convention = match param {
                Some(Param::Convention(c)) => Some(*c),
                None => None,
                Some(other) => return Err(bad_param(node.rule, other)),
            };
            check_at(node.rule, &prem, concl, mode, convention)
        }
        RuleTag::SemiDistrib | RuleTag::QSplit => check_rewrite(node.rule, &prem, concl),
        RuleTag::HRule | RuleTag::HInverse | RuleTag::CnotRule => {
            let clause = match param {
                Some(Param::Clause(c)) => Some(*c),
                None => None,
                Some(other) => return Err(bad_param(node.rule, other)),
            };
            check_structural(node.rule, prem[0], concl, clause)
        }
        RuleTag::NegForm | RuleTag::NegRefl => {
            let carry = match param {
                Some(Param::Carry) => true,
                None => false,
                Some(other) => return Err(bad_param(node.rule, other)),
            };
            check_neg(node.rule, prem[0], concl, carry)
        }
        RuleTag::EprRule => check_epr(&prem, concl, mode),
        RuleTag::ParallelJoin(join) => check_join(join, prem[0], prem[1], concl, mode),
    }
}

fn bad_param(rule: RuleTag, param: &Param) -> KernelError {
    KernelError::SchemaMismatch(format!("rule {rule} does not take parameter {param:?}"))
}

/// Check every node of `tree`, children before parents.
///
/// Failures are recorded in the report, never returned. A parallel join
/// additionally requires both of its branches to be fully valid, and reports
/// the first failing path inside them otherwise.
pub fn check_derivation(tree: &Derivation, mode: LogicMode) -> CheckReport {
    fn go(
        node: &Derivation,
        path: String,
        mode: LogicMode,
        out: &mut Vec<NodeVerdict>,
    ) -> Option<String> {
        let mut first_bad: Option<String> = None;
        for (i, p) in node.premises.iter().enumerate() {
            if let Some(bad) = go(p, format!("{path}.{i}"), mode, out) {
                first_bad.get_or_insert(bad);
            }
        }
        let mut verdict = check_step(node, mode);
        if verdict.is_ok() {
            if let (RuleTag::ParallelJoin(_), Some(bad)) = (node.rule, &first_bad) {
                verdict = Err(KernelError::BranchFailure(format!(
                    "branch node {bad} failed"
                )));
            }
        }
        let failed_here = verdict.is_err();
        out.push(NodeVerdict {
            path: path.clone(),
            step: node.step,
            rule: node.rule,
            conclusion: node.conclusion.to_string(),
            verdict,
        });
        if failed_here {
            Some(path)
        } else {
            first_bad
        }
    }
    let mut nodes = Vec::with_capacity(tree.size());
    go(tree, "root".to_string(), mode, &mut nodes);
    CheckReport {
        ok: nodes.iter().all(|n| n.verdict.is_ok()),
        mode,
        nodes,
    }
}
