use crate::kernel::{check_derivation, Derivation, LogicMode, RuleTag};
use crate::syntax::{Bindings, Sequent};

use super::{
    apply, combine_parallel, denote_assertion, denote_measurement, residual, Operator, QState,
    SemanticsError,
};

#[derive(Debug, Clone, PartialEq)]
pub enum NodeOutcome {
    /// The rule's operator applied to the premises' states, against the
    /// state the conclusion denotes.
    Compared {
        predicted: QState,
        actual: QState,
        residual: f64,
    },
    /// The conclusion is a measurement hypothesis; it denotes this operator.
    Measurement(Operator),
    Skipped(String),
    Error(SemanticsError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeSoundness {
    pub path: String,
    pub step: Option<u32>,
    pub rule: RuleTag,
    pub conclusion: String,
    pub outcome: NodeOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SoundnessReport {
    pub nodes: Vec<NodeSoundness>,
    pub max_residual: f64,
    pub tol: f64,
    pub ok: bool,
}

impl SoundnessReport {
    pub fn root(&self) -> &NodeSoundness {
        self.nodes
            .last()
            .expect("a derivation has at least one node")
    }

    pub fn errors(&self) -> impl Iterator<Item = &NodeSoundness> {
        self.nodes
            .iter()
            .filter(|n| matches!(n.outcome, NodeOutcome::Error(_)))
    }
}

enum Prediction {
    State(QState),
    Skip(String),
}

/// Replay `tree` on state vectors.
///
/// Every node whose conclusion is an assertion gets a predicted state
/// computed from its premises' denotations through the operator its rule
/// stands for, and is compared with the conclusion's own denotation.
/// The tree must pass the structural check first.
pub fn verify_soundness(
    tree: &Derivation,
    mode: LogicMode,
    tol: f64,
    bindings: &Bindings,
) -> Result<SoundnessReport, SemanticsError> {
    let check = check_derivation(tree, mode);
    if let Some(bad) = check.first_failure() {
        return Err(SemanticsError::NotChecked(format!(
            "{} ({})",
            bad.path, bad.rule
        )));
    }
    let mut nodes = Vec::with_capacity(tree.size());
    tree.walk(|path, node| {
        nodes.push(NodeSoundness {
            path: path.to_string(),
            step: node.step,
            rule: node.rule,
            conclusion: node.conclusion.to_string(),
            outcome: outcome(node, bindings),
        })
    });
    let max_residual = nodes
        .iter()
        .filter_map(|n| match n.outcome {
            NodeOutcome::Compared { residual, .. } => Some(residual),
            _ => None,
        })
        .fold(0.0, f64::max);
    let ok = max_residual <= tol
        && !nodes
            .iter()
            .any(|n| matches!(n.outcome, NodeOutcome::Error(_)));
    Ok(SoundnessReport {
        nodes,
        max_residual,
        tol,
        ok,
    })
}

fn outcome(node: &Derivation, bindings: &Bindings) -> NodeOutcome {
    if !node.conclusion.is_assertion() {
        return match denote_measurement(&node.conclusion) {
            Ok(op) => NodeOutcome::Measurement(op),
            Err(_) => NodeOutcome::Skipped("hypothetical sequent".into()),
        };
    }
    let actual = match denote_assertion(&node.conclusion, bindings) {
        Ok(s) => s,
        Err(e) => return NodeOutcome::Error(e),
    };
    let predicted = match predict(node, &actual, bindings) {
        Ok(Prediction::State(s)) => s,
        Ok(Prediction::Skip(why)) => return NodeOutcome::Skipped(why),
        Err(e) => return NodeOutcome::Error(e),
    };
    let predicted = match fit_wires(predicted, &actual) {
        Ok(p) => p,
        Err(e) => return NodeOutcome::Error(e),
    };
    match residual(&predicted, &actual) {
        Ok(residual) => NodeOutcome::Compared {
            predicted,
            actual,
            residual,
        },
        Err(e) => NodeOutcome::Error(e),
    }
}

/// Drop wires the conclusion no longer mentions; they must be definite.
fn fit_wires(mut s: QState, actual: &QState) -> Result<QState, SemanticsError> {
    let extra: Vec<String> = s
        .wires
        .iter()
        .filter(|w| !actual.wires.contains(w))
        .cloned()
        .collect();
    for w in extra {
        s = s.drop_definite(&w)?;
    }
    Ok(s)
}

fn premise_state(
    node: &Derivation,
    i: usize,
    bindings: &Bindings,
) -> Result<Option<QState>, SemanticsError> {
    let s = &node.premises[i].conclusion;
    if s.is_assertion() {
        denote_assertion(s, bindings).map(Some)
    } else {
        Ok(None)
    }
}

fn predict(
    node: &Derivation,
    actual: &QState,
    bindings: &Bindings,
) -> Result<Prediction, SemanticsError> {
    let skip = || Ok(Prediction::Skip("premise is not an assertion".into()));
    match node.rule {
        RuleTag::Premise | RuleTag::Axiom | RuleTag::AtAxiom => {
            Ok(Prediction::State(actual.clone()))
        }
        RuleTag::Cut | RuleTag::EprRule | RuleTag::AtImplRefl if node.premises.len() == 2 => {
            let Some(state) = premise_state(node, 0, bindings)? else {
                return skip();
            };
            let m = &node.premises[1].conclusion;
            let Ok(op) = denote_measurement(m) else {
                return Ok(Prediction::Skip(format!("`{m}` is not a measurement")));
            };
            measure(&state, &op, m, bindings).map(Prediction::State)
        }
        RuleTag::AtImplRefl | RuleTag::QSplit | RuleTag::EprRule => {
            let Some(mut state) = premise_state(node, 0, bindings)? else {
                return skip();
            };
            for f in &node.conclusion.consequent {
                if let Some(lit) = f.as_atom() {
                    if state.wire_index(&lit.name).is_some() {
                        state = state.project(&lit.name, lit.bit())?;
                    }
                }
            }
            state.normalized().map(Prediction::State)
        }
        RuleTag::SemiDistrib
        | RuleTag::ParForm
        | RuleTag::NegForm
        | RuleTag::NegRefl
        | RuleTag::AndRefl
        | RuleTag::AtExplRefl
        | RuleTag::Cut => match premise_state(node, 0, bindings)? {
            Some(s) => Ok(Prediction::State(s)),
            None => skip(),
        },
        RuleTag::HRule | RuleTag::HInverse => {
            let Some(state) = premise_state(node, 0, bindings)? else {
                return skip();
            };
            let [wire] = state.wires.as_slice() else {
                return Err(SemanticsError::WireMismatch(
                    "Hadamard premise must be one qubit".into(),
                ));
            };
            let op = if node.rule == RuleTag::HRule {
                Operator::h(wire)
            } else {
                Operator::h_inv(wire)
            };
            apply(&op, &state).map(Prediction::State)
        }
        RuleTag::CnotRule => {
            let Some(state) = premise_state(node, 0, bindings)? else {
                return skip();
            };
            let lits = literals(&node.premises[0].conclusion);
            let [control, target] = lits.as_slice() else {
                return Err(SemanticsError::WireMismatch(
                    "CNOT premise must be two bits".into(),
                ));
            };
            apply(&Operator::cnot(control, target), &state).map(Prediction::State)
        }
        RuleTag::AndForm | RuleTag::AtForm | RuleTag::ParallelJoin(_) => {
            match (
                premise_state(node, 0, bindings)?,
                premise_state(node, 1, bindings)?,
            ) {
                (Some(l), Some(r)) => combine_parallel(&l, &r).map(Prediction::State),
                _ => skip(),
            }
        }
    }
}

fn literals(s: &Sequent) -> Vec<String> {
    s.consequent
        .iter()
        .filter_map(|f| f.as_atom().map(|a| a.name.clone()))
        .collect()
}

/// Project, renormalize, and weight by the measurement's recorded degree.
fn measure(
    state: &QState,
    op: &Operator,
    m: &Sequent,
    bindings: &Bindings,
) -> Result<QState, SemanticsError> {
    let projected = apply(op, state)?.normalized()?;
    match &m.degree {
        Some(d) => {
            let amp = d
                .resolve(bindings)
                .map_err(|s| SemanticsError::UnboundSymbolicDegree(s.name().into()))?;
            Ok(projected.scaled(amp))
        }
        None => Ok(projected),
    }
}
