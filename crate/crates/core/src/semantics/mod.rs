//! State-vector meaning of sequents and rules.
//!
//! Assertions `|- G` denote states on the wires named by their atoms,
//! measurement hypotheses `Q_X |- L` denote projectors, and each rule
//! denotes a gate, a projection or the parallel sum of its branches.

mod denote;
mod operator;
mod state;
mod teleport;
mod verify;

use thiserror::Error;

pub use denote::{denote_assertion, denote_formula, denote_measurement};
pub use operator::{apply, OpName, Operator};
pub use state::{combine_parallel, entanglement_entropy, fidelity, residual, QState};
pub use teleport::{teleport_oracle, TeleportRow};
pub use verify::{verify_soundness, NodeOutcome, NodeSoundness, SoundnessReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SemanticsError {
    #[error("unbound symbolic degree `{0}`")]
    UnboundSymbolicDegree(String),
    #[error("sequent does not denote a state: {0}")]
    NonDenotableSequent(String),
    #[error("not a measurement: `{0}`")]
    NotAMeasurementShape(String),
    #[error("wire mismatch: {0}")]
    WireMismatch(String),
    #[error("zero state")]
    ZeroState,
    #[error("input state not normalized: {0}")]
    NotNormalized(String),
    #[error("derivation fails the structural check at {0}")]
    NotChecked(String),
}
