//! Proof checking and state-vector verification for a sub-structural
//! sequent calculus of qubits.

pub mod cli;
pub mod corpus;
pub mod kernel;
pub mod script;
pub mod semantics;
pub mod syntax;
