//! The bundled derivations and the expectations they are run against.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::kernel::{check_derivation, LogicMode};
use crate::script::{parse_script, parse_sequent, ParseError};
use crate::semantics::{denote_assertion, fidelity, verify_soundness, QState, SemanticsError};
use crate::syntax::Bindings;

/// Expected conclusion state, built from the bindings in force.
#[derive(Clone, Copy)]
pub struct ExpectedState {
    pub describe: &'static str,
    pub build: fn(&Bindings) -> QState,
    /// Minimum fidelity between the conclusion's denotation and `build`.
    pub min_fidelity: f64,
}

impl std::fmt::Debug for ExpectedState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExpectedState")
            .field("describe", &self.describe)
            .finish()
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub file: &'static str,
    /// What the derivation shows, in a few words.
    pub anchor: &'static str,
    pub source: String,
    /// Theorem whose goal is compared with `conclusion`.
    pub theorem: &'static str,
    pub expected_ok: bool,
    pub conclusion: &'static str,
    pub denotation: Option<ExpectedState>,
}

const FIDELITY: f64 = 1.0 - 1e-9;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn state(wires: &[&str], amps: &[Complex64]) -> QState {
    QState::new(wires.iter().map(|w| w.to_string()).collect(), amps.to_vec())
        .expect("well-formed expected state")
}

fn one(_: &Bindings) -> QState {
    QState::basis("A", 1)
}

fn zero(_: &Bindings) -> QState {
    QState::basis("A", 0)
}

fn plus(_: &Bindings) -> QState {
    QState::plus("A")
}

fn pair_ones(_: &Bindings) -> QState {
    state(&["A", "B"], &[c(0.0), c(0.0), c(0.0), c(1.0)])
}

fn bell_ab(_: &Bindings) -> QState {
    state(
        &["A", "B"],
        &[c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(FRAC_1_SQRT_2)],
    )
}

fn bell_ba(_: &Bindings) -> QState {
    state(
        &["B", "A"],
        &[c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(FRAC_1_SQRT_2)],
    )
}

fn zeros_ba(_: &Bindings) -> QState {
    state(&["B", "A"], &[c(1.0), c(0.0), c(0.0), c(0.0)])
}

fn plus_plus(_: &Bindings) -> QState {
    QState::plus("B")
        .tensor(&QState::plus("A"))
        .expect("distinct wires")
}

fn teleported(b: &Bindings) -> QState {
    let alpha = b.alpha.unwrap_or(c(0.6));
    let beta = b.beta.unwrap_or(c(0.8));
    state(&["C", "B"], &[alpha, c(0.0), c(0.0), beta])
}

fn expect(describe: &'static str, build: fn(&Bindings) -> QState) -> Option<ExpectedState> {
    Some(ExpectedState {
        describe,
        build,
        min_fidelity: FIDELITY,
    })
}

macro_rules! entry {
    ($file:literal, $anchor:literal, $theorem:literal, $concl:literal, $den:expr) => {
        CorpusEntry {
            file: $file,
            anchor: $anchor,
            source: include_str!(concat!("../corpus/", $file)).to_string(),
            theorem: $theorem,
            expected_ok: true,
            conclusion: $concl,
            denotation: $den,
        }
    };
}

/// The thirteen bundled derivations in their fixed order.
pub fn bundled() -> Vec<CorpusEntry> {
    vec![
        entry!(
            "cut-destroys-cat-1.qsc",
            "cut collapses the cat state to |1>",
            "collapse_to_one",
            "|- A",
            expect("|1>", one)
        ),
        entry!(
            "cut-destroys-cat-0.qsc",
            "cut collapses the cat state to |0>",
            "collapse_to_zero",
            "|- A^",
            expect("|0>", zero)
        ),
        entry!(
            "cut-parallel.qsc",
            "cut in parallel is the cat mirror",
            "cut_in_parallel",
            "|- A & A^",
            expect("|+>", plus)
        ),
        entry!(
            "epr.qsc",
            "EPR rule",
            "epr_one",
            "|- A # B",
            expect("|11>", pair_ones)
        ),
        entry!(
            "epr-parallel.qsc",
            "EPR in parallel is the Bell mirror",
            "epr_in_parallel",
            "|- Q_A @ Q_B",
            expect("Phi+ on (A,B)", bell_ab)
        ),
        entry!(
            "h-rule.qsc",
            "Hadamard rule and its inverse",
            "h_on_zero",
            "|- A^ &{1/sqrt2, 1/sqrt2} A",
            expect("|+>", plus)
        ),
        entry!(
            "h-parallel.qsc",
            "Hadamard in parallel collapses to |0>",
            "h_in_parallel",
            "|- A^",
            expect("|0>", zero)
        ),
        entry!(
            "cnot-derivation.qsc",
            "CNOT from negation rules",
            "negation_detour",
            "|- B^, A^",
            expect("|00> on (B,A)", zeros_ba)
        ),
        entry!(
            "cnot-action.qsc",
            "CNOT on a cat control",
            "cnot_action",
            "|- Q_B @ Q_A",
            expect("Phi+ on (B,A)", bell_ba)
        ),
        entry!(
            "cnot-parallel.qsc",
            "CNOT in parallel",
            "cnot_in_parallel",
            "|- Q_B, Q_A",
            expect("|+>|+> on (B,A)", plus_plus)
        ),
        entry!(
            "ent.qsc",
            "entangling two qubits",
            "ent",
            "|- Q_B @ Q_A",
            expect("Phi+ on (B,A)", bell_ba)
        ),
        entry!(
            "nogo.qsc",
            "no entanglement in parallel",
            "no_entanglement_in_parallel",
            "|- Q_B, Q_A",
            expect("|+>|+> on (B,A)", plus_plus)
        ),
        entry!(
            "tel.qsc",
            "teleportation",
            "teleportation",
            "|- Q_C{alpha, beta} @ Q_B",
            expect("alpha|00> + beta|11> on (C,B)", teleported)
        ),
    ]
}

/// Location of the first structural failure in an entry.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub theorem: String,
    pub path: String,
    pub step: Option<u32>,
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct EntryOutcome {
    pub file: &'static str,
    pub anchor: &'static str,
    pub parse_error: Option<ParseError>,
    /// All theorems pass the structural check.
    pub checked: bool,
    pub failure: Option<Failure>,
    pub conclusion_matches: bool,
    pub max_residual: Option<f64>,
    pub soundness_ok: Option<bool>,
    pub fidelity: Option<f64>,
    pub semantic_error: Option<SemanticsError>,
    pub passed: bool,
}

/// Run one entry: parse, check every theorem, compare the goal, and where a
/// state is expected, replay it semantically.
pub fn run_entry(
    entry: &CorpusEntry,
    mode: LogicMode,
    tol: f64,
    bindings: &Bindings,
) -> EntryOutcome {
    let mut out = EntryOutcome {
        file: entry.file,
        anchor: entry.anchor,
        parse_error: None,
        checked: false,
        failure: None,
        conclusion_matches: false,
        max_residual: None,
        soundness_ok: None,
        fidelity: None,
        semantic_error: None,
        passed: false,
    };
    let script = match parse_script(&entry.source) {
        Ok(s) => s,
        Err(e) => {
            out.parse_error = Some(e);
            return out;
        }
    };
    out.checked = true;
    for t in &script.theorems {
        let report = check_derivation(&t.tree, mode);
        if let Some(bad) = report.first_failure() {
            out.checked = false;
            let err = bad.verdict.as_ref().unwrap_err();
            out.failure.get_or_insert(Failure {
                theorem: t.name.clone(),
                path: bad.path.clone(),
                step: bad.step,
                kind: err.kind().to_string(),
                message: err.to_string(),
            });
        }
    }
    let Some(main) = script.theorem(entry.theorem) else {
        return out;
    };
    let expected = parse_sequent(entry.conclusion).expect("corpus conclusions are well-formed");
    out.conclusion_matches = main.goal().equivalent_to(&expected);
    if out.checked {
        let mut worst = 0.0f64;
        let mut all_ok = true;
        for t in &script.theorems {
            match verify_soundness(&t.tree, mode, tol, bindings) {
                Ok(r) => {
                    worst = worst.max(r.max_residual);
                    all_ok &= r.ok;
                }
                Err(e) => {
                    all_ok = false;
                    out.semantic_error.get_or_insert(e);
                }
            }
        }
        out.max_residual = Some(worst);
        out.soundness_ok = Some(all_ok);
        if let Some(den) = &entry.denotation {
            match denote_assertion(main.goal(), bindings)
                .and_then(|s| fidelity(&(den.build)(bindings), &s))
            {
                Ok(f) => out.fidelity = Some(f),
                Err(e) => {
                    out.semantic_error.get_or_insert(e);
                }
            }
        }
    }
    let semantics_ok = out.soundness_ok != Some(false)
        && out.semantic_error.is_none()
        && match (&entry.denotation, out.fidelity) {
            (Some(den), Some(f)) => f >= den.min_fidelity,
            (Some(_), None) => !out.checked,
            (None, _) => true,
        };
    out.passed = out.checked == entry.expected_ok
        && out.conclusion_matches
        && (!out.checked || semantics_ok);
    out
}

pub fn run_corpus(
    entries: &[CorpusEntry],
    mode: LogicMode,
    tol: f64,
    bindings: &Bindings,
) -> Vec<EntryOutcome> {
    entries
        .iter()
        .map(|e| run_entry(e, mode, tol, bindings))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bindings() -> Bindings {
        Bindings::new(c(0.6), c(0.8))
    }

    #[test]
    fn every_entry_passes() {
        for mode in [LogicMode::Basic, LogicMode::IntuitionisticLeft] {
            for out in run_corpus(&bundled(), mode, 1e-9, &bindings()) {
                assert!(out.passed, "{mode}: {out:#?}");
            }
        }
    }

    #[test]
    fn files_are_distinct() {
        let entries = bundled();
        assert_eq!(entries.len(), 13);
        for (i, e) in entries.iter().enumerate() {
            assert!(entries[..i].iter().all(|o| o.file != e.file));
        }
    }

    #[test]
    fn swapped_cnot_clause_is_localized() {
        let mut entries = bundled();
        let ent = entries.iter_mut().find(|e| e.file == "ent.qsc").unwrap();
        ent.source = ent.source.replace("by cnot[a'](6)", "by cnot[b'](6)");
        let outcomes = run_corpus(&entries, LogicMode::Basic, 1e-9, &bindings());
        assert_eq!(outcomes.iter().filter(|o| o.passed).count(), 12);
        let bad = outcomes.iter().find(|o| !o.passed).unwrap();
        let failure = bad.failure.as_ref().unwrap();
        assert_eq!(
            (bad.file, failure.step, failure.kind.as_str()),
            ("ent.qsc", Some(8), "SchemaMismatch")
        );
    }
}
