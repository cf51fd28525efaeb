//! Command-line front end. Every command returns its exit code and report
//! text instead of printing, so the binary stays a thin shell.
//!
//! Exit codes: 0 pass, 1 structural or semantic failure, 2 input error,
//! 3 verification asked for on a derivation that fails the structural check.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::corpus::{bundled, run_corpus, CorpusEntry};
use crate::kernel::{check_derivation, LogicMode};
use crate::script::{parse_degree, parse_script, render, ParseError, ProofScript, RenderStyle};
use crate::semantics::{teleport_oracle, verify_soundness, NodeOutcome, SemanticsError};
use crate::syntax::{Bindings, Degree};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PHASE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Basic,
    Intuitionistic,
}

impl From<ModeArg> for LogicMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Basic => LogicMode::Basic,
            ModeArg::Intuitionistic => LogicMode::IntuitionisticLeft,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StyleArg {
    Ascii,
    Linear,
}

#[derive(Debug, Parser)]
#[command(
    name = "qseq",
    version,
    about = "Check and verify derivations of the quantum sequent calculus"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report layout.
    #[arg(long, value_enum, default_value = "human", global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every theorem of a script structurally.
    Check {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "basic")]
        mode: ModeArg,
    },
    /// Check, then replay every node on state vectors.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "basic")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value = "0.6", value_parser = parse_amplitude)]
        alpha: Complex64,
        #[arg(long, default_value = "0.8", value_parser = parse_amplitude)]
        beta: Complex64,
    },
    /// Draw a script's derivations.
    Render {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "ascii")]
        style: StyleArg,
    },
    /// Run the bundled corpus.
    Corpus {
        #[arg(long, value_enum, default_value = "basic")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value = "0.6", value_parser = parse_amplitude)]
        alpha: Complex64,
        #[arg(long, default_value = "0.8", value_parser = parse_amplitude)]
        beta: Complex64,
    },
    /// Simulate teleportation of alpha|0> + beta|1>.
    Teleport {
        #[arg(long, default_value = "0.6", value_parser = parse_amplitude)]
        alpha: Complex64,
        #[arg(long, default_value = "0.8", value_parser = parse_amplitude)]
        beta: Complex64,
    },
}

/// Accepts the degree syntax of scripts, e.g. `0.6`, `-1/sqrt2`, `0.6+0.8i`.
pub fn parse_amplitude(s: &str) -> Result<Complex64, String> {
    match parse_degree(s) {
        Ok(Degree::Value(v)) => Ok(v),
        Ok(Degree::Symbol(sym)) => Err(format!("`{}` is symbolic, give a number", sym.name())),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
}

impl Outcome {
    fn new(code: i32, text: String) -> Self {
        Outcome { code, text }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let f = cli.format;
    match &cli.command {
        Command::Check { path, mode } => {
            with_file(path, f, |name, src| cmd_check(name, src, (*mode).into(), f))
        }
        Command::Verify {
            path,
            mode,
            tol,
            alpha,
            beta,
        } => with_file(path, f, |name, src| {
            cmd_verify(
                name,
                src,
                (*mode).into(),
                *tol,
                &Bindings::new(*alpha, *beta),
                f,
            )
        }),
        Command::Render { path, style } => {
            with_file(path, f, |name, src| cmd_render(name, src, *style, f))
        }
        Command::Corpus {
            mode,
            tol,
            alpha,
            beta,
        } => cmd_corpus(
            &bundled(),
            (*mode).into(),
            *tol,
            &Bindings::new(*alpha, *beta),
            f,
        ),
        Command::Teleport { alpha, beta } => cmd_teleport(*alpha, *beta, f),
    }
}

fn with_file(path: &Path, f: Format, body: impl FnOnce(&str, &str) -> Outcome) -> Outcome {
    let name = path.display().to_string();
    match std::fs::read_to_string(path) {
        Ok(src) => body(&name, &src),
        Err(e) => Outcome::new(
            EXIT_INPUT,
            match f {
                Format::Human => format!("{name}: cannot read: {e}\n"),
                Format::Machine => {
                    format!("file={name}\terror=Io\tmessage={}\n", clean(&e.to_string()))
                }
            },
        ),
    }
}

/// Tabs and newlines would break the machine layout.
fn clean(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

fn parse_failure(name: &str, e: &ParseError, f: Format) -> Outcome {
    let sp = e.span();
    let text = match f {
        Format::Human => format!("{name}:{e}\n"),
        Format::Machine => format!(
            "file={name}\terror={}\tline={}\tcolumn={}\tlength={}\tmessage={}\n",
            e.kind(),
            sp.line,
            sp.column,
            sp.length,
            clean(&e.to_string())
        ),
    };
    Outcome::new(EXIT_INPUT, text)
}

fn parsed(name: &str, src: &str, f: Format) -> Result<ProofScript, Outcome> {
    parse_script(src).map_err(|e| parse_failure(name, &e, f))
}

fn step_text(step: Option<u32>) -> String {
    step.map_or_else(|| "-".to_string(), |s| s.to_string())
}

pub fn cmd_check(name: &str, src: &str, mode: LogicMode, f: Format) -> Outcome {
    let script = match parsed(name, src, f) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let mut text = String::new();
    let mut all_ok = true;
    if f == Format::Human {
        let _ = writeln!(text, "{name} (mode {mode})");
    }
    for t in &script.theorems {
        let report = check_derivation(&t.tree, mode);
        all_ok &= report.ok;
        match f {
            Format::Human => {
                let _ = writeln!(
                    text,
                    "  theorem {}: {} ({} nodes)",
                    t.name,
                    if report.ok { "ok" } else { "FAIL" },
                    report.nodes.len()
                );
                let _ = writeln!(text, "    goal {}", t.goal());
                for bad in report.failures() {
                    let e = bad.verdict.as_ref().unwrap_err();
                    let _ = writeln!(
                        text,
                        "    {} step {} [{}]: {}: {e}",
                        bad.path,
                        step_text(bad.step),
                        bad.rule,
                        e.kind()
                    );
                }
            }
            Format::Machine => {
                for n in &report.nodes {
                    let (verdict, detail) = match &n.verdict {
                        Ok(()) => ("ok".to_string(), String::new()),
                        Err(e) => (
                            e.kind().to_string(),
                            format!("\tmessage={}", clean(&e.to_string())),
                        ),
                    };
                    let _ = writeln!(
                        text,
                        "file={name}\ttheorem={}\tpath={}\tstep={}\trule={}\tverdict={verdict}{detail}",
                        t.name,
                        n.path,
                        step_text(n.step),
                        n.rule
                    );
                }
            }
        }
    }
    let code = if all_ok { EXIT_PASS } else { EXIT_FAIL };
    match f {
        Format::Human => {
            let _ = writeln!(text, "{}", if all_ok { "pass" } else { "fail" });
        }
        Format::Machine => {
            let _ = writeln!(
                text,
                "file={name}\tmode={mode}\tresult={}",
                if all_ok { "pass" } else { "fail" }
            );
        }
    }
    Outcome::new(code, text)
}

fn outcome_text(o: &NodeOutcome) -> (String, String) {
    match o {
        NodeOutcome::Compared {
            residual, actual, ..
        } => (
            "compared".into(),
            format!("residual={residual:.3e}\tstate={actual}"),
        ),
        NodeOutcome::Measurement(op) => ("measurement".into(), format!("operator={op}")),
        NodeOutcome::Skipped(why) => ("skipped".into(), format!("reason={}", clean(why))),
        NodeOutcome::Error(e) => ("error".into(), format!("message={}", clean(&e.to_string()))),
    }
}

pub fn cmd_verify(
    name: &str,
    src: &str,
    mode: LogicMode,
    tol: f64,
    bindings: &Bindings,
    f: Format,
) -> Outcome {
    let script = match parsed(name, src, f) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let mut text = String::new();
    let mut code = EXIT_PASS;
    if f == Format::Human {
        let _ = writeln!(text, "{name} (mode {mode}, tolerance {tol:e})");
    }
    for t in &script.theorems {
        match verify_soundness(&t.tree, mode, tol, bindings) {
            Err(SemanticsError::NotChecked(at)) => {
                code = EXIT_PHASE;
                let _ = match f {
                    Format::Human => writeln!(
                        text,
                        "  theorem {}: fails the structural check at {at}; run `check` first",
                        t.name
                    ),
                    Format::Machine => writeln!(
                        text,
                        "file={name}\ttheorem={}\terror=NotChecked\tat={}",
                        t.name,
                        clean(&at)
                    ),
                };
            }
            Err(e) => {
                code = code.max(EXIT_FAIL);
                let _ = writeln!(text, "  theorem {}: {e}", t.name);
            }
            Ok(report) => {
                if !report.ok {
                    code = code.max(EXIT_FAIL);
                }
                match f {
                    Format::Human => {
                        let _ = writeln!(
                            text,
                            "  theorem {}: {} (max residual {:.3e})",
                            t.name,
                            if report.ok { "sound" } else { "UNSOUND" },
                            report.max_residual
                        );
                        for n in &report.nodes {
                            let (kind, detail) = outcome_text(&n.outcome);
                            let _ = writeln!(
                                text,
                                "    {:<14} step {:<3} {:<16} {kind:<12} {}",
                                n.path,
                                step_text(n.step),
                                n.rule.to_string(),
                                detail.replace('\t', "  ")
                            );
                        }
                        if let NodeOutcome::Compared { actual, .. } = &report.root().outcome {
                            let _ = writeln!(text, "    conclusion {actual}");
                        }
                    }
                    Format::Machine => {
                        for n in &report.nodes {
                            let (kind, detail) = outcome_text(&n.outcome);
                            let _ = writeln!(
                                text,
                                "file={name}\ttheorem={}\tpath={}\tstep={}\trule={}\toutcome={kind}\t{detail}",
                                t.name,
                                n.path,
                                step_text(n.step),
                                n.rule
                            );
                        }
                        let _ = writeln!(
                            text,
                            "file={name}\ttheorem={}\tmax_residual={:.3e}\ttol={:e}\tok={}",
                            t.name, report.max_residual, tol, report.ok
                        );
                    }
                }
            }
        }
    }
    let verdict = match code {
        EXIT_PASS => "pass",
        EXIT_PHASE => "not checked",
        _ => "fail",
    };
    let _ = match f {
        Format::Human => writeln!(text, "{verdict}"),
        Format::Machine => writeln!(text, "file={name}\tresult={verdict}"),
    };
    Outcome::new(code, text)
}

pub fn cmd_render(name: &str, src: &str, style: StyleArg, f: Format) -> Outcome {
    let script = match parsed(name, src, f) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let text = match style {
        StyleArg::Linear => crate::script::render_script(&script),
        StyleArg::Ascii => {
            let mut out = String::new();
            for t in &script.theorems {
                let _ = writeln!(out, "theorem {}:\n", t.name);
                out.push_str(&render(&t.tree, RenderStyle::Ascii));
                out.push('\n');
            }
            out
        }
    };
    Outcome::new(EXIT_PASS, text)
}

pub fn cmd_corpus(
    entries: &[CorpusEntry],
    mode: LogicMode,
    tol: f64,
    bindings: &Bindings,
    f: Format,
) -> Outcome {
    let outcomes = run_corpus(entries, mode, tol, bindings);
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let mut text = String::new();
    for o in &outcomes {
        let check = match (&o.parse_error, &o.failure) {
            (Some(e), _) => format!("parse error {}", e.kind()),
            (None, Some(fl)) => format!(
                "{} at {} step {} ({})",
                fl.kind,
                fl.path,
                step_text(fl.step),
                fl.theorem
            ),
            (None, None) => "ok".to_string(),
        };
        let residual = o
            .max_residual
            .map_or_else(|| "-".to_string(), |r| format!("{r:.3e}"));
        let fid = o
            .fidelity
            .map_or_else(|| "-".to_string(), |x| format!("{x:.12}"));
        let _ = match f {
            Format::Human => writeln!(
                text,
                "{:<5} {:<24} {:<40} check={check} goal={} residual={residual} fidelity={fid}",
                if o.passed { "PASS" } else { "FAIL" },
                o.file,
                o.anchor,
                if o.conclusion_matches { "ok" } else { "mismatch" }
            ),
            Format::Machine => writeln!(
                text,
                "file={}\tanchor={}\tpassed={}\tcheck={}\tgoal={}\tmax_residual={residual}\tfidelity={fid}",
                o.file,
                o.anchor,
                o.passed,
                clean(&check),
                o.conclusion_matches
            ),
        };
    }
    let _ = match f {
        Format::Human => writeln!(text, "{passed}/{} passed (mode {mode})", outcomes.len()),
        Format::Machine => writeln!(
            text,
            "mode={mode}\tpassed={passed}\ttotal={}",
            outcomes.len()
        ),
    };
    Outcome::new(
        if passed == outcomes.len() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        },
        text,
    )
}

pub fn cmd_teleport(alpha: Complex64, beta: Complex64, f: Format) -> Outcome {
    let rows = match teleport_oracle(alpha, beta) {
        Ok(r) => r,
        Err(e) => {
            return Outcome::new(
                EXIT_INPUT,
                match f {
                    Format::Human => format!("{e}\n"),
                    Format::Machine => {
                        format!("error=NotNormalized\tmessage={}\n", clean(&e.to_string()))
                    }
                },
            )
        }
    };
    let mut text = String::new();
    let mut ok = true;
    if f == Format::Human {
        let _ = writeln!(
            text,
            "{:<8} {:<12} {:<10} {:<30} fidelity",
            "outcome", "probability", "correction", "bob"
        );
    }
    for r in &rows {
        ok &= (r.fidelity - 1.0).abs() <= 1e-9;
        let bob = crate::semantics::QState::qubit("B", r.bob[0], r.bob[1]).to_string();
        let _ = match f {
            Format::Human => writeln!(
                text,
                "{:<8} {:<12.9} {:<10} {:<30} {:.12}",
                r.outcome, r.probability, r.correction, bob, r.fidelity
            ),
            Format::Machine => writeln!(
                text,
                "outcome={}\tprobability={:.12}\tcorrection={}\tbob={bob}\tfidelity={:.12}",
                r.outcome, r.probability, r.correction, r.fidelity
            ),
        };
    }
    Outcome::new(if ok { EXIT_PASS } else { EXIT_FAIL }, text)
}
