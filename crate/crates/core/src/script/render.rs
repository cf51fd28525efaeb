use std::collections::BTreeSet;
use std::fmt::Write;

use crate::kernel::{Derivation, Param, RuleTag};
use crate::syntax::Convention;

use super::ProofScript;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    /// Premises stacked over labeled inference bars.
    Ascii,
    /// The numbered-step script form.
    Linear,
}

pub fn render(tree: &Derivation, style: RenderStyle) -> String {
    match style {
        RenderStyle::Ascii => {
            let mut out = String::new();
            for line in layout(tree).lines {
                out.push_str(line.trim_end());
                out.push('\n');
            }
            out
        }
        RenderStyle::Linear => {
            let atoms = collect_atoms(std::iter::once(tree));
            format!("{}\n{}", atoms_line(&atoms), render_theorem("main", tree))
        }
    }
}

/// All theorems of a script in linear form.
pub fn render_script(script: &ProofScript) -> String {
    let atoms = collect_atoms(script.theorems.iter().map(|t| &t.tree));
    let mut out = atoms_line(&atoms);
    out.push('\n');
    for t in &script.theorems {
        out.push_str(&render_theorem(&t.name, &t.tree));
    }
    out
}

fn atoms_line(atoms: &BTreeSet<String>) -> String {
    let mut s = String::from("atoms");
    for a in atoms {
        s.push(' ');
        s.push_str(a);
    }
    s
}

fn collect_atoms<'a>(trees: impl Iterator<Item = &'a Derivation>) -> BTreeSet<String> {
    let mut names = BTreeSet::new();
    for t in trees {
        t.walk(|_, node| {
            names.extend(node.conclusion.atom_names());
            if let Some(Param::Formula(f)) = &node.param {
                names.extend(f.atom_names());
            }
        });
    }
    names
}

/// One theorem block, steps numbered in post-order with identical subtrees
/// written once.
pub fn render_theorem(name: &str, tree: &Derivation) -> String {
    let mut emitted: Vec<(&Derivation, u32)> = Vec::new();
    let mut body = String::new();
    emit(tree, &mut emitted, &mut body);
    format!("theorem {name}:\n{body}qed\n")
}

fn emit<'a>(
    node: &'a Derivation,
    emitted: &mut Vec<(&'a Derivation, u32)>,
    out: &mut String,
) -> u32 {
    if let Some((_, id)) = emitted.iter().find(|(d, _)| *d == node) {
        return *id;
    }
    let ids: Vec<u32> = node
        .premises
        .iter()
        .map(|p| emit(p, emitted, out))
        .collect();
    let id = emitted.len() as u32 + 1;
    let _ = write!(out, "  {id}: {}", node.conclusion);
    if node.rule == RuleTag::Premise {
        out.push_str(" premise\n");
    } else {
        let ids = ids
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(
            out,
            " by {}{}({ids})",
            node.rule,
            param_text(node.param.as_ref())
        );
    }
    emitted.push((node, id));
    id
}

fn param_text(param: Option<&Param>) -> String {
    match param {
        None => String::new(),
        Some(Param::Formula(f)) => format!("[{f}]"),
        Some(Param::Convention(Convention::Phi)) => "[phi]".into(),
        Some(Param::Convention(Convention::Psi)) => "[psi]".into(),
        Some(Param::Clause(c)) => format!("[{}]", c.name()),
        Some(Param::Carry) => "[carry]".into(),
    }
}

struct Block {
    lines: Vec<String>,
    width: usize,
}

const GAP: usize = 4;

fn pad(s: &str, width: usize) -> String {
    format!("{s:<width$}")
}

fn layout(node: &Derivation) -> Block {
    let concl = node.conclusion.to_string();
    if node.premises.is_empty() {
        let line = format!("{concl}   [{}]", node.rule.display_label());
        return Block {
            width: line.len(),
            lines: vec![line],
        };
    }
    let blocks: Vec<Block> = node.premises.iter().map(layout).collect();
    let height = blocks.iter().map(|b| b.lines.len()).max().unwrap_or(0);
    let row_width = blocks.iter().map(|b| b.width).sum::<usize>() + GAP * (blocks.len() - 1);
    let mut rows = vec![String::new(); height];
    for (k, b) in blocks.iter().enumerate() {
        let offset = height - b.lines.len();
        for (r, row) in rows.iter_mut().enumerate() {
            let text = if r >= offset {
                b.lines[r - offset].as_str()
            } else {
                ""
            };
            row.push_str(&pad(text, b.width));
            if k + 1 < blocks.len() {
                row.push_str(&" ".repeat(GAP));
            }
        }
    }
    let bar = row_width.max(concl.len());
    let label = node.rule.display_label();
    let lead = (bar - row_width) / 2;
    let mut lines: Vec<String> = rows
        .into_iter()
        .map(|r| format!("{}{r}", " ".repeat(lead)))
        .collect();
    lines.push(format!("{} {label}", "-".repeat(bar)));
    lines.push(format!("{}{concl}", " ".repeat((bar - concl.len()) / 2)));
    let width = bar + 1 + label.len();
    Block {
        lines: lines.into_iter().map(|l| pad(&l, width)).collect(),
        width,
    }
}
