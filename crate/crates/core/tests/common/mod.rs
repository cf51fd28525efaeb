#![allow(dead_code)]

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use proptest::prelude::*;
use qseq::kernel::{CnotClause, Derivation, Param, RuleTag};
use qseq::syntax::{Atom, Convention, Degree, Formula, Sequent, Symbol};

pub const ATOMS: [&str; 4] = ["A", "B", "C", "X1"];

pub fn atom_name() -> impl Strategy<Value = String> {
    prop::sample::select(ATOMS.to_vec()).prop_map(str::to_string)
}

pub fn degree() -> impl Strategy<Value = Degree> {
    prop_oneof![
        Just(Degree::inv_sqrt2()),
        Just(Degree::neg_inv_sqrt2()),
        Just(Degree::Symbol(Symbol::Alpha)),
        Just(Degree::Symbol(Symbol::Beta)),
        (-4.0f64..4.0).prop_map(Degree::real),
        ((-4.0f64..4.0), (-4.0f64..4.0)).prop_map(|(re, im)| Degree::Value(Complex64::new(re, im))),
        (-4.0f64..4.0).prop_map(|im| Degree::Value(Complex64::new(0.0, im))),
    ]
}

pub fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => (atom_name(), any::<bool>()).prop_map(|(n, neg)| Formula::Atom(Atom { name: n, negated: neg })),
        1 => Just(Formula::Null),
        2 => atom_name().prop_map(|n| Formula::qubit(&n)),
        1 => (atom_name(), degree(), degree()).prop_map(|(n, a, b)| Formula::qubit_with(&n, a, b)),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), degree(), degree(), inner.clone())
                .prop_map(|(l, a, b, r)| Formula::and_deg(l, a, b, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::par(l, r)),
            (inner.clone(), inner.clone(), any::<bool>()).prop_map(|(l, r, psi)| {
                Formula::ent_with(
                    l,
                    r,
                    if psi {
                        Convention::Psi
                    } else {
                        Convention::Phi
                    },
                )
            }),
        ]
    })
}

pub fn sequent() -> impl Strategy<Value = Sequent> {
    (
        prop::collection::vec(formula(), 0..3),
        prop::collection::vec(formula(), 0..3),
        prop::option::of(degree()),
    )
        .prop_map(|(antecedent, consequent, degree)| Sequent {
            antecedent,
            consequent,
            degree,
        })
}

fn param_for(rule: RuleTag) -> BoxedStrategy<Option<Param>> {
    match rule {
        RuleTag::Cut => prop::option::of(formula().prop_map(Param::Formula)).boxed(),
        RuleTag::AtForm | RuleTag::AtImplRefl | RuleTag::AtExplRefl | RuleTag::AtAxiom => {
            prop::option::of(any::<bool>().prop_map(|psi| {
                Param::Convention(if psi {
                    Convention::Psi
                } else {
                    Convention::Phi
                })
            }))
            .boxed()
        }
        RuleTag::CnotRule => prop::option::of(
            prop::sample::select(vec![
                CnotClause::A,
                CnotClause::B,
                CnotClause::APrime,
                CnotClause::BPrime,
            ])
            .prop_map(Param::Clause),
        )
        .boxed(),
        RuleTag::NegForm | RuleTag::NegRefl => prop::option::of(Just(Param::Carry)).boxed(),
        _ => Just(None).boxed(),
    }
}

fn rules_with_arity(n: usize) -> Vec<RuleTag> {
    RuleTag::ALL
        .iter()
        .copied()
        .filter(|r| r.arity().contains(&n))
        .collect()
}

pub fn leaf() -> impl Strategy<Value = Derivation> {
    (prop::sample::select(rules_with_arity(0)), sequent()).prop_flat_map(|(rule, s)| {
        param_for(rule).prop_map(move |param| Derivation {
            rule,
            param,
            premises: vec![],
            conclusion: s.clone(),
            step: None,
        })
    })
}

/// Arbitrary (mostly invalid) derivation trees.
pub fn derivation() -> impl Strategy<Value = Derivation> {
    leaf().prop_recursive(3, 16, 3, |inner| {
        (1usize..=3)
            .prop_flat_map(move |n| {
                (
                    prop::sample::select(rules_with_arity(n)),
                    prop::collection::vec(inner.clone(), n),
                    sequent(),
                )
            })
            .prop_flat_map(|(rule, premises, s)| {
                param_for(rule).prop_map(move |param| Derivation {
                    rule,
                    param,
                    premises: premises.clone(),
                    conclusion: s.clone(),
                    step: None,
                })
            })
    })
}

pub fn r() -> Complex64 {
    Complex64::new(FRAC_1_SQRT_2, 0.0)
}

pub fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Token-deletion mutants of a script: each occurrence of a structural token
/// removed in turn. Scanned by hand so the mutants do not depend on the
/// lexer under test.
pub fn deletion_mutants(src: &str) -> Vec<String> {
    const PUNCT: [&str; 14] = [
        "|-", "@~", "@", "&", "#", ",", ":", "(", ")", "[", "]", "{", "}", "/",
    ];
    const WORDS: [&str; 5] = ["atoms", "theorem", "qed", "by", "premise"];
    let mut out = Vec::new();
    let mut offset = 0;
    for line in src.split_inclusive('\n') {
        let code = line.split("//").next().unwrap_or("");
        let bytes = code.as_bytes();
        let mut i = 0;
        let mut at_line_start = true;
        while i < code.len() {
            let rest = &code[i..];
            let ch = bytes[i] as char;
            let mut cut: Option<usize> = None;
            if ch.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            if let Some(p) = PUNCT.iter().find(|p| rest.starts_with(**p)) {
                cut = Some(p.len());
            } else if ch.is_ascii_alphanumeric() || ch == '_' || ch == '.' {
                let len = rest
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '.'))
                    .unwrap_or(rest.len());
                let word = &rest[..len];
                let step_number = at_line_start && word.chars().all(|c| c.is_ascii_digit());
                if WORDS.contains(&word) || step_number {
                    out.push(format!(
                        "{}{}",
                        &src[..offset + i],
                        &src[offset + i + len..]
                    ));
                }
                i += len;
                at_line_start = false;
                continue;
            } else {
                i += 1;
            }
            if let Some(len) = cut {
                out.push(format!(
                    "{}{}",
                    &src[..offset + i],
                    &src[offset + i + len..]
                ));
                i += len;
            }
            at_line_start = false;
        }
        offset += line.len();
    }
    out
}
