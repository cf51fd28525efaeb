use crate::syntax::{normalize, Atom, Convention, Degree, Formula, QubitRef, Sequent};

use super::{
    check_derivation, CnotClause, Derivation, JoinConnective, KernelError, LogicMode, RuleTag,
};

type Check = Result<(), KernelError>;

fn lists_equiv(a: &[Formula], b: &[Formula]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| crate::syntax::equivalent(x, y))
}

fn show(list: &[Formula]) -> String {
    list.iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn expect(concl: &Sequent, expected: &Sequent) -> Check {
    if concl.equivalent_to(expected) {
        Ok(())
    } else {
        Err(KernelError::ConclusionMismatch(format!(
            "expected `{expected}`, found `{concl}`"
        )))
    }
}

fn same_antecedent(a: &Sequent, b: &Sequent) -> Check {
    if lists_equiv(&a.antecedent, &b.antecedent) {
        Ok(())
    } else {
        Err(KernelError::ContextMismatch(format!(
            "left contexts differ: `{}` vs `{}`",
            show(&a.antecedent),
            show(&b.antecedent)
        )))
    }
}

fn compose(a: Option<Degree>, b: Option<Degree>) -> Result<Option<Degree>, KernelError> {
    Degree::compose(a, b).ok_or_else(|| {
        KernelError::DegreeMismatch("cannot scale a symbolic degree by another degree".into())
    })
}

fn literal(f: &Formula) -> Option<&Atom> {
    f.as_atom()
}

fn literal_pair(s: &Sequent, what: &str) -> Result<(Atom, Atom), KernelError> {
    match s.consequent.as_slice() {
        [x, y] => match (literal(x), literal(y)) {
            (Some(x), Some(y)) if x.name != y.name => Ok((x.clone(), y.clone())),
            _ => Err(KernelError::SchemaMismatch(format!(
                "{what} must assert two literals on distinct atoms"
            ))),
        },
        list if list.len() > 2 => Err(KernelError::VisibilityViolation(format!(
            "{what} `{s}` carries an active context on the right"
        ))),
        _ => Err(KernelError::SchemaMismatch(format!(
            "{what} must assert exactly two literals"
        ))),
    }
}

/// Identity sequents `G |- G` and the &-reflection axioms `Q_X |- X`,
/// `Q_X |- X^`.
pub fn check_axiom(concl: &Sequent) -> Check {
    if concl.degree.is_some() {
        return Err(KernelError::SchemaMismatch("axioms carry no degree".into()));
    }
    if !concl.antecedent.is_empty() && lists_equiv(&concl.antecedent, &concl.consequent) {
        return Ok(());
    }
    if let ([q], [l]) = (concl.antecedent.as_slice(), concl.consequent.as_slice()) {
        if let (Some(name), Some(lit)) = (q.as_qubit_name(), literal(l)) {
            if name == lit.name {
                return Ok(());
            }
        }
    }
    Err(KernelError::SchemaMismatch(format!(
        "`{concl}` is neither an identity nor a reflection axiom"
    )))
}

/// Cut.
///
/// The left premise concludes the cut formula somewhere in its consequent;
/// the right premise uses it as its last hypothesis. The right premise's
/// consequent replaces the cut formula in place, so the other formulas of the
/// left consequent (the rest of the computational state) pass through.
/// In basic mode the right premise may not have further hypotheses.
///
/// The one exception is the joint measurement of two qubits `Q_X, Q_Y |- L`
/// where `Q_X` is a party of an entangled pair and `Q_Y` stands beside it:
/// the measured literal of `Y` takes `Q_X`'s place in the pair and `Q_Y`
/// is consumed. This is admitted in both modes.
pub fn check_cut(
    left: &Sequent,
    right: &Sequent,
    concl: &Sequent,
    mode: LogicMode,
    cut_formula: Option<&Formula>,
) -> Check {
    let Some(active) = right.antecedent.last() else {
        return Err(KernelError::CutFormulaMismatch(format!(
            "right premise `{right}` has no hypothesis to cut"
        )));
    };
    if right.antecedent.len() == 2 && cut_formula.is_none() {
        if let Some(expected) = joint_cut(left, right)? {
            return expect(concl, &expected);
        }
    }
    if let Some(given) = cut_formula {
        if !crate::syntax::equivalent(given, active) {
            return Err(KernelError::CutFormulaMismatch(format!(
                "declared cut formula `{given}` is not the hypothesis `{active}`"
            )));
        }
    }
    let Some(pos) = left
        .consequent
        .iter()
        .position(|f| crate::syntax::equivalent(f, active))
    else {
        return Err(KernelError::CutFormulaMismatch(format!(
            "`{active}` is not concluded by the left premise `{left}`"
        )));
    };
    let context = &right.antecedent[..right.antecedent.len() - 1];
    if !context.is_empty() && mode == LogicMode::Basic {
        return Err(KernelError::VisibilityViolation(format!(
            "active context `{}` beside the cut formula `{active}`",
            show(context)
        )));
    }
    let mut consequent = left.consequent[..pos].to_vec();
    consequent.extend(right.consequent.iter().cloned());
    consequent.extend(left.consequent[pos + 1..].iter().cloned());
    let mut antecedent = left.antecedent.clone();
    antecedent.extend(context.iter().cloned());
    let expected = Sequent {
        antecedent,
        consequent,
        degree: compose(left.degree, right.degree)?,
    };
    expect(concl, &expected)
}

fn joint_cut(left: &Sequent, right: &Sequent) -> Result<Option<Sequent>, KernelError> {
    let [lit] = right.consequent.as_slice() else {
        return Ok(None);
    };
    let Some(lit) = literal(lit) else {
        return Ok(None);
    };
    let names: Vec<&str> = match right
        .antecedent
        .iter()
        .map(|f| f.as_qubit_name())
        .collect::<Option<Vec<_>>>()
    {
        Some(n) => n,
        None => return Ok(None),
    };
    let Some(measured_idx) = names.iter().position(|n| *n == lit.name) else {
        return Ok(None);
    };
    let measured = names[measured_idx];
    let party = names[1 - measured_idx];
    let Some(standalone) = left
        .consequent
        .iter()
        .position(|f| f.as_qubit_name() == Some(measured))
    else {
        return Ok(None);
    };
    let pair = left
        .consequent
        .iter()
        .enumerate()
        .find_map(|(i, f)| match f {
            Formula::Ent {
                left: l,
                right: r,
                convention,
            } => {
                if l.as_qubit_name() == Some(party) {
                    Some((
                        i,
                        Formula::ent_with(Formula::lit(lit.clone()), (**r).clone(), *convention),
                    ))
                } else if r.as_qubit_name() == Some(party) {
                    Some((
                        i,
                        Formula::ent_with((**l).clone(), Formula::lit(lit.clone()), *convention),
                    ))
                } else {
                    None
                }
            }
            _ => None,
        });
    let Some((pair_idx, collapsed)) = pair else {
        return Ok(None);
    };
    let consequent = left
        .consequent
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != standalone)
        .map(|(i, f)| {
            if i == pair_idx {
                collapsed.clone()
            } else {
                f.clone()
            }
        })
        .collect();
    Ok(Some(Sequent {
        antecedent: left.antecedent.clone(),
        consequent,
        degree: compose(left.degree, right.degree)?,
    }))
}

/// &-formation and &-reflection on the left.
pub fn check_and(rule: RuleTag, premises: &[&Sequent], concl: &Sequent, mode: LogicMode) -> Check {
    match rule {
        RuleTag::AndForm => and_form(premises[0], premises[1], concl),
        RuleTag::AndRefl => and_refl(premises, concl, mode),
        other => Err(KernelError::SchemaMismatch(format!(
            "{other} is not an & rule"
        ))),
    }
}

fn and_form(p1: &Sequent, p2: &Sequent, concl: &Sequent) -> Check {
    same_antecedent(p1, p2)?;
    let (x, y) = match (p1.consequent.as_slice(), p2.consequent.as_slice()) {
        ([x], [y]) => (x, y),
        (a, b) if a.len() > 1 || b.len() > 1 => {
            return Err(KernelError::VisibilityViolation(
                "&-formation with an active right context".into(),
            ))
        }
        _ => {
            return Err(KernelError::SchemaMismatch(
                "&-formation needs one formula per premise".into(),
            ))
        }
    };
    let joined = match (p1.degree, p2.degree) {
        (Some(a), Some(b)) => Formula::and_deg(x.clone(), a, b, y.clone()),
        (None, None) => Formula::and(x.clone(), y.clone()),
        _ => {
            return Err(KernelError::DegreeMismatch(
                "either both premises carry an assertion degree or neither does".into(),
            ))
        }
    };
    let expected = Sequent::new(p1.antecedent.clone(), vec![joined]);
    if concl.equivalent_to(&expected) {
        return Ok(());
    }
    if let [Formula::And {
        left,
        right,
        degrees: Some(_),
    }] = concl.consequent.as_slice()
    {
        if crate::syntax::equivalent(left, x) && crate::syntax::equivalent(right, y) {
            return Err(KernelError::DegreeMismatch(format!(
                "degrees must be copied from the premises: expected `{expected}`, found `{concl}`"
            )));
        }
    }
    expect(concl, &expected)
}

fn and_refl(premises: &[&Sequent], concl: &Sequent, mode: LogicMode) -> Check {
    let split = |s: &Sequent| -> Result<(Vec<Formula>, Formula), KernelError> {
        let Some((last, ctx)) = s.antecedent.split_last() else {
            return Err(KernelError::SchemaMismatch(format!(
                "`{s}` has no hypothesis to reflect"
            )));
        };
        if !ctx.is_empty() && mode == LogicMode::Basic {
            return Err(KernelError::VisibilityViolation(format!(
                "active context `{}` on the left",
                show(ctx)
            )));
        }
        Ok((ctx.to_vec(), last.clone()))
    };
    let Some((reflected, ctx)) = concl.antecedent.split_last() else {
        return Err(KernelError::SchemaMismatch(
            "conclusion has no conjunction on the left".into(),
        ));
    };
    match premises {
        [p] => {
            let (pctx, x) = split(p)?;
            let Some(lit) = literal(&x) else {
                return Err(KernelError::SchemaMismatch(format!(
                    "`{x}` is not a literal"
                )));
            };
            if reflected.as_qubit_name() != Some(lit.name.as_str()) {
                return Err(KernelError::SchemaMismatch(format!(
                    "`{reflected}` is not the superposition of `{}` with its negation",
                    lit.name
                )));
            }
            if !lists_equiv(&pctx, ctx) || !lists_equiv(&p.consequent, &concl.consequent) {
                return Err(KernelError::ContextMismatch(format!(
                    "`{p}` and `{concl}` differ outside the reflected formula"
                )));
            }
            if !degree_eq(p.degree, concl.degree) {
                return Err(KernelError::DegreeMismatch(
                    "reflection keeps the assertion degree".into(),
                ));
            }
            Ok(())
        }
        [p1, p2] => {
            let (c1, x) = split(p1)?;
            let (c2, y) = split(p2)?;
            if !lists_equiv(&c1, &c2) || !lists_equiv(&p1.consequent, &p2.consequent) {
                return Err(KernelError::ContextMismatch(
                    "premises must share their context and consequent".into(),
                ));
            }
            let mut antecedent = c1;
            antecedent.push(Formula::and(x, y));
            let expected = Sequent {
                antecedent,
                consequent: p1.consequent.clone(),
                degree: p1.degree,
            };
            expect(concl, &expected)
        }
        _ => unreachable!("arity checked by caller"),
    }
}

fn degree_eq(a: Option<Degree>, b: Option<Degree>) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => x.approx_eq(&y),
        (Some(d), None) | (None, Some(d)) => d.is_one(),
    }
}

/// Comma to par on the right: two adjacent formulas become `X # Y`.
pub fn check_par_form(premise: &Sequent, concl: &Sequent) -> Check {
    let n = premise.consequent.len();
    for i in 0..n.saturating_sub(1) {
        let mut consequent = premise.consequent[..i].to_vec();
        consequent.push(Formula::par(
            premise.consequent[i].clone(),
            premise.consequent[i + 1].clone(),
        ));
        consequent.extend(premise.consequent[i + 2..].iter().cloned());
        let expected = Sequent {
            antecedent: premise.antecedent.clone(),
            consequent,
            degree: premise.degree,
        };
        if concl.equivalent_to(&expected) {
            return Ok(());
        }
    }
    Err(KernelError::SchemaMismatch(format!(
        "`{concl}` is not a #-formation of `{premise}`"
    )))
}

/// @-formation, its two reflections and its axioms.
pub fn check_at(
    rule: RuleTag,
    premises: &[&Sequent],
    concl: &Sequent,
    _mode: LogicMode,
    convention: Option<Convention>,
) -> Check {
    match rule {
        RuleTag::AtForm => {
            let expected = at_form_conclusion(premises[0], premises[1], convention)?;
            expect(concl, &expected)
        }
        RuleTag::AtImplRefl => match premises {
            [p] => at_impl_refl_full(p, concl),
            [p, m] => {
                let expected = at_impl_refl_partial(p, m)?;
                expect(concl, &expected)
            }
            _ => unreachable!("arity checked by caller"),
        },
        RuleTag::AtExplRefl => at_expl_refl(premises[0], premises[1], concl),
        RuleTag::AtAxiom => at_axiom(concl),
        other => Err(KernelError::SchemaMismatch(format!(
            "{other} is not an @ rule"
        ))),
    }
}

/// Conclusion of @-formation from two complementary literal pairs. Both the
/// equal-polarity pairing (`X, Y` with `X^, Y^`) and the opposite pairing
/// (`X^, Y` with `X, Y^`) are accepted; the resulting formula records which.
fn at_form_conclusion(
    p1: &Sequent,
    p2: &Sequent,
    wanted: Option<Convention>,
) -> Result<Sequent, KernelError> {
    same_antecedent(p1, p2)?;
    let (x1, y1) = literal_pair(p1, "@-formation premise")?;
    let (x2, y2) = literal_pair(p2, "@-formation premise")?;
    if x1.name != x2.name
        || y1.name != y2.name
        || x1.negated == x2.negated
        || y1.negated == y2.negated
    {
        return Err(KernelError::SchemaMismatch(format!(
            "`{p1}` and `{p2}` are not complementary pairs"
        )));
    }
    let convention = if x1.negated == y1.negated {
        Convention::Phi
    } else {
        Convention::Psi
    };
    if let Some(w) = wanted {
        if w != convention {
            return Err(KernelError::SchemaMismatch(format!(
                "premises fire the {convention:?} convention, {w:?} was requested"
            )));
        }
    }
    let first = match (p1.degree, p2.degree) {
        (None, None) => Formula::qubit(&x1.name),
        (Some(d1), Some(d2)) => {
            let (d0, d1) = if x1.negated { (d1, d2) } else { (d2, d1) };
            Formula::Qubit(QubitRef {
                name: x1.name.clone(),
                degrees: Some((d0, d1)),
            })
        }
        _ => {
            return Err(KernelError::DegreeMismatch(
                "either both premises carry an assertion degree or neither does".into(),
            ))
        }
    };
    Ok(Sequent::new(
        p1.antecedent.clone(),
        vec![Formula::ent_with(
            first,
            Formula::qubit(&y1.name),
            convention,
        )],
    ))
}

/// Locate the first entangled pair of two qubits in a consequent.
fn find_pair(s: &Sequent) -> Option<(usize, &Formula, &Formula, Convention)> {
    s.consequent.iter().enumerate().find_map(|(i, f)| match f {
        Formula::Ent {
            left,
            right,
            convention,
        } if left.as_qubit_name().is_some() && right.as_qubit_name().is_some() => {
            Some((i, left.as_ref(), right.as_ref(), *convention))
        }
        _ => None,
    })
}

fn replace_at(list: &[Formula], idx: usize, with: Vec<Formula>) -> Vec<Formula> {
    let mut out = list[..idx].to_vec();
    out.extend(with);
    out.extend(list[idx + 1..].iter().cloned());
    out
}

fn at_impl_refl_full(p: &Sequent, concl: &Sequent) -> Check {
    let Some((idx, l, r, conv)) = find_pair(p) else {
        return Err(KernelError::SchemaMismatch(format!(
            "`{p}` asserts no entangled pair"
        )));
    };
    let (xn, yn) = (l.as_qubit_name().unwrap(), r.as_qubit_name().unwrap());
    for negated in [false, true] {
        let x = Atom {
            name: xn.to_string(),
            negated,
        };
        let y = conv.partner(&x, yn);
        let expected = Sequent {
            antecedent: p.antecedent.clone(),
            consequent: replace_at(&p.consequent, idx, vec![Formula::lit(x), Formula::lit(y)]),
            degree: p.degree,
        };
        if concl.equivalent_to(&expected) {
            return Ok(());
        }
    }
    Err(KernelError::SchemaMismatch(format!(
        "`{concl}` is not an implicit reflection of `{p}`"
    )))
}

/// `G |- Q_X @ Q_Y` with the measurement `Q_X |- L` gives `G |- L @ Q_Y`.
fn at_impl_refl_partial(p: &Sequent, m: &Sequent) -> Result<Sequent, KernelError> {
    let Some((idx, l, r, conv)) = find_pair(p) else {
        return Err(KernelError::SchemaMismatch(format!(
            "`{p}` asserts no entangled pair"
        )));
    };
    let (name, lit) = match (m.antecedent.as_slice(), m.consequent.as_slice()) {
        ([q], [l]) => match (q.as_qubit_name(), literal(l)) {
            (Some(n), Some(lit)) if n == lit.name => (n, lit.clone()),
            _ => {
                return Err(KernelError::SchemaMismatch(format!(
                    "`{m}` is not a measurement of one qubit"
                )))
            }
        },
        (ant, _) if ant.len() > 1 => {
            return Err(KernelError::VisibilityViolation(format!(
                "measurement `{m}` has an active context"
            )))
        }
        _ => {
            return Err(KernelError::SchemaMismatch(format!(
                "`{m}` is not a measurement of one qubit"
            )))
        }
    };
    let collapsed = if l.as_qubit_name() == Some(name) {
        Formula::ent_with(Formula::lit(lit), r.clone(), conv)
    } else if r.as_qubit_name() == Some(name) {
        Formula::ent_with(l.clone(), Formula::lit(lit), conv)
    } else {
        return Err(KernelError::SchemaMismatch(format!(
            "`{m}` measures no party of `{}`",
            p.consequent[idx]
        )));
    };
    Ok(Sequent {
        antecedent: p.antecedent.clone(),
        consequent: replace_at(&p.consequent, idx, vec![collapsed]),
        degree: compose(p.degree, m.degree)?,
    })
}

fn at_expl_refl(p1: &Sequent, p2: &Sequent, concl: &Sequent) -> Check {
    let single = |s: &Sequent| -> Result<Atom, KernelError> {
        match s.antecedent.as_slice() {
            [f] => literal(f)
                .cloned()
                .ok_or_else(|| KernelError::SchemaMismatch(format!("`{f}` is not a literal"))),
            _ => Err(KernelError::VisibilityViolation(format!(
                "`{s}` must have exactly one hypothesis"
            ))),
        }
    };
    let (x, y) = (single(p1)?, single(p2)?);
    if x.name == y.name {
        return Err(KernelError::SchemaMismatch(
            "explicit reflection needs two distinct qubits".into(),
        ));
    }
    let convention = if x.negated == y.negated {
        Convention::Phi
    } else {
        Convention::Psi
    };
    let mut consequent = p1.consequent.clone();
    consequent.extend(p2.consequent.iter().cloned());
    let expected = Sequent::new(
        vec![Formula::ent_with(
            Formula::qubit(&x.name),
            Formula::qubit(&y.name),
            convention,
        )],
        consequent,
    );
    expect(concl, &expected)
}

fn at_axiom(concl: &Sequent) -> Check {
    let fail = || KernelError::SchemaMismatch(format!("`{concl}` is not an @-axiom"));
    let [Formula::Ent {
        left,
        right,
        convention,
    }] = concl.antecedent.as_slice()
    else {
        return Err(fail());
    };
    let (Some(xn), Some(yn)) = (left.as_qubit_name(), right.as_qubit_name()) else {
        return Err(fail());
    };
    let (x, y) = literal_pair(
        &Sequent::assert(concl.consequent.clone()),
        "@-axiom consequent",
    )?;
    if x.name == xn && y.name == yn && convention.partner(&x, yn) == y && concl.degree.is_none() {
        Ok(())
    } else {
        Err(fail())
    }
}

/// Semi-distributivity and the split of a qubit by its reflection axioms.
pub fn check_rewrite(rule: RuleTag, premises: &[&Sequent], concl: &Sequent) -> Check {
    match rule {
        RuleTag::SemiDistrib => {
            let expected = semi_distrib(premises[0])?;
            expect(concl, &expected)
        }
        RuleTag::QSplit => qsplit(premises[0], premises[1], premises[2], concl),
        other => Err(KernelError::SchemaMismatch(format!(
            "{other} is not a rewrite"
        ))),
    }
}

/// `G |- L @ Q_Y` (one party already collapsed) rewrites to `G |- L, L'`,
/// the partner literal chosen by the pair's convention.
fn semi_distrib(p: &Sequent) -> Result<Sequent, KernelError> {
    for (i, f) in p.consequent.iter().enumerate() {
        if let Formula::Ent {
            left,
            right,
            convention,
        } = f
        {
            let pair = match (
                literal(left),
                literal(right),
                left.as_qubit_name(),
                right.as_qubit_name(),
            ) {
                (Some(x), None, _, Some(yn)) => Some((x.clone(), convention.partner(x, yn))),
                (None, Some(y), Some(xn), _) => Some((convention.partner(y, xn), y.clone())),
                _ => None,
            };
            if let Some((a, b)) = pair {
                return Ok(Sequent {
                    antecedent: p.antecedent.clone(),
                    consequent: replace_at(
                        &p.consequent,
                        i,
                        vec![Formula::lit(a), Formula::lit(b)],
                    ),
                    degree: p.degree,
                });
            }
        }
    }
    Err(KernelError::SchemaMismatch(format!(
        "`{p}` has no entangled pair with exactly one collapsed party"
    )))
}

fn qsplit(state: &Sequent, m1: &Sequent, m2: &Sequent, concl: &Sequent) -> Check {
    let axiom = |m: &Sequent| -> Result<(String, Atom), KernelError> {
        if let ([q], [l]) = (m.antecedent.as_slice(), m.consequent.as_slice()) {
            if let (Some(n), Some(lit)) = (q.as_qubit_name(), literal(l)) {
                if n == lit.name && m.degree.is_none() {
                    return Ok((n.to_string(), lit.clone()));
                }
            }
        }
        Err(KernelError::SchemaMismatch(format!(
            "`{m}` is not a reflection axiom"
        )))
    };
    let (n1, l1) = axiom(m1)?;
    let (n2, l2) = axiom(m2)?;
    if n1 != n2 || l1.negated == l2.negated {
        return Err(KernelError::SchemaMismatch(format!(
            "`{m1}` and `{m2}` are not the two reflections of one qubit"
        )));
    }
    let Some(idx) = state
        .consequent
        .iter()
        .position(|f| matches!(f, Formula::Qubit(q) if q.name == n1))
    else {
        return Err(KernelError::SchemaMismatch(format!(
            "`{state}` does not assert Q_{n1}"
        )));
    };
    for lit in [l1, l2] {
        let expected = Sequent {
            antecedent: state.antecedent.clone(),
            consequent: replace_at(&state.consequent, idx, vec![Formula::lit(lit)]),
            degree: state.degree,
        };
        if concl.equivalent_to(&expected) {
            return Ok(());
        }
    }
    Err(KernelError::SchemaMismatch(format!(
        "`{concl}` is not a branch of `{state}`"
    )))
}

/// Hadamard, its inverse, and CNOT.
pub fn check_structural(
    rule: RuleTag,
    premise: &Sequent,
    concl: &Sequent,
    clause: Option<CnotClause>,
) -> Check {
    match rule {
        RuleTag::HRule => hadamard(premise, concl),
        RuleTag::HInverse => hadamard(concl, premise),
        RuleTag::CnotRule => cnot(premise, concl, clause),
        other => Err(KernelError::SchemaMismatch(format!(
            "{other} is not a structural rule"
        ))),
    }
}

/// `|- X^` becomes `|- X^ (1/sqrt2)&(1/sqrt2) X`; `|- X` becomes the
/// antisymmetric superposition.
fn hadamard(bit: &Sequent, cat: &Sequent) -> Check {
    let [b] = bit.consequent.as_slice() else {
        return Err(KernelError::SchemaMismatch(format!(
            "`{bit}` must assert a single bit"
        )));
    };
    let Some(lit) = literal(b) else {
        return Err(KernelError::SchemaMismatch(format!("`{b}` is not a bit")));
    };
    if !lists_equiv(&bit.antecedent, &cat.antecedent) || !degree_eq(bit.degree, cat.degree) {
        return Err(KernelError::SchemaMismatch(format!(
            "`{bit}` and `{cat}` differ outside the qubit"
        )));
    }
    let [Formula::And {
        left,
        right,
        degrees,
    }] = cat.consequent.as_slice()
    else {
        return Err(KernelError::SchemaMismatch(format!(
            "`{cat}` must assert one superposition"
        )));
    };
    let zero = Atom::neg(lit.name.clone());
    let one = Atom::pos(lit.name.clone());
    if literal(left) != Some(&zero) || literal(right) != Some(&one) {
        return Err(KernelError::SchemaMismatch(format!(
            "`{cat}` must superpose {zero} and {one} in that order"
        )));
    }
    let want = if lit.negated {
        Degree::inv_sqrt2()
    } else {
        Degree::neg_inv_sqrt2()
    };
    match degrees {
        Some((a, b)) if a.approx_eq(&Degree::inv_sqrt2()) && b.approx_eq(&want) => Ok(()),
        _ => Err(KernelError::WrongDegrees(format!(
            "expected degrees (1/sqrt2, {want}) in `{cat}`"
        ))),
    }
}

/// Control is the first formula, target the second; a true control flips the
/// target, a false one leaves it.
fn cnot(premise: &Sequent, concl: &Sequent, clause: Option<CnotClause>) -> Check {
    let (control, target) = literal_pair(premise, "CNOT premise")?;
    let fired = CnotClause::of(control.negated, target.negated);
    if let Some(c) = clause {
        if c != fired {
            return Err(KernelError::SchemaMismatch(format!(
                "premise `{premise}` matches clause {}, not {}",
                fired.name(),
                c.name()
            )));
        }
    }
    let new_target = if control.negated {
        target
    } else {
        target.flipped()
    };
    let expected = Sequent {
        antecedent: premise.antecedent.clone(),
        consequent: vec![Formula::lit(control), Formula::lit(new_target)],
        degree: premise.degree,
    };
    expect(concl, &expected)
        .map_err(|e| KernelError::SchemaMismatch(format!("CNOT clause {}: {e}", fired.name())))
}

/// Negation formation moves a run of literals from the end of the
/// antecedent to the front of the consequent, negating each; reflection is
/// the converse. With `carry`, formation also carries the remaining
/// antecedent across the turnstile unchanged.
pub fn check_neg(rule: RuleTag, premise: &Sequent, concl: &Sequent, carry: bool) -> Check {
    let negated = |fs: &[Formula]| -> Option<Vec<Formula>> {
        fs.iter()
            .map(|f| literal(f).map(|a| Formula::lit(a.flipped())))
            .collect()
    };
    let mut candidates = Vec::new();
    match rule {
        RuleTag::NegForm => {
            let ant = &premise.antecedent;
            for k in 1..=ant.len() {
                let (ctx, moved) = ant.split_at(ant.len() - k);
                let Some(moved) = negated(moved) else { break };
                let mut consequent = if carry { ctx.to_vec() } else { Vec::new() };
                consequent.extend(moved);
                consequent.extend(premise.consequent.iter().cloned());
                let antecedent = if carry { Vec::new() } else { ctx.to_vec() };
                candidates.push(Sequent {
                    antecedent,
                    consequent,
                    degree: premise.degree,
                });
            }
        }
        RuleTag::NegRefl => {
            if carry {
                return Err(KernelError::SchemaMismatch(
                    "negation reflection takes no carry".into(),
                ));
            }
            let cons = &premise.consequent;
            for k in 1..=cons.len() {
                let (moved, rest) = cons.split_at(k);
                let Some(moved) = negated(moved) else { break };
                let mut antecedent = premise.antecedent.clone();
                antecedent.extend(moved);
                candidates.push(Sequent {
                    antecedent,
                    consequent: rest.to_vec(),
                    degree: premise.degree,
                });
            }
        }
        other => {
            return Err(KernelError::SchemaMismatch(format!(
                "{other} is not a negation rule"
            )))
        }
    }
    if candidates.is_empty() {
        return Err(KernelError::SchemaMismatch(format!(
            "`{premise}` has no literal to move"
        )));
    }
    if candidates.iter().any(|c| concl.equivalent_to(c)) {
        Ok(())
    } else {
        Err(KernelError::SchemaMismatch(format!(
            "`{concl}` does not follow from `{premise}` by {rule}"
        )))
    }
}

/// Intermediate sequents of the EPR macro: implicit reflection against the
/// measurement, semi-distributivity, then #-formation.
pub fn epr_expansion(premises: &[&Sequent]) -> Result<(Sequent, Sequent), KernelError> {
    let [state, measurement] = premises else {
        return Err(KernelError::BranchFailure("EPR takes two premises".into()));
    };
    let collapsed = at_impl_refl_partial(state, measurement)?;
    let pair = semi_distrib(&collapsed)?;
    Ok((collapsed, pair))
}

/// EPR, checked by expanding it into its three sub-steps.
pub fn check_epr(premises: &[&Sequent], concl: &Sequent, mode: LogicMode) -> Check {
    let (collapsed, pair) = epr_expansion(premises)?;
    check_at(RuleTag::AtImplRefl, premises, &collapsed, mode, None)?;
    check_rewrite(RuleTag::SemiDistrib, &[&collapsed], &pair)?;
    check_par_form(&pair, concl)
}

/// Join two branch conclusions.
///
/// With `At`, the branches are the two premises of @-formation. With `And`,
/// the branches are superposed: either whole single-formula assertions are
/// conjoined and normalized, or two assertions that differ in one position
/// are conjoined at that position. Two entangled pairs over the same qubits
/// with complementary conventions join to the separable pair `Q_X, Q_Y`.
pub fn check_join(
    join: JoinConnective,
    b1: &Sequent,
    b2: &Sequent,
    concl: &Sequent,
    _mode: LogicMode,
) -> Check {
    match join {
        JoinConnective::At => {
            let expected = at_form_conclusion(b1, b2, None)
                .map_err(|e| KernelError::JoinMismatch(e.to_string()))?;
            if concl.equivalent_to(&expected) {
                Ok(())
            } else {
                Err(KernelError::JoinMismatch(format!(
                    "expected `{expected}`, found `{concl}`"
                )))
            }
        }
        JoinConnective::And => {
            same_antecedent(b1, b2).map_err(|e| KernelError::JoinMismatch(e.to_string()))?;
            let candidates = and_join_candidates(b1, b2)?;
            if candidates.iter().any(|c| concl.equivalent_to(c)) {
                Ok(())
            } else {
                let shown = candidates
                    .iter()
                    .map(|c| format!("`{c}`"))
                    .collect::<Vec<_>>()
                    .join(" or ");
                Err(KernelError::JoinMismatch(format!(
                    "expected {shown}, found `{concl}`"
                )))
            }
        }
    }
}

fn and_join_candidates(b1: &Sequent, b2: &Sequent) -> Result<Vec<Sequent>, KernelError> {
    let ant = b1.antecedent.clone();
    let mut out = Vec::new();
    match (b1.consequent.as_slice(), b2.consequent.as_slice()) {
        ([x], [y]) => {
            let joined = match (b1.degree, b2.degree) {
                (Some(a), Some(b)) => Formula::and_deg(x.clone(), a, b, y.clone()),
                (None, None) => Formula::and(x.clone(), y.clone()),
                _ => {
                    return Err(KernelError::JoinMismatch(
                        "either both branches carry an assertion degree or neither does".into(),
                    ))
                }
            };
            out.push(Sequent::new(ant.clone(), vec![normalize(&joined)]));
            if let Some(pair) = complementary_pairs(x, y) {
                out.push(Sequent::new(ant, pair));
            }
        }
        (xs, ys) if xs.len() == ys.len() && !xs.is_empty() => {
            if !degree_eq(b1.degree, b2.degree) {
                return Err(KernelError::JoinMismatch(
                    "branches carry different assertion degrees".into(),
                ));
            }
            let differing: Vec<usize> = (0..xs.len())
                .filter(|&i| !xs[i].approx_eq(&ys[i]))
                .collect();
            match differing.as_slice() {
                [] => out.push(b1.clone()),
                [i] => {
                    let joined = normalize(&Formula::and(xs[*i].clone(), ys[*i].clone()));
                    out.push(Sequent {
                        antecedent: ant,
                        consequent: replace_at(xs, *i, vec![joined]),
                        degree: b1.degree,
                    });
                }
                _ => {
                    return Err(KernelError::JoinMismatch(format!(
                        "branches `{b1}` and `{b2}` differ in more than one position"
                    )))
                }
            }
        }
        _ => {
            return Err(KernelError::JoinMismatch(format!(
                "branches `{b1}` and `{b2}` have different shapes"
            )))
        }
    }
    Ok(out)
}

fn complementary_pairs(x: &Formula, y: &Formula) -> Option<Vec<Formula>> {
    let (
        Formula::Ent {
            left: l1,
            right: r1,
            convention: c1,
        },
        Formula::Ent {
            left: l2,
            right: r2,
            convention: c2,
        },
    ) = (x, y)
    else {
        return None;
    };
    if c1 == c2 {
        return None;
    }
    let plain = |f: &Formula| match f {
        Formula::Qubit(QubitRef {
            name,
            degrees: None,
        }) => Some(name.clone()),
        _ => None,
    };
    let (a1, b1, a2, b2) = (plain(l1)?, plain(r1)?, plain(l2)?, plain(r2)?);
    let same = (a1 == a2 && b1 == b2) || (a1 == b2 && b1 == a2);
    same.then(|| vec![Formula::qubit(&a1), Formula::qubit(&b1)])
}

/// Check a parallel composition of two whole branches: each branch must
/// check on its own, then the join must produce `conclusion`.
pub fn check_parallel(
    branch_left: &Derivation,
    branch_right: &Derivation,
    join: JoinConnective,
    conclusion: &Sequent,
    mode: LogicMode,
) -> Check {
    for (side, branch) in [("left", branch_left), ("right", branch_right)] {
        let report = check_derivation(branch, mode);
        if let Some(bad) = report.first_failure() {
            return Err(KernelError::BranchFailure(format!(
                "{side} branch fails at {}: {}",
                bad.path,
                bad.verdict.as_ref().unwrap_err()
            )));
        }
    }
    check_join(
        join,
        &branch_left.conclusion,
        &branch_right.conclusion,
        conclusion,
        mode,
    )
}
