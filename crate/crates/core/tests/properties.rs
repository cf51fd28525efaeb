mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use qseq::corpus;
use qseq::kernel::{
    check_cut, check_derivation, check_epr, check_parallel, check_step, epr_expansion, Derivation,
    JoinConnective, KernelError, LogicMode,
};
use qseq::script::{parse_script, parse_sequent};
use qseq::semantics::{apply, denote_assertion, residual, Operator, QState};
use qseq::syntax::{equivalent, normalize, Bindings, Convention, Formula, Sequent};

use common::{atom_name, degree, formula};

const WIRES: [&str; 3] = ["A", "B", "C"];

fn literal() -> impl Strategy<Value = Formula> {
    (atom_name(), any::<bool>()).prop_map(|(n, neg)| {
        if neg {
            Formula::neg_atom(&n)
        } else {
            Formula::atom(&n)
        }
    })
}

fn amplitude() -> impl Strategy<Value = Complex64> {
    ((-1.0f64..1.0), (-1.0f64..1.0)).prop_map(|(re, im)| Complex64::new(re, im))
}

/// A normalized three-wire state on (A, B, C).
fn state() -> impl Strategy<Value = QState> {
    prop::collection::vec(amplitude(), 8)
        .prop_filter("non-zero", |v| {
            v.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-3
        })
        .prop_map(|amps| {
            let wires = WIRES.iter().map(|w| w.to_string()).collect();
            QState::new(wires, amps).unwrap().normalized().unwrap()
        })
}

fn wire() -> impl Strategy<Value = &'static str> {
    prop::sample::select(WIRES.to_vec())
}

fn wire_pair() -> impl Strategy<Value = (&'static str, &'static str)> {
    (wire(), wire()).prop_filter("distinct", |(a, b)| a != b)
}

fn dist(a: &QState, b: &QState) -> f64 {
    let order: Vec<String> = a.wires.clone();
    let b = b.permuted(&order).unwrap();
    a.vector()
        .iter()
        .zip(b.vector())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn corpus_trees() -> Vec<Derivation> {
    corpus::bundled()
        .iter()
        .flat_map(|e| {
            parse_script(&e.source)
                .unwrap()
                .theorems
                .into_iter()
                .map(|t| t.tree)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normalize_is_idempotent(f in formula()) {
        let once = normalize(&f);
        prop_assert_eq!(normalize(&once), once);
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(f in formula(), g in formula()) {
        prop_assert!(equivalent(&f, &f));
        prop_assert!(equivalent(&f, &normalize(&f)));
        prop_assert_eq!(equivalent(&f, &g), equivalent(&g, &f));
    }

    #[test]
    fn equivalence_is_transitive(f in formula(), g in formula(), h in formula()) {
        for (x, y, z) in [(&f, &g, &h), (&f, &normalize(&f), &h), (&f, &normalize(&f), &normalize(&normalize(&f)))] {
            if equivalent(x, y) && equivalent(y, z) {
                prop_assert!(equivalent(x, z));
            }
        }
    }

    #[test]
    fn basic_pass_implies_intuitionistic_pass(tree in common::derivation()) {
        let basic = check_derivation(&tree, LogicMode::Basic);
        let intu = check_derivation(&tree, LogicMode::IntuitionisticLeft);
        for (b, i) in basic.nodes.iter().zip(&intu.nodes) {
            if b.verdict.is_ok() {
                prop_assert!(i.verdict.is_ok(), "{} passes in basic mode only: {:?}", b.path, i.verdict);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn cut_modes_differ_only_on_left_context(
        gamma_l in prop::collection::vec(literal(), 0..2),
        before in prop::collection::vec(formula(), 0..2),
        cut in formula(),
        after in prop::collection::vec(formula(), 0..2),
        gamma_r in prop::collection::vec(literal(), 0..3),
        out in prop::collection::vec(formula(), 0..3),
    ) {
        prop_assume!(!before.iter().any(|f| equivalent(f, &cut)));
        let left = Sequent::new(gamma_l.clone(), [before.clone(), vec![cut.clone()], after.clone()].concat());
        let mut right_ante = gamma_r.clone();
        right_ante.push(cut.clone());
        let right = Sequent::new(right_ante, out.clone());
        let concl = Sequent::new([gamma_l, gamma_r.clone()].concat(), [before, out, after].concat());

        let intu = check_cut(&left, &right, &concl, LogicMode::IntuitionisticLeft, None);
        let basic = check_cut(&left, &right, &concl, LogicMode::Basic, None);
        prop_assert!(intu.is_ok(), "{:?}", intu);
        if gamma_r.is_empty() {
            prop_assert!(basic.is_ok(), "{:?}", basic);
        } else {
            prop_assert!(matches!(basic, Err(KernelError::VisibilityViolation(_))), "{:?}", basic);
        }
    }

    #[test]
    fn cut_basic_never_exceeds_intuitionistic(left in common::sequent(), right in common::sequent(), concl in common::sequent()) {
        let basic = check_cut(&left, &right, &concl, LogicMode::Basic, None);
        let intu = check_cut(&left, &right, &concl, LogicMode::IntuitionisticLeft, None);
        if basic.is_ok() {
            prop_assert!(intu.is_ok());
        }
        if intu.is_ok() && basic.is_err() {
            prop_assert!(matches!(basic, Err(KernelError::VisibilityViolation(_))));
            prop_assert!(right.antecedent.len() > 1);
        }
    }

    #[test]
    fn hadamard_and_cnot_are_unitary(s in state(), w in wire(), (c, t) in wire_pair()) {
        let h = apply(&Operator::h(w), &s).unwrap();
        prop_assert!((h.norm() - 1.0).abs() <= 1e-12);
        let cx = apply(&Operator::cnot(c, t), &s).unwrap();
        prop_assert!((cx.norm() - 1.0).abs() <= 1e-12);
        let back = apply(&Operator::h(w), &h).unwrap();
        prop_assert!(dist(&s, &back) <= 1e-12);
        let back = apply(&Operator::cnot(c, t), &cx).unwrap();
        prop_assert!(dist(&s, &back) == 0.0);
    }

    #[test]
    fn mirrors_are_exact_identities(s in state(), w in wire(), (a, b) in wire_pair()) {
        let mc = apply(&Operator::mc(w), &s).unwrap();
        prop_assert!(dist(&s, &mc) == 0.0);
        let mb = apply(&Operator::mb(a, b), &s).unwrap();
        prop_assert!(dist(&s, &mb) == 0.0);
        let p0 = apply(&Operator::m0(w), &s).unwrap();
        let p1 = apply(&Operator::m1(w), &s).unwrap();
        let total = p0.norm().powi(2) + p1.norm().powi(2);
        prop_assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn entanglement_commutes_semantically(x in degree(), y in degree(), psi in any::<bool>()) {
        let conv = if psi { Convention::Psi } else { Convention::Phi };
        let b = Bindings::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
        let qa = Formula::qubit_with("A", x, y);
        let fwd = Sequent::assert(vec![Formula::ent_with(qa.clone(), Formula::qubit("B"), conv)]);
        let rev = Sequent::assert(vec![Formula::ent_with(Formula::qubit("B"), qa, conv)]);
        match (denote_assertion(&fwd, &b), denote_assertion(&rev, &b)) {
            (Ok(p), Ok(q)) => prop_assert!(residual(&p, &q).unwrap() <= 1e-12),
            (Err(_), Err(_)) => {}
            (p, q) => prop_assert!(false, "only one side denotes: {:?} / {:?}", p, q),
        }
    }

    #[test]
    fn epr_macro_matches_its_expansion(left in literal(), right in literal(), psi in any::<bool>(), lit in literal(), concl in common::sequent()) {
        prop_assume!(left != right);
        let conv = if psi { Convention::Psi } else { Convention::Phi };
        let name = |f: &Formula| f.as_atom().unwrap().name.clone();
        let state = Sequent::assert(vec![Formula::ent_with(Formula::qubit(&name(&left)), Formula::qubit(&name(&right)), conv)]);
        let meas = Sequent::new(vec![Formula::qubit(&name(&left))], vec![lit]);
        let macro_ok = check_epr(&[&state, &meas], &concl, LogicMode::Basic).is_ok();
        let expanded_ok = match epr_expansion(&[&state, &meas]) {
            Ok((_, pair)) => {
                let par = pair.consequent.iter().cloned().reduce(Formula::par).unwrap();
                concl.equivalent_to(&Sequent::assert(vec![par]))
            }
            Err(_) => false,
        };
        prop_assert_eq!(macro_ok, expanded_ok);
    }
}

#[test]
fn epr_macro_agrees_with_written_out_expansion() {
    let src = &corpus::bundled()
        .into_iter()
        .find(|e| e.file == "epr.qsc")
        .unwrap()
        .source;
    let script = parse_script(src).unwrap();
    let short = &script.theorem("epr_one").unwrap().tree;
    let long = &script.theorem("epr_one_expanded").unwrap().tree;
    assert_eq!(short.conclusion, long.conclusion);
    for mode in [LogicMode::Basic, LogicMode::IntuitionisticLeft] {
        assert!(check_derivation(short, mode).ok);
        assert!(check_derivation(long, mode).ok);
    }
    let prem: Vec<&Sequent> = short.premises.iter().map(|p| &p.conclusion).collect();
    let (collapsed, pair) = epr_expansion(&prem).unwrap();
    assert_eq!(collapsed, long.premises[0].premises[0].conclusion);
    assert_eq!(pair, long.premises[0].conclusion);
}

#[test]
fn parallel_join_of_a_branch_with_itself() {
    let mut branches = Vec::new();
    for tree in corpus_trees() {
        tree.walk(|_, n| {
            if check_derivation(n, LogicMode::Basic).ok
                && n.conclusion.is_assertion()
                && !branches.contains(n)
            {
                branches.push(n.clone());
            }
        });
    }
    assert!(branches.len() > 20);
    let other = parse_sequent("|- C").unwrap();
    for b in &branches {
        // A single formula absorbs the branch degrees into the joining `&`,
        // which then collapses; several formulas keep the shared degree.
        let joined = match b.conclusion.consequent.len() {
            1 => Sequent {
                degree: None,
                ..b.conclusion.clone()
            },
            _ => b.conclusion.clone(),
        };
        let ok = check_parallel(b, b, JoinConnective::And, &joined, LogicMode::Basic);
        assert!(ok.is_ok(), "{}: {:?}", b.conclusion, ok);
        let wrong = check_parallel(b, b, JoinConnective::And, &other, LogicMode::Basic);
        assert!(wrong.is_err(), "{} joined into |- C", b.conclusion);
    }
}

#[test]
fn corpus_passes_in_both_modes_node_by_node() {
    for tree in corpus_trees() {
        tree.walk(|path, n| {
            assert!(
                check_step(n, LogicMode::Basic).is_ok(),
                "{path}: {}",
                n.conclusion
            );
            assert!(
                check_step(n, LogicMode::IntuitionisticLeft).is_ok(),
                "{path}: {}",
                n.conclusion
            );
        });
    }
}
