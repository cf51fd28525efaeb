use qseq::corpus;
use qseq::kernel::{check_derivation, Derivation, KernelError, LogicMode, RuleTag};
use qseq::script::parse_script;

fn ent_tree() -> Derivation {
    let e = corpus::bundled()
        .into_iter()
        .find(|e| e.file == "ent.qsc")
        .unwrap();
    parse_script(&e.source)
        .unwrap()
        .theorem("ent")
        .unwrap()
        .tree
        .clone()
}

fn first_cut(tree: &mut Derivation) -> Option<&mut Derivation> {
    if tree.rule == RuleTag::Cut {
        return Some(tree);
    }
    tree.premises.iter_mut().find_map(first_cut)
}

#[test]
fn deleting_a_cut_premise_is_a_branch_failure_at_the_cut() {
    let mut tree = ent_tree();
    let cut = first_cut(&mut tree).unwrap();
    cut.premises.remove(0);
    let cut_step = cut.step;
    let report = check_derivation(&tree, LogicMode::Basic);
    assert!(!report.ok);
    let bad = report.first_failure().unwrap();
    assert_eq!(bad.rule, RuleTag::Cut);
    assert_eq!(bad.step, cut_step);
    assert!(
        matches!(bad.verdict, Err(KernelError::BranchFailure(_))),
        "{:?}",
        bad.verdict
    );
}

#[test]
fn report_lists_every_node_once() {
    let tree = ent_tree();
    let report = check_derivation(&tree, LogicMode::Basic);
    assert!(report.ok);
    assert_eq!(report.nodes.len(), tree.size());
    assert_eq!(
        report.nodes.last().unwrap().conclusion,
        tree.conclusion.to_string()
    );
}
