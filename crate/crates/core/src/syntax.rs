//! Formulas, assertion degrees and sequents.
//!
//! Negation is a flag on atoms, so only literals can be negated and double
//! negation collapses by construction. Sequents expose no operation that
//! duplicates or erases a formula: the formula lists are only ever rebuilt by
//! the rule checkers from premises they were given.

use std::cmp::Ordering;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

/// Tolerance used when two concrete degrees are compared or summed to zero.
pub const DEGREE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("negation is only defined on atoms, got `{0}`")]
    NonAtomicNegation(String),
}

/// A propositional atom, possibly carrying the primitive negation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub name: String,
    pub negated: bool,
}

impl Atom {
    pub fn pos(name: impl Into<String>) -> Self {
        Atom {
            name: name.into(),
            negated: false,
        }
    }

    pub fn neg(name: impl Into<String>) -> Self {
        Atom {
            name: name.into(),
            negated: true,
        }
    }

    pub fn flipped(&self) -> Self {
        Atom {
            name: self.name.clone(),
            negated: !self.negated,
        }
    }

    /// Computational-basis bit the literal stands for: `X^` is 0, `X` is 1.
    pub fn bit(&self) -> usize {
        usize::from(!self.negated)
    }
}

/// The two reserved symbolic amplitudes of an unknown qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Alpha,
    Beta,
}

impl Symbol {
    pub fn name(self) -> &'static str {
        match self {
            Symbol::Alpha => "alpha",
            Symbol::Beta => "beta",
        }
    }
}

/// An assertion degree (probability amplitude).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Degree {
    Value(Complex64),
    Symbol(Symbol),
}

/// Concrete values for the symbolic pair.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Bindings {
    pub alpha: Option<Complex64>,
    pub beta: Option<Complex64>,
}

impl Bindings {
    pub fn new(alpha: Complex64, beta: Complex64) -> Self {
        Bindings {
            alpha: Some(alpha),
            beta: Some(beta),
        }
    }
}

impl Degree {
    pub fn real(x: f64) -> Self {
        Degree::Value(Complex64::new(x, 0.0))
    }

    pub fn inv_sqrt2() -> Self {
        Degree::real(FRAC_1_SQRT_2)
    }

    pub fn neg_inv_sqrt2() -> Self {
        Degree::real(-FRAC_1_SQRT_2)
    }

    pub fn value(&self) -> Option<Complex64> {
        match self {
            Degree::Value(v) => Some(*v),
            Degree::Symbol(_) => None,
        }
    }

    pub fn resolve(&self, bindings: &Bindings) -> Result<Complex64, Symbol> {
        match self {
            Degree::Value(v) => Ok(*v),
            Degree::Symbol(Symbol::Alpha) => bindings.alpha.ok_or(Symbol::Alpha),
            Degree::Symbol(Symbol::Beta) => bindings.beta.ok_or(Symbol::Beta),
        }
    }

    pub fn approx_eq(&self, other: &Degree) -> bool {
        match (self, other) {
            (Degree::Value(a), Degree::Value(b)) => (a - b).norm() < DEGREE_TOL,
            (Degree::Symbol(a), Degree::Symbol(b)) => a == b,
            _ => false,
        }
    }

    pub fn is_one(&self) -> bool {
        self.approx_eq(&Degree::real(1.0))
    }

    /// Product of two optional degrees; `None` if a symbol would have to be scaled.
    pub fn compose(a: Option<Degree>, b: Option<Degree>) -> Option<Option<Degree>> {
        match (a, b) {
            (None, d) | (d, None) => Some(d),
            (Some(x), Some(y)) if x.is_one() => Some(Some(y)),
            (Some(x), Some(y)) if y.is_one() => Some(Some(x)),
            (Some(Degree::Value(x)), Some(Degree::Value(y))) => Some(Some(Degree::Value(x * y))),
            _ => None,
        }
    }

    /// `Some(true)` if the two degrees cancel, `None` when symbolic.
    fn cancels(&self, other: &Degree) -> Option<bool> {
        match (self, other) {
            (Degree::Value(a), Degree::Value(b)) => Some((a + b).norm() < DEGREE_TOL),
            _ => None,
        }
    }
}

fn fmt_real(x: f64) -> String {
    if x == FRAC_1_SQRT_2 {
        "1/sqrt2".to_string()
    } else if x == -FRAC_1_SQRT_2 {
        "-1/sqrt2".to_string()
    } else {
        format!("{x}")
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Symbol(s) => f.write_str(s.name()),
            Degree::Value(v) => {
                if v.im == 0.0 {
                    f.write_str(&fmt_real(v.re))
                } else if v.re == 0.0 {
                    write!(f, "{}i", v.im)
                } else if v.im.is_sign_negative() {
                    write!(f, "{}-{}i", v.re, -v.im)
                } else {
                    write!(f, "{}+{}i", v.re, v.im)
                }
            }
        }
    }
}

/// Reference to a qubit `Q_X`, abbreviating `X^ a&b X`; without degrees it
/// is the equal-amplitude cat state on `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitRef {
    pub name: String,
    pub degrees: Option<(Degree, Degree)>,
}

impl QubitRef {
    pub fn new(name: impl Into<String>) -> Self {
        QubitRef {
            name: name.into(),
            degrees: None,
        }
    }
}

/// Which Bell pairing an entanglement formula denotes: `Phi` relates equal
/// polarities (`X,Y` and `X^,Y^`), `Psi` opposite ones (`X^,Y` and `X,Y^`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    Phi,
    Psi,
}

impl Convention {
    /// Polarity of the partner literal given one party's literal.
    pub fn partner(self, lit: &Atom, partner_name: &str) -> Atom {
        let negated = match self {
            Convention::Phi => lit.negated,
            Convention::Psi => !lit.negated,
        };
        Atom {
            name: partner_name.to_string(),
            negated,
        }
    }

    pub fn operator(self) -> &'static str {
        match self {
            Convention::Phi => "@",
            Convention::Psi => "@~",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    Atom(Atom),
    /// The null proposition.
    Null,
    Qubit(QubitRef),
    And {
        left: Box<Formula>,
        right: Box<Formula>,
        degrees: Option<(Degree, Degree)>,
    },
    Par(Box<Formula>, Box<Formula>),
    Ent {
        left: Box<Formula>,
        right: Box<Formula>,
        convention: Convention,
    },
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(Atom::pos(name))
    }

    pub fn neg_atom(name: &str) -> Self {
        Formula::Atom(Atom::neg(name))
    }

    pub fn lit(atom: Atom) -> Self {
        Formula::Atom(atom)
    }

    pub fn qubit(name: &str) -> Self {
        Formula::Qubit(QubitRef::new(name))
    }

    pub fn qubit_with(name: &str, a: Degree, b: Degree) -> Self {
        Formula::Qubit(QubitRef {
            name: name.to_string(),
            degrees: Some((a, b)),
        })
    }

    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::And {
            left: Box::new(left),
            right: Box::new(right),
            degrees: None,
        }
    }

    pub fn and_deg(left: Formula, a: Degree, b: Degree, right: Formula) -> Self {
        Formula::And {
            left: Box::new(left),
            right: Box::new(right),
            degrees: Some((a, b)),
        }
    }

    pub fn par(left: Formula, right: Formula) -> Self {
        Formula::Par(Box::new(left), Box::new(right))
    }

    pub fn ent(left: Formula, right: Formula) -> Self {
        Formula::Ent {
            left: Box::new(left),
            right: Box::new(right),
            convention: Convention::Phi,
        }
    }

    pub fn ent_with(left: Formula, right: Formula, convention: Convention) -> Self {
        Formula::Ent {
            left: Box::new(left),
            right: Box::new(right),
            convention,
        }
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            Formula::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// The qubit this formula names, accepting both `Q_X` and the spelled
    /// out `X & X^` / `X^ & X`.
    pub fn as_qubit_name(&self) -> Option<&str> {
        match self {
            Formula::Qubit(q) => Some(&q.name),
            Formula::And {
                left,
                right,
                degrees: None,
            } => match (left.as_ref(), right.as_ref()) {
                (Formula::Atom(a), Formula::Atom(b))
                    if a.name == b.name && a.negated != b.negated =>
                {
                    Some(&a.name)
                }
                _ => None,
            },
            _ => None,
        }
    }

    /// Atom names in left-to-right order of appearance.
    pub fn atom_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut Vec<String>) {
        match self {
            Formula::Atom(a) => out.push(a.name.clone()),
            Formula::Qubit(q) => out.push(q.name.clone()),
            Formula::Null => {}
            Formula::And { left, right, .. }
            | Formula::Par(left, right)
            | Formula::Ent { left, right, .. } => {
                left.collect_names(out);
                right.collect_names(out);
            }
        }
    }

    pub fn degrees(&self) -> Vec<Degree> {
        let mut out = Vec::new();
        self.collect_degrees(&mut out);
        out
    }

    fn collect_degrees(&self, out: &mut Vec<Degree>) {
        match self {
            Formula::Atom(_) | Formula::Null => {}
            Formula::Qubit(q) => out.extend(q.degrees.iter().flat_map(|(a, b)| [*a, *b])),
            Formula::And {
                left,
                right,
                degrees,
            } => {
                left.collect_degrees(out);
                out.extend(degrees.iter().flat_map(|(a, b)| [*a, *b]));
                right.collect_degrees(out);
            }
            Formula::Par(left, right) | Formula::Ent { left, right, .. } => {
                left.collect_degrees(out);
                right.collect_degrees(out);
            }
        }
    }

    /// Structural equality with degrees compared within [`DEGREE_TOL`].
    pub fn approx_eq(&self, other: &Formula) -> bool {
        fn deg_pair_eq(a: &Option<(Degree, Degree)>, b: &Option<(Degree, Degree)>) -> bool {
            match (a, b) {
                (None, None) => true,
                (Some((a1, a2)), Some((b1, b2))) => a1.approx_eq(b1) && a2.approx_eq(b2),
                _ => false,
            }
        }
        match (self, other) {
            (Formula::Atom(a), Formula::Atom(b)) => a == b,
            (Formula::Null, Formula::Null) => true,
            (Formula::Qubit(a), Formula::Qubit(b)) => {
                a.name == b.name && deg_pair_eq(&a.degrees, &b.degrees)
            }
            (
                Formula::And {
                    left: l1,
                    right: r1,
                    degrees: d1,
                },
                Formula::And {
                    left: l2,
                    right: r2,
                    degrees: d2,
                },
            ) => deg_pair_eq(d1, d2) && l1.approx_eq(l2) && r1.approx_eq(r2),
            (Formula::Par(l1, r1), Formula::Par(l2, r2)) => l1.approx_eq(l2) && r1.approx_eq(r2),
            (
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
            ) => c1 == c2 && l1.approx_eq(l2) && r1.approx_eq(r2),
            _ => false,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Ent { .. } => 1,
            Formula::And { .. } => 2,
            Formula::Par(..) => 3,
            _ => 4,
        }
    }
}

/// Toggle the negation flag of an atomic formula.
pub fn negate(f: &Formula) -> Result<Formula, SyntaxError> {
    match f {
        Formula::Atom(a) => Ok(Formula::Atom(a.flipped())),
        other => Err(SyntaxError::NonAtomicNegation(other.to_string())),
    }
}

/// Rewrite `f` to its normal form.
///
/// Rules, applied bottom-up to a fixpoint:
/// - `X & X` (undegreed, or with non-cancelling degrees) becomes `X`; the
///   combined amplitude lives in the denotation, not in the formula;
/// - `X a&b X` with `a + b = 0` becomes `0`;
/// - `0` is a unit for `&`;
/// - `(P a&b Q) & (P c&d Q)` regroups to `(P a&c P) & (Q b&d Q)`, which lets
///   branch-wise superpositions interfere;
/// - operands of `@` are ordered by their leading atom name.
pub fn normalize(f: &Formula) -> Formula {
    let mut current = normalize_once(f);
    loop {
        let next = normalize_once(&current);
        if next == current {
            return current;
        }
        current = next;
    }
}

fn normalize_once(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) | Formula::Null | Formula::Qubit(_) => f.clone(),
        Formula::Par(l, r) => Formula::par(normalize_once(l), normalize_once(r)),
        Formula::Ent {
            left,
            right,
            convention,
        } => {
            let (l, r) = (normalize_once(left), normalize_once(right));
            if operand_order(&l, &r) == Ordering::Greater {
                Formula::ent_with(r, l, *convention)
            } else {
                Formula::ent_with(l, r, *convention)
            }
        }
        Formula::And {
            left,
            right,
            degrees,
        } => {
            let (l, r) = (normalize_once(left), normalize_once(right));
            if l.approx_eq(&r) {
                return match degrees {
                    Some((a, b)) if a.cancels(b) == Some(true) => Formula::Null,
                    _ => l,
                };
            }
            if r == Formula::Null {
                return l;
            }
            if l == Formula::Null {
                return r;
            }
            if degrees.is_none() {
                if let (
                    Formula::And {
                        left: p1,
                        right: q1,
                        degrees: Some((a, b)),
                    },
                    Formula::And {
                        left: p2,
                        right: q2,
                        degrees: Some((c, d)),
                    },
                ) = (&l, &r)
                {
                    if p1.approx_eq(p2) && q1.approx_eq(q2) {
                        return Formula::and(
                            Formula::and_deg((**p1).clone(), *a, *c, (**p2).clone()),
                            Formula::and_deg((**q1).clone(), *b, *d, (**q2).clone()),
                        );
                    }
                }
            }
            Formula::And {
                left: Box::new(l),
                right: Box::new(r),
                degrees: *degrees,
            }
        }
    }
}

fn operand_order(a: &Formula, b: &Formula) -> Ordering {
    let key = |f: &Formula| f.atom_names().into_iter().min().unwrap_or_default();
    key(a)
        .cmp(&key(b))
        .then_with(|| a.to_string().cmp(&b.to_string()))
}

/// Replace every qubit reference by the conjunction it abbreviates:
/// `Q_X` by `X & X^`, and `Q_X{a,b}` by `X^ a&b X`.
pub fn unfold_qubits(f: &Formula) -> Formula {
    match f {
        Formula::Qubit(QubitRef {
            name,
            degrees: None,
        }) => Formula::and(Formula::atom(name), Formula::neg_atom(name)),
        Formula::Qubit(QubitRef {
            name,
            degrees: Some((a, b)),
        }) => Formula::and_deg(Formula::neg_atom(name), *a, *b, Formula::atom(name)),
        Formula::Atom(_) | Formula::Null => f.clone(),
        Formula::And {
            left,
            right,
            degrees,
        } => Formula::And {
            left: Box::new(unfold_qubits(left)),
            right: Box::new(unfold_qubits(right)),
            degrees: *degrees,
        },
        Formula::Par(l, r) => Formula::par(unfold_qubits(l), unfold_qubits(r)),
        Formula::Ent {
            left,
            right,
            convention,
        } => Formula::ent_with(unfold_qubits(left), unfold_qubits(right), *convention),
    }
}

/// Equivalence of formulas: equal normal forms once qubit abbreviations are
/// unfolded.
pub fn equivalent(f: &Formula, g: &Formula) -> bool {
    normalize(&unfold_qubits(f)).approx_eq(&normalize(&unfold_qubits(g)))
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "{}^", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

impl fmt::Display for QubitRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{}", self.name)?;
        if let Some((a, b)) = &self.degrees {
            write!(f, "{{{a}, {b}}}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = self.precedence();
        let side = |child: &Formula, right: bool| -> String {
            let p = child.precedence();
            if p < prec || (right && p == prec) {
                format!("({child})")
            } else {
                child.to_string()
            }
        };
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Null => f.write_str("0"),
            Formula::Qubit(q) => write!(f, "{q}"),
            Formula::And {
                left,
                right,
                degrees: None,
            } => write!(f, "{} & {}", side(left, false), side(right, true)),
            Formula::And {
                left,
                right,
                degrees: Some((a, b)),
            } => {
                write!(
                    f,
                    "{} &{{{a}, {b}}} {}",
                    side(left, false),
                    side(right, true)
                )
            }
            Formula::Par(l, r) => write!(f, "{} # {}", side(l, false), side(r, true)),
            Formula::Ent {
                left,
                right,
                convention,
            } => {
                write!(
                    f,
                    "{} {} {}",
                    side(left, false),
                    convention.operator(),
                    side(right, true)
                )
            }
        }
    }
}

/// `antecedent |-{degree} consequent`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub consequent: Vec<Formula>,
    pub degree: Option<Degree>,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, consequent: Vec<Formula>) -> Self {
        Sequent {
            antecedent,
            consequent,
            degree: None,
        }
    }

    /// `|- consequent`
    pub fn assert(consequent: Vec<Formula>) -> Self {
        Sequent::new(Vec::new(), consequent)
    }

    pub fn with_degree(mut self, degree: Degree) -> Self {
        self.degree = Some(degree);
        self
    }

    pub fn is_assertion(&self) -> bool {
        self.antecedent.is_empty()
    }

    /// Same shape up to [`equivalent`] formulas and approximately equal degrees.
    /// An explicit degree of 1 is the same as no degree.
    pub fn equivalent_to(&self, other: &Sequent) -> bool {
        let lists = |a: &[Formula], b: &[Formula]| {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| equivalent(x, y))
        };
        let degree_eq = match (&self.degree, &other.degree) {
            (None, None) => true,
            (Some(a), Some(b)) => a.approx_eq(b),
            (Some(d), None) | (None, Some(d)) => d.is_one(),
        };
        degree_eq
            && lists(&self.antecedent, &other.antecedent)
            && lists(&self.consequent, &other.consequent)
    }

    pub fn atom_names(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for f in self.antecedent.iter().chain(&self.consequent) {
            for n in f.atom_names() {
                if !names.contains(&n) {
                    names.push(n);
                }
            }
        }
        names
    }
}

fn join_list(list: &[Formula]) -> String {
    list.iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.antecedent.is_empty() {
            write!(f, "{} ", join_list(&self.antecedent))?;
        }
        f.write_str("|-")?;
        if let Some(d) = &self.degree {
            write!(f, "{{{d}}}")?;
        }
        if !self.consequent.is_empty() {
            write!(f, " {}", join_list(&self.consequent))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r() -> Degree {
        Degree::inv_sqrt2()
    }

    #[test]
    fn negate_toggles_and_is_involutive() {
        let a = Formula::atom("A");
        let na = negate(&a).unwrap();
        assert_eq!(na, Formula::neg_atom("A"));
        assert_eq!(negate(&na).unwrap(), a);
    }

    #[test]
    fn negate_rejects_compounds() {
        let f = Formula::par(Formula::atom("A"), Formula::atom("B"));
        assert!(matches!(negate(&f), Err(SyntaxError::NonAtomicNegation(_))));
    }

    #[test]
    fn cancelling_degrees_normalize_to_null() {
        let f = Formula::and_deg(
            Formula::atom("A"),
            r(),
            Degree::neg_inv_sqrt2(),
            Formula::atom("A"),
        );
        assert_eq!(normalize(&f), Formula::Null);
    }

    #[test]
    fn idempotent_conjunction_collapses() {
        let f = Formula::and(Formula::neg_atom("A"), Formula::neg_atom("A"));
        assert_eq!(normalize(&f), Formula::neg_atom("A"));
    }

    #[test]
    fn distinct_conjuncts_unchanged() {
        let f = Formula::and(Formula::atom("A"), Formula::neg_atom("A"));
        assert_eq!(normalize(&f), f);
    }

    #[test]
    fn branchwise_superpositions_interfere() {
        let plus = Formula::and_deg(Formula::neg_atom("A"), r(), r(), Formula::atom("A"));
        let minus = Formula::and_deg(
            Formula::neg_atom("A"),
            r(),
            Degree::neg_inv_sqrt2(),
            Formula::atom("A"),
        );
        assert_eq!(
            normalize(&Formula::and(plus, minus)),
            Formula::neg_atom("A")
        );
    }

    #[test]
    fn entanglement_commutes() {
        let ab = Formula::ent(Formula::qubit("A"), Formula::qubit("B"));
        let ba = Formula::ent(Formula::qubit("B"), Formula::qubit("A"));
        assert!(equivalent(&ab, &ba));
        assert!(equivalent(&ab, &ab));
    }

    #[test]
    fn entanglement_is_not_structurally_its_expansion() {
        let ent = Formula::ent(Formula::qubit("A"), Formula::qubit("B"));
        let phi = Formula::and(
            Formula::par(Formula::atom("A"), Formula::atom("B")),
            Formula::par(Formula::neg_atom("A"), Formula::neg_atom("B")),
        );
        assert!(!equivalent(&ent, &phi));
    }

    #[test]
    fn conventions_are_distinguished() {
        let phi = Formula::ent(Formula::qubit("A"), Formula::qubit("B"));
        let psi = Formula::ent_with(Formula::qubit("A"), Formula::qubit("B"), Convention::Psi);
        assert!(!equivalent(&phi, &psi));
    }

    #[test]
    fn qubit_abbreviation_unfolds() {
        let q = Formula::qubit("A");
        assert!(equivalent(
            &q,
            &Formula::and(Formula::atom("A"), Formula::neg_atom("A"))
        ));
        assert!(!equivalent(&q, &Formula::atom("A")));
    }

    #[test]
    fn display_respects_precedence() {
        let f = Formula::and(
            Formula::par(Formula::atom("A"), Formula::atom("B")),
            Formula::par(Formula::neg_atom("A"), Formula::neg_atom("B")),
        );
        assert_eq!(f.to_string(), "A # B & A^ # B^");
        let g = Formula::par(
            Formula::and(Formula::atom("A"), Formula::atom("B")),
            Formula::atom("C"),
        );
        assert_eq!(g.to_string(), "(A & B) # C");
        let nested = Formula::ent(
            Formula::ent(Formula::qubit("A"), Formula::qubit("B")),
            Formula::qubit("C"),
        );
        assert_eq!(nested.to_string(), "Q_A @ Q_B @ Q_C");
        let right = Formula::ent(
            Formula::qubit("A"),
            Formula::ent(Formula::qubit("B"), Formula::qubit("C")),
        );
        assert_eq!(right.to_string(), "Q_A @ (Q_B @ Q_C)");
    }

    #[test]
    fn sequent_display() {
        let s = Sequent::new(
            vec![Formula::qubit("A"), Formula::qubit("C")],
            vec![Formula::atom("C")],
        )
        .with_degree(Degree::Symbol(Symbol::Beta));
        assert_eq!(s.to_string(), "Q_A, Q_C |-{beta} C");
        assert_eq!(Sequent::assert(vec![]).to_string(), "|-");
    }

    #[test]
    fn degree_display_round_values() {
        assert_eq!(Degree::inv_sqrt2().to_string(), "1/sqrt2");
        assert_eq!(
            Degree::Value(Complex64::new(0.3, -0.4)).to_string(),
            "0.3-0.4i"
        );
        assert_eq!(Degree::Value(Complex64::new(0.0, 1.0)).to_string(), "1i");
    }
}
