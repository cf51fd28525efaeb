use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::syntax::{Bindings, Convention, Degree, Formula, QubitRef, Sequent};

use super::{Operator, QState, SemanticsError};

fn resolve(d: &Degree, bindings: &Bindings) -> Result<Complex64, SemanticsError> {
    d.resolve(bindings)
        .map_err(|s| SemanticsError::UnboundSymbolicDegree(s.name().to_string()))
}

fn r() -> Complex64 {
    Complex64::new(FRAC_1_SQRT_2, 0.0)
}

fn qubit_degrees(
    q: &QubitRef,
    bindings: &Bindings,
) -> Result<(Complex64, Complex64), SemanticsError> {
    match &q.degrees {
        None => Ok((r(), r())),
        Some((a, b)) => Ok((resolve(a, bindings)?, resolve(b, bindings)?)),
    }
}

/// State denoted by a single formula.
pub fn denote_formula(f: &Formula, bindings: &Bindings) -> Result<QState, SemanticsError> {
    match f {
        Formula::Atom(a) => Ok(QState::basis(&a.name, a.bit())),
        Formula::Null => Ok(QState::zero()),
        Formula::Qubit(q) => {
            let (a0, a1) = qubit_degrees(q, bindings)?;
            Ok(QState::qubit(&q.name, a0, a1))
        }
        Formula::And {
            left,
            right,
            degrees,
        } => {
            let l = denote_formula(left, bindings)?;
            let rt = denote_formula(right, bindings)?;
            let (a, b) = match degrees {
                Some((a, b)) => (resolve(a, bindings)?, resolve(b, bindings)?),
                None => (r(), r()),
            };
            superpose(&l, a, &rt, b, f)
        }
        Formula::Par(l, rt) => denote_formula(l, bindings)?.tensor(&denote_formula(rt, bindings)?),
        Formula::Ent {
            left,
            right,
            convention,
        } => denote_ent(left, right, *convention, bindings),
    }
}

fn superpose(
    l: &QState,
    a: Complex64,
    rt: &QState,
    b: Complex64,
    f: &Formula,
) -> Result<QState, SemanticsError> {
    // Null is the zero vector on whatever wires the other side uses.
    if l.wires.is_empty() && l.is_zero() {
        return Ok(rt.flattened().scaled(b));
    }
    if rt.wires.is_empty() && rt.is_zero() {
        return Ok(l.flattened().scaled(a));
    }
    let rt = rt.permuted(&l.wires).map_err(|_| {
        SemanticsError::NonDenotableSequent(format!(
            "the conjuncts of `{f}` are not over the same qubits"
        ))
    })?;
    let amps = l
        .vector()
        .iter()
        .zip(rt.vector())
        .map(|(x, y)| a * x + b * y)
        .collect();
    QState::new(l.wires.clone(), amps)
}

fn denote_ent(
    left: &Formula,
    right: &Formula,
    conv: Convention,
    bindings: &Bindings,
) -> Result<QState, SemanticsError> {
    let party = |f: &Formula| -> Option<String> { f.as_qubit_name().map(str::to_string) };
    let partner_bit = |bit: usize| match conv {
        Convention::Phi => bit,
        Convention::Psi => 1 - bit,
    };
    match (left.as_atom(), right.as_atom()) {
        (Some(x), None) => {
            let y = party(right).ok_or_else(|| not_pair(left, right))?;
            return QState::basis(&x.name, x.bit())
                .tensor(&QState::basis(&y, partner_bit(x.bit())));
        }
        (None, Some(y)) => {
            let x = party(left).ok_or_else(|| not_pair(left, right))?;
            return QState::basis(&x, partner_bit(y.bit()))
                .tensor(&QState::basis(&y.name, y.bit()));
        }
        (Some(_), Some(_)) => return Err(not_pair(left, right)),
        (None, None) => {}
    }
    let (Some(x), Some(y)) = (party(left), party(right)) else {
        return Err(not_pair(left, right));
    };
    // Degrees live on whichever operand carries them, indexed by that
    // operand's bit.
    let (degrees, on_left) = match (left, right) {
        (
            Formula::Qubit(
                q @ QubitRef {
                    degrees: Some(_), ..
                },
            ),
            _,
        ) => (qubit_degrees(q, bindings)?, true),
        (
            _,
            Formula::Qubit(
                q @ QubitRef {
                    degrees: Some(_), ..
                },
            ),
        ) => (qubit_degrees(q, bindings)?, false),
        _ => ((r(), r()), true),
    };
    let mut amps = vec![Complex64::new(0.0, 0.0); 4];
    for bit in 0..2 {
        let d = if bit == 0 { degrees.0 } else { degrees.1 };
        let (bx, by) = if on_left {
            (bit, partner_bit(bit))
        } else {
            (partner_bit(bit), bit)
        };
        amps[bx * 2 + by] = d;
    }
    QState::new(vec![x, y], amps)
}

fn not_pair(l: &Formula, r: &Formula) -> SemanticsError {
    SemanticsError::NonDenotableSequent(format!(
        "`{l}` and `{r}` do not form an entangled pair of qubits"
    ))
}

/// State asserted by `|- G`: the tensor product of the consequent in order,
/// scaled by the turnstile degree.
pub fn denote_assertion(s: &Sequent, bindings: &Bindings) -> Result<QState, SemanticsError> {
    if !s.antecedent.is_empty() {
        return Err(SemanticsError::NonDenotableSequent(format!(
            "`{s}` has hypotheses"
        )));
    }
    if s.consequent.is_empty() {
        return Err(SemanticsError::NonDenotableSequent(
            "empty assertion".into(),
        ));
    }
    let mut state = QState::unit();
    for f in &s.consequent {
        state = state.tensor(&denote_formula(f, bindings)?)?;
    }
    match &s.degree {
        Some(d) => Ok(state.scaled(resolve(d, bindings)?)),
        None => Ok(state),
    }
}

/// The projector a measurement-shaped sequent stands for.
///
/// `Q_X |- X^` is `M0` on `X` and `Q_X |- X` is `M1`. The joint shape
/// `Q_X, Q_Y |- L` with `L` a literal on `Y` projects both wires onto the
/// same bit as `L`. Degrees on the sequent are recorded amplitudes, not part
/// of the operator.
pub fn denote_measurement(s: &Sequent) -> Result<Operator, SemanticsError> {
    let fail = || SemanticsError::NotAMeasurementShape(s.to_string());
    let [lit] = s.consequent.as_slice() else {
        return Err(fail());
    };
    let lit = lit.as_atom().ok_or_else(fail)?;
    match s.antecedent.as_slice() {
        [q] if q.as_qubit_name() == Some(lit.name.as_str()) => {
            Ok(Operator::measure(&lit.name, lit.bit()))
        }
        [q1, q2] => {
            let (Some(n1), Some(n2)) = (q1.as_qubit_name(), q2.as_qubit_name()) else {
                return Err(fail());
            };
            let other = if n2 == lit.name {
                n1
            } else if n1 == lit.name {
                n2
            } else {
                return Err(fail());
            };
            if other == lit.name {
                return Err(fail());
            }
            Ok(Operator::pair(other, &lit.name, lit.bit(), lit.bit()))
        }
        _ => Err(fail()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::OpName;
    use crate::syntax::Formula as F;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn assert_of(fs: Vec<F>) -> QState {
        denote_assertion(&Sequent::assert(fs), &Bindings::default()).unwrap()
    }

    #[test]
    fn bits_and_cat_states() {
        assert_eq!(assert_of(vec![F::neg_atom("A")]).amps, vec![c(1.0), c(0.0)]);
        let rr = Degree::inv_sqrt2();
        let plus = assert_of(vec![F::and_deg(F::neg_atom("A"), rr, rr, F::atom("A"))]);
        assert_eq!(plus.amps, vec![c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]);
        let minus = assert_of(vec![F::and_deg(
            F::neg_atom("A"),
            rr,
            Degree::neg_inv_sqrt2(),
            F::atom("A"),
        )]);
        assert_eq!(minus.amps, vec![c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2)]);
    }

    #[test]
    fn separable_pair() {
        let s = assert_of(vec![F::qubit("B"), F::qubit("A")]);
        assert_eq!(s.wires, vec!["B", "A"]);
        for a in &s.amps {
            assert!((a - c(0.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn entangled_pair_matches_its_expansion() {
        let ent = assert_of(vec![F::ent(F::qubit("A"), F::qubit("B"))]);
        let body = F::and(
            F::par(F::atom("A"), F::atom("B")),
            F::par(F::neg_atom("A"), F::neg_atom("B")),
        );
        assert_eq!(ent, assert_of(vec![body]));
    }

    #[test]
    fn psi_pairs_opposite_bits() {
        let s = assert_of(vec![F::ent_with(
            F::qubit("B"),
            F::qubit("A"),
            Convention::Psi,
        )]);
        assert_eq!(
            s.amps,
            vec![c(0.0), c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2), c(0.0)]
        );
    }

    #[test]
    fn symbolic_degrees_need_bindings() {
        let q = F::Qubit(QubitRef {
            name: "C".into(),
            degrees: Some((
                Degree::Symbol(crate::syntax::Symbol::Alpha),
                Degree::Symbol(crate::syntax::Symbol::Beta),
            )),
        });
        let seq = Sequent::assert(vec![F::ent(q, F::qubit("B"))]);
        assert!(matches!(
            denote_assertion(&seq, &Bindings::default()),
            Err(SemanticsError::UnboundSymbolicDegree(_))
        ));
        let s = denote_assertion(&seq, &Bindings::new(c(0.6), c(0.8))).unwrap();
        assert_eq!(s.amps, vec![c(0.6), c(0.0), c(0.0), c(0.8)]);
    }

    #[test]
    fn hypotheses_are_not_states() {
        let s = Sequent::new(vec![F::atom("A")], vec![F::atom("A")]);
        assert!(matches!(
            denote_assertion(&s, &Bindings::default()),
            Err(SemanticsError::NonDenotableSequent(_))
        ));
    }

    #[test]
    fn measurement_shapes() {
        let m0 =
            denote_measurement(&Sequent::new(vec![F::qubit("A")], vec![F::neg_atom("A")])).unwrap();
        assert_eq!(m0.name, OpName::M0);
        let m1 =
            denote_measurement(&Sequent::new(vec![F::qubit("A")], vec![F::atom("A")])).unwrap();
        assert_eq!(m1.name, OpName::M1);
        let joint = denote_measurement(&Sequent::new(
            vec![F::qubit("A"), F::qubit("C")],
            vec![F::atom("C")],
        ))
        .unwrap();
        assert_eq!(
            (joint.name, joint.wires),
            (OpName::Pair(1, 1), vec!["A".to_string(), "C".to_string()])
        );
        assert!(matches!(
            denote_measurement(&Sequent::assert(vec![F::atom("A")])),
            Err(SemanticsError::NotAMeasurementShape(_))
        ));
    }
}
