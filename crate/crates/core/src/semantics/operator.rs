use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use super::{QState, SemanticsError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpName {
    H,
    HInv,
    Cnot,
    M0,
    M1,
    /// Cat mirror `M0 + M1`.
    MC,
    /// Bell mirror, the sum of the four Bell projectors.
    MB,
    I2,
    I4,
    /// Projector onto one computational basis pair `|b0 b1>`.
    Pair(usize, usize),
}

/// A gate or projector on one or two named wires. `matrix` is row-major and
/// the first wire is the high bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    pub name: OpName,
    pub wires: Vec<String>,
    pub matrix: Vec<Complex64>,
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn real(entries: &[f64]) -> Vec<Complex64> {
    entries.iter().map(|&x| c(x)).collect()
}

impl Operator {
    fn one(name: OpName, wire: &str, matrix: Vec<Complex64>) -> Self {
        Operator {
            name,
            wires: vec![wire.to_string()],
            matrix,
        }
    }

    fn two(name: OpName, w0: &str, w1: &str, matrix: Vec<Complex64>) -> Self {
        Operator {
            name,
            wires: vec![w0.to_string(), w1.to_string()],
            matrix,
        }
    }

    pub fn h(wire: &str) -> Self {
        let r = FRAC_1_SQRT_2;
        Self::one(OpName::H, wire, real(&[r, r, r, -r]))
    }

    /// The Hadamard is real symmetric and self-inverse, so its inverse is the
    /// same matrix.
    pub fn h_inv(wire: &str) -> Self {
        Operator {
            name: OpName::HInv,
            ..Self::h(wire)
        }
    }

    pub fn cnot(control: &str, target: &str) -> Self {
        #[rustfmt::skip]
        let m = real(&[
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
            0.0, 0.0, 1.0, 0.0,
        ]);
        Self::two(OpName::Cnot, control, target, m)
    }

    pub fn m0(wire: &str) -> Self {
        Self::one(OpName::M0, wire, real(&[1.0, 0.0, 0.0, 0.0]))
    }

    pub fn m1(wire: &str) -> Self {
        Self::one(OpName::M1, wire, real(&[0.0, 0.0, 0.0, 1.0]))
    }

    pub fn measure(wire: &str, bit: usize) -> Self {
        if bit == 0 {
            Self::m0(wire)
        } else {
            Self::m1(wire)
        }
    }

    pub fn mc(wire: &str) -> Self {
        let sum = Self::m0(wire)
            .matrix
            .iter()
            .zip(&Self::m1(wire).matrix)
            .map(|(a, b)| a + b)
            .collect();
        Self::one(OpName::MC, wire, sum)
    }

    /// Sum of the projectors onto the four Bell states.
    pub fn mb(w0: &str, w1: &str) -> Self {
        let mut m = vec![c(0.0); 16];
        for p in bell_projectors() {
            for (acc, x) in m.iter_mut().zip(p) {
                *acc += x;
            }
        }
        Self::two(OpName::MB, w0, w1, m)
    }

    pub fn i2(wire: &str) -> Self {
        Self::one(OpName::I2, wire, real(&[1.0, 0.0, 0.0, 1.0]))
    }

    pub fn i4(w0: &str, w1: &str) -> Self {
        let mut m = vec![c(0.0); 16];
        for i in 0..4 {
            m[i * 5] = c(1.0);
        }
        Self::two(OpName::I4, w0, w1, m)
    }

    pub fn pair(w0: &str, w1: &str, b0: usize, b1: usize) -> Self {
        let mut m = vec![c(0.0); 16];
        let k = b0 * 2 + b1;
        m[k * 5] = c(1.0);
        Self::two(OpName::Pair(b0, b1), w0, w1, m)
    }

    pub fn dim(&self) -> usize {
        1 << self.wires.len()
    }

    pub fn compose(&self, after: &Operator) -> Operator {
        assert_eq!(self.wires, after.wires, "operators on different wires");
        let n = self.dim();
        let mut m = vec![c(0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = (0..n)
                    .map(|k| after.matrix[i * n + k] * self.matrix[k * n + j])
                    .sum();
            }
        }
        Operator {
            name: self.name.clone(),
            wires: self.wires.clone(),
            matrix: m,
        }
    }
}

/// `|v><v|` for the four Bell vectors, each with entries `1/2 * (+-1 or 0)`
/// so that their sum is exactly the identity.
fn bell_projectors() -> [Vec<Complex64>; 4] {
    let vs: [[f64; 4]; 4] = [
        [1.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, -1.0],
        [0.0, 1.0, 1.0, 0.0],
        [0.0, 1.0, -1.0, 0.0],
    ];
    vs.map(|v| {
        let mut m = vec![c(0.0); 16];
        for i in 0..4 {
            for j in 0..4 {
                m[i * 4 + j] = c(0.5 * v[i] * v[j]);
            }
        }
        m
    })
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &self.name {
            OpName::H => "H".to_string(),
            OpName::HInv => "H_inv".to_string(),
            OpName::Cnot => "CNOT".to_string(),
            OpName::M0 => "M0".to_string(),
            OpName::M1 => "M1".to_string(),
            OpName::MC => "MC".to_string(),
            OpName::MB => "MB".to_string(),
            OpName::I2 => "I2".to_string(),
            OpName::I4 => "I4".to_string(),
            OpName::Pair(a, b) => format!("P{a}{b}"),
        };
        write!(f, "{name}({})", self.wires.join(","))
    }
}

/// Act with `op` on its wires of `state`, identity elsewhere. The result is
/// not renormalized.
pub fn apply(op: &Operator, state: &QState) -> Result<QState, SemanticsError> {
    let idx: Vec<usize> = op
        .wires
        .iter()
        .map(|w| {
            state.wire_index(w).ok_or_else(|| {
                SemanticsError::WireMismatch(format!(
                    "{op} acts on a wire outside ({})",
                    state.wires.join(",")
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    let n = state.wires.len();
    let d = op.dim();
    let mask: usize = idx.iter().map(|&w| 1 << (n - 1 - w)).sum();
    let local = |i: usize| -> usize {
        idx.iter()
            .fold(0, |acc, &w| (acc << 1) | state.bit_of(i, w))
    };
    let spread = |k: usize| -> usize {
        idx.iter().enumerate().fold(0, |acc, (pos, &w)| {
            acc | (((k >> (idx.len() - 1 - pos)) & 1) << (n - 1 - w))
        })
    };
    let mut amps = vec![c(0.0); state.dim()];
    for (i, out) in amps.iter_mut().enumerate() {
        let row = local(i);
        let rest = i & !mask;
        *out = (0..d)
            .map(|col| op.matrix[row * d + col] * state.amps[rest | spread(col)])
            .sum();
    }
    Ok(QState {
        wires: state.wires.clone(),
        amps,
        scale: state.scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirrors_are_identities() {
        assert_eq!(Operator::mc("A").matrix, Operator::i2("A").matrix);
        assert_eq!(Operator::mb("A", "B").matrix, Operator::i4("A", "B").matrix);
    }

    #[test]
    fn hadamard_is_an_involution() {
        let hh = Operator::h("A").compose(&Operator::h_inv("A"));
        for (x, y) in hh.matrix.iter().zip(Operator::i2("A").matrix) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn h_on_zero_is_plus() {
        let s = apply(&Operator::h("A"), &QState::basis("A", 0)).unwrap();
        assert!((s.amps[0] - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((s.amps[1] - c(FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn cnot_makes_bell_state() {
        let s = QState::plus("B").tensor(&QState::basis("A", 0)).unwrap();
        let out = apply(&Operator::cnot("B", "A"), &s).unwrap();
        let r = c(FRAC_1_SQRT_2);
        assert_eq!(out.amps, vec![r, c(0.0), c(0.0), r]);
    }

    #[test]
    fn cnot_respects_wire_names() {
        let s = QState::basis("A", 0)
            .tensor(&QState::basis("B", 1))
            .unwrap();
        let out = apply(&Operator::cnot("B", "A"), &s).unwrap();
        assert_eq!(out.amps[3], c(1.0));
    }

    #[test]
    fn operator_on_missing_wire() {
        assert!(apply(&Operator::h("Z"), &QState::basis("A", 0)).is_err());
    }
}
