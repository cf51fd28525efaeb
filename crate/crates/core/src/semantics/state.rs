use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use super::SemanticsError;

/// A state vector over named wires.
///
/// Wire 0 is the most significant bit of the amplitude index. The explicit
/// `scale` multiplies every amplitude, so unnormalized intermediates keep
/// their weight without touching `amps`.
#[derive(Debug, Clone, PartialEq)]
pub struct QState {
    pub wires: Vec<String>,
    pub amps: Vec<Complex64>,
    pub scale: f64,
}

impl QState {
    pub fn new(wires: Vec<String>, amps: Vec<Complex64>) -> Result<Self, SemanticsError> {
        if amps.len() != 1 << wires.len() {
            return Err(SemanticsError::WireMismatch(format!(
                "{} amplitudes for {} wire(s)",
                amps.len(),
                wires.len()
            )));
        }
        for (i, w) in wires.iter().enumerate() {
            if wires[..i].contains(w) {
                return Err(SemanticsError::WireMismatch(format!(
                    "wire {w} appears twice"
                )));
            }
        }
        Ok(QState {
            wires,
            amps,
            scale: 1.0,
        })
    }

    /// A state with no wires and amplitude 1.
    pub fn unit() -> Self {
        QState {
            wires: Vec::new(),
            amps: vec![Complex64::new(1.0, 0.0)],
            scale: 1.0,
        }
    }

    /// The zero vector on no wires.
    pub fn zero() -> Self {
        QState {
            wires: Vec::new(),
            amps: vec![Complex64::new(0.0, 0.0)],
            scale: 1.0,
        }
    }

    pub fn basis(wire: &str, bit: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 2];
        amps[bit] = Complex64::new(1.0, 0.0);
        QState {
            wires: vec![wire.to_string()],
            amps,
            scale: 1.0,
        }
    }

    pub fn qubit(wire: &str, a0: Complex64, a1: Complex64) -> Self {
        QState {
            wires: vec![wire.to_string()],
            amps: vec![a0, a1],
            scale: 1.0,
        }
    }

    /// `(|0> + |1>)/sqrt2` on `wire`.
    pub fn plus(wire: &str) -> Self {
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self::qubit(wire, r, r)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn wire_index(&self, wire: &str) -> Option<usize> {
        self.wires.iter().position(|w| w == wire)
    }

    pub(crate) fn bit_of(&self, index: usize, wire: usize) -> usize {
        (index >> (self.wires.len() - 1 - wire)) & 1
    }

    /// Amplitudes with the scale folded in.
    pub fn vector(&self) -> Vec<Complex64> {
        self.amps.iter().map(|a| a * self.scale).collect()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt() * self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.norm() == 0.0
    }

    /// Fold `scale` into the amplitudes.
    pub fn flattened(&self) -> Self {
        QState {
            wires: self.wires.clone(),
            amps: self.vector(),
            scale: 1.0,
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        QState {
            wires: self.wires.clone(),
            amps: self.amps.iter().map(|a| a * c).collect(),
            scale: self.scale,
        }
    }

    pub fn normalized(&self) -> Result<Self, SemanticsError> {
        let n = self.norm();
        if n == 0.0 {
            return Err(SemanticsError::ZeroState);
        }
        let k = self.scale / n;
        Ok(QState {
            wires: self.wires.clone(),
            amps: self.amps.iter().map(|a| a * k).collect(),
            scale: 1.0,
        })
    }

    pub fn tensor(&self, other: &QState) -> Result<Self, SemanticsError> {
        if let Some(w) = other.wires.iter().find(|w| self.wires.contains(w)) {
            return Err(SemanticsError::NonDenotableSequent(format!(
                "wire {w} is used twice"
            )));
        }
        let mut wires = self.wires.clone();
        wires.extend(other.wires.iter().cloned());
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(QState {
            wires,
            amps,
            scale: self.scale * other.scale,
        })
    }

    /// Reorder the wires to `order`, which must be a permutation of them.
    pub fn permuted(&self, order: &[String]) -> Result<Self, SemanticsError> {
        if order.len() != self.wires.len() || order.iter().any(|w| !self.wires.contains(w)) {
            return Err(SemanticsError::WireMismatch(format!(
                "cannot align wires ({}) to ({})",
                self.wires.join(","),
                order.join(",")
            )));
        }
        if order == self.wires.as_slice() {
            return Ok(self.clone());
        }
        let n = order.len();
        let src: Vec<usize> = order.iter().map(|w| self.wire_index(w).unwrap()).collect();
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (j, slot) in amps.iter_mut().enumerate() {
            let mut i = 0;
            for (k, &s) in src.iter().enumerate() {
                let bit = (j >> (n - 1 - k)) & 1;
                i |= bit << (n - 1 - s);
            }
            *slot = self.amps[i];
        }
        Ok(QState {
            wires: order.to_vec(),
            amps,
            scale: self.scale,
        })
    }

    /// Zero every amplitude where `wire` does not hold `bit`.
    pub fn project(&self, wire: &str, bit: usize) -> Result<Self, SemanticsError> {
        let w = self.wire_index(wire).ok_or_else(|| {
            SemanticsError::WireMismatch(format!("no wire {wire} in ({})", self.wires.join(",")))
        })?;
        let amps = (0..self.dim())
            .map(|i| {
                if self.bit_of(i, w) == bit {
                    self.amps[i]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok(QState {
            wires: self.wires.clone(),
            amps,
            scale: self.scale,
        })
    }

    /// Remove a wire whose value is definite, keeping the branch that holds
    /// the weight.
    pub fn drop_definite(&self, wire: &str) -> Result<Self, SemanticsError> {
        let w = self
            .wire_index(wire)
            .ok_or_else(|| SemanticsError::WireMismatch(format!("no wire {wire}")))?;
        let weight = |bit: usize| -> f64 {
            (0..self.dim())
                .filter(|&i| self.bit_of(i, w) == bit)
                .map(|i| self.amps[i].norm_sqr())
                .sum()
        };
        let (w0, w1) = (weight(0), weight(1));
        if w0 > 1e-12 && w1 > 1e-12 {
            return Err(SemanticsError::WireMismatch(format!(
                "wire {wire} is not definite"
            )));
        }
        let keep = usize::from(w1 > w0);
        let amps = (0..self.dim())
            .filter(|&i| self.bit_of(i, w) == keep)
            .map(|i| self.amps[i])
            .collect();
        let mut wires = self.wires.clone();
        wires.remove(w);
        Ok(QState {
            wires,
            amps,
            scale: self.scale,
        })
    }
}

fn fmt_amp(a: Complex64) -> String {
    let num = |x: f64| {
        let s = format!("{x:.6}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" {
            "0".to_string()
        } else {
            s.to_string()
        }
    };
    if a.im.abs() < 5e-7 {
        num(a.re)
    } else if a.re.abs() < 5e-7 {
        format!("{}i", num(a.im))
    } else {
        format!(
            "({}{}{}i)",
            num(a.re),
            if a.im < 0.0 { "-" } else { "+" },
            num(a.im.abs())
        )
    }
}

/// `(B,A): 0.707107|00> + 0.707107|11>`, amplitudes rounded to six places
/// and scale folded in.
impl fmt::Display for QState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}): ", self.wires.join(","))?;
        let n = self.wires.len();
        let terms: Vec<String> = self
            .vector()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() >= 5e-7)
            .map(|(i, a)| {
                let bits: String = (0..n)
                    .map(|k| {
                        if (i >> (n - 1 - k)) & 1 == 1 {
                            '1'
                        } else {
                            '0'
                        }
                    })
                    .collect();
                format!("{}|{bits}>", fmt_amp(*a))
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Distance between two states up to scale and global phase:
/// `min over theta of |p - e^{i theta} a|` on normalized, wire-aligned
/// vectors. Two zero vectors are at distance 0, a zero and a nonzero one at 1.
pub fn residual(predicted: &QState, actual: &QState) -> Result<f64, SemanticsError> {
    let aligned = actual.permuted(&predicted.wires)?;
    match (predicted.is_zero(), aligned.is_zero()) {
        (true, true) => return Ok(0.0),
        (true, false) | (false, true) => return Ok(1.0),
        _ => {}
    }
    let p = predicted.normalized()?.amps;
    let a = aligned.normalized()?.amps;
    if p == a {
        return Ok(0.0);
    }
    let ov = inner(&a, &p);
    let phase = if ov.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        ov / ov.norm()
    };
    Ok(p.iter()
        .zip(&a)
        .map(|(x, y)| (x - phase * y).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// `|<a|b>|^2` of the normalized, wire-aligned states.
pub fn fidelity(a: &QState, b: &QState) -> Result<f64, SemanticsError> {
    let b = b.permuted(&a.wires)?;
    let (a, b) = (a.normalized()?, b.normalized()?);
    Ok(inner(&a.amps, &b.amps).norm_sqr().min(1.0))
}

/// Von Neumann entropy (in bits) of the reduced state of one wire.
pub fn entanglement_entropy(state: &QState, wire: &str) -> Result<f64, SemanticsError> {
    let s = state.normalized()?;
    let w = s
        .wire_index(wire)
        .ok_or_else(|| SemanticsError::WireMismatch(format!("no wire {wire}")))?;
    let mut rho = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..s.dim() {
        if s.bit_of(i, w) != 0 {
            continue;
        }
        let j = i | (1 << (s.wires.len() - 1 - w));
        let (x0, x1) = (s.amps[i], s.amps[j]);
        rho[0][0] += x0 * x0.conj();
        rho[0][1] += x0 * x1.conj();
        rho[1][0] += x1 * x0.conj();
        rho[1][1] += x1 * x1.conj();
    }
    let (a, d) = (rho[0][0].re, rho[1][1].re);
    let disc = ((a - d).powi(2) + 4.0 * rho[0][1].norm_sqr()).sqrt();
    let entropy = [(a + d + disc) / 2.0, (a + d - disc) / 2.0]
        .iter()
        .filter(|&&l| l > 1e-15)
        .map(|l| -l * l.log2())
        .sum::<f64>();
    Ok(entropy.max(0.0))
}

/// `(left + right)/sqrt2` after aligning `right` to `left`'s wires.
pub fn combine_parallel(left: &QState, right: &QState) -> Result<QState, SemanticsError> {
    let right = right.permuted(&left.wires)?;
    let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let amps = left
        .vector()
        .iter()
        .zip(right.vector())
        .map(|(x, y)| r * (x + y))
        .collect();
    Ok(QState {
        wires: left.wires.clone(),
        amps,
        scale: 1.0,
    })
}
