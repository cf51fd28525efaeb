//! Brute-force teleportation on three wires, built from plain arrays so it
//! shares nothing with the denotation layer it is used to check.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::SemanticsError;

#[derive(Debug, Clone, PartialEq)]
pub struct TeleportRow {
    /// Bell outcome on Alice's wires (A, C).
    pub outcome: &'static str,
    pub probability: f64,
    /// Pauli correction applied to Bob's wire; `ZX` means X first.
    pub correction: &'static str,
    /// Bob's state after correction, normalized.
    pub bob: [Complex64; 2],
    pub fidelity: f64,
}

type C = Complex64;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// Teleport `alpha|0> + beta|1>` from wire C to wire B through a `Phi+`
/// pair on (A, B), enumerating the four Bell outcomes on (A, C).
pub fn teleport_oracle(alpha: C, beta: C) -> Result<Vec<TeleportRow>, SemanticsError> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(SemanticsError::NotNormalized(format!(
            "|alpha|^2 + |beta|^2 = {norm}"
        )));
    }
    let r = FRAC_1_SQRT_2;
    let input = [alpha, beta];
    // Index a*4 + b*2 + c over wires (A, B, C).
    let mut psi = [c(0.0); 8];
    for a in 0..2 {
        for (cc, amp) in input.iter().enumerate() {
            psi[a * 4 + a * 2 + cc] = c(r) * amp;
        }
    }
    // Bell vectors over (A, C), index a*2 + c.
    let bells: [(&str, [f64; 4], &str); 4] = [
        ("Phi+", [r, 0.0, 0.0, r], "I"),
        ("Phi-", [r, 0.0, 0.0, -r], "Z"),
        ("Psi+", [0.0, r, r, 0.0], "X"),
        ("Psi-", [0.0, r, -r, 0.0], "ZX"),
    ];
    let mut rows = Vec::with_capacity(4);
    for (outcome, v, correction) in bells {
        let mut bob = [c(0.0); 2];
        for (b, slot) in bob.iter_mut().enumerate() {
            for a in 0..2 {
                for cc in 0..2 {
                    *slot += c(v[a * 2 + cc]) * psi[a * 4 + b * 2 + cc];
                }
            }
        }
        let probability = bob[0].norm_sqr() + bob[1].norm_sqr();
        let k = probability.sqrt();
        let mut bob = [bob[0] / k, bob[1] / k];
        for gate in correction.chars().rev() {
            match gate {
                'X' => bob.swap(0, 1),
                'Z' => bob[1] = -bob[1],
                _ => {}
            }
        }
        let overlap = input[0].conj() * bob[0] + input[1].conj() * bob[1];
        rows.push(TeleportRow {
            outcome,
            probability,
            correction,
            bob,
            fidelity: overlap.norm_sqr(),
        });
    }
    Ok(rows)
}
