//! Seeded circuit generators: uniform random circuits and UCC-style gadget
//! sequences.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};
use crate::pauli::{Pauli, PauliGadget, PauliString};
use crate::synth::{synth_ladder, synth_tree};

/// Random circuit over the full gate set. Rotation angles are drawn from a
/// mix of generic values and multiples of pi/4 so Clifford merges occur.
pub fn random_circuit(width: usize, len: usize, seed: u64) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Circuit::new(width);
    for _ in 0..len {
        let q = rng.gen_range(0..width);
        let angle = if rng.gen_bool(0.5) {
            rng.gen_range(-3.0..3.0)
        } else {
            f64::from(rng.gen_range(-4i32..=4)) * std::f64::consts::FRAC_PI_4
        };
        let choice = rng.gen_range(0..if width > 1 { 12 } else { 9 });
        let g = match choice {
            0 => Gate::H(q),
            1 => Gate::X(q),
            2 => Gate::Z(q),
            3 => Gate::S(q),
            4 => Gate::Sdg(q),
            5 => Gate::V(q),
            6 => Gate::Vdg(q),
            7 => Gate::Rz(q, angle),
            8 => Gate::Rx(q, angle),
            _ => {
                let mut t = rng.gen_range(0..width - 1);
                if t >= q {
                    t += 1;
                }
                Gate::CX(q, t)
            }
        };
        c.push(g).expect("generated gates are in range");
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UccStyle {
    Ladder,
    Tree,
}

/// Gadget pairs in the shape of Trotterised excitation operators: each term
/// contributes two strings on the same support that differ in exactly two
/// positions.
pub fn ucc_gadgets(n_qubits: usize, n_terms: usize, seed: u64) -> Vec<PauliGadget> {
    assert!(n_qubits >= 2, "need at least two qubits");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xyz = [Pauli::X, Pauli::Y, Pauli::Z];
    let mut out = Vec::with_capacity(2 * n_terms);
    for _ in 0..n_terms {
        let k = rng.gen_range(2..=n_qubits.min(6));
        let mut qubits: Vec<usize> = (0..n_qubits).collect();
        qubits.shuffle(&mut rng);
        qubits.truncate(k);
        qubits.sort_unstable();
        let mut s = PauliString::identity(n_qubits);
        for &q in &qubits {
            s.set(q, *xyz.choose(&mut rng).unwrap());
        }
        let mut t = s.clone();
        for &q in qubits.choose_multiple(&mut rng, 2) {
            let others: Vec<Pauli> = xyz.iter().copied().filter(|&p| p != s.get(q)).collect();
            t.set(q, *others.choose(&mut rng).unwrap());
        }
        let angle = rng.gen_range(-3.0..3.0);
        out.push(PauliGadget::new(angle, s));
        out.push(PauliGadget::new(-angle, t));
    }
    out
}

pub fn generate_ucc(n_qubits: usize, n_terms: usize, seed: u64, style: UccStyle) -> Circuit {
    let mut c = Circuit::new(n_qubits);
    for g in ucc_gadgets(n_qubits, n_terms, seed) {
        let part = match style {
            UccStyle::Ladder => synth_ladder(&g),
            UccStyle::Tree => synth_tree(&g),
        }
        .expect("generated strings are non-trivial");
        c.append(&part).expect("same width");
    }
    c
}

/// Parameters of one circuit in a generated benchmark suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteEntry {
    pub n_qubits: usize,
    pub n_terms: usize,
    pub seed: u64,
}

/// `count` UCC circuit specs on `min(4, max_qubits)..=max_qubits` qubits,
/// derived from `seed`.
pub fn ucc_suite(count: usize, max_qubits: usize, seed: u64) -> Vec<SuiteEntry> {
    let max_qubits = max_qubits.max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| SuiteEntry {
            n_qubits: rng.gen_range(max_qubits.min(4)..=max_qubits),
            n_terms: rng.gen_range(2..=5),
            seed: rng.gen(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::mismatched;

    #[test]
    fn deterministic() {
        assert_eq!(random_circuit(4, 30, 9), random_circuit(4, 30, 9));
        assert_eq!(
            generate_ucc(5, 3, 1, UccStyle::Ladder),
            generate_ucc(5, 3, 1, UccStyle::Ladder)
        );
    }

    #[test]
    fn pairs_differ_in_two_positions() {
        let gs = ucc_gadgets(6, 10, 3);
        for p in gs.chunks(2) {
            assert_eq!(p[0].string.support(), p[1].string.support());
            assert_eq!(mismatched(&p[0].string, &p[1].string).unwrap().len(), 2);
            let k = p[0].string.weight();
            assert!((2..=6).contains(&k));
        }
    }

    #[test]
    fn ladder_count_follows_supports() {
        let gs = ucc_gadgets(4, 2, 1);
        let expected: usize = gs.iter().map(|g| 2 * (g.string.weight() - 1)).sum();
        assert_eq!(
            generate_ucc(4, 2, 1, UccStyle::Ladder).two_qubit_count(),
            expected
        );
    }
}
