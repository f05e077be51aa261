//! Signed Pauli operators and their images under Clifford gates.
//!
//! `conjugate` maps `P` to `G P G^dagger`. The update rules are the usual
//! symplectic ones, with `Y` stored as `x = z = 1`.

use crate::circuit::Gate;
use crate::pauli::{Pauli, PauliString};

/// `(-1)^negative * string`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPauli {
    pub string: PauliString,
    pub negative: bool,
}

impl SignedPauli {
    pub fn new(string: PauliString) -> Self {
        SignedPauli {
            string,
            negative: false,
        }
    }

    fn bits(&self, q: usize) -> (bool, bool) {
        match self.string.get(q) {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn set_bits(&mut self, q: usize, x: bool, z: bool) {
        let p = match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        };
        self.string.set(q, p);
    }

    fn h(&mut self, q: usize) {
        let (x, z) = self.bits(q);
        self.negative ^= x && z;
        self.set_bits(q, z, x);
    }

    fn s(&mut self, q: usize) {
        let (x, z) = self.bits(q);
        self.negative ^= x && z;
        self.set_bits(q, x, z ^ x);
    }

    fn cx(&mut self, c: usize, t: usize) {
        let (xc, zc) = self.bits(c);
        let (xt, zt) = self.bits(t);
        self.negative ^= xc && zt && !(xt ^ zc);
        self.set_bits(t, xt ^ xc, zt);
        self.set_bits(c, xc, zc ^ zt);
    }

    /// Conjugates by `gate`. Returns false, leaving `self` untouched, when the
    /// gate is a rotation that is not a Clifford.
    pub fn conjugate(&mut self, gate: &Gate) -> bool {
        match *gate {
            Gate::H(q) => self.h(q),
            Gate::S(q) => self.s(q),
            Gate::Sdg(q) => {
                for _ in 0..3 {
                    self.s(q)
                }
            }
            Gate::Z(q) => {
                self.s(q);
                self.s(q)
            }
            Gate::X(q) => {
                self.h(q);
                self.s(q);
                self.s(q);
                self.h(q)
            }
            Gate::V(q) => {
                self.h(q);
                self.s(q);
                self.h(q)
            }
            Gate::Vdg(q) => {
                self.h(q);
                for _ in 0..3 {
                    self.s(q)
                }
                self.h(q)
            }
            Gate::CX(c, t) => self.cx(c, t),
            Gate::Rz(..) | Gate::Rx(..) => return false,
        }
        true
    }

    pub fn conjugate_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) -> bool {
        for g in gates {
            if !self.conjugate(g) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{single_qubit_matrix, Mat2};

    fn sp(s: &str) -> SignedPauli {
        SignedPauli::new(s.parse().unwrap())
    }

    #[test]
    fn single_qubit_images_match_matrices() {
        let gates = [
            Gate::H(0),
            Gate::S(0),
            Gate::Sdg(0),
            Gate::X(0),
            Gate::Z(0),
            Gate::V(0),
            Gate::Vdg(0),
        ];
        for g in gates {
            let (_, m) = single_qubit_matrix(&g).unwrap();
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                let mut image = SignedPauli::new(PauliString::single(1, 0, p));
                assert!(image.conjugate(&g));
                let expected = m * Mat2::pauli(p) * m.adjoint();
                let mut got = Mat2::pauli(image.string.get(0));
                if image.negative {
                    for row in got.0.iter_mut() {
                        for x in row.iter_mut() {
                            *x = -*x;
                        }
                    }
                }
                let diff = expected
                    .0
                    .iter()
                    .flatten()
                    .zip(got.0.iter().flatten())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                assert!(diff < 1e-12, "{g:?} on {p:?}");
            }
        }
    }

    #[test]
    fn cx_images() {
        let mut p = sp("XI");
        p.conjugate(&Gate::CX(0, 1));
        assert_eq!(p, sp("XX"));
        let mut p = sp("IZ");
        p.conjugate(&Gate::CX(0, 1));
        assert_eq!(p, sp("ZZ"));
        let mut p = sp("YY");
        p.conjugate(&Gate::CX(0, 1));
        // Y⊗Y -> -X⊗Z
        assert_eq!(p.string, "XZ".parse().unwrap());
        assert!(p.negative);
    }

    #[test]
    fn rotations_are_rejected() {
        let mut p = sp("X");
        assert!(!p.conjugate(&Gate::Rz(0, 0.1)));
        assert_eq!(p, sp("X"));
    }
}
