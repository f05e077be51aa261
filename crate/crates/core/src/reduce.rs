//! Pairwise Pauli-gadget algebra: fusion, stripping of the common substring,
//! mismatch elimination, and commute-or-Euler resolution.
//!
//! A [`ConjugatedPair`] stands for `conj ; left ; right ; conj^dagger`. Gates
//! are absorbed into `conj` by conjugating both strings, so every step keeps
//! the pair equal to the original up to phase.

use std::f64::consts::PI;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::euler::{normalize_angle, zxz};
use crate::pauli::{commutes, max_common_substring, mismatched, Pauli, PauliGadget, PauliString};
use crate::rules::pass_through;
use crate::sim::Mat2;
use crate::synth::{basis_layer, synth_tree, tree_fan};

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugatedPair {
    pub conj: Circuit,
    pub left: PauliGadget,
    pub right: PauliGadget,
}

/// The gadget `gate ; g ; gate^dagger` conjugates to, via the rule library.
fn image(g: &PauliGadget, gate: &Gate) -> PauliGadget {
    pass_through(&gate.inverse(), g).expect("only Clifford gates are absorbed")
}

impl ConjugatedPair {
    pub fn new(a: PauliGadget, b: PauliGadget) -> Result<Self> {
        if a.width() != b.width() {
            return Err(Error::WidthMismatch {
                left: a.width(),
                right: b.width(),
            });
        }
        Ok(ConjugatedPair {
            conj: Circuit::new(a.width()),
            left: a,
            right: b,
        })
    }

    /// Appends Clifford gates to `conj`, updating both gadgets.
    pub fn absorb(&mut self, gates: impl IntoIterator<Item = Gate>) {
        for g in gates {
            self.left = image(&self.left, &g);
            self.right = image(&self.right, &g);
            self.conj.extend_unchecked([g]);
        }
    }

    /// `conj ; synth(left) ; synth(right) ; conj^dagger`, fusing equal strings.
    pub fn to_circuit(&self) -> Circuit {
        let mut c = self.conj.clone();
        if let Some(f) = fuse(&self.left, &self.right) {
            push_gadget(&mut c, &f);
        } else {
            push_gadget(&mut c, &self.left);
            push_gadget(&mut c, &self.right);
        }
        c.append(&self.conj.dagger()).expect("same width");
        c
    }
}

fn push_gadget(c: &mut Circuit, g: &PauliGadget) {
    match synth_tree(g) {
        Ok(s) => c.append(&s).expect("same width"),
        // identity string: a pure phase
        Err(_) => c.global_phase -= g.angle / 2.0,
    }
}

pub fn fuse(a: &PauliGadget, b: &PauliGadget) -> Option<PauliGadget> {
    (a.string == b.string).then(|| PauliGadget::new(a.angle + b.angle, a.string.clone()))
}

/// Controlled-`q` from `control` onto `target`, in the gate set.
fn controlled(q: Pauli, control: usize, target: usize) -> Vec<Gate> {
    let cx = Gate::CX(control, target);
    match q {
        Pauli::X => vec![cx],
        Pauli::Z => vec![Gate::H(target), cx, Gate::H(target)],
        Pauli::Y => vec![Gate::Sdg(target), cx, Gate::S(target)],
        Pauli::I => vec![],
    }
}

/// Strips the maximal common substring `r` from both gadgets.
///
/// The common qubits are first rotated to `Z`. If the strings also disagree
/// somewhere on their intersection, the common qubits are split into groups,
/// one per mismatched qubit `m`; each group is fanned onto its last qubit,
/// which then drives a controlled-`Q` onto `m` with `Q` anticommuting with
/// both symbols at `m`. That removes the group from both strings. Otherwise
/// `r` is fanned onto its lowest qubit, which stays in both gadgets as `Z`.
pub fn eliminate_common(a: &PauliGadget, b: &PauliGadget) -> Result<ConjugatedPair> {
    let mut pair = ConjugatedPair::new(a.clone(), b.clone())?;
    let r = max_common_substring(&a.string, &b.string)?;
    let common = r.support();
    let u = mismatched(&a.string, &b.string)?;
    if common.is_empty() || (u.is_empty() && common.len() == 1) {
        return Ok(pair);
    }
    pair.absorb(basis_layer(&r));
    if u.is_empty() {
        let mut order = common[1..].to_vec();
        order.push(common[0]);
        pair.absorb(tree_fan(&order));
        return Ok(pair);
    }

    let groups = u.len().min(common.len());
    let mut fans = Vec::new();
    let mut drives = Vec::new();
    for (k, &m) in u.iter().take(groups).enumerate() {
        // balanced split of `common` into `groups` contiguous chunks
        let lo = k * common.len() / groups;
        let hi = (k + 1) * common.len() / groups;
        let chunk = &common[lo..hi];
        fans.extend(tree_fan(chunk));
        let q = a.string.get(m).third(b.string.get(m));
        drives.extend(controlled(q, *chunk.last().unwrap(), m));
    }
    pair.absorb(fans);
    pair.absorb(drives);
    Ok(pair)
}

/// Rotates `Y` out of the mismatched part of the intersection: `V` when `Y`
/// meets `X`, `S` when `Y` meets `Z`. Acts only when at least two mismatched
/// positions remain, since a single one is already final.
pub fn normalize_y(mut pair: ConjugatedPair) -> ConjugatedPair {
    let u = mismatched(&pair.left.string, &pair.right.string).expect("equal widths");
    if u.len() < 2 {
        return pair;
    }
    let gates: Vec<Gate> = u
        .iter()
        .filter_map(|&i| {
            let (s, t) = (pair.left.string.get(i), pair.right.string.get(i));
            match (s, t) {
                (Pauli::Y, Pauli::X) | (Pauli::X, Pauli::Y) => Some(Gate::V(i)),
                (Pauli::Y, Pauli::Z) | (Pauli::Z, Pauli::Y) => Some(Gate::S(i)),
                _ => None,
            }
        })
        .collect();
    pair.absorb(gates);
    pair
}

/// Removes mismatched positions two at a time with one CX each, leaving at
/// most one. Positions where both strings carry the same symbol are left
/// alone.
pub fn eliminate_mismatch(mut pair: ConjugatedPair) -> Result<ConjugatedPair> {
    let u = mismatched(&pair.left.string, &pair.right.string)?;
    if u.len() < 2 {
        return Ok(pair);
    }
    if u.iter()
        .any(|&i| pair.left.string.get(i) == Pauli::Y || pair.right.string.get(i) == Pauli::Y)
    {
        return Err(Error::YInIntersection);
    }
    let mut basis = Vec::new();
    let mut cxs = Vec::new();
    for w in u.chunks_exact(2) {
        let (i, j) = (w[0], w[1]);
        for q in [i, j] {
            // make the left string Z and the right one X
            if pair.left.string.get(q) == Pauli::X {
                basis.push(Gate::H(q));
            }
        }
        cxs.push(Gate::CX(i, j));
    }
    pair.absorb(basis);
    pair.absorb(cxs);
    Ok(pair)
}

/// Clifford conjugation after which the strings share at most one qubit.
pub fn intermediate_form(a: &PauliGadget, b: &PauliGadget) -> Result<ConjugatedPair> {
    eliminate_mismatch(normalize_y(eliminate_common(a, b)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    Commute,
    Euler,
}

pub fn classify(a: &PauliGadget, b: &PauliGadget) -> Result<PairClass> {
    Ok(if commutes(&a.string, &b.string)? {
        PairClass::Commute
    } else {
        PairClass::Euler
    })
}

const DEGENERATE_TOL: f64 = 1e-12;

/// Angles `(b1, b2, b3)` with `P(b1,t) ; P(b2,s) ; P(b3,t)` equal up to phase to
/// `P(a1,s) ; P(a2,t) ; P(a3,s)`.
///
/// Anticommuting `s` and `t` generate a copy of the 2x2 matrices, so the
/// triple is solved with `s -> Z`, `t -> X` and a ZXZ decomposition of the
/// Hadamard-conjugated product.
pub fn euler_exchange(
    a1: f64,
    a2: f64,
    a3: f64,
    s: &PauliString,
    t: &PauliString,
) -> Result<(f64, f64, f64)> {
    if s.is_trivial() || t.is_trivial() {
        return Err(Error::TrivialString);
    }
    if commutes(s, t)? {
        return Err(Error::Commuting);
    }
    let mid = normalize_angle(a2);
    if mid.abs() < DEGENERATE_TOL {
        return Ok((0.0, normalize_angle(a1 + a3), 0.0));
    }
    if (mid - PI).abs() < DEGENERATE_TOL {
        return Ok((PI, normalize_angle(a3 - a1), 0.0));
    }
    let m = Mat2::rz(a3) * Mat2::rx(a2) * Mat2::rz(a1);
    let h = {
        let x = num_complex::Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Mat2([[x, x], [x, -x]])
    };
    let e = zxz(&(h * m * h));
    Ok((e.a, e.b, e.c))
}

/// Synthesises `a ; b` through [`intermediate_form`].
pub fn pair_synth(a: &PauliGadget, b: &PauliGadget) -> Result<Circuit> {
    if a.is_trivial() || b.is_trivial() {
        return Err(Error::TrivialString);
    }
    if let Some(f) = fuse(a, b) {
        return synth_tree(&f);
    }
    Ok(intermediate_form(a, b)?.to_circuit())
}
