//! Local cleanup passes over single gates and CX pairs.
//!
//! Each pass is a pure `Circuit -> Circuit` map that preserves the unitary
//! exactly, global phase included.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use crate::circuit::{Axis, Circuit, Gate, Qubits};
use crate::euler::{normalize_angle, xzx, zxz};
use crate::sim::{single_qubit_matrix, Mat2};

const ZERO_TOL: f64 = 1e-12;
/// Angles within this distance of a multiple of pi/2 are treated as Clifford.
pub const CLIFFORD_TOL: f64 = 1e-9;

/// `(axis, angle, phase)` with `gate = e^{i phase} R_axis(angle)`.
fn rotation_family(g: &Gate) -> Option<(usize, Axis, f64, f64)> {
    Some(match *g {
        Gate::Rz(q, a) => (q, Axis::Z, a, 0.0),
        Gate::S(q) => (q, Axis::Z, FRAC_PI_2, FRAC_PI_4),
        Gate::Sdg(q) => (q, Axis::Z, -FRAC_PI_2, -FRAC_PI_4),
        Gate::Z(q) => (q, Axis::Z, PI, FRAC_PI_2),
        Gate::Rx(q, a) => (q, Axis::X, a, 0.0),
        Gate::V(q) => (q, Axis::X, FRAC_PI_2, 0.0),
        Gate::Vdg(q) => (q, Axis::X, -FRAC_PI_2, 0.0),
        Gate::X(q) => (q, Axis::X, PI, FRAC_PI_2),
        _ => return None,
    })
}

/// A rotation by `angle` as a gate plus the phase it leaves behind, using the
/// Clifford name when the angle is a multiple of pi/2. `None` for identity.
fn rotation_gate(q: usize, axis: Axis, angle: f64) -> (Option<Gate>, f64) {
    let a = normalize_angle(angle);
    // Rz(a + 2 pi n) = (-1)^n Rz(a)
    let turns = ((angle - a) / TAU).round();
    let mut phase = PI * turns;
    if a.abs() < ZERO_TOL {
        return (None, phase);
    }
    let quarter = a / FRAC_PI_2;
    let k = quarter.round();
    if (a - k * FRAC_PI_2).abs() < CLIFFORD_TOL {
        let named = match (axis, k as i64) {
            (Axis::Z, 1) => Some((Gate::S(q), -FRAC_PI_4)),
            (Axis::Z, -1) => Some((Gate::Sdg(q), FRAC_PI_4)),
            (Axis::Z, 2) => Some((Gate::Z(q), -FRAC_PI_2)),
            (Axis::X, 1) => Some((Gate::V(q), 0.0)),
            (Axis::X, -1) => Some((Gate::Vdg(q), 0.0)),
            (Axis::X, 2) => Some((Gate::X(q), -FRAC_PI_2)),
            _ => None,
        };
        if let Some((g, p)) = named {
            phase += p;
            return (Some(g), phase);
        }
    }
    let g = match axis {
        Axis::Z => Gate::Rz(q, a),
        Axis::X => Gate::Rx(q, a),
    };
    (Some(g), phase)
}

/// Per-wire view of an output list with deletions, used by the stack-based
/// passes.
struct Stacks {
    out: Vec<Option<Gate>>,
    wires: Vec<Vec<usize>>,
}

impl Stacks {
    fn new(width: usize) -> Self {
        Stacks {
            out: Vec::new(),
            wires: vec![Vec::new(); width],
        }
    }

    fn top(&self, q: usize) -> Option<usize> {
        self.wires[q].last().copied()
    }

    fn push(&mut self, g: Gate) {
        let i = self.out.len();
        self.out.push(Some(g));
        for q in g.qubits().iter() {
            self.wires[q].push(i);
        }
    }

    fn pop(&mut self, i: usize) {
        let g = self.out[i].take().expect("live gate");
        for q in g.qubits().iter() {
            let top = self.wires[q].pop();
            debug_assert_eq!(top, Some(i));
        }
    }

    fn finish(self, c: &Circuit, phase: f64) -> Circuit {
        let mut out = c.with_gates(self.out.into_iter().flatten().collect());
        out.global_phase += phase;
        out
    }
}

/// Merges neighbouring rotations about the same axis on a wire. `S`, `Sdg`,
/// `Z` join the Z family and `V`, `Vdg`, `X` the X family; zero rotations
/// vanish and multiples of pi/2 come back under their Clifford names.
pub fn merge_rotations(c: &Circuit) -> Circuit {
    let mut st = Stacks::new(c.width());
    let mut phase = 0.0;
    for g in c.gates() {
        let Some((q, axis, angle, p)) = rotation_family(g) else {
            st.push(*g);
            continue;
        };
        let prev = st
            .top(q)
            .and_then(|i| rotation_family(st.out[i].as_ref().unwrap()).map(|r| (i, r)));
        match prev {
            Some((i, (_, prev_axis, prev_angle, prev_p))) if prev_axis == axis => {
                st.pop(i);
                let (merged, extra) = rotation_gate(q, axis, prev_angle + angle);
                phase += p + prev_p + extra;
                if let Some(m) = merged {
                    st.push(m);
                }
            }
            _ => st.push(*g),
        }
    }
    st.finish(c, phase)
}

fn is_inverse_pair(a: &Gate, b: &Gate) -> bool {
    match (a, b) {
        (Gate::Rz(..), _) | (Gate::Rx(..), _) => false,
        _ => *b == a.inverse(),
    }
}

/// Removes gate/inverse pairs that are adjacent on their wires, to fixpoint.
pub fn cancel_inverses(c: &Circuit) -> Circuit {
    let mut st = Stacks::new(c.width());
    for g in c.gates() {
        let tops: Vec<Option<usize>> = g.qubits().iter().map(|q| st.top(q)).collect();
        let shared = tops[0].filter(|i| tops.iter().all(|t| *t == Some(*i)));
        match shared {
            Some(i) if is_inverse_pair(st.out[i].as_ref().unwrap(), g) => st.pop(i),
            _ => st.push(*g),
        }
    }
    st.finish(c, 0.0)
}

/// Whether `g` commutes with `CX(c, t)` by the bare-gate rules.
fn commutes_with_cx(g: &Gate, c: usize, t: usize) -> bool {
    match *g {
        Gate::CX(c2, t2) => {
            (c2 == c && t2 != t && t2 != c) || (t2 == t && c2 != c && c2 != t) || {
                !g.acts_on(c) && !g.acts_on(t)
            }
        }
        Gate::Rz(q, _) | Gate::S(q) | Gate::Sdg(q) | Gate::Z(q) => q != t,
        Gate::Rx(q, _) | Gate::V(q) | Gate::Vdg(q) | Gate::X(q) => q != c,
        Gate::H(q) => q != c && q != t,
    }
}

/// Cancels CX pairs whose intervening gates all commute with them: Z-type
/// rotations on the control, X-type on the target, and CXs sharing only the
/// control or only the target.
pub fn commute_and_cancel(c: &Circuit) -> Circuit {
    let mut gates: Vec<Option<Gate>> = c.gates().iter().copied().map(Some).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..gates.len() {
            let Some(Gate::CX(ctl, tgt)) = gates[i] else {
                continue;
            };
            for j in i + 1..gates.len() {
                let Some(g) = gates[j] else { continue };
                if g == Gate::CX(ctl, tgt) {
                    gates[i] = None;
                    gates[j] = None;
                    changed = true;
                    break;
                }
                if !commutes_with_cx(&g, ctl, tgt) {
                    break;
                }
            }
        }
    }
    c.with_gates(gates.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerBasis {
    Zxz,
    Xzx,
}

/// At most three rotations equal to `m` up to the returned phase, in
/// application order.
pub fn euler_decompose(q: usize, m: &Mat2, basis: EulerBasis) -> (Vec<Gate>, f64) {
    let (e, outer, inner) = match basis {
        EulerBasis::Zxz => (zxz(m), Axis::Z, Axis::X),
        EulerBasis::Xzx => (xzx(m), Axis::X, Axis::Z),
    };
    let mut phase = e.phase;
    let mut gates = Vec::new();
    for (axis, angle) in [(outer, e.a), (inner, e.b), (outer, e.c)] {
        let (g, p) = rotation_gate(q, axis, angle);
        phase += p;
        gates.extend(g);
    }
    (gates, phase)
}

/// Rewrites maximal single-qubit runs through their 2x2 unitary. Runs of four
/// or more gates are always replaced; shorter runs only when the result is
/// shorter.
pub fn euler_1q(c: &Circuit, basis: EulerBasis) -> Circuit {
    let gates = c.gates();
    let mut slots: Vec<Vec<Gate>> = gates.iter().map(|g| vec![*g]).collect();
    let mut phase = 0.0;
    for q in 0..c.width() {
        let mut run: Vec<usize> = Vec::new();
        let on_wire = (0..gates.len()).filter(|&i| gates[i].acts_on(q));
        for i in on_wire.chain(std::iter::once(usize::MAX)) {
            let single = i != usize::MAX && matches!(gates[i].qubits(), Qubits::One(_));
            if single {
                run.push(i);
                continue;
            }
            if !run.is_empty() {
                let m = run.iter().fold(Mat2::IDENTITY, |acc, &k| {
                    single_qubit_matrix(&gates[k]).expect("single-qubit gate").1 * acc
                });
                let (new, p) = euler_decompose(q, &m, basis);
                if run.len() >= 4 || new.len() < run.len() {
                    for &k in &run {
                        slots[k].clear();
                    }
                    slots[run[0]] = new;
                    phase += p;
                }
                run.clear();
            }
        }
    }
    let mut out = c.with_gates(slots.into_iter().flatten().collect());
    out.global_phase += phase;
    out
}
