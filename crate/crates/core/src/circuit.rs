//! Gate-level circuit IR and the two-qubit cost metrics.
//!
//! Gates are applied in list order: `compose(a, b)` runs `a` first.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::error::{Error, Result};

/// A primitive gate. Single-qubit kinds carry their wire, `CX` carries
/// `(control, target)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    S(usize),
    Sdg(usize),
    /// `Rx(pi/2)`.
    V(usize),
    /// `Rx(-pi/2)`.
    Vdg(usize),
    Rz(usize, f64),
    Rx(usize, f64),
    CX(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Qubits {
        match *self {
            Gate::CX(c, t) => Qubits::Two(c, t),
            Gate::H(q)
            | Gate::X(q)
            | Gate::Z(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::V(q)
            | Gate::Vdg(q)
            | Gate::Rz(q, _)
            | Gate::Rx(q, _) => Qubits::One(q),
        }
    }

    pub fn acts_on(&self, q: usize) -> bool {
        match self.qubits() {
            Qubits::One(a) => a == q,
            Qubits::Two(a, b) => a == q || b == q,
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::CX(..))
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            Gate::V(q) => Gate::Vdg(q),
            Gate::Vdg(q) => Gate::V(q),
            Gate::Rz(q, a) => Gate::Rz(q, -a),
            Gate::Rx(q, a) => Gate::Rx(q, -a),
            g => g,
        }
    }

    /// Same gate kind moved to other wires.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(f(q)),
            Gate::X(q) => Gate::X(f(q)),
            Gate::Z(q) => Gate::Z(f(q)),
            Gate::S(q) => Gate::S(f(q)),
            Gate::Sdg(q) => Gate::Sdg(f(q)),
            Gate::V(q) => Gate::V(f(q)),
            Gate::Vdg(q) => Gate::Vdg(f(q)),
            Gate::Rz(q, a) => Gate::Rz(f(q), a),
            Gate::Rx(q, a) => Gate::Rx(f(q), a),
            Gate::CX(c, t) => Gate::CX(f(c), f(t)),
        }
    }

    /// Rotation form `(is_z_axis, angle)` for gates that are rotations up to
    /// global phase. `V` is exactly `Rx(pi/2)`; `S` and `Z` equal `Rz` only up to
    /// phase and are left alone here.
    pub fn as_rotation(&self) -> Option<(usize, Axis, f64)> {
        match *self {
            Gate::Rz(q, a) => Some((q, Axis::Z, a)),
            Gate::Rx(q, a) => Some((q, Axis::X, a)),
            Gate::V(q) => Some((q, Axis::X, FRAC_PI_2)),
            Gate::Vdg(q) => Some((q, Axis::X, -FRAC_PI_2)),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::X(_) => "x",
            Gate::Z(_) => "z",
            Gate::S(_) => "s",
            Gate::Sdg(_) => "sdg",
            Gate::V(_) => "v",
            Gate::Vdg(_) => "vdg",
            Gate::Rz(..) => "rz",
            Gate::Rx(..) => "rx",
            Gate::CX(..) => "cx",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Rz(q, a) | Gate::Rx(q, a) => write!(f, "{}({a}) q{q}", self.name()),
            Gate::CX(c, t) => write!(f, "cx q{c},q{t}"),
            g => match g.qubits() {
                Qubits::One(q) => write!(f, "{} q{q}", g.name()),
                Qubits::Two(..) => unreachable!(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubits {
    One(usize),
    Two(usize, usize),
}

impl Qubits {
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let (a, b) = match self {
            Qubits::One(a) => (a, None),
            Qubits::Two(a, b) => (a, Some(b)),
        };
        std::iter::once(a).chain(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Z,
    X,
}

/// Ordered gate list over `width` qubits with an accumulated global phase.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    pub global_phase: f64,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Circuit {
            width,
            gates: Vec::new(),
            global_phase: 0.0,
        }
    }

    pub fn from_gates(width: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(width);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        match gate.qubits() {
            Qubits::One(q) if q >= self.width => Err(Error::QubitOutOfRange {
                qubit: q,
                width: self.width,
            }),
            Qubits::Two(a, b) if a >= self.width || b >= self.width => {
                Err(Error::QubitOutOfRange {
                    qubit: a.max(b),
                    width: self.width,
                })
            }
            Qubits::Two(a, b) if a == b => Err(Error::RepeatedQubit(a)),
            _ => {
                self.gates.push(gate);
                Ok(())
            }
        }
    }

    /// Appends gates already known to be in range. Panics on a bad index,
    /// which is a bug in the caller.
    pub(crate) fn extend_unchecked(&mut self, gates: impl IntoIterator<Item = Gate>) {
        for g in gates {
            self.push(g).expect("gate within circuit width");
        }
    }

    pub(crate) fn with_gates(&self, gates: Vec<Gate>) -> Circuit {
        Circuit {
            width: self.width,
            gates,
            global_phase: self.global_phase,
        }
    }

    /// Number of CX gates.
    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Longest dependency chain counted in CX gates only.
    pub fn two_qubit_depth(&self) -> usize {
        let mut level = vec![0usize; self.width];
        for g in &self.gates {
            match g.qubits() {
                Qubits::One(_) => {}
                Qubits::Two(a, b) => {
                    let d = level[a].max(level[b]) + 1;
                    level[a] = d;
                    level[b] = d;
                }
            }
        }
        level.into_iter().max().unwrap_or(0)
    }

    pub fn dagger(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            global_phase: -self.global_phase,
        }
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: other.width,
            });
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(Circuit {
            width: self.width,
            gates,
            global_phase: self.global_phase + other.global_phase,
        })
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        *self = self.compose(other)?;
        Ok(())
    }
}
