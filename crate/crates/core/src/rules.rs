//! Rules for moving Clifford gates through Pauli gadgets.
//!
//! Each rule states `G ; P(theta, before) == P(+-theta, after) ; G`, with the
//! symbols read on the gate's own qubits and everything else untouched. The
//! table is generated once from the conjugation tracker and certified against
//! the dense simulator in the tests and the acceptance suite.

use std::sync::OnceLock;

use serde::Serialize;

use crate::circuit::{Circuit, Gate};
use crate::clifford::SignedPauli;
use crate::error::Result;
use crate::pauli::{Pauli, PauliGadget, PauliString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GateKind {
    H,
    X,
    Z,
    S,
    Sdg,
    V,
    Vdg,
    CX,
}

impl GateKind {
    pub const ALL: [GateKind; 8] = [
        GateKind::H,
        GateKind::X,
        GateKind::Z,
        GateKind::S,
        GateKind::Sdg,
        GateKind::V,
        GateKind::Vdg,
        GateKind::CX,
    ];

    pub fn of(g: &Gate) -> Option<GateKind> {
        Some(match g {
            Gate::H(_) => GateKind::H,
            Gate::X(_) => GateKind::X,
            Gate::Z(_) => GateKind::Z,
            Gate::S(_) => GateKind::S,
            Gate::Sdg(_) => GateKind::Sdg,
            Gate::V(_) => GateKind::V,
            Gate::Vdg(_) => GateKind::Vdg,
            Gate::CX(..) => GateKind::CX,
            Gate::Rz(..) | Gate::Rx(..) => return None,
        })
    }

    pub fn arity(self) -> usize {
        if self == GateKind::CX {
            2
        } else {
            1
        }
    }

    /// The gate on qubits `qs` (control first for CX).
    pub fn on(self, qs: &[usize]) -> Gate {
        let q = qs[0];
        match self {
            GateKind::H => Gate::H(q),
            GateKind::X => Gate::X(q),
            GateKind::Z => Gate::Z(q),
            GateKind::S => Gate::S(q),
            GateKind::Sdg => Gate::Sdg(q),
            GateKind::V => Gate::V(q),
            GateKind::Vdg => Gate::Vdg(q),
            GateKind::CX => Gate::CX(q, qs[1]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub name: String,
    pub gate: GateKind,
    /// Symbols on the gate's qubits before the move, control first.
    pub before: Vec<Pauli>,
    pub after: Vec<Pauli>,
    /// Whether the gadget angle changes sign.
    pub negate: bool,
}

fn word(ps: &[Pauli]) -> String {
    ps.iter().map(|p| p.to_char()).collect()
}

impl Rule {
    fn derive(gate: GateKind, before: Vec<Pauli>) -> Rule {
        let qs: Vec<usize> = (0..gate.arity()).collect();
        let mut image = SignedPauli::new(PauliString::new(before.clone()).expect("non-empty"));
        image.conjugate(&gate.on(&qs).inverse());
        let after = image.string.symbols().to_vec();
        let name = format!(
            "{:?} through {} -> {}{}",
            gate,
            word(&before),
            if image.negative { "-" } else { "" },
            word(&after)
        );
        Rule {
            name,
            gate,
            before,
            after,
            negate: image.negative,
        }
    }

    /// Textual left-hand side, e.g. `CX(0,1) ; P(t, YY)`.
    pub fn lhs(&self) -> String {
        let qs: Vec<usize> = (0..self.gate.arity()).collect();
        format!("{} ; P(t, {})", self.gate.on(&qs), word(&self.before))
    }

    pub fn rhs(&self) -> String {
        let qs: Vec<usize> = (0..self.gate.arity()).collect();
        let sign = if self.negate { "-" } else { "" };
        format!("P({sign}t, {}) ; {}", word(&self.after), self.gate.on(&qs))
    }

    /// Circuits for both sides on `width` qubits, with the gate on `qubits`
    /// and `context` filling the remaining positions of the gadget string.
    pub fn instantiate(
        &self,
        width: usize,
        qubits: &[usize],
        context: &PauliString,
        angle: f64,
    ) -> Result<(Circuit, Circuit)> {
        let mut before = context.clone();
        let mut after = context.clone();
        for (k, &q) in qubits.iter().enumerate() {
            before.set(q, self.before[k]);
            after.set(q, self.after[k]);
        }
        let gate = self.gate.on(qubits);
        let sign = if self.negate { -1.0 } else { 1.0 };
        let mut lhs = Circuit::from_gates(width, vec![gate])?;
        lhs.append(&gadget_circuit(&PauliGadget::new(angle, before))?)?;
        let mut rhs = gadget_circuit(&PauliGadget::new(sign * angle, after))?;
        rhs.push(gate)?;
        Ok((lhs, rhs))
    }
}

fn gadget_circuit(g: &PauliGadget) -> Result<Circuit> {
    match crate::synth::synth_ladder(g) {
        Ok(c) => Ok(c),
        Err(_) => {
            let mut c = Circuit::new(g.width());
            c.global_phase = -g.angle / 2.0;
            Ok(c)
        }
    }
}

/// All rules: every Clifford kind against every non-identity symbol word on
/// its qubits.
pub fn library() -> &'static [Rule] {
    static LIB: OnceLock<Vec<Rule>> = OnceLock::new();
    LIB.get_or_init(|| {
        let mut rules = Vec::new();
        for kind in GateKind::ALL {
            let words: Vec<Vec<Pauli>> = if kind.arity() == 1 {
                Pauli::ALL[1..].iter().map(|&p| vec![p]).collect()
            } else {
                Pauli::ALL
                    .iter()
                    .flat_map(|&c| Pauli::ALL.iter().map(move |&t| vec![c, t]))
                    .filter(|w| w.iter().any(|p| !p.is_identity()))
                    .collect()
            };
            rules.extend(words.into_iter().map(|w| Rule::derive(kind, w)));
        }
        rules
    })
}

pub fn lookup(kind: GateKind, before: &[Pauli]) -> Option<&'static Rule> {
    library()
        .iter()
        .find(|r| r.gate == kind && r.before == before)
}

/// Moves a gadget from after `gate` to before it: returns `h` with
/// `gate ; g == h ; gate`. `None` for non-Clifford gates.
pub fn pass_through(gate: &Gate, g: &PauliGadget) -> Option<PauliGadget> {
    let kind = GateKind::of(gate)?;
    let qs = gate.qubits();
    let qubits: Vec<usize> = qs.iter().collect();
    let before: Vec<Pauli> = qubits.iter().map(|&q| g.string.get(q)).collect();
    if before.iter().all(|p| p.is_identity()) {
        return Some(g.clone());
    }
    let rule = lookup(kind, &before)?;
    let mut string = g.string.clone();
    for (k, &q) in qubits.iter().enumerate() {
        string.set(q, rule.after[k]);
    }
    let angle = if rule.negate { -g.angle } else { g.angle };
    Some(PauliGadget::new(angle, string))
}

#[derive(Debug, Serialize)]
pub struct CatalogueEntry {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub family: &'static str,
}

/// Human-readable listing of the library.
pub fn catalogue() -> Vec<CatalogueEntry> {
    library()
        .iter()
        .map(|r| CatalogueEntry {
            name: r.name.clone(),
            lhs: r.lhs(),
            rhs: r.rhs(),
            family: if r.gate == GateKind::CX {
                "cx-through-gadget"
            } else {
                "clifford-through-gadget"
            },
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertFailure {
    pub rule: String,
    pub width: usize,
    pub context: String,
    pub angle: f64,
}

pub const ANGLE_GRID: [f64; 5] = [
    0.0,
    std::f64::consts::FRAC_PI_2,
    -std::f64::consts::FRAC_PI_2,
    0.3,
    2.2,
];

/// Checks every rule at widths 2..=4 with every context on the spare qubits
/// and every grid angle. Returns the number of checks and the failures.
pub fn certify(tol: f64) -> (usize, Vec<CertFailure>) {
    let mut checks = 0;
    let mut failures = Vec::new();
    for rule in library() {
        for width in 2..=4usize {
            let qubits: Vec<usize> = (0..rule.gate.arity()).map(|k| width - 1 - k).collect();
            let spare = width - qubits.len();
            for code in 0..4usize.pow(spare as u32) {
                let mut context = PauliString::identity(width);
                let mut k = code;
                for q in 0..spare {
                    context.set(q, Pauli::ALL[k % 4]);
                    k /= 4;
                }
                for angle in ANGLE_GRID {
                    checks += 1;
                    let ok = rule
                        .instantiate(width, &qubits, &context, angle)
                        .and_then(|(l, r)| crate::sim::circuits_equivalent(&l, &r, tol))
                        .unwrap_or(false);
                    if !ok {
                        failures.push(CertFailure {
                            rule: rule.name.clone(),
                            width,
                            context: context.to_string(),
                            angle,
                        });
                    }
                }
            }
        }
    }
    (checks, failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_size() {
        assert_eq!(library().len(), 7 * 3 + 15);
    }

    #[test]
    fn known_entries() {
        let r = lookup(GateKind::H, &[Pauli::X]).unwrap();
        assert_eq!(
            (r.after.as_slice(), r.negate),
            ([Pauli::Z].as_slice(), false)
        );
        let r = lookup(GateKind::H, &[Pauli::Y]).unwrap();
        assert!(r.negate);
        let r = lookup(GateKind::CX, &[Pauli::Z, Pauli::Z]).unwrap();
        assert_eq!(r.after, vec![Pauli::I, Pauli::Z]);
    }

    #[test]
    fn every_rule_certifies() {
        let (checks, failures) = certify(1e-10);
        assert!(checks > 0);
        assert!(failures.is_empty(), "{failures:?}");
    }

    #[test]
    fn pass_through_moves_gadgets() {
        let g = PauliGadget::new(0.4, "ZXY".parse().unwrap());
        let gate = Gate::CX(1, 2);
        let h = pass_through(&gate, &g).unwrap();
        let mut lhs = Circuit::from_gates(3, vec![gate]).unwrap();
        lhs.append(&crate::synth::synth_tree(&g).unwrap()).unwrap();
        let mut rhs = crate::synth::synth_tree(&h).unwrap();
        rhs.push(gate).unwrap();
        assert!(crate::sim::circuits_equivalent(&lhs, &rhs, 1e-10).unwrap());
        assert!(pass_through(&Gate::Rz(0, 0.1), &g).is_none());
    }

    #[test]
    fn catalogue_serializes() {
        let json = serde_json::to_string(&catalogue()).unwrap();
        assert!(json.contains("cx-through-gadget"));
    }
}
