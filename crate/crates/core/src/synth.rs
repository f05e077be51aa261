//! Gadget synthesis (ladder and balanced-tree forms) and gadget detection.

use std::collections::BTreeSet;
use std::ops::Range;

use crate::circuit::{Circuit, Gate};
use crate::clifford::SignedPauli;
use crate::error::{Error, Result};
use crate::pauli::{max_common_substring, Pauli, PauliGadget, PauliString};

/// Gates mapping each non-identity symbol of `s` onto `Z` when applied before
/// a Z-phase gadget: `H` for `X`, `V` for `Y`.
pub fn basis_layer(s: &PauliString) -> Vec<Gate> {
    s.iter()
        .enumerate()
        .filter_map(|(q, p)| match p {
            Pauli::X => Some(Gate::H(q)),
            Pauli::Y => Some(Gate::V(q)),
            Pauli::I | Pauli::Z => None,
        })
        .collect()
}

/// CX fan-in computing the parity of `order` onto its last element, as a
/// balanced tree: each round pairs neighbours and keeps the second of each pair.
pub fn tree_fan(order: &[usize]) -> Vec<Gate> {
    let mut gates = Vec::new();
    let mut alive = order.to_vec();
    while alive.len() > 1 {
        let mut next = Vec::with_capacity(alive.len().div_ceil(2));
        // an odd element out is the first one, so the last (the root) always survives
        let start = alive.len() % 2;
        if start == 1 {
            next.push(alive[0]);
        }
        for pair in alive[start..].chunks(2) {
            gates.push(Gate::CX(pair[0], pair[1]));
            next.push(pair[1]);
        }
        alive = next;
    }
    gates
}

/// CX ladder computing the parity of `order` onto its last element.
pub fn ladder_fan(order: &[usize]) -> Vec<Gate> {
    order.windows(2).map(|w| Gate::CX(w[0], w[1])).collect()
}

fn wrap(g: &PauliGadget, fan: Vec<Gate>, root: usize) -> Circuit {
    let basis = basis_layer(&g.string);
    let mut c = Circuit::new(g.width());
    c.extend_unchecked(basis.iter().copied());
    c.extend_unchecked(fan.iter().copied());
    c.extend_unchecked([Gate::Rz(root, g.angle)]);
    c.extend_unchecked(fan.iter().rev().copied());
    c.extend_unchecked(basis.iter().rev().map(Gate::inverse));
    c
}

fn nontrivial_support(g: &PauliGadget) -> Result<Vec<usize>> {
    let support = g.string.support();
    if support.is_empty() {
        Err(Error::TrivialString)
    } else {
        Ok(support)
    }
}

pub fn synth_ladder(g: &PauliGadget) -> Result<Circuit> {
    let support = nontrivial_support(g)?;
    let root = *support.last().unwrap();
    Ok(wrap(g, ladder_fan(&support), root))
}

/// Balanced-tree synthesis rooted at the median support qubit.
pub fn synth_tree(g: &PauliGadget) -> Result<Circuit> {
    let support = nontrivial_support(g)?;
    let root = support[(support.len() - 1) / 2];
    let mut order: Vec<usize> = support.into_iter().filter(|&q| q != root).collect();
    order.push(root);
    synth_tree_ordered(g, &order)
}

/// Balanced-tree synthesis with an explicit leaf order; the last entry is the
/// root carrying the rotation.
pub fn synth_tree_ordered(g: &PauliGadget, order: &[usize]) -> Result<Circuit> {
    let support = nontrivial_support(g)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    assert_eq!(
        sorted, support,
        "order must be a permutation of the support"
    );
    Ok(wrap(g, tree_fan(order), *order.last().unwrap()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStrategy {
    Naive,
    Aligned,
}

/// Leaf order for a gadget given the maximal common substrings with its
/// neighbours: qubits shared with the previous gadget first, then those shared
/// with the next, then the rest. Shared positions carry the same symbol, so
/// their basis gates cancel and matching first-round CXs meet.
fn aligned_order(support: &[usize], prev_common: &[usize], next_common: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = Vec::with_capacity(support.len());
    for &q in prev_common.iter().chain(next_common).chain(support) {
        if !order.contains(&q) {
            order.push(q);
        }
    }
    order
}

fn common_support(a: &PauliGadget, b: &PauliGadget) -> Vec<usize> {
    max_common_substring(&a.string, &b.string)
        .map(|r| r.support())
        .unwrap_or_default()
}

/// Leaf orders for a gadget sequence under the aligned strategy.
pub(crate) fn aligned_orders(gs: &[&PauliGadget]) -> Vec<Vec<usize>> {
    (0..gs.len())
        .map(|i| {
            let prev = if i > 0 {
                common_support(gs[i - 1], gs[i])
            } else {
                vec![]
            };
            let next = if i + 1 < gs.len() {
                common_support(gs[i], gs[i + 1])
            } else {
                vec![]
            };
            aligned_order(&gs[i].string.support(), &prev, &next)
        })
        .collect()
}

pub fn synth_chain(gs: &[PauliGadget], strategy: ChainStrategy) -> Result<Circuit> {
    let Some(first) = gs.first() else {
        return Err(Error::EmptyString);
    };
    let width = first.width();
    if let Some(bad) = gs.iter().find(|g| g.width() != width) {
        return Err(Error::WidthMismatch {
            left: width,
            right: bad.width(),
        });
    }
    let mut out = Circuit::new(width);
    let refs: Vec<&PauliGadget> = gs.iter().filter(|g| !g.is_trivial()).collect();
    for g in gs.iter().filter(|g| g.is_trivial()) {
        out.global_phase -= g.angle / 2.0;
    }
    let orders = match strategy {
        ChainStrategy::Naive => None,
        ChainStrategy::Aligned => Some(aligned_orders(&refs)),
    };
    for (i, g) in refs.iter().enumerate() {
        let c = match &orders {
            None => synth_tree(g)?,
            Some(o) => synth_tree_ordered(g, &o[i])?,
        };
        out.append(&c)?;
    }
    Ok(out)
}

/// Output of detection: a gadget or a run of untouched gates.
#[derive(Debug, Clone, PartialEq)]
pub enum SegmentKind {
    Gadget(PauliGadget),
    Raw(Vec<Gate>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GadgetSegment {
    pub kind: SegmentKind,
    /// Span of source gate indices the segment was built from.
    pub source: Range<usize>,
}

#[derive(Debug, Clone)]
enum Item {
    Gate(Gate, usize),
    Gadget(PauliGadget, Range<usize>),
}

impl Item {
    fn acts_on(&self, q: usize) -> bool {
        match self {
            Item::Gate(g, _) => g.acts_on(q),
            Item::Gadget(g, _) => !g.string.get(q).is_identity(),
        }
    }

    fn gate(&self) -> Option<Gate> {
        match self {
            Item::Gate(g, _) => Some(*g),
            Item::Gadget(..) => None,
        }
    }
}

struct Detector {
    items: Vec<Option<Item>>,
    width: usize,
}

impl Detector {
    fn prev_on(&self, q: usize, before: usize) -> Option<usize> {
        (0..before)
            .rev()
            .find(|&i| self.items[i].as_ref().is_some_and(|it| it.acts_on(q)))
    }

    fn next_on(&self, q: usize, after: usize) -> Option<usize> {
        (after + 1..self.items.len())
            .find(|&i| self.items[i].as_ref().is_some_and(|it| it.acts_on(q)))
    }

    fn gate_at(&self, i: usize) -> Option<Gate> {
        self.items[i].as_ref().and_then(Item::gate)
    }

    /// Grows a gadget around the Rz at `anchor`. Returns the gadget and the
    /// consumed item indices.
    fn grow(&self, anchor: usize) -> Option<(PauliGadget, BTreeSet<usize>)> {
        let Some(Gate::Rz(root, angle)) = self.gate_at(anchor) else {
            return None;
        };
        let mut region = BTreeSet::from([anchor]);
        let mut support = BTreeSet::from([root]);
        // first and last region item on each support wire
        let mut left = vec![anchor; self.width];
        let mut right = vec![anchor; self.width];

        'peel: loop {
            for &t in &support {
                let (Some(i), Some(j)) = (self.prev_on(t, left[t]), self.next_on(t, right[t]))
                else {
                    continue;
                };
                let (Some(Gate::CX(c, tt)), Some(after)) = (self.gate_at(i), self.gate_at(j))
                else {
                    continue;
                };
                if tt != t || after != Gate::CX(c, t) || support.contains(&c) {
                    continue;
                }
                if self.next_on(c, i) != Some(j) {
                    continue;
                }
                region.insert(i);
                region.insert(j);
                support.insert(c);
                left[t] = i;
                right[t] = j;
                left[c] = i;
                right[c] = j;
                continue 'peel;
            }
            break;
        }
        if support.len() < 2 {
            return None;
        }

        let mut string = PauliString::identity(self.width);
        let mut negative = false;
        for &q in &support {
            string.set(q, Pauli::Z);
            if let Some((before, after, image)) = self.basis_around(q, left[q], right[q]) {
                region.extend(before);
                region.extend(after);
                string.set(q, image.string.get(q));
                negative ^= image.negative;
            }
        }
        let angle = if negative { -angle } else { angle };
        Some((PauliGadget::new(angle, string), region))
    }

    /// Looks for a mirrored single-qubit Clifford layer around `[lo, hi]` on
    /// wire `q`, trying two-gate layers before single gates.
    fn basis_around(
        &self,
        q: usize,
        lo: usize,
        hi: usize,
    ) -> Option<(Vec<usize>, Vec<usize>, SignedPauli)> {
        let is_basis = |g: &Gate| {
            matches!(
                g,
                Gate::H(_) | Gate::S(_) | Gate::Sdg(_) | Gate::V(_) | Gate::Vdg(_) | Gate::X(_)
            )
        };
        let mut before = Vec::new();
        let mut after = Vec::new();
        let (mut l, mut r) = (lo, hi);
        for _ in 0..2 {
            let (Some(i), Some(j)) = (self.prev_on(q, l), self.next_on(q, r)) else {
                break;
            };
            match (self.gate_at(i), self.gate_at(j)) {
                (Some(a), Some(b)) if is_basis(&a) && b == a.inverse() => {
                    before.push(i);
                    after.push(j);
                    l = i;
                    r = j;
                }
                _ => break,
            }
        }
        while !before.is_empty() {
            // the gadget's Pauli on q is L^dagger Z L; `before` runs nearest first
            let mut image = SignedPauli::new(PauliString::single(self.width, q, Pauli::Z));
            let inverses: Vec<Gate> = before
                .iter()
                .map(|&i| self.gate_at(i).unwrap().inverse())
                .collect();
            image.conjugate_all(&inverses);
            if image.string.get(q) != Pauli::Z || image.negative {
                return Some((before, after, image));
            }
            before.pop();
            after.pop();
        }
        None
    }
}

/// Finds Pauli gadgets in ladder or tree form. Undetected gates are kept as
/// raw runs; every segment is exact, never approximate.
pub fn detect_gadgets(c: &Circuit) -> Vec<GadgetSegment> {
    let mut det = Detector {
        items: c
            .gates()
            .iter()
            .enumerate()
            .map(|(i, g)| Some(Item::Gate(*g, i)))
            .collect(),
        width: c.width(),
    };
    for anchor in 0..det.items.len() {
        let Some((gadget, region)) = det.grow(anchor) else {
            continue;
        };
        let mut lo = usize::MAX;
        let mut hi = 0;
        for &i in &region {
            if let Some(Item::Gate(_, src)) = det.items[i] {
                lo = lo.min(src);
                hi = hi.max(src);
            }
            det.items[i] = None;
        }
        det.items[anchor] = Some(Item::Gadget(gadget, lo..hi + 1));
    }

    let mut segments: Vec<GadgetSegment> = Vec::new();
    for item in det.items.into_iter().flatten() {
        match item {
            Item::Gadget(g, source) => segments.push(GadgetSegment {
                kind: SegmentKind::Gadget(g),
                source,
            }),
            Item::Gate(g, src) => match segments.last_mut() {
                Some(GadgetSegment {
                    kind: SegmentKind::Raw(gates),
                    source,
                }) => {
                    gates.push(g);
                    source.start = source.start.min(src);
                    source.end = source.end.max(src + 1);
                }
                _ => segments.push(GadgetSegment {
                    kind: SegmentKind::Raw(vec![g]),
                    source: src..src + 1,
                }),
            },
        }
    }
    segments
}

/// Rebuilds a circuit from segments, synthesising gadgets with the aligned
/// balanced-tree strategy.
pub fn resynthesize(width: usize, segments: &[GadgetSegment], strategy: ChainStrategy) -> Circuit {
    let gadgets: Vec<&PauliGadget> = segments
        .iter()
        .filter_map(|s| match &s.kind {
            SegmentKind::Gadget(g) => Some(g),
            SegmentKind::Raw(_) => None,
        })
        .collect();
    let orders = match strategy {
        ChainStrategy::Aligned => aligned_orders(&gadgets),
        ChainStrategy::Naive => vec![],
    };
    let mut out = Circuit::new(width);
    let mut k = 0;
    for seg in segments {
        match &seg.kind {
            SegmentKind::Raw(gates) => out.extend_unchecked(gates.iter().copied()),
            SegmentKind::Gadget(g) => {
                let c = match strategy {
                    ChainStrategy::Aligned => synth_tree_ordered(g, &orders[k]),
                    ChainStrategy::Naive => synth_tree(g),
                }
                .expect("detected gadgets are non-trivial");
                out.extend_unchecked(c.into_gates());
                k += 1;
            }
        }
    }
    out
}
