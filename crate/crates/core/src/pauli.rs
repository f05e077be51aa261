//! Pauli strings, gadgets, and the string algebra used by pairwise reduction.
//!
//! Symbol `i` of a string acts on qubit `i`; the textual form `"IXYZ"` puts
//! qubit 0 first.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn is_identity(self) -> bool {
        self == Pauli::I
    }

    /// Product up to phase.
    pub fn product(self, other: Pauli) -> Pauli {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => p,
            (a, b) if a == b => I,
            (X, Y) | (Y, X) => Z,
            (Y, Z) | (Z, Y) => X,
            (X, Z) | (Z, X) => Y,
            _ => unreachable!(),
        }
    }

    pub fn anticommutes(self, other: Pauli) -> bool {
        self != Pauli::I && other != Pauli::I && self != other
    }

    /// The non-identity symbol different from both arguments, which must be
    /// distinct and non-identity.
    pub fn third(self, other: Pauli) -> Pauli {
        debug_assert!(self.anticommutes(other));
        self.product(other)
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Pauli> {
        match c {
            'I' | 'i' => Ok(Pauli::I),
            'X' | 'x' => Ok(Pauli::X),
            'Y' | 'y' => Ok(Pauli::Y),
            'Z' | 'z' => Ok(Pauli::Z),
            other => Err(Error::InvalidPauli(other)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(symbols: Vec<Pauli>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyString);
        }
        Ok(PauliString(symbols))
    }

    pub fn identity(len: usize) -> Self {
        assert!(len > 0, "Pauli strings are non-empty");
        PauliString(vec![Pauli::I; len])
    }

    /// A string that is `p` on `qubit` and `I` elsewhere.
    pub fn single(len: usize, qubit: usize, p: Pauli) -> Self {
        let mut s = Self::identity(len);
        s.0[qubit] = p;
        s
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> Pauli {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, p: Pauli) {
        self.0[i] = p;
    }

    pub fn iter(&self) -> impl Iterator<Item = Pauli> + '_ {
        self.0.iter().copied()
    }

    pub fn symbols(&self) -> &[Pauli] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|p| p.is_identity())
    }

    /// Indices of non-identity symbols, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !self.0[i].is_identity())
            .collect()
    }

    /// Number of non-identity symbols.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|p| !p.is_identity()).count()
    }

    /// Relabels qubits: symbol at `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> PauliString {
        let mut out = vec![Pauli::I; self.len()];
        for (i, &p) in self.0.iter().enumerate() {
            out[perm[i]] = p;
        }
        PauliString(out)
    }
}

fn check_lengths(a: &PauliString, b: &PauliString) -> Result<()> {
    if a.len() != b.len() {
        Err(Error::LengthMismatch(a.len(), b.len()))
    } else {
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .trim()
            .chars()
            .map(Pauli::from_char)
            .collect::<Result<Vec<_>>>()?;
        PauliString::new(symbols)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.to_char())?;
        }
        Ok(())
    }
}

/// `t` is a substring of `s` when `t` agrees with `s` wherever `t` is not `I`.
pub fn is_substring(t: &PauliString, s: &PauliString) -> Result<bool> {
    check_lengths(t, s)?;
    Ok(t.iter()
        .zip(s.iter())
        .all(|(a, b)| a == b || a.is_identity()))
}

/// Symbolwise product, dropping phases.
pub fn pointwise_mul(t: &PauliString, s: &PauliString) -> Result<PauliString> {
    check_lengths(t, s)?;
    Ok(PauliString(
        t.iter().zip(s.iter()).map(|(a, b)| a.product(b)).collect(),
    ))
}

/// Indices where both strings are non-identity.
pub fn intersection(s: &PauliString, t: &PauliString) -> Result<BTreeSet<usize>> {
    check_lengths(s, t)?;
    Ok((0..s.len())
        .filter(|&i| !s.get(i).is_identity() && !t.get(i).is_identity())
        .collect())
}

pub fn max_common_substring(s: &PauliString, t: &PauliString) -> Result<PauliString> {
    check_lengths(s, t)?;
    Ok(PauliString(
        s.iter()
            .zip(t.iter())
            .map(|(a, b)| if a == b { a } else { Pauli::I })
            .collect(),
    ))
}

pub fn commutes(s: &PauliString, t: &PauliString) -> Result<bool> {
    check_lengths(s, t)?;
    let clashes = s
        .iter()
        .zip(t.iter())
        .filter(|(a, b)| a.anticommutes(*b))
        .count();
    Ok(clashes % 2 == 0)
}

/// Indices of the intersection outside the maximal common substring, i.e.
/// where both strings act but with different symbols.
pub fn mismatched(s: &PauliString, t: &PauliString) -> Result<Vec<usize>> {
    check_lengths(s, t)?;
    Ok((0..s.len())
        .filter(|&i| s.get(i).anticommutes(t.get(i)))
        .collect())
}

/// CX count of synthesising `P(a, s) ; P(b, t)` as a reduced pair:
/// `2(|s| + |t| - |r| - floor(|u|/2) - 2)` with `r` the maximal common
/// substring and `u` the mismatched part of the intersection.
///
/// When `u` is empty but `r` is not, no mismatched qubit is available to carry
/// the common part, so one qubit of `r` stays in both gadgets and the count is
/// two higher. Equal strings fall in this case and cost one gadget.
pub fn cx_pair_cost(s: &PauliString, t: &PauliString) -> Result<usize> {
    check_lengths(s, t)?;
    if s.is_trivial() || t.is_trivial() {
        return Err(Error::TrivialString);
    }
    let r = max_common_substring(s, t)?.weight();
    let u = mismatched(s, t)?.len();
    let mut cost = s.weight() + t.weight() + usize::from(u == 0 && r > 0);
    cost -= r + u / 2 + 2;
    Ok(2 * cost)
}

/// `exp(-i angle/2 P)` for the Pauli operator `P` of `string`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliGadget {
    pub angle: f64,
    pub string: PauliString,
}

impl PauliGadget {
    pub fn new(angle: f64, string: PauliString) -> Self {
        PauliGadget { angle, string }
    }

    pub fn width(&self) -> usize {
        self.string.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.string.is_trivial()
    }
}

impl fmt::Display for PauliGadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({}, {})", self.angle, self.string)
    }
}
