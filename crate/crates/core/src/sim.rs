//! Dense-unitary oracle.
//!
//! Basis indices are little-endian: qubit 0 is the least significant bit.
//! Every rewrite in the crate is checked against this module, up to a global
//! phase.

use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::Mul;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliGadget};

/// Largest width the oracle will build a matrix for.
pub const ORACLE_LIMIT: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl UnitaryMatrix {
    pub fn identity(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        UnitaryMatrix { dim, data }
    }

    pub fn from_rows(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        UnitaryMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for r in 0..n {
            for c in 0..n {
                data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        UnitaryMatrix { dim: n, data }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        UnitaryMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x * z).collect(),
        }
    }

    /// Largest elementwise distance.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let n = (self.dim as f64).log2().round() as usize;
        (&self.adjoint() * self).max_diff(&Self::identity(n)) <= tol
    }

    /// Left-multiplies by a single-qubit gate on `q`.
    fn apply_1q(&mut self, q: usize, m: &Mat2) {
        let bit = 1usize << q;
        let n = self.dim;
        for r0 in (0..n).filter(|r| r & bit == 0) {
            let r1 = r0 | bit;
            for c in 0..n {
                let a = self.data[r0 * n + c];
                let b = self.data[r1 * n + c];
                self.data[r0 * n + c] = m.0[0][0] * a + m.0[0][1] * b;
                self.data[r1 * n + c] = m.0[1][0] * a + m.0[1][1] * b;
            }
        }
    }

    fn apply_cx(&mut self, control: usize, target: usize) {
        let cb = 1usize << control;
        let tb = 1usize << target;
        let n = self.dim;
        for r0 in (0..n).filter(|r| r & cb != 0 && r & tb == 0) {
            let r1 = r0 | tb;
            for c in 0..n {
                self.data.swap(r0 * n + c, r1 * n + c);
            }
        }
    }

    pub(crate) fn apply_gate(&mut self, g: &Gate) {
        match *g {
            Gate::CX(c, t) => self.apply_cx(c, t),
            _ => {
                let (q, m) = single_qubit_matrix(g).expect("single-qubit gate");
                self.apply_1q(q, &m);
            }
        }
    }
}

impl Mul for &UnitaryMatrix {
    type Output = UnitaryMatrix;

    fn mul(self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        UnitaryMatrix { dim: n, data }
    }
}

/// 2x2 complex matrix used for single-qubit algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);

    pub fn rz(theta: f64) -> Mat2 {
        let h = theta / 2.0;
        Mat2([
            [Complex64::from_polar(1.0, -h), ZERO],
            [ZERO, Complex64::from_polar(1.0, h)],
        ])
    }

    pub fn rx(theta: f64) -> Mat2 {
        let (s, c) = (theta / 2.0).sin_cos();
        let c = Complex64::new(c, 0.0);
        let s = Complex64::new(0.0, -s);
        Mat2([[c, s], [s, c]])
    }

    pub fn pauli(p: Pauli) -> Mat2 {
        match p {
            Pauli::I => Mat2::IDENTITY,
            Pauli::X => Mat2([[ZERO, ONE], [ONE, ZERO]]),
            Pauli::Y => Mat2([[ZERO, -I], [I, ZERO]]),
            Pauli::Z => Mat2([[ONE, ZERO], [ZERO, -ONE]]),
        }
    }

    pub fn adjoint(&self) -> Mat2 {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Distance to `other` after removing the best global phase.
    pub fn phase_distance(&self, other: &Mat2) -> f64 {
        let mut tr = ZERO;
        for r in 0..2 {
            for c in 0..2 {
                tr += other.0[r][c].conj() * self.0[r][c];
            }
        }
        let phase = if tr.norm() > 1e-300 {
            tr / tr.norm()
        } else {
            ONE
        };
        let mut d: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                d = d.max((self.0[r][c] - phase * other.0[r][c]).norm());
            }
        }
        d
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

/// Matrix of a single-qubit gate, with the wire it acts on.
pub fn single_qubit_matrix(g: &Gate) -> Option<(usize, Mat2)> {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let m = match *g {
        Gate::H(q) => (q, Mat2([[h, h], [h, -h]])),
        Gate::X(q) => (q, Mat2::pauli(Pauli::X)),
        Gate::Z(q) => (q, Mat2::pauli(Pauli::Z)),
        Gate::S(q) => (q, Mat2([[ONE, ZERO], [ZERO, I]])),
        Gate::Sdg(q) => (q, Mat2([[ONE, ZERO], [ZERO, -I]])),
        Gate::V(q) => (q, Mat2::rx(std::f64::consts::FRAC_PI_2)),
        Gate::Vdg(q) => (q, Mat2::rx(-std::f64::consts::FRAC_PI_2)),
        Gate::Rz(q, a) => (q, Mat2::rz(a)),
        Gate::Rx(q, a) => (q, Mat2::rx(a)),
        Gate::CX(..) => return None,
    };
    Some(m)
}

fn check_width(width: usize) -> Result<()> {
    if width > ORACLE_LIMIT {
        Err(Error::OracleLimit {
            width,
            limit: ORACLE_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Full matrix of `c`, including its global phase.
pub fn unitary(c: &Circuit) -> Result<UnitaryMatrix> {
    check_width(c.width())?;
    let mut u = UnitaryMatrix::identity(c.width());
    for g in c.gates() {
        u.apply_gate(g);
    }
    if c.global_phase != 0.0 {
        u = u.scale(Complex64::from_polar(1.0, c.global_phase));
    }
    Ok(u)
}

/// `exp(-i theta/2 P)` for the gadget's string `P`.
pub fn gadget_unitary(g: &PauliGadget) -> Result<UnitaryMatrix> {
    let width = g.string.len();
    check_width(width)?;
    let dim = 1usize << width;
    let (s, c) = (g.angle / 2.0).sin_cos();
    let mut flip = 0usize;
    for (q, p) in g.string.iter().enumerate() {
        if matches!(p, Pauli::X | Pauli::Y) {
            flip |= 1 << q;
        }
    }
    let mut data = vec![ZERO; dim * dim];
    for col in 0..dim {
        // sigma |col> = phase |col ^ flip>
        let mut phase = ONE;
        for (q, p) in g.string.iter().enumerate() {
            let bit = (col >> q) & 1;
            match p {
                Pauli::I | Pauli::X => {}
                Pauli::Z if bit == 1 => phase = -phase,
                Pauli::Z => {}
                Pauli::Y => phase *= if bit == 0 { I } else { -I },
            }
        }
        data[col * dim + col] += Complex64::new(c, 0.0);
        let row = col ^ flip;
        data[row * dim + col] += Complex64::new(0.0, -s) * phase;
    }
    Ok(UnitaryMatrix { dim, data })
}

/// True iff `a = e^{i phi} b` elementwise within `tol` for some `phi`.
pub fn equiv_up_to_phase(a: &UnitaryMatrix, b: &UnitaryMatrix, tol: f64) -> Result<bool> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(a.dim, b.dim));
    }
    // phi from tr(b^dagger a)
    let tr: Complex64 = a.data.iter().zip(&b.data).map(|(x, y)| y.conj() * x).sum();
    if tr.norm() < 1e-12 {
        return Ok(a.max_diff(b) <= tol && b.data.iter().all(|x| x.norm() <= tol));
    }
    let phase = tr / tr.norm();
    let d = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max);
    Ok(d <= tol)
}

/// Oracle comparison of two circuits up to global phase.
pub fn circuits_equivalent(a: &Circuit, b: &Circuit, tol: f64) -> Result<bool> {
    if a.width() != b.width() {
        return Err(Error::WidthMismatch {
            left: a.width(),
            right: b.width(),
        });
    }
    equiv_up_to_phase(&unitary(a)?, &unitary(b)?, tol)
}
