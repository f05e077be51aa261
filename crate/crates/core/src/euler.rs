//! Single-qubit Euler decompositions.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::sim::Mat2;

const GIMBAL_TOL: f64 = 1e-12;

/// Maps an angle into `(-pi, pi]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(TAU);
    if t > PI {
        t -= TAU;
    }
    t
}

/// `u = e^{i phase} Rz(c) Rx(b) Rz(a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    /// Applied first.
    pub a: f64,
    pub b: f64,
    /// Applied last.
    pub c: f64,
    pub phase: f64,
}

/// ZXZ decomposition. At gimbal lock the last angle `c` is 0.
pub fn zxz(u: &Mat2) -> EulerAngles {
    let det = u.det();
    let root = det.sqrt();
    let m = u.0;
    let (u00, u10) = (m[0][0] / root, m[1][0] / root);
    let b = 2.0 * u10.norm().atan2(u00.norm());
    let (a, c) = if u10.norm() < GIMBAL_TOL {
        (-2.0 * u00.arg(), 0.0)
    } else if u00.norm() < GIMBAL_TOL {
        (-(2.0 * u10.arg() + PI), 0.0)
    } else {
        let sum = -2.0 * u00.arg();
        let diff = 2.0 * u10.arg() + PI;
        ((sum - diff) / 2.0, (sum + diff) / 2.0)
    };
    let (a, b, c) = (normalize_angle(a), normalize_angle(b), normalize_angle(c));
    let rebuilt = Mat2::rz(c) * Mat2::rx(b) * Mat2::rz(a);
    EulerAngles {
        a,
        b,
        c,
        phase: relative_phase(u, &rebuilt),
    }
}

/// XZX decomposition: `u = e^{i phase} Rx(c) Rz(b) Rx(a)`.
pub fn xzx(u: &Mat2) -> EulerAngles {
    let h = hadamard();
    zxz(&(h * *u * h))
}

fn hadamard() -> Mat2 {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Mat2([[s, s], [s, -s]])
}

/// `phi` with `u = e^{i phi} v`, assuming they agree up to phase.
fn relative_phase(u: &Mat2, v: &Mat2) -> f64 {
    let mut tr = Complex64::new(0.0, 0.0);
    for r in 0..2 {
        for c in 0..2 {
            tr += v.0[r][c].conj() * u.0[r][c];
        }
    }
    tr.arg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(u: &Mat2, v: &Mat2) -> bool {
        u.0.iter()
            .flatten()
            .zip(v.0.iter().flatten())
            .all(|(x, y)| (x - y).norm() < 1e-9)
    }

    fn phased(m: Mat2, phase: f64) -> Mat2 {
        let p = Complex64::from_polar(1.0, phase);
        Mat2([
            [m.0[0][0] * p, m.0[0][1] * p],
            [m.0[1][0] * p, m.0[1][1] * p],
        ])
    }

    #[test]
    fn normalization_range() {
        assert_eq!(normalize_angle(PI), PI);
        assert_eq!(normalize_angle(-PI), PI);
        assert!((normalize_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(normalize_angle(0.0), 0.0);
    }

    #[test]
    fn gimbal_points_zero_the_last_angle() {
        let e = zxz(&(Mat2::rz(0.4) * Mat2::rz(0.5)));
        assert_eq!(e.c, 0.0);
        assert!(e.b.abs() < 1e-12);
        assert!((e.a - 0.9).abs() < 1e-12);
        let e = zxz(&(Mat2::rz(0.4) * Mat2::rx(PI) * Mat2::rz(0.2)));
        assert_eq!(e.c, 0.0);
        let rebuilt = Mat2::rz(e.c) * Mat2::rx(e.b) * Mat2::rz(e.a);
        assert!(close(
            &(Mat2::rz(0.4) * Mat2::rx(PI) * Mat2::rz(0.2)),
            &phased(rebuilt, e.phase)
        ));
    }

    proptest! {
        #[test]
        fn zxz_and_xzx_rebuild(a in -4.0f64..4.0, b in -4.0f64..4.0, c in -4.0f64..4.0, g in -4.0f64..4.0) {
            let u = phased(Mat2::rx(c) * Mat2::rz(b) * Mat2::rx(a) * Mat2::rz(0.3), g);
            let e = zxz(&u);
            let r = phased(Mat2::rz(e.c) * Mat2::rx(e.b) * Mat2::rz(e.a), e.phase);
            prop_assert!(close(&u, &r));
            let e = xzx(&u);
            let r = phased(Mat2::rx(e.c) * Mat2::rz(e.b) * Mat2::rx(e.a), e.phase);
            prop_assert!(close(&u, &r));
        }
    }
}
