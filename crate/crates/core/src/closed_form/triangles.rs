//! Exact integrals of φ, ψ, η over the two small triangles
//! T_N = Q1(c) B Q2(c) and T_D = A B Q2(c).

use std::f64::consts::PI;

use super::singular::{
    cos_diff, omc, regularized, Denominator, D_1_MINUS_3A, D_2C_MINUS_A, D_3A_MINUS_2C, D_3A_MINUS_4C, D_A, D_C, D_C_MINUS_A,
};
use crate::geometry::{Point2, SQRT3};

const K: f64 = SQRT3 / (8.0 * PI * PI);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriIntegrals {
    pub phi: f64,
    pub psi: f64,
    pub eta: f64,
}

/// The points A, B, C, Q1(c), Q2(c) of the trapezoid construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaVertices {
    pub a: Point2,
    pub b: Point2,
    pub c: Point2,
    pub q1: Point2,
    pub q2: Point2,
}

pub fn ca_vertices(a: f64, c: f64) -> CaVertices {
    let top = SQRT3 / 2.0 * (1.0 - a);
    CaVertices {
        a: Point2::new(0.0, top),
        b: Point2::new(0.5 * a, top),
        c: Point2::new(0.25, SQRT3 / 4.0),
        q1: Point2::new(a * (1.0 - 2.0 * c) / (2.0 * (1.0 - 2.0 * a)), top),
        q2: Point2::new(0.5 * c, SQRT3 / 2.0 * (1.0 - c)),
    }
}

/// |T_N| = √3/4 · a (c − a)² / (1 − 2a).
pub fn tn_area(a: f64, c: f64) -> f64 {
    SQRT3 / 4.0 * a * (c - a) * (c - a) / (1.0 - 2.0 * a)
}

/// |T_D| = √3/8 · a (c − a).
pub fn td_area(a: f64, c: f64) -> f64 {
    SQRT3 / 8.0 * a * (c - a)
}

const TN_PHI_DENS: [Denominator; 1] = [D_A];
const TN_PSI_DENS: [Denominator; 1] = [D_1_MINUS_3A];
const TN_ETA_DENS: [Denominator; 1] = [D_A];
const TD_PHI_DENS: [Denominator; 3] = [D_A, D_C_MINUS_A, D_2C_MINUS_A];
const TD_PSI_DENS: [Denominator; 3] = [D_C, D_3A_MINUS_4C, D_3A_MINUS_2C];
const TD_ETA_DENS: [Denominator; 3] = [D_A, D_C_MINUS_A, D_2C_MINUS_A];

pub fn raw_i1(a: f64, c: f64) -> f64 {
    let tau = 2.0 * PI;
    let q = 1.0 - 2.0 * a;
    K * ((c - a) / (2.0 * a - 1.0) * tau * a * (tau * a).sin()
        + (1.0 - a) / q * cos_diff(tau * a, tau * c)
        + q / a * omc(tau * a * (c - a) / q)
        + q / (1.0 - a) * cos_diff(tau * c, tau * a * (1.0 - a - c) / q))
}

pub fn raw_tn_phi(a: f64, c: f64) -> f64 {
    let tau = 2.0 * PI;
    let q = 1.0 - 2.0 * a;
    K * (-(c - a) / q * tau * a * (tau * a).sin()
        + q / (1.0 - a) * cos_diff(tau * c, tau * a * (1.0 - a - c) / q)
        + (1.0 - a) / q * cos_diff(tau * a, tau * c)
        + q / a * omc(tau * a * (a - c) / q))
}

pub fn raw_tn_psi(a: f64, c: f64) -> f64 {
    let tau = 2.0 * PI;
    let q = 1.0 - 2.0 * a;
    K * (q / (1.0 - 3.0 * a) * cos_diff(tau * a * (1.0 - 3.0 * a + c) / q, tau * c)
        + q / (2.0 - 3.0 * a) * cos_diff(2.0 * tau * c, tau * a * (2.0 - 3.0 * a - c) / q)
        - 0.5 * (cos_diff(tau * a, tau * c) + cos_diff(2.0 * tau * c, 2.0 * tau * a))
        + 0.5 * q * cos_diff(tau * c, tau * a * (1.0 - 2.0 * c) / q))
}

pub fn raw_tn_eta(a: f64, c: f64) -> f64 {
    let tau2 = 4.0 * PI;
    let q = 1.0 - 2.0 * a;
    let x = tau2 * a * (c - a) / q;
    let y = tau2 * a * (1.0 - a - c) / q;
    SQRT3 / (32.0 * PI * PI)
        * (q / (a * (1.0 - a)) * omc(x)
            + q / (1.0 - a) * (cos_diff(tau2 * c, y) - omc(x))
            + ((1.0 - a) * cos_diff(tau2 * a, tau2 * c) - tau2 * a * (c - a) * (tau2 * a).sin()) / q)
}

pub fn raw_i2(a: f64, c: f64) -> f64 {
    let tau = 2.0 * PI;
    K * (-PI * a * (tau * a).sin()
        + (2.0 * c - a) / (2.0 * (c - a)) * cos_diff(tau * a, tau * c)
        + 2.0 * (c - a) * (omc(PI * a) / a + cos_diff(tau * c, PI * a) / (2.0 * c - a)))
}

pub fn raw_td_phi(a: f64, c: f64) -> f64 {
    let tau = 2.0 * PI;
    K * (-PI * a * (tau * a).sin()
        + 2.0 * (c - a) * (cos_diff(tau * c, PI * a) / (2.0 * c - a) + omc(PI * a) / a)
        + (2.0 * c - a) / (2.0 * (c - a)) * cos_diff(tau * a, tau * c))
}

pub fn raw_td_psi(a: f64, c: f64) -> f64 {
    let tau = 2.0 * PI;
    let inner = -(2.0 * tau * c).cos() + (2.0 * c * (1.5 * tau * a).cos() + (3.0 * a - 4.0 * c) * (tau * c).cos()) / (3.0 * a - 2.0 * c);
    K * (0.5 * cos_diff(tau * c, tau * a) + 0.5 * cos_diff(2.0 * tau * a, 2.0 * tau * c) - (c - a) * omc(tau * c) / (2.0 * c)
        + 2.0 * (c - a) / (3.0 * a - 4.0 * c) * inner)
}

pub fn raw_td_eta(a: f64, c: f64) -> f64 {
    let tau2 = 4.0 * PI;
    let ca4 = (tau2 * a).cos();
    let e = 2.0 * c - a;
    // (c cos 4πa − a cos 4πc)/(c − a) = cos 4πa + a (cos 4πa − cos 4πc)/(c − a)
    let ratio = ca4 + a * cos_diff(tau2 * a, tau2 * c) / (c - a);
    SQRT3 / (64.0 * PI * PI)
        * (-tau2 * a * (tau2 * a).sin() - 4.0 * (c - a) / e - a / e * ca4
            + (4.0 * c - 3.0 * a) / e * ratio
            + 8.0 * c * (c - a) / e * omc(PI * 2.0 * a) / a)
}

/// ∫_{T_N} φ as printed in the first display.
pub fn i1(a: f64, c: f64) -> f64 {
    regularized(raw_i1, &TN_PHI_DENS, a, c)
}

/// ∫_{T_D} φ as printed in the first display.
pub fn i2(a: f64, c: f64) -> f64 {
    regularized(raw_i2, &TD_PHI_DENS, a, c)
}

/// (∫φ, ∫ψ, ∫η) over T_N.
pub fn tn_integrals(a: f64, c: f64) -> TriIntegrals {
    TriIntegrals {
        phi: regularized(raw_tn_phi, &TN_PHI_DENS, a, c),
        psi: regularized(raw_tn_psi, &TN_PSI_DENS, a, c),
        eta: regularized(raw_tn_eta, &TN_ETA_DENS, a, c),
    }
}

/// (∫φ, ∫ψ, ∫η) over T_D.
pub fn td_integrals(a: f64, c: f64) -> TriIntegrals {
    TriIntegrals {
        phi: regularized(raw_td_phi, &TD_PHI_DENS, a, c),
        psi: regularized(raw_td_psi, &TD_PSI_DENS, a, c),
        eta: regularized(raw_td_eta, &TD_ETA_DENS, a, c),
    }
}

/// The raw formulas without the singular fallback, for continuity audits.
pub mod raw {
    pub use super::{raw_i1 as i1, raw_i2 as i2, raw_td_eta as td_eta, raw_td_phi as td_phi, raw_td_psi as td_psi};
    pub use super::{raw_tn_eta as tn_eta, raw_tn_phi as tn_phi, raw_tn_psi as tn_psi};
}

/// Each formula with the denominators it is regularized against.
pub fn singular_lines() -> [(&'static str, &'static [Denominator]); 6] {
    [
        ("tn_phi", &TN_PHI_DENS),
        ("tn_psi", &TN_PSI_DENS),
        ("tn_eta", &TN_ETA_DENS),
        ("td_phi", &TD_PHI_DENS),
        ("td_psi", &TD_PSI_DENS),
        ("td_eta", &TD_ETA_DENS),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_triangles_integrate_to_zero() {
        for &a in &[0.05, 0.2] {
            assert!(i1(a, a).abs() < 1e-14);
            assert!(i2(a, a).abs() < 1e-14);
            let t = td_integrals(a, a);
            assert!(t.psi.abs() < 1e-14 && t.eta.abs() < 1e-14);
        }
    }

    #[test]
    fn two_printings_agree() {
        for &(a, c) in &[(0.05, 0.3), (0.2, 0.45), (0.11, 0.12)] {
            assert!((i1(a, c) - tn_integrals(a, c).phi).abs() < 1e-15);
            assert!((i2(a, c) - td_integrals(a, c).phi).abs() < 1e-15);
        }
    }
}
