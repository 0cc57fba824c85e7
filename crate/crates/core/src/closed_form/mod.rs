//! Closed-form integrals and the assembled certificate quantities P̃, N, D
//! and F of the trapezoid construction.

mod layer;
pub mod singular;
pub mod small_a;
mod triangles;

use std::f64::consts::PI;

pub use layer::{
    d_hat, d_hat_prime, layer_derivatives, layer_integrals, n_hat, n_hat_prime, LayerIntegrals, T_GRAD_U1, T_GRAD_U1_HAT, T_MIXED,
    T_U1_HAT_SQ, T_U1_SQ,
};
pub use small_a::{big_g, f1, f2, g_bound, m_max, C0_SWITCH};
pub use triangles::{ca_vertices, i1, i2, raw, singular_lines, td_area, td_integrals, tn_area, tn_integrals, CaVertices, TriIntegrals};

use crate::error::GeometryError;
use crate::geometry::SQRT3;

/// A point (k, a, c) of the certificate family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaPoint {
    pub k: f64,
    pub a: f64,
    pub c: f64,
}

impl CaPoint {
    pub fn new(k: f64, a: f64, c: f64) -> Result<Self, GeometryError> {
        if !(0.0..=1.0 / 6.0).contains(&k) {
            return Err(GeometryError::OutOfRange {
                name: "k",
                value: k,
                range: "[0, 1/6]",
            });
        }
        if !(0.0..0.5).contains(&a) {
            return Err(GeometryError::OutOfRange {
                name: "a",
                value: a,
                range: "[0, 1/2)",
            });
        }
        if !(c >= a && c <= 0.5) {
            return Err(GeometryError::OutOfRange {
                name: "c",
                value: c,
                range: "[a, 1/2]",
            });
        }
        Ok(Self { k, a, c })
    }
}

/// R(a) = √(1 − 3a + 3a²), a third of the perimeter of H_a.
#[inline]
pub fn r_of(a: f64) -> f64 {
    (1.0 - 3.0 * a + 3.0 * a * a).sqrt()
}

/// Perimeter of the outer approximant: 6 (|AQ1| + |Q1Q2| + |Q2C|).
pub fn ptilde(a: f64, c: f64) -> f64 {
    6.0 / (1.0 - 2.0 * a) * (0.5 * (1.0 - 2.0 * c) * (1.0 - a) + (c - a) * r_of(a))
}

/// ∂P̃/∂a.
pub fn ptilde_da(a: f64, c: f64) -> f64 {
    let r = r_of(a);
    let q = 1.0 - 2.0 * a;
    -3.0 * (2.0 * r - 1.0) / (r * q * q) * (r * q + c - a)
}

/// ∂P̃/∂c, independent of c.
pub fn ptilde_dc(a: f64) -> f64 {
    -6.0 / (1.0 - 2.0 * a) * (1.0 - a - r_of(a))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ndf {
    pub n: f64,
    pub d: f64,
    pub f: f64,
}

/// All intermediate pieces of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NdfParts {
    pub n_hat: f64,
    pub d_hat: f64,
    /// ∫_{T_N} V
    pub i_n: f64,
    /// ∫_{T_D} U
    pub i_d: f64,
    pub ptilde: f64,
    pub ndf: Ndf,
}

/// ∫_{T_N} V from the T_N integrals of φ, ψ, η.
pub fn int_tn_v(k: f64, a: f64, c: f64) -> f64 {
    let t = tn_integrals(a, c);
    let area = tn_area(a, c);
    let (w1, w2, w3) = ((1.0 - k) * (1.0 - k), k * k, 2.0 * k * (1.0 - k));
    8.0 * PI * PI / 3.0 * (w1 * (3.0 * area - t.phi) + 4.0 * w2 * (3.0 * area - t.eta) + 2.0 * w3 * (t.psi - t.phi))
}

/// ∫_{T_D} U from the T_D integrals of φ, ψ, η.
pub fn int_td_u(k: f64, a: f64, c: f64) -> f64 {
    let t = td_integrals(a, c);
    let area = td_area(a, c);
    let (w1, w2, w3) = ((1.0 - k) * (1.0 - k), k * k, 2.0 * k * (1.0 - k));
    1.5 * (w1 * (3.0 * area + 2.0 * t.phi) + w2 * (3.0 * area + 2.0 * t.eta) + w3 * (-t.psi - 2.0 * t.phi))
}

/// Full assembly without range checks; used by the sweep and by
/// finite-difference audits that step slightly outside c ≥ a.
pub fn ndf_parts(k: f64, a: f64, c: f64) -> NdfParts {
    let n_hat = n_hat(k, a);
    let d_hat = d_hat(k, a);
    let i_n = int_tn_v(k, a, c);
    let i_d = int_td_u(k, a, c);
    let p = ptilde(a, c);
    let n = n_hat - 2.0 * i_n;
    let d = d_hat - 2.0 * i_d;
    NdfParts {
        n_hat,
        d_hat,
        i_n,
        i_d,
        ptilde: p,
        ndf: Ndf {
            n,
            d,
            f: p * p * n - 16.0 * PI * PI * d,
        },
    }
}

#[inline]
pub fn ndf_at(k: f64, a: f64, c: f64) -> Ndf {
    ndf_parts(k, a, c).ndf
}

pub fn ndf(q: &CaPoint) -> Ndf {
    ndf_at(q.k, q.a, q.c)
}

/// The printed k = 0 expression of N.
pub fn n_k0_printed(a: f64, c: f64) -> f64 {
    let x = 2.0 * PI * a;
    let pi2 = PI * PI;
    SQRT3 / 3.0 * (2.0 * pi2 * (1.0 - 3.0 * a * a) + singular::omc(x) + x * x.sin() - 12.0 * pi2 * a * (c - a) * (c - a) / (1.0 - 2.0 * a))
        + 16.0 * pi2 / 3.0 * i1(a, c)
}

/// The printed k = 0 expression of D.
pub fn d_k0_printed(a: f64, c: f64) -> f64 {
    let x = 2.0 * PI * a;
    3.0 * SQRT3 / 8.0 * (1.0 - 3.0 * a * a - 3.0 * a * (c - a) - (singular::omc(x) + x * x.sin()) / (PI * PI)) - 6.0 * i2(a, c)
}
