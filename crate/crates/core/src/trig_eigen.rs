//! First Neumann eigenfunctions of the unit equilateral triangle and of the
//! inscribed half-size triangle, the two reflections of the triangle's
//! symmetry group, and the symmetrised combinations built from them.

use std::f64::consts::PI;

use crate::error::GeometryError;
use crate::geometry::{Point2, SQRT3};

/// Weight of the convex combination v_k = (1 − k) u1 + k û1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MixParam(f64);

impl MixParam {
    pub fn new(k: f64) -> Result<Self, GeometryError> {
        if (0.0..=1.0).contains(&k) {
            Ok(Self(k))
        } else {
            Err(GeometryError::OutOfRange {
                name: "k",
                value: k,
                range: "[0, 1]",
            })
        }
    }

    pub fn k(self) -> f64 {
        self.0
    }

    /// The three weights ((1−k)², k², 2k(1−k)).
    #[inline]
    pub fn weights(self) -> (f64, f64, f64) {
        let k = self.0;
        ((1.0 - k) * (1.0 - k), k * k, 2.0 * k * (1.0 - k))
    }
}

pub fn u1(p: Point2) -> f64 {
    (4.0 * PI * p.x / 3.0).sin() + 2.0 * (2.0 * PI * p.y / SQRT3).cos() * (2.0 * PI * p.x / 3.0).sin()
}

pub fn u1_hat(p: Point2) -> f64 {
    (8.0 * PI * p.x / 3.0).sin() - 2.0 * (4.0 * PI * p.y / SQRT3).cos() * (4.0 * PI * p.x / 3.0).sin()
}

pub fn grad_u1(p: Point2) -> [f64; 2] {
    let wx = 2.0 * PI / 3.0;
    let wy = 2.0 * PI / SQRT3;
    let (sy, cy) = (wy * p.y).sin_cos();
    [
        2.0 * wx * (2.0 * wx * p.x).cos() + 2.0 * wx * cy * (wx * p.x).cos(),
        -2.0 * wy * sy * (wx * p.x).sin(),
    ]
}

pub fn grad_u1_hat(p: Point2) -> [f64; 2] {
    let wx = 4.0 * PI / 3.0;
    let wy = 4.0 * PI / SQRT3;
    let (sy, cy) = (wy * p.y).sin_cos();
    [
        2.0 * wx * (2.0 * wx * p.x).cos() - 2.0 * wx * cy * (wx * p.x).cos(),
        2.0 * wy * sy * (wx * p.x).sin(),
    ]
}

pub fn v_k(k: MixParam, p: Point2) -> f64 {
    (1.0 - k.k()) * u1(p) + k.k() * u1_hat(p)
}

pub fn grad_v_k(k: MixParam, p: Point2) -> [f64; 2] {
    let g = grad_u1(p);
    let h = grad_u1_hat(p);
    let kk = k.k();
    [(1.0 - kk) * g[0] + kk * h[0], (1.0 - kk) * g[1] + kk * h[1]]
}

/// Reflection σ1 (i = 1) or σ2 (i = 2) across the two slanted symmetry
/// axes of T.
///
/// # Panics
/// Panics if `i` is not 1 or 2.
pub fn reflect(i: u8, p: Point2) -> Point2 {
    let h = SQRT3 / 2.0;
    match i {
        1 => Point2::new(0.5 * p.x + h * p.y - 0.25, h * p.x - 0.5 * p.y + SQRT3 / 4.0),
        2 => Point2::new(0.5 * p.x - h * p.y + 0.25, -h * p.x - 0.5 * p.y + SQRT3 / 4.0),
        _ => panic!("reflection index must be 1 or 2, got {i}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiPsiEta {
    pub phi: f64,
    pub psi: f64,
    pub eta: f64,
}

pub fn phi_psi_eta(p: Point2) -> PhiPsiEta {
    let t = 2.0 * PI * p.y / SQRT3;
    let c1 = t.cos();
    let c2 = (2.0 * t).cos();
    let c3 = (3.0 * t).cos();
    let c4 = (4.0 * t).cos();
    let cx = (2.0 * PI * p.x).cos();
    let c2x = (4.0 * PI * p.x).cos();
    PhiPsiEta {
        phi: c2 - 2.0 * c1 * cx,
        psi: c2x - 2.0 * c3 * cx,
        eta: c4 + 2.0 * c2 * c2x,
    }
}

/// Gradients of φ, ψ, η.
pub fn grad_phi_psi_eta(p: Point2) -> [[f64; 2]; 3] {
    let w = 2.0 * PI / SQRT3;
    let t = w * p.y;
    let (s1, c1) = t.sin_cos();
    let (s2, c2) = (2.0 * t).sin_cos();
    let (s3, c3) = (3.0 * t).sin_cos();
    let s4 = (4.0 * t).sin();
    let (sx, cx) = (2.0 * PI * p.x).sin_cos();
    let (s2x, c2x) = (4.0 * PI * p.x).sin_cos();
    let tau = 2.0 * PI;
    [
        [2.0 * tau * c1 * sx, -2.0 * w * s2 + 2.0 * w * s1 * cx],
        [-2.0 * tau * s2x + 2.0 * tau * c3 * sx, 6.0 * w * s3 * cx],
        [-4.0 * tau * c2 * s2x, -4.0 * w * s4 - 4.0 * w * s2 * c2x],
    ]
}

/// The six symmetrised quantities, closed forms in φ, ψ, η.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymCombos {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
}

pub fn sym_combos(p: Point2) -> SymCombos {
    let PhiPsiEta { phi, psi, eta } = phi_psi_eta(p);
    let pi2 = PI * PI;
    SymCombos {
        u1: 3.0 * (1.5 + phi),
        u2: 3.0 * (1.5 + eta),
        u3: -3.0 * (0.5 * psi + phi),
        v1: 8.0 * pi2 / 3.0 * (3.0 - phi),
        v2: 32.0 * pi2 / 3.0 * (3.0 - eta),
        v3: 16.0 * pi2 / 3.0 * (psi - phi),
    }
}

/// The same six quantities summed directly over p, σ1 p and σ2 p.
pub fn sym_combos_direct(p: Point2) -> SymCombos {
    let pts = [p, reflect(1, p), reflect(2, p)];
    let mut s = SymCombos {
        u1: 0.0,
        u2: 0.0,
        u3: 0.0,
        v1: 0.0,
        v2: 0.0,
        v3: 0.0,
    };
    for q in pts {
        let (a, b) = (u1(q), u1_hat(q));
        let (ga, gb) = (grad_u1(q), grad_u1_hat(q));
        s.u1 += a * a;
        s.u2 += b * b;
        s.u3 += a * b;
        s.v1 += ga[0] * ga[0] + ga[1] * ga[1];
        s.v2 += gb[0] * gb[0] + gb[1] * gb[1];
        s.v3 += ga[0] * gb[0] + ga[1] * gb[1];
    }
    s
}

/// U = (1−k)² U1 + k² U2 + 2k(1−k) U3.
pub fn big_u(k: MixParam, p: Point2) -> f64 {
    let (w1, w2, w3) = k.weights();
    let s = sym_combos(p);
    w1 * s.u1 + w2 * s.u2 + w3 * s.u3
}

/// V = (1−k)² V1 + k² V2 + 2k(1−k) V3.
pub fn big_v(k: MixParam, p: Point2) -> f64 {
    let (w1, w2, w3) = k.weights();
    let s = sym_combos(p);
    w1 * s.v1 + w2 * s.v2 + w3 * s.v3
}

/// U written out in φ, ψ, η.
pub fn big_u_expanded(k: MixParam, p: Point2) -> f64 {
    let (w1, w2, w3) = k.weights();
    let PhiPsiEta { phi, psi, eta } = phi_psi_eta(p);
    1.5 * (w1 * (3.0 + 2.0 * phi) + w2 * (3.0 + 2.0 * eta) + w3 * (-psi - 2.0 * phi))
}

/// V written out in φ, ψ, η.
pub fn big_v_expanded(k: MixParam, p: Point2) -> f64 {
    let (w1, w2, w3) = k.weights();
    let PhiPsiEta { phi, psi, eta } = phi_psi_eta(p);
    8.0 * PI * PI / 3.0 * (w1 * (3.0 - phi) + 4.0 * w2 * (3.0 - eta) + 2.0 * w3 * (psi - phi))
}

/// Analytic gradient of U.
pub fn grad_big_u(k: MixParam, p: Point2) -> [f64; 2] {
    let (w1, w2, w3) = k.weights();
    let [gphi, gpsi, geta] = grad_phi_psi_eta(p);
    let f = |i: usize| 1.5 * (2.0 * w1 * gphi[i] + 2.0 * w2 * geta[i] + w3 * (-gpsi[i] - 2.0 * gphi[i]));
    [f(0), f(1)]
}

/// U at the points A = (0, √3/2 (1−a)) and B = (a/2, √3/2 (1−a)) in
/// closed form.
pub fn big_u_at_a(k: f64, a: f64) -> f64 {
    let (w1, w2, w3) = ((1.0 - k) * (1.0 - k), k * k, 2.0 * k * (1.0 - k));
    let c = |m: f64| (m * PI * a).cos();
    1.5 * (w1 * (3.0 + 2.0 * c(2.0) + 4.0 * c(1.0))
        + w2 * (3.0 + 2.0 * c(4.0) + 4.0 * c(2.0))
        + w3 * (-1.0 - 2.0 * c(3.0) - 2.0 * c(2.0) - 4.0 * c(1.0)))
}

pub fn big_u_at_b(k: f64, a: f64) -> f64 {
    let (w1, w2, w3) = ((1.0 - k) * (1.0 - k), k * k, 2.0 * k * (1.0 - k));
    let c = |m: f64| (m * PI * a).cos();
    1.5 * (w1 * (5.0 + 4.0 * c(2.0)) + w2 * (5.0 + 4.0 * c(4.0)) + w3 * (-6.0 * c(2.0) - c(4.0) - 2.0))
}
