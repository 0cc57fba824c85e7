//! Integrals over the whole triangle T and over the boundary layer T ∖ Ω_a.

use std::f64::consts::PI;

use super::singular::omc;
use crate::geometry::SQRT3;

/// ∫_T |∇u1|².
pub const T_GRAD_U1: f64 = 2.0 * PI * PI / SQRT3;
/// ∫_T u1².
pub const T_U1_SQ: f64 = 3.0 * SQRT3 / 8.0;
/// ∫_T |∇û1|².
pub const T_GRAD_U1_HAT: f64 = 8.0 * PI * PI / SQRT3;
/// ∫_T û1².
pub const T_U1_HAT_SQ: f64 = 3.0 * SQRT3 / 8.0;
/// ∫_T u1 û1 and ∫_T ∇u1·∇û1 both vanish.
pub const T_MIXED: f64 = 0.0;

/// The six layer integrals F1..F6 of U1, V1, U2, V2, U3, V3 over the top
/// corner triangle cut off by y = √3/2 (1 − a).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LayerIntegrals {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub f4: f64,
    pub f5: f64,
    pub f6: f64,
}

impl LayerIntegrals {
    pub fn as_array(&self) -> [f64; 6] {
        [self.f1, self.f2, self.f3, self.f4, self.f5, self.f6]
    }
}

pub fn layer_integrals(a: f64) -> LayerIntegrals {
    let pi2 = PI * PI;
    let x = 2.0 * PI * a;
    let (s1, c1) = x.sin_cos();
    let (s2, c2) = (2.0 * x).sin_cos();
    let t2 = omc(x) + x * s1;
    let t4 = omc(2.0 * x) + 2.0 * x * s2;
    LayerIntegrals {
        f1: 9.0 * SQRT3 * a * a / 8.0 + 3.0 * SQRT3 / (8.0 * pi2) * t2,
        f2: 2.0 * SQRT3 * pi2 * a * a - SQRT3 / 3.0 * t2,
        f3: 9.0 * SQRT3 * a * a / 8.0 + 3.0 * SQRT3 / (32.0 * pi2) * t4,
        f4: 8.0 * SQRT3 * pi2 * a * a - SQRT3 / 3.0 * t4,
        f5: 3.0 * SQRT3 / (16.0 * pi2) * (c1 + c2 - 2.0 - 2.0 * x * s1),
        f6: 2.0 * SQRT3 / 3.0 * (2.0 * c1 - 1.0 - c2 - x * s1),
    }
}

/// Derivatives F1'..F6' with respect to a.
pub fn layer_derivatives(a: f64) -> LayerIntegrals {
    let x = 2.0 * PI * a;
    let (s1, c1) = x.sin_cos();
    let (s2, c2) = (2.0 * x).sin_cos();
    let k = 3.0 * SQRT3 / (8.0 * PI);
    let m = 4.0 * PI * SQRT3 / 3.0;
    LayerIntegrals {
        f1: k * (3.0 * x + 4.0 * s1 + 2.0 * x * c1),
        f2: m * (0.5 * x * omc(x) + (x - s1)),
        f3: k * (3.0 * x + 2.0 * s2 + 2.0 * x * c2),
        f4: m * (2.0 * x * omc(2.0 * x) + 2.0 * (2.0 * x - s2)),
        f5: k * (-3.0 * s1 - 2.0 * s2 - 2.0 * x * c1),
        f6: -m * (3.0 * s1 * omc(x) + c1 * (x - s1)),
    }
}

/// N̂ = ∫_{Ω_a} |∇v_k|².
pub fn n_hat(k: f64, a: f64) -> f64 {
    let l = layer_integrals(a);
    let (w1, w2, w3) = ((1.0 - k) * (1.0 - k), k * k, 2.0 * k * (1.0 - k));
    w1 * (T_GRAD_U1 - l.f2) + w2 * (T_GRAD_U1_HAT - l.f4) + w3 * (T_MIXED - l.f6)
}

/// D̂ = ∫_{Ω_a} v_k².
pub fn d_hat(k: f64, a: f64) -> f64 {
    let l = layer_integrals(a);
    let (w1, w2, w3) = ((1.0 - k) * (1.0 - k), k * k, 2.0 * k * (1.0 - k));
    w1 * (T_U1_SQ - l.f1) + w2 * (T_U1_HAT_SQ - l.f3) + w3 * (T_MIXED - l.f5)
}

/// dN̂/da.
pub fn n_hat_prime(k: f64, a: f64) -> f64 {
    let l = layer_derivatives(a);
    -((1.0 - k) * (1.0 - k) * l.f2 + k * k * l.f4 + 2.0 * k * (1.0 - k) * l.f6)
}

/// dD̂/da.
pub fn d_hat_prime(k: f64, a: f64) -> f64 {
    let l = layer_derivatives(a);
    -((1.0 - k) * (1.0 - k) * l.f1 + k * k * l.f3 + 2.0 * k * (1.0 - k) * l.f5)
}
