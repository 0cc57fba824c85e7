//! The functions f1, f2 and G that bound F for small a, and the
//! polynomial majorants used to show f1 + a0 f2 ≤ 0.

use std::f64::consts::PI;

use super::singular::{cos_diff, omc, regularized, D_2C_MINUS_A, D_C_MINUS_A};

/// c0 = (118 − √3422)/178, where the two branches of M(1/60, c) cross.
pub const C0_SWITCH: f64 = 0.334_281_667_366_074_9;

/// Coefficients of the quartic majorant 1 − cos u ≤ Σ αᵢ uⁱ on [2π/3, π].
pub const REMES_ALPHA: [f64; 5] = [0.7280333, -1.46638984, 1.67079499, -0.45379449, 0.03551166];

/// 1 − cos u ≤ u²/2 − QUARTIC_COEF u⁴ on [0, π].
pub const QUARTIC_COEF: f64 = 0.03;

pub fn c0_switch() -> f64 {
    (118.0 - 3422f64.sqrt()) / 178.0
}

/// f1(c) = 2 (1 + 1/c)(1 − cos 2πc) − π² (4c² − 3c + 2).
pub fn f1(c: f64) -> f64 {
    let pi2 = PI * PI;
    if c.abs() < 1e-6 {
        // Series of 2(1 + 1/c)(1 − cos 2πc) through c³.
        let lead = 4.0 * pi2 * c + 4.0 * pi2 * c * c - 4.0 / 3.0 * pi2 * pi2 * c * c * c;
        return lead - pi2 * (4.0 * c * c - 3.0 * c + 2.0);
    }
    2.0 * (1.0 + 1.0 / c) * omc(2.0 * PI * c) - pi2 * (4.0 * c * c - 3.0 * c + 2.0)
}

/// M(a0, c) = max((1 − c)², (1 − a0 − c)² / ((1 − a0)(1 − 2a0))).
pub fn m_max(a0: f64, c: f64) -> f64 {
    let b = 1.0 - a0 - c;
    ((1.0 - c) * (1.0 - c)).max(b * b / ((1.0 - a0) * (1.0 - 2.0 * a0)))
}

pub fn kappa(a0: f64) -> f64 {
    (3.0 - 4.0 * a0) / ((1.0 - a0) * (1.0 - 2.0 * a0))
}

pub fn f2(a0: f64, c: f64) -> f64 {
    -2.0 * PI * (2.0 * PI * a0).sin() / a0
        + omc(2.0 * PI * c) * (kappa(a0) - 4.0 * (1.0 + c))
        + PI * PI * (5.0 + 12.0 * c + 9.0 * c * c + 8.0 * c * c * c + 2.0 * m_max(a0, c))
}

fn raw_g(a: f64, c: f64) -> f64 {
    (2.0 * c - a) / (2.0 * (c - a)) * cos_diff(2.0 * PI * a, 2.0 * PI * c) - 2.0 * (c - a) / (2.0 * c - a) * cos_diff(PI * a, 2.0 * PI * c)
}

/// G(a, c), the quantity bounded in the small-a regime.
pub fn big_g(a: f64, c: f64) -> f64 {
    regularized(raw_g, &[D_C_MINUS_A, D_2C_MINUS_A], a, c)
}

/// The majorant (1 − cos 2πc)/c · a of G.
pub fn g_bound(a: f64, c: f64) -> f64 {
    omc(2.0 * PI * c) / c * a
}

/// Polynomials with ascending coefficients.
pub mod poly {
    pub fn eval(p: &[f64], x: f64) -> f64 {
        p.iter().rev().fold(0.0, |acc, &q| acc * x + q)
    }

    pub fn add(p: &[f64], q: &[f64]) -> Vec<f64> {
        let n = p.len().max(q.len());
        (0..n)
            .map(|i| p.get(i).copied().unwrap_or(0.0) + q.get(i).copied().unwrap_or(0.0))
            .collect()
    }

    pub fn mul(p: &[f64], q: &[f64]) -> Vec<f64> {
        let mut r = vec![0.0; p.len() + q.len() - 1];
        for (i, &a) in p.iter().enumerate() {
            for (j, &b) in q.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        r
    }

    pub fn scale(p: &[f64], s: f64) -> Vec<f64> {
        p.iter().map(|&q| q * s).collect()
    }

    pub fn derivative(p: &[f64]) -> Vec<f64> {
        p.iter().enumerate().skip(1).map(|(i, &q)| i as f64 * q).collect()
    }

    /// Upper bound of |p| on [0, x_max] (x_max ≥ 0) from absolute coefficients.
    pub fn abs_bound(p: &[f64], x_max: f64) -> f64 {
        p.iter().rev().fold(0.0, |acc, &q| acc * x_max + q.abs())
    }
}

/// c (f1 + a0 f2) with 1 − cos 2πc replaced by the polynomial `x` and the
/// max term by the polynomial `m`. Every coefficient of `x` in that
/// expression is nonnegative on [0, 1/2], so this majorizes c (f1 + a0 f2).
fn c_times_bound(a0: f64, x: &[f64], m: &[f64]) -> Vec<f64> {
    let pi2 = PI * PI;
    let coef_x = [2.0, 2.0 + a0 * (kappa(a0) - 4.0), -4.0 * a0];
    let rest = poly::add(
        &[-2.0 * pi2 - 2.0 * PI * (2.0 * PI * a0).sin(), 3.0 * pi2, -4.0 * pi2],
        &poly::scale(&poly::add(&[5.0, 12.0, 9.0, 8.0], &poly::scale(m, 2.0)), a0 * pi2),
    );
    poly::add(&poly::mul(&coef_x, x), &poly::mul(&[0.0, 1.0], &rest))
}

/// P5 with f1 + f2(1/60, ·)/60 ≤ π² P5(c) on [0, c0], from the quartic
/// cosine majorant and the M branch (59 − 60c)²/3422.
pub fn p5_coefficients() -> Vec<f64> {
    let pi2 = PI * PI;
    let x = [0.0, 0.0, 2.0 * pi2, 0.0, -16.0 * QUARTIC_COEF * pi2 * pi2];
    let m = poly::scale(&poly::mul(&[59.0, -60.0], &[59.0, -60.0]), 1.0 / 3422.0);
    let t = c_times_bound(1.0 / 60.0, &x, &m);
    // The constant term of t vanishes identically; dividing by c drops it.
    poly::scale(&t[1..], 1.0 / pi2)
}

/// P6 with f1 + f2(1/60, ·)/60 ≤ (π²/c) P6(c) on [c0, 1/2], from the
/// Remes quartic in u = 2πc and the M branch (1 − c)².
pub fn p6_coefficients() -> Vec<f64> {
    let x: Vec<f64> = REMES_ALPHA
        .iter()
        .enumerate()
        .map(|(i, &al)| al * (2.0 * PI).powi(i as i32))
        .collect();
    let t = c_times_bound(1.0 / 60.0, &x, &[1.0, -2.0, 1.0]);
    poly::scale(&t, 1.0 / (PI * PI))
}

/// The displayed quadratic majorant for a0 = 4/25 and 1 − cos 2πc ≤ 2π²c²:
/// f1 + (4/25) f2 ≤ (π²/425)(18228/21 c² + 3391 c − 342 − (850/π) sin(8π/25)).
pub fn a0_016_majorant(c: f64) -> f64 {
    PI * PI / 425.0 * (18228.0 / 21.0 * c * c + 3391.0 * c - 342.0 - 850.0 / PI * (8.0 * PI / 25.0).sin())
}
