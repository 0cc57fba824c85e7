//! Evaluation of closed forms next to their removable singularities.
//!
//! Every singular denominator handled here is affine in (a, c). Close to
//! such a line the direct formula loses digits to cancellation, so the value
//! is rebuilt from samples taken a safe distance away along a fixed
//! transversal direction: the degree-5 interpolant through six samples is a
//! truncated Taylor expansion in the vanishing quantity, evaluated at zero.

use std::f64::consts::FRAC_1_SQRT_2;

/// Denominators smaller than this trigger the fallback.
pub const SINGULAR_THRESHOLD: f64 = 1e-6;

/// Sample spacing along the transversal direction.
const STEP: f64 = 1e-3;

/// Samples must keep every registered denominator at least this far from 0.
const SAFE_GAP: f64 = 1e-4;

/// An affine denominator `ca * a + cc * c + c0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Denominator {
    pub ca: f64,
    pub cc: f64,
    pub c0: f64,
}

impl Denominator {
    pub const fn new(ca: f64, cc: f64, c0: f64) -> Self {
        Self { ca, cc, c0 }
    }

    #[inline]
    pub fn eval(&self, a: f64, c: f64) -> f64 {
        self.ca * a + self.cc * c + self.c0
    }
}

pub const D_A: Denominator = Denominator::new(1.0, 0.0, 0.0);
pub const D_C: Denominator = Denominator::new(0.0, 1.0, 0.0);
pub const D_C_MINUS_A: Denominator = Denominator::new(-1.0, 1.0, 0.0);
pub const D_2C_MINUS_A: Denominator = Denominator::new(-1.0, 2.0, 0.0);
pub const D_1_MINUS_3A: Denominator = Denominator::new(-3.0, 0.0, 1.0);
pub const D_3A_MINUS_4C: Denominator = Denominator::new(3.0, -4.0, 0.0);
pub const D_3A_MINUS_2C: Denominator = Denominator::new(3.0, -2.0, 0.0);

pub fn near_singular(dens: &[Denominator], a: f64, c: f64) -> bool {
    dens.iter().any(|d| d.eval(a, c).abs() < SINGULAR_THRESHOLD)
}

/// Direct evaluation away from the singular lines, the expansion next to them.
#[inline]
pub fn regularized<F: Fn(f64, f64) -> f64>(raw: F, dens: &[Denominator], a: f64, c: f64) -> f64 {
    if near_singular(dens, a, c) {
        expansion(raw, dens, a, c)
    } else {
        raw(a, c)
    }
}

/// Interpolates `raw` along u = (−1, 1)/√2 through t = ±h, ±2h, ±3h and
/// returns the interpolant at t = 0. The direction u is transversal to all
/// registered lines, at 45 degrees or more to each.
pub fn expansion<F: Fn(f64, f64) -> f64>(raw: F, dens: &[Denominator], a: f64, c: f64) -> f64 {
    const NODES: [f64; 6] = [-3.0, -2.0, -1.0, 1.0, 2.0, 3.0];
    // Lagrange weights of those nodes at zero; scale free.
    const WEIGHTS: [f64; 6] = [0.05, -0.3, 0.75, 0.75, -0.3, 0.05];
    let (ua, uc) = (-FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    let mut h = STEP;
    for _ in 0..12 {
        let clear = NODES.iter().all(|&t| {
            let (sa, sc) = (a + t * h * ua, c + t * h * uc);
            dens.iter().all(|d| d.eval(sa, sc).abs() >= SAFE_GAP)
        });
        if clear {
            break;
        }
        h *= 1.37;
    }
    NODES
        .iter()
        .zip(WEIGHTS)
        .map(|(&t, w)| w * raw(a + t * h * ua, c + t * h * uc))
        .sum()
}

/// 1 − cos x without cancellation.
#[inline]
pub fn omc(x: f64) -> f64 {
    let s = (0.5 * x).sin();
    2.0 * s * s
}

/// cos x − cos y without cancellation when x ≈ y.
#[inline]
pub fn cos_diff(x: f64, y: f64) -> f64 {
    -2.0 * (0.5 * (x + y)).sin() * (0.5 * (x - y)).sin()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_reproduce_quintics() {
        let nodes = [-3.0, -2.0, -1.0, 1.0, 2.0, 3.0];
        let w = [0.05, -0.3, 0.75, 0.75, -0.3, 0.05];
        for deg in 0..6 {
            let s: f64 = nodes.iter().zip(w).map(|(t, w)| w * f64::powi(*t, deg)).sum();
            let exact = if deg == 0 { 1.0 } else { 0.0 };
            assert!((s - exact).abs() < 1e-14, "degree {deg}: {s}");
        }
    }

    #[test]
    fn sinc_like_limit() {
        // (cos a − cos c)/(c − a) → sin a as c → a.
        let raw = |a: f64, c: f64| cos_diff(a, c) / (c - a);
        let v = regularized(raw, &[D_C_MINUS_A], 0.3, 0.3);
        assert!((v - 0.3f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn helpers_match_naive_forms() {
        for &x in &[0.1, 1.0, 2.5] {
            assert!((omc(x) - (1.0 - f64::cos(x))).abs() < 1e-15);
            assert!((cos_diff(x, 0.7) - (x.cos() - 0.7f64.cos())).abs() < 1e-15);
        }
    }
}
