//! Certificate for the strip a ≤ 1/60 and for c ≤ 0.16, where F is bounded
//! by f1 + a0 f2 with a0 ∈ {1/60, 4/25}.

use serde::{Deserialize, Serialize};

use crate::closed_form::small_a::{a0_016_majorant, c0_switch, f1, f2, p5_coefficients, p6_coefficients, poly};

pub const DEFAULT_SAMPLES: usize = 100_000;

/// Maximum of a function sampled on a uniform grid of (lo, hi], inflated by
/// an estimated modulus of continuity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampledMax {
    pub lo: f64,
    pub hi: f64,
    pub samples: usize,
    pub max_value: f64,
    pub argmax: f64,
    /// Largest difference quotient between neighbouring samples, doubled.
    pub slope_estimate: f64,
    /// max_value + slope_estimate · spacing / 2.
    pub certified_upper: f64,
    pub verdict: bool,
}

fn sampled_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize, strict: bool) -> SampledMax {
    let h = (hi - lo) / n as f64;
    let mut best = (f64::NEG_INFINITY, lo);
    let mut slope: f64 = 0.0;
    let mut prev: Option<f64> = None;
    for i in 1..=n {
        let x = lo + i as f64 * h;
        let v = f(x);
        if v > best.0 {
            best = (v, x);
        }
        if let Some(p) = prev {
            slope = slope.max((v - p).abs() / h);
        }
        prev = Some(v);
    }
    let slope = 2.0 * slope;
    let upper = best.0 + slope * h / 2.0;
    SampledMax {
        lo,
        hi,
        samples: n,
        max_value: best.0,
        argmax: best.1,
        slope_estimate: slope,
        certified_upper: upper,
        verdict: if strict { upper < 0.0 } else { upper <= 0.0 },
    }
}

/// Negativity of a polynomial on [lo, hi]: samples plus a rigorous bound on
/// |p'| from its absolute coefficients, and a check at both endpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyCheck {
    pub coefficients: Vec<f64>,
    pub lo: f64,
    pub hi: f64,
    pub max_value: f64,
    pub derivative_bound: f64,
    pub certified_upper: f64,
    pub verdict: bool,
}

fn poly_check(p: Vec<f64>, lo: f64, hi: f64, n: usize) -> PolyCheck {
    let h = (hi - lo) / n as f64;
    let max = (0..=n).map(|i| poly::eval(&p, lo + i as f64 * h)).fold(f64::NEG_INFINITY, f64::max);
    let dbound = poly::abs_bound(&poly::derivative(&p), hi.abs().max(lo.abs()));
    let upper = max + dbound * h / 2.0;
    let ends = poly::eval(&p, lo) < 0.0 && poly::eval(&p, hi) < 0.0;
    PolyCheck {
        coefficients: p,
        lo,
        hi,
        max_value: max,
        derivative_bound: dbound,
        certified_upper: upper,
        verdict: ends && upper < 0.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallACertificate {
    pub c0: f64,
    /// f1 < 0 on (0, 1/2].
    pub f1: SampledMax,
    /// f1 + f2(1/60, ·)/60 ≤ 0 on (0, 1/2].
    pub a0_1_60: SampledMax,
    /// f1 + (4/25) f2(4/25, ·) ≤ 0 on (0, 0.16].
    pub a0_4_25: SampledMax,
    /// π² P5 majorant on [0, c0].
    pub p5: PolyCheck,
    /// (π²/c) P6 majorant on [c0, 1/2].
    pub p6: PolyCheck,
    /// The quadratic majorant for a0 = 4/25 is ≤ 0 on [0, 0.16] and dominates
    /// the sampled f1 + (4/25) f2.
    pub quadratic_majorant_ok: bool,
    /// Smallest of the negated certified upper bounds, i.e. the worst margin.
    pub margin: f64,
    pub verdict: bool,
}

pub fn small_a_certificate_with(samples: usize) -> SmallACertificate {
    let a1 = 1.0 / 60.0;
    let a2 = 4.0 / 25.0;
    let f1m = sampled_max(f1, 0.0, 0.5, samples, true);
    let s1 = sampled_max(|c| f1(c) + a1 * f2(a1, c), 0.0, 0.5, samples, false);
    let s2 = sampled_max(|c| f1(c) + a2 * f2(a2, c), 0.0, 0.16, samples, false);
    let c0 = c0_switch();
    let p5 = poly_check(p5_coefficients(), 0.0, c0, samples);
    let p6 = poly_check(p6_coefficients(), c0, 0.5, samples);
    // The quadratic has positive leading coefficients, so its maximum on
    // [0, 0.16] is at 0.16.
    let dominates = (1..=1000).all(|i| {
        let c = 0.16 * i as f64 / 1000.0;
        a0_016_majorant(c) >= f1(c) + a2 * f2(a2, c) - 1e-9
    });
    let quadratic_ok = dominates && a0_016_majorant(0.16) <= 0.0;
    let margin = [f1m.certified_upper, s1.certified_upper, s2.certified_upper]
        .iter()
        .map(|u| -u)
        .fold(f64::INFINITY, f64::min);
    let verdict = f1m.verdict && s1.verdict && s2.verdict && p5.verdict && p6.verdict && quadratic_ok;
    SmallACertificate {
        c0,
        f1: f1m,
        a0_1_60: s1,
        a0_4_25: s2,
        p5,
        p6,
        quadratic_majorant_ok: quadratic_ok,
        margin,
        verdict,
    }
}

pub fn small_a_certificate() -> SmallACertificate {
    small_a_certificate_with(DEFAULT_SAMPLES)
}
