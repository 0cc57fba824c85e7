//! Upper bounds for |∂F/∂a| and |∂F/∂c| over a zone.
//!
//! The derivative of F = P̃² N − 16π² D is written as a sum of terms, each
//! the product of factors whose range over the zone is known in closed form.
//! Every factor is bounded by an interval and the terms are combined with
//! interval arithmetic.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::interval::Interval;
use super::Zone;
use crate::closed_form::{d_hat_prime, n_hat_prime, ptilde_da, ptilde_dc, r_of};
use crate::geometry::SQRT3;
use crate::trig_eigen::{big_u_at_a, big_u_at_b};

/// How the two brackets of positive and negative terms are merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BracketRule {
    /// Bound each bracket by an interval, add the intervals, take the magnitude.
    #[default]
    IntervalSum,
    /// max(upper end of the positive bracket, |lower end of the negative bracket|).
    SeparatedBrackets,
}

/// The factor ranges and the two brackets for each derivative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LipschitzTerms {
    pub ptilde: Interval,
    pub ptilde_a: Interval,
    pub ptilde_c: Interval,
    pub n_hat: Interval,
    pub n_hat_prime: Interval,
    pub d_hat_prime: Interval,
    pub i_n: Interval,
    pub h1: Interval,
    pub h2: Interval,
    pub h3: Interval,
    pub j1: Interval,
    pub j2: Interval,
    pub j3: Interval,
    pub pos_a: Interval,
    pub neg_a: Interval,
    pub pos_c: Interval,
    pub neg_c: Interval,
}

impl LipschitzTerms {
    pub fn bounds(&self, rule: BracketRule) -> (f64, f64) {
        match rule {
            BracketRule::IntervalSum => ((self.pos_a + self.neg_a).mag(), (self.pos_c + self.neg_c).mag()),
            BracketRule::SeparatedBrackets => (self.pos_a.hi.max(-self.neg_a.lo), self.pos_c.hi.max(-self.neg_c.lo)),
        }
    }
}

/// Lower bound of N̂ over k ∈ [0, 1/6] and a ≤ 1/4, quadratic in k.
pub fn n_hat_lower(k: f64) -> f64 {
    (k * k * (5.0 * PI * PI - 28.0) + k * (24.0 - 2.0 * PI * PI) + PI * PI + 4.0) / (2.0 * SQRT3)
}

/// Upper bound of N̂: its value on the whole triangle.
pub fn n_hat_upper(k: f64) -> f64 {
    2.0 * PI * PI / SQRT3 * (5.0 * k * k - 2.0 * k + 1.0)
}

pub fn lipschitz_terms(k: f64, a_min: f64, a_max: f64, c_min: f64, c_max: f64) -> LipschitzTerms {
    let pi2 = PI * PI;
    let kk = (1.0 + k) * (1.0 + k);
    let iv = Interval::new;

    let ptilde = iv(3.0 * r_of(a_max), 3.0 * (1.0 - a_min));
    // ∂aP̃ grows with a and shrinks with c; ∂cP̃ only depends on a.
    let ptilde_a = iv(ptilde_da(a_min, c_max), ptilde_da(a_max, c_min));
    let ptilde_c = iv(ptilde_dc(a_max), ptilde_dc(a_min));
    let n_hat = iv(n_hat_lower(k), n_hat_upper(k));
    let n_hat_prime = iv(n_hat_prime(k, a_max), n_hat_prime(k, a_min));
    let d_hat_prime = iv(d_hat_prime(k, a_max), d_hat_prime(k, a_min));
    let i_n = iv(0.0, SQRT3 * pi2 * kk * a_max * (1.0 - 2.0 * a_max));
    let h1 = iv(-4.0 * SQRT3 * pi2 * kk * a_max, 0.0);
    let h2 = iv(0.0, 4.0 * SQRT3 * pi2 * kk * (c_max - a_min).powi(2) / (1.0 - 2.0 * a_min).powi(2));
    let h3 = iv(0.0, 4.0 * SQRT3 * pi2 * kk * a_max);
    let j1 = iv(
        -SQRT3 / 4.0 * a_max * big_u_at_a(k, a_max),
        -SQRT3 / 4.0 * a_min * big_u_at_b(k, a_min),
    );
    let j2 = iv(0.0, 27.0 * SQRT3 / 16.0 * c_max);
    let j3 = iv(0.0, 27.0 * SQRT3 / 16.0 * a_max);

    let p2 = ptilde * ptilde;
    let pos_a = -4.0 * (i_n * ptilde * ptilde_a) + -2.0 * (p2 * h1) + -16.0 * pi2 * d_hat_prime + 32.0 * pi2 * j2;
    let neg_a = 2.0 * (n_hat * ptilde * ptilde_a) + p2 * n_hat_prime + -2.0 * (p2 * h2) + 32.0 * pi2 * j1;
    let pos_c = -4.0 * (i_n * ptilde * ptilde_c) + 32.0 * pi2 * j3;
    let neg_c = 2.0 * (n_hat * ptilde * ptilde_c) + -2.0 * (p2 * h3);

    LipschitzTerms {
        ptilde,
        ptilde_a,
        ptilde_c,
        n_hat,
        n_hat_prime,
        d_hat_prime,
        i_n,
        h1,
        h2,
        h3,
        j1,
        j2,
        j3,
        pos_a,
        neg_a,
        pos_c,
        neg_c,
    }
}

/// (L_a, L_c) for a zone, from its bounding rectangle.
pub fn lipschitz_bounds(z: &Zone, rule: BracketRule) -> (f64, f64) {
    lipschitz_terms(z.k, z.a_min, z.a_max, z.c_min, z.c_max).bounds(rule)
}
