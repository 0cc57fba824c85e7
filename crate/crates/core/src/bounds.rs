//! Closed-form bounds on the first nonzero Neumann eigenvalue μ₁ and the
//! reverse isoperimetric estimates used for the hexagonal regime.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::geometry::{ShapeMetrics, SQRT3};

/// First positive zero of J₁′ (Abramowitz and Stegun, table 9.5).
pub const J1P_11: f64 = 1.841_183_781_340_66;
/// First positive zero of J₀ (Abramowitz and Stegun, table 9.5).
pub const J0_1: f64 = 2.404_825_557_695_77;

/// The conjectured sharp value of sup P²μ₁ over convex sets.
pub const TARGET: f64 = 16.0 * PI * PI;

/// Slack used when comparing bounds against each other.
pub const ORDER_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundSet {
    /// π²/D², valid for every convex set.
    pub pw_lower: f64,
    /// π (j'₁,₁)²/A.
    pub sw_upper: f64,
    /// 4 j₀,₁²/D².
    pub cheng_upper: f64,
    /// π² w²/A², with equality exactly for rectangles.
    pub width_upper: f64,
    pub scale_invariant_target: f64,
    pub perimeter: f64,
    /// Optional FEM value of μ₁ for comparison.
    pub fem: Option<f64>,
}

impl BoundSet {
    pub fn min_upper(&self) -> f64 {
        self.sw_upper.min(self.cheng_upper).min(self.width_upper)
    }

    /// Multiplies a bound by P², making it scale invariant.
    pub fn scaled(&self, bound: f64) -> f64 {
        self.perimeter * self.perimeter * bound
    }

    /// pw_lower ≤ min(sw_upper, cheng_upper) up to `ORDER_SLACK` relative.
    pub fn is_ordered(&self) -> bool {
        self.pw_lower <= self.sw_upper.min(self.cheng_upper) * (1.0 + ORDER_SLACK)
    }

    pub fn with_fem(mut self, mu1: f64) -> Self {
        self.fem = Some(mu1);
        self
    }
}

pub fn bound_set(m: &ShapeMetrics) -> BoundSet {
    let d2 = m.diameter * m.diameter;
    BoundSet {
        pw_lower: PI * PI / d2,
        sw_upper: PI * J1P_11 * J1P_11 / m.area,
        cheng_upper: 4.0 * J0_1 * J0_1 / d2,
        width_upper: PI * PI * m.min_width * m.min_width / (m.area * m.area),
        scale_invariant_target: TARGET,
        perimeter: m.perimeter,
        fem: None,
    }
}

/// P w ≤ 4A is the sufficient condition for P²μ₁ ≤ 16π² given the width bound.
pub fn width_condition(m: &ShapeMetrics) -> bool {
    m.perimeter * m.min_width <= 4.0 * m.area * (1.0 + ORDER_SLACK)
}

/// N tan(π/N): P²/(4A) of the regular N-gon.
pub fn regular_polygon_ratio(n: u32) -> f64 {
    let n = n as f64;
    n * (PI / n).tan()
}

/// Whether the disk bound settles the regular N-gon: N tan(π/N) ≤ 4π/(j'₁,₁)².
pub fn regular_polygon_certified(n: u32) -> bool {
    regular_polygon_ratio(n) <= 4.0 * PI / (J1P_11 * J1P_11)
}

/// g(α) = (1 − cos(2α + θ))/(cos θ − cos(2α + θ)) for α ∈ [π/2 − θ, π/2].
pub fn sector_g(alpha: f64, theta: f64) -> Result<f64, GeometryError> {
    if !(theta > 0.0 && theta < 0.5 * PI) {
        return Err(GeometryError::OutOfRange {
            name: "theta",
            value: theta,
            range: "(0, pi/2)",
        });
    }
    let tol = 1e-12;
    if !(alpha >= 0.5 * PI - theta - tol && alpha <= 0.5 * PI + tol) {
        return Err(GeometryError::OutOfRange {
            name: "alpha",
            value: alpha,
            range: "[pi/2 - theta, pi/2]",
        });
    }
    let s = (2.0 * alpha + theta).cos();
    Ok((1.0 - s) / (theta.cos() - s))
}

/// h(t) = 4t tan(π/t).
pub fn sector_h(t: f64) -> Result<f64, GeometryError> {
    if !(t >= 2.0) || !t.is_finite() {
        return Err(GeometryError::OutOfRange {
            name: "t",
            value: t,
            range: "[2, inf)",
        });
    }
    if t == 2.0 {
        return Ok(f64::INFINITY);
    }
    Ok(4.0 * t * (PI / t).tan())
}

fn check_t(t: f64, a: f64) -> Result<(), GeometryError> {
    if !(0.0..=0.5).contains(&a) {
        return Err(GeometryError::OutOfRange {
            name: "a",
            value: a,
            range: "[0, 1/2]",
        });
    }
    if !(t >= -1e-15 && t <= 0.5 * a + 1e-15) {
        return Err(GeometryError::OutOfRange {
            name: "t",
            value: t,
            range: "[0, a/2]",
        });
    }
    Ok(())
}

/// p(t) = t + √((1/4 − t)² + (3/4)(1/2 − a)²).
pub fn reverse_iso_p(t: f64, a: f64) -> Result<f64, GeometryError> {
    check_t(t, a)?;
    Ok(t + ((0.25 - t).powi(2) + 0.75 * (0.5 - a).powi(2)).sqrt())
}

/// p²(t)/D(t) with D(t) = (2 − 3a) + 6(1 − 2a)t.
pub fn reverse_iso_ratio(t: f64, a: f64) -> Result<f64, GeometryError> {
    let p = reverse_iso_p(t, a)?;
    Ok(p * p / ((2.0 - 3.0 * a) + 6.0 * (1.0 - 2.0 * a) * t))
}

/// The closed form of p²(0)/D(0) − p²(a/2)/D(a/2).
pub fn reverse_iso_endpoint_gap(a: f64) -> f64 {
    a * (1.0 - 2.0 * a) * (1.0 - 3.0 * a).powi(2) / (8.0 * (1.0 - 3.0 * a * a) * (2.0 - 3.0 * a))
}

/// The perimeter terms p₁(ay/2) and p₂(y(1 − 2a)/2) of two triangles on AC
/// with equal area.
pub fn triangle_swap_perimeters(y: f64, a: f64) -> Result<(f64, f64), GeometryError> {
    if !(0.0..=1.0).contains(&y) {
        return Err(GeometryError::OutOfRange {
            name: "y",
            value: y,
            range: "[0, 1]",
        });
    }
    if !(a > 0.0 && a < 0.5) {
        return Err(GeometryError::OutOfRange {
            name: "a",
            value: a,
            range: "(0, 1/2)",
        });
    }
    let t = 0.5 * a * y;
    let s = 0.5 * y * (1.0 - 2.0 * a);
    let p1 = t + ((0.25 - t).powi(2) + 0.75 * (0.5 - a).powi(2)).sqrt();
    let p2 = s + ((0.25 - 0.5 * s).powi(2) + 0.75 * (s - 0.5 + a).powi(2)).sqrt();
    Ok((p1, p2))
}

/// (1 − 3x + 3x²)/(2 − 3x), proportional to P²(H_x)/|H_x|.
pub fn hexagon_ratio_profile(x: f64) -> f64 {
    (1.0 - 3.0 * x + 3.0 * x * x) / (2.0 - 3.0 * x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MidrangeCertificate {
    /// P²(H_{1/4})/|H_{1/4}|.
    pub isoperimetric_ratio: f64,
    /// π (j'₁,₁)² P²(H_{1/4})/|H_{1/4}|.
    pub bound: f64,
    pub target: f64,
    pub verdict: bool,
}

/// Certificate for a ∈ [1/4, 1/3]: the disk bound applied to the worst
/// hexagon H_{1/4}, valid since the hexagon profile decreases on that range.
pub fn midrange_certificate() -> MidrangeCertificate {
    let a: f64 = 0.25;
    let p = 3.0 * (1.0 - 3.0 * a + 3.0 * a * a).sqrt();
    let area = SQRT3 * (2.0 - 3.0 * a) / 8.0;
    let ratio = p * p / area;
    let bound = PI * J1P_11 * J1P_11 * ratio;
    let decreasing = hexagon_ratio_profile(0.25) > hexagon_ratio_profile(1.0 / 3.0);
    MidrangeCertificate {
        isoperimetric_ratio: ratio,
        bound,
        target: TARGET,
        verdict: decreasing && bound < TARGET,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sector_g_symmetric_endpoints() {
        for &theta in &[0.2, PI / 5.0, 1.2] {
            let lo = sector_g(0.5 * PI - theta, theta).unwrap();
            let hi = sector_g(0.5 * PI, theta).unwrap();
            let closed = (0.5 * theta).cos().powi(2) / theta.cos();
            assert!((lo - closed).abs() < 1e-12 && (hi - closed).abs() < 1e-12);
        }
        assert!(sector_g(0.1, 0.2).is_err());
    }

    #[test]
    fn h_at_five() {
        assert!(sector_h(5.0).unwrap() < 14.54);
        assert!(sector_h(1.0).is_err());
    }

    #[test]
    fn midrange() {
        let m = midrange_certificate();
        assert!((m.isoperimetric_ratio - 42.0 * SQRT3 / 5.0).abs() < 1e-12);
        assert!(m.bound < 50.0 * PI && m.verdict);
    }
}
