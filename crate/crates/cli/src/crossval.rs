//! Adaptive-quadrature cross-check of every closed form used by the
//! certificate: the layer integrals, the triangle integrals over T_N and
//! T_D, and the assembled N, D and F.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use neumann_core::closed_form::{self, layer_integrals, td_integrals, tn_integrals};
use neumann_core::geometry::{ca_outer_polygon, hex_ha, Point2, SQRT3};
use neumann_core::quadrature::{integrate_polygon, integrate_triangle, Triangle};
use neumann_core::trig_eigen::{big_u, big_v, grad_v_k, phi_psi_eta, sym_combos, v_k, MixParam};
use neumann_core::QuadratureError;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Pass threshold on |closed − quadrature| / max(|quadrature|, 1e-2).
pub const TOLERANCE: f64 = 1e-8;
pub const QUAD_REL_TOL: f64 = 1e-12;
/// Offsets from a singular line are drawn in (−NEAR_WIDTH, NEAR_WIDTH).
pub const NEAR_WIDTH: f64 = 1e-4;
pub const NEAR_PER_LINE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    Random,
    /// a → 0
    NearA0,
    /// c → a
    NearCEqA,
    /// 1 − 3a → 0
    NearOneThird,
    /// 3a − 2c → 0
    Near3aEq2c,
    /// 3a − 4c → 0, below the diagonal
    Near3aEq4c,
    /// 2c − a → 0, below the diagonal
    Near2cEqA,
}

impl SampleKind {
    pub const SINGULAR: [SampleKind; 6] = [
        SampleKind::NearA0,
        SampleKind::NearCEqA,
        SampleKind::NearOneThird,
        SampleKind::Near3aEq2c,
        SampleKind::Near3aEq4c,
        SampleKind::Near2cEqA,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub kind: SampleKind,
    pub k: f64,
    pub a: f64,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantityStats {
    pub count: usize,
    pub max_error: f64,
    pub worst: Option<Sample>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossvalReport {
    pub seed: u64,
    pub random_points: usize,
    pub near_singular_points: usize,
    pub tolerance: f64,
    pub quad_rel_tol: f64,
    pub quantities: BTreeMap<String, QuantityStats>,
    pub max_error: f64,
    pub pass: bool,
}

pub fn rel_error(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1e-2)
}

/// 100 random points by default plus `NEAR_PER_LINE` for every singular
/// line, all drawn from one ChaCha8 stream.
pub fn samples(count: usize, near_per_line: usize, seed: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count + 6 * near_per_line);
    for _ in 0..count {
        let k = rng.random_range(0.0..=1.0 / 6.0);
        let a = rng.random_range(0.005..0.45);
        let c = rng.random_range(a..=0.5);
        out.push(Sample {
            kind: SampleKind::Random,
            k,
            a,
            c,
        });
    }
    for kind in SampleKind::SINGULAR {
        for _ in 0..near_per_line {
            out.push(near_sample(&mut rng, kind));
        }
    }
    out
}

fn near_sample<R: Rng>(rng: &mut R, kind: SampleKind) -> Sample {
    let k = rng.random_range(0.0..=1.0 / 6.0);
    let d: f64 = rng.random_range(-NEAR_WIDTH..NEAR_WIDTH);
    let (a, c) = match kind {
        SampleKind::Random => unreachable!("random samples are drawn separately"),
        SampleKind::NearA0 => (d.abs().max(1e-9), rng.random_range(0.02..=0.5)),
        SampleKind::NearCEqA => {
            let a = rng.random_range(0.02..0.45);
            (a, a + d.abs())
        }
        SampleKind::NearOneThird => {
            let a = 1.0 / 3.0 + d;
            (a, rng.random_range(a..=0.5))
        }
        SampleKind::Near3aEq2c => {
            let a = rng.random_range(0.02..0.33);
            (a, 1.5 * a + d)
        }
        SampleKind::Near3aEq4c => {
            let a = rng.random_range(0.02..0.45);
            (a, 0.75 * a + d)
        }
        SampleKind::Near2cEqA => {
            let a = rng.random_range(0.02..0.45);
            (a, 0.5 * a + d)
        }
    };
    Sample { kind, k, a, c }
}

/// ∫ over the triangle with its orientation relative to the c > a
/// configuration: below the diagonal the vertices swap sides and the closed
/// forms continue analytically to the negated integral.
fn oriented<F: Fn(Point2) -> f64>(f: F, p: [Point2; 3], sign: f64) -> Result<f64, QuadratureError> {
    let t = Triangle::allow_degenerate(p[0], p[1], p[2]);
    Ok(sign * integrate_triangle(f, &t, QUAD_REL_TOL)?.value)
}

fn plain<F: Fn(Point2) -> f64>(f: F, p: [Point2; 3]) -> Result<f64, QuadratureError> {
    let t = Triangle::allow_degenerate(p[0], p[1], p[2]);
    Ok(integrate_triangle(f, &t, QUAD_REL_TOL)?.value)
}

/// (name, closed form, quadrature) for every quantity defined at `s`.
pub fn compare(s: &Sample) -> Result<Vec<(&'static str, f64, f64)>, neumann_core::Error> {
    let Sample { k, a, c, .. } = *s;
    let mut out = Vec::with_capacity(17);

    // Layer integrals over the top corner.
    let top = SQRT3 / 2.0 * (1.0 - a);
    let corner = [Point2::new(-0.5 * a, top), Point2::new(0.5 * a, top), Point2::new(0.0, SQRT3 / 2.0)];
    let l = layer_integrals(a);
    let pick: [(&'static str, f64, fn(Point2) -> f64); 6] = [
        ("F1", l.f1, |p| sym_combos(p).u1),
        ("F2", l.f2, |p| sym_combos(p).v1),
        ("F3", l.f3, |p| sym_combos(p).u2),
        ("F4", l.f4, |p| sym_combos(p).v2),
        ("F5", l.f5, |p| sym_combos(p).u3),
        ("F6", l.f6, |p| sym_combos(p).v3),
    ];
    for (name, closed, f) in pick {
        out.push((name, closed, plain(f, corner)?));
    }

    // Q1 − B and Q2 − B are both proportional to c − a, so T_N keeps its
    // orientation across the diagonal while T_D = A B Q2 flips.
    let v = closed_form::ca_vertices(a, c);
    let sign = if c >= a { 1.0 } else { -1.0 };
    let tn = [v.q1, v.b, v.q2];
    let td = [v.a, v.b, v.q2];
    let tn_c = tn_integrals(a, c);
    let td_c = td_integrals(a, c);
    out.push(("I1", closed_form::i1(a, c), oriented(|p| phi_psi_eta(p).phi, tn, 1.0)?));
    out.push(("I2", closed_form::i2(a, c), oriented(|p| phi_psi_eta(p).phi, td, sign)?));
    out.push(("TN_phi", tn_c.phi, oriented(|p| phi_psi_eta(p).phi, tn, 1.0)?));
    out.push(("TN_psi", tn_c.psi, oriented(|p| phi_psi_eta(p).psi, tn, 1.0)?));
    out.push(("TN_eta", tn_c.eta, oriented(|p| phi_psi_eta(p).eta, tn, 1.0)?));
    out.push(("TD_phi", td_c.phi, oriented(|p| phi_psi_eta(p).phi, td, sign)?));
    out.push(("TD_psi", td_c.psi, oriented(|p| phi_psi_eta(p).psi, td, sign)?));
    out.push(("TD_eta", td_c.eta, oriented(|p| phi_psi_eta(p).eta, td, sign)?));

    // The assembled quantities exist only on the admissible range.
    if c >= a && c <= 0.5 && a > 0.0 && a < 0.5 {
        let kp = MixParam::new(k)?;
        let hex = hex_ha(a)?;
        let grad2 = |p: Point2| {
            let g = grad_v_k(kp, p);
            g[0] * g[0] + g[1] * g[1]
        };
        let n_hex = integrate_polygon(grad2, &hex, QUAD_REL_TOL)?.value;
        let d_hex = integrate_polygon(|p| v_k(kp, p).powi(2), &hex, QUAD_REL_TOL)?.value;
        let vv = |p: Point2| big_v(kp, p);
        let n_q = 2.0 * (plain(vv, [v.a, v.q1, v.q2])? + plain(vv, [v.a, v.q2, v.c])?);
        let d_q = 2.0 * plain(|p| big_u(kp, p), [v.a, v.q2, v.c])?;
        let n = n_hex + n_q;
        let d = d_hex + d_q;
        let outer = ca_outer_polygon(a, c)?;
        let p = outer.perimeter();
        let closed = closed_form::ndf_at(k, a, c);
        out.push(("N", closed.n, n));
        out.push(("D", closed.d, d));
        out.push(("F", closed.f, p * p * n - 16.0 * PI * PI * d));
    }
    Ok(out)
}

pub fn crossval(count: usize, near_per_line: usize, seed: u64) -> Result<CrossvalReport, neumann_core::Error> {
    let pts = samples(count, near_per_line, seed);
    let mut quantities: BTreeMap<String, QuantityStats> = BTreeMap::new();
    for s in &pts {
        for (name, closed, quad) in compare(s)? {
            let e = rel_error(closed, quad);
            let q = quantities.entry(name.to_string()).or_insert(QuantityStats {
                count: 0,
                max_error: 0.0,
                worst: None,
            });
            q.count += 1;
            // NaN counts as the worst possible error.
            if !(e <= q.max_error) {
                q.max_error = if e.is_nan() { f64::INFINITY } else { e };
                q.worst = Some(*s);
            }
        }
    }
    let max_error = quantities.values().map(|q| q.max_error).fold(0.0, f64::max);
    Ok(CrossvalReport {
        seed,
        random_points: count,
        near_singular_points: pts.len() - count,
        tolerance: TOLERANCE,
        quad_rel_tol: QUAD_REL_TOL,
        quantities,
        max_error,
        pass: max_error <= TOLERANCE,
    })
}
