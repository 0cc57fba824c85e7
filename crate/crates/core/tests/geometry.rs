use std::f64::consts::PI;

use neumann_core::geometry::{
    convex_hull, hat_triangle, hex_ha, metrics, omega_a, orient, polygon_from_json, polygon_to_json, rectangle, regular_polygon,
    triangle_t, unit_square, zigzag_domain, zigzag_slope, ConvexPolygon, Point2, SQRT3,
};
use neumann_core::GeometryError;
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Sutherland-Hodgman clipping of `subject` by the convex `clip`.
fn clip(subject: &[Point2], clip: &[Point2]) -> Vec<Point2> {
    let mut out = subject.to_vec();
    let n = clip.len();
    for i in 0..n {
        let (a, b) = (clip[i], clip[(i + 1) % n]);
        let input = std::mem::take(&mut out);
        let m = input.len();
        for j in 0..m {
            let (p, q) = (input[j], input[(j + 1) % m]);
            let (sp, sq) = (orient(a, b, p), orient(a, b, q));
            if sp >= 0.0 {
                out.push(p);
            }
            if (sp >= 0.0) != (sq >= 0.0) {
                let t = sp / (sp - sq);
                out.push(p.add(q.sub(p).scale(t)));
            }
        }
    }
    out
}

fn same_vertex_set(a: &[Point2], b: &[Point2], tol: f64) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| p.dist(*q) < tol))
}

#[test]
fn square_and_triangle_metrics() {
    let m = unit_square().metrics();
    assert!(close(m.perimeter, 4.0, 1e-15) && close(m.area, 1.0, 1e-15));
    assert!(close(m.diameter, 2f64.sqrt(), 1e-15) && close(m.min_width, 1.0, 1e-15));
    let t = triangle_t().metrics();
    assert!(close(t.perimeter, 3.0, 1e-15) && close(t.area, SQRT3 / 4.0, 1e-15));
    assert!(close(t.min_width, SQRT3 / 2.0, 1e-15));
}

#[test]
fn hexagon_quarter_ratio() {
    let m = hex_ha(0.25).unwrap().metrics();
    assert!(close(m.perimeter * m.perimeter / m.area, 42.0 * SQRT3 / 5.0, 1e-12));
}

#[test]
fn hat_triangle_cases() {
    let h0 = hat_triangle(0.0).unwrap();
    // The a = 0 member is the triangle circumscribed to T, area four times |T|.
    assert!(close(h0.area(), SQRT3, 1e-14));
    let h = hat_triangle(0.5).unwrap();
    let top = h.vertices().iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    assert!(close(top, SQRT3 / 4.0, 1e-15));
    assert!(close(h.area(), SQRT3 / 16.0, 1e-15));
    assert!(hat_triangle(0.6).is_err() && hat_triangle(-0.1).is_err());
}

#[test]
fn omega_is_clipped_hat_triangle() {
    for &a in &[0.05, 0.15, 0.3, 0.45] {
        let clipped = clip(hat_triangle(a).unwrap().vertices(), triangle_t().vertices());
        let mut dedup: Vec<Point2> = Vec::new();
        for p in clipped {
            if !dedup.iter().any(|q| q.dist(p) < 1e-12) {
                dedup.push(p);
            }
        }
        assert!(same_vertex_set(&dedup, omega_a(a).unwrap().vertices(), 1e-12), "a = {a}");
    }
}

#[test]
fn hexagon_families_closed_forms() {
    for i in 1..50 {
        let a = i as f64 / 100.0;
        let h = hex_ha(a).unwrap().metrics();
        assert!(close(h.perimeter, 3.0 * (1.0 - 3.0 * a + 3.0 * a * a).sqrt(), 1e-12));
        assert!(close(h.area, SQRT3 * (2.0 - 3.0 * a) / 8.0, 1e-12));
        let o = omega_a(a).unwrap().metrics();
        assert!(close(o.perimeter, 3.0 * (1.0 - a), 1e-12));
    }
}

#[test]
fn omega_contains_hexagon() {
    for &a in &[0.1, 0.2, 0.3] {
        let o = omega_a(a).unwrap();
        assert!(hex_ha(a).unwrap().vertices().iter().all(|&p| o.contains(p, 1e-12)));
    }
}

#[test]
fn regular_polygons() {
    let sq = regular_polygon(4).unwrap().metrics();
    assert!(close(sq.perimeter, 4.0 * 2f64.sqrt(), 1e-14) && close(sq.area, 2.0, 1e-14));
    assert!(5.0 * (PI / 5.0).tan() < 3.633);
    for n in 3..60 {
        let m = regular_polygon(n).unwrap().metrics();
        let nf = n as f64;
        assert!(close(m.perimeter, 2.0 * nf * (PI / nf).sin(), 1e-12));
        assert!(close(m.area, nf * (PI / nf).sin() * (PI / nf).cos(), 1e-12));
    }
    let m = regular_polygon(100).unwrap().metrics();
    assert!((m.perimeter * m.perimeter / m.area / (4.0 * PI) - 1.0).abs() < 1e-3);
    assert!(matches!(regular_polygon(2), Err(GeometryError::TooFewVertices(2))));
}

#[test]
fn zigzag_perimeter_and_teeth() {
    for &n in &[1usize, 5, 40] {
        let z = zigzag_domain(0.2, n).unwrap();
        assert!(close(z.perimeter(), 1.0, 1e-12), "n = {n}: {}", z.perimeter());
        let h = z.vertices().iter().map(|p| (-p.y).max(p.y - 0.2)).fold(f64::NEG_INFINITY, f64::max);
        assert!(close(h, 0.2 * zigzag_slope(0.2) / (2.0 * n as f64), 1e-14));
    }
    assert_eq!(zigzag_slope(0.25), 0.0);
    let sq = zigzag_domain(0.25, 1).unwrap();
    assert!(close(sq.area(), 0.0625, 1e-15) && close(sq.perimeter(), 1.0, 1e-15));
    assert!(zigzag_domain(0.3, 4).is_err());
}

#[test]
fn degenerate_polygons_rejected() {
    let flat = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(2.0, 1e-16)];
    assert!(ConvexPolygon::new(flat).is_err());
    let cw = vec![Point2::new(0.0, 0.0), Point2::new(0.0, 1.0), Point2::new(1.0, 0.0)];
    assert!(matches!(ConvexPolygon::new(cw), Err(GeometryError::Clockwise(_))));
}

#[test]
fn polygon_json_is_exact() {
    let p = regular_polygon(7).unwrap();
    let back = polygon_from_json(&polygon_to_json(p.vertices())).unwrap();
    assert_eq!(back, p.vertices());
}

fn rigid(poly: &ConvexPolygon, theta: f64, tx: f64, ty: f64) -> ConvexPolygon {
    let (s, c) = theta.sin_cos();
    poly.transformed([[c, -s], [s, c]], Point2::new(tx, ty)).unwrap()
}

fn random_hull() -> impl Strategy<Value = ConvexPolygon> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 3..24).prop_filter_map("degenerate hull", |pts| {
        let pts: Vec<Point2> = pts.into_iter().map(|(x, y)| Point2::new(x, y)).collect();
        convex_hull(&pts).ok().filter(|h| h.area() > 1e-3)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn metric_invariants(poly in random_hull()) {
        let m = metrics(&poly);
        prop_assert!(m.perimeter > 2.0 * m.diameter);
        prop_assert!(m.min_width <= m.diameter + 1e-15);
        prop_assert!(m.area > 0.0);
        // Every vertex lies within the width slab along the reported direction.
        let d = Point2::new(m.width_direction[0], m.width_direction[1]);
        let proj: Vec<f64> = poly.vertices().iter().map(|p| p.dot(d)).collect();
        let span = proj.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - proj.iter().cloned().fold(f64::INFINITY, f64::min);
        prop_assert!((span - m.min_width).abs() < 1e-12);
    }

    #[test]
    fn width_is_minimal_projection(poly in random_hull()) {
        let m = metrics(&poly);
        for i in 0..720 {
            let t = PI * i as f64 / 720.0;
            let d = Point2::new(t.cos(), t.sin());
            let proj: Vec<f64> = poly.vertices().iter().map(|p| p.dot(d)).collect();
            let span = proj.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - proj.iter().cloned().fold(f64::INFINITY, f64::min);
            prop_assert!(span >= m.min_width - 1e-12);
            prop_assert!(span <= m.diameter + 1e-12);
        }
    }

    #[test]
    fn rigid_motion_invariance(poly in random_hull(), theta in 0.0..2.0 * PI, tx in -5.0f64..5.0, ty in -5.0f64..5.0) {
        let m = metrics(&poly);
        let r = metrics(&rigid(&poly, theta, tx, ty));
        prop_assert!(close(m.perimeter, r.perimeter, 1e-10));
        prop_assert!(close(m.area, r.area, 1e-10));
        prop_assert!(close(m.diameter, r.diameter, 1e-10));
        prop_assert!(close(m.min_width, r.min_width, 1e-10));
    }

    #[test]
    fn rectangles(l in 0.01f64..10.0, w in 0.01f64..10.0) {
        let m = rectangle(l, w).unwrap().metrics();
        prop_assert!(close(m.min_width, l.min(w), 1e-12 * l.max(w)));
        prop_assert!(close(m.diameter, l.hypot(w), 1e-12 * l.max(w)));
    }

    #[test]
    fn parallelograms_satisfy_width_condition(l in 0.1f64..3.0, s in 0.1f64..3.0, ang in 0.05f64..(PI - 0.05)) {
        let v = Point2::new(s * ang.cos(), s * ang.sin());
        let pts = vec![Point2::new(0.0, 0.0), Point2::new(l, 0.0), Point2::new(l, 0.0).add(v), v];
        let m = ConvexPolygon::new(pts).unwrap().metrics();
        prop_assert!(m.perimeter * m.min_width <= 4.0 * m.area * (1.0 + 1e-12));
    }

    #[test]
    fn doubly_symmetric_polygons_satisfy_width_condition(
        seeds in prop::collection::vec((0.01f64..1.0, 0.01f64..1.0), 1..6)
    ) {
        let mut pts = Vec::new();
        for (x, y) in seeds {
            for (sx, sy) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)] {
                pts.push(Point2::new(sx * x, sy * y));
            }
        }
        let m = convex_hull(&pts).unwrap().metrics();
        prop_assert!(m.perimeter * m.min_width <= 4.0 * m.area * (1.0 + 1e-12));
    }
}
