//! Convex polygon kernel: metrics, the shape generators of the C_a family,
//! regular polygons and the non-convex sawtooth square.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, GeometryError};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Tolerance on edge cross products when testing convexity.
pub const CONVEXITY_TOL: f64 = 1e-12;

/// Polygons with smaller area are rejected as degenerate.
pub const MIN_AREA: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }

    pub fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }

    pub fn scale(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        self.sub(o).norm()
    }

    pub fn midpoint(self, o: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(p: [f64; 2]) -> Self {
        Point2::new(p[0], p[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

/// Twice the signed area of the triangle (a, b, c).
#[inline]
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    b.sub(a).cross(c.sub(a))
}

pub fn signed_area(pts: &[Point2]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        s += pts[i].cross(pts[(i + 1) % n]);
    }
    0.5 * s
}

pub fn perimeter_of(pts: &[Point2]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| pts[i].dist(pts[(i + 1) % n])).sum()
}

/// A convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite(i));
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if vertices[i] == vertices[j] {
                return Err(GeometryError::DuplicateVertex(i, j));
            }
        }
        let area = signed_area(&vertices);
        if area.abs() < MIN_AREA {
            return Err(GeometryError::Degenerate(area));
        }
        if area < 0.0 {
            return Err(GeometryError::Clockwise(area));
        }
        for i in 0..n {
            let p = vertices[(i + n - 1) % n];
            let q = vertices[i];
            let r = vertices[(i + 1) % n];
            let cross = q.sub(p).cross(r.sub(q));
            if cross < -CONVEXITY_TOL {
                return Err(GeometryError::NotConvex { index: i, cross });
            }
        }
        // Local convexity plus positive area still admits star-shaped
        // windings that turn around twice; total turning must be 2π.
        let mut turning = 0.0;
        for i in 0..n {
            let e0 = vertices[i].sub(vertices[(i + n - 1) % n]);
            let e1 = vertices[(i + 1) % n].sub(vertices[i]);
            turning += e0.cross(e1).atan2(e0.dot(e1));
        }
        if (turning - 2.0 * PI).abs() > 1e-6 {
            return Err(GeometryError::NotConvex { index: 0, cross: turning });
        }
        Ok(Self { vertices })
    }

    /// Accepts either orientation and reverses clockwise input.
    pub fn from_points_any_orientation(mut vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        if vertices.len() >= 3 && signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        perimeter_of(&self.vertices)
    }

    pub fn centroid(&self) -> Point2 {
        let n = self.vertices.len();
        let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let w = p.cross(q);
            a2 += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        Point2::new(cx / (3.0 * a2), cy / (3.0 * a2))
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            orient(a, b, p) >= -tol * a.dist(b)
        })
    }

    /// Applies an affine map `p -> m p + t`; a reflection flips the
    /// orientation, so the vertex order is reversed to stay counter-clockwise.
    pub fn transformed(&self, m: [[f64; 2]; 2], t: Point2) -> Result<Self, GeometryError> {
        let pts = self
            .vertices
            .iter()
            .map(|p| Point2::new(m[0][0] * p.x + m[0][1] * p.y + t.x, m[1][0] * p.x + m[1][1] * p.y + t.y))
            .collect();
        Self::from_points_any_orientation(pts)
    }

    pub fn scaled(&self, s: f64) -> Result<Self, GeometryError> {
        self.transformed([[s, 0.0], [0.0, s]], Point2::default())
    }

    pub fn metrics(&self) -> ShapeMetrics {
        metrics(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeMetrics {
    pub perimeter: f64,
    pub area: f64,
    pub diameter: f64,
    pub min_width: f64,
    /// Unit normal of the edge realizing the minimal width.
    pub width_direction: [f64; 2],
}

fn edge_distance(a: Point2, b: Point2, p: Point2) -> f64 {
    orient(a, b, p) / a.dist(b)
}

/// Shoelace area, edge-sum perimeter, and rotating calipers for the
/// diameter and minimal width.
pub fn metrics(poly: &ConvexPolygon) -> ShapeMetrics {
    let v = poly.vertices();
    let n = v.len();
    let mut width = f64::INFINITY;
    let mut dir = [0.0, 1.0];
    let mut diam2: f64 = 0.0;
    let mut j = 1;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        if j == i || j == (i + 1) % n {
            j = (i + 2) % n;
        }
        // Advance the antipodal pointer while the distance to edge (a, b) does
        // not shrink; plateaus of collinear vertices are stepped over.
        let mut steps = 0;
        while steps < n && orient(a, b, v[(j + 1) % n]) >= orient(a, b, v[j]) {
            j = (j + 1) % n;
            steps += 1;
        }
        let d = edge_distance(a, b, v[j]);
        if d < width {
            width = d;
            let e = b.sub(a);
            let len = e.norm();
            dir = [-e.y / len, e.x / len];
        }
        // Ties (an edge parallel to (a, b)) leave two antipodal vertices.
        for &k in &[j, (j + 1) % n, (j + n - 1) % n] {
            diam2 = diam2.max(a.sub(v[k]).dot(a.sub(v[k])));
            diam2 = diam2.max(b.sub(v[k]).dot(b.sub(v[k])));
        }
    }
    ShapeMetrics {
        perimeter: poly.perimeter(),
        area: poly.area(),
        diameter: diam2.sqrt(),
        min_width: width,
        width_direction: dir,
    }
}

fn check_range(name: &'static str, value: f64, ok: bool, range: &'static str) -> Result<(), GeometryError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(GeometryError::OutOfRange { name, value, range })
    }
}

/// The unit equilateral triangle with vertices (±1/2, 0), (0, √3/2).
pub fn triangle_t() -> ConvexPolygon {
    ConvexPolygon {
        vertices: vec![Point2::new(-0.5, 0.0), Point2::new(0.5, 0.0), Point2::new(0.0, SQRT3 / 2.0)],
    }
}

/// The upside-down equilateral triangle bounded by y = (√3/2)(1 − a)
/// and y = ±√3 x − √3 (1/2 − a).
pub fn hat_triangle(a: f64) -> Result<ConvexPolygon, GeometryError> {
    check_range("a", a, (0.0..=0.5).contains(&a), "[0, 1/2]")?;
    let top = SQRT3 / 2.0 * (1.0 - a);
    let half = 1.0 - 1.5 * a;
    Ok(ConvexPolygon {
        vertices: vec![
            Point2::new(0.0, -SQRT3 * (0.5 - a)),
            Point2::new(half, top),
            Point2::new(-half, top),
        ],
    })
}

/// Ω_a = T ∩ T̂_a.
pub fn omega_a(a: f64) -> Result<ConvexPolygon, GeometryError> {
    check_range("a", a, a > 0.0 && a < 0.5, "(0, 1/2)")?;
    let h = SQRT3 / 2.0;
    Ok(ConvexPolygon {
        vertices: vec![
            Point2::new(0.5 - a, 0.0),
            Point2::new(0.5 * (1.0 - a), h * a),
            Point2::new(0.5 * a, h * (1.0 - a)),
            Point2::new(-0.5 * a, h * (1.0 - a)),
            Point2::new(-0.5 * (1.0 - a), h * a),
            Point2::new(-(0.5 - a), 0.0),
        ],
    })
}

/// H_a, the hexagon joining the side midpoints of Ω_a.
pub fn hex_ha(a: f64) -> Result<ConvexPolygon, GeometryError> {
    check_range("a", a, a > 0.0 && a < 0.5, "(0, 1/2)")?;
    let h = SQRT3 / 2.0;
    Ok(ConvexPolygon {
        vertices: vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.5 - 0.75 * a, 0.5 * h * a),
            Point2::new(0.25, 0.5 * h),
            Point2::new(0.0, h * (1.0 - a)),
            Point2::new(-0.25, 0.5 * h),
            Point2::new(-(0.5 - 0.75 * a), 0.5 * h * a),
        ],
    })
}

/// Regular N-gon of circumradius 1 with a horizontal bottom edge.
pub fn regular_polygon(n: usize) -> Result<ConvexPolygon, GeometryError> {
    if n < 3 {
        return Err(GeometryError::TooFewVertices(n));
    }
    let step = 2.0 * PI / n as f64;
    let start = -0.5 * PI - 0.5 * step;
    let vertices = (0..n)
        .map(|k| {
            let t = start + step * k as f64;
            Point2::new(t.cos(), t.sin())
        })
        .collect();
    Ok(ConvexPolygon { vertices })
}

/// Axis-aligned rectangle [0, l] x [0, w].
pub fn rectangle(l: f64, w: f64) -> Result<ConvexPolygon, GeometryError> {
    check_range("l", l, l > 0.0, "(0, inf)")?;
    check_range("w", w, w > 0.0, "(0, inf)")?;
    ConvexPolygon::new(vec![
        Point2::new(0.0, 0.0),
        Point2::new(l, 0.0),
        Point2::new(l, w),
        Point2::new(0.0, w),
    ])
}

pub fn unit_square() -> ConvexPolygon {
    rectangle(1.0, 1.0).expect("unit square is valid")
}

/// Convex hull by Andrew's monotone chain; collinear points are dropped.
pub fn convex_hull(points: &[Point2]) -> Result<ConvexPolygon, GeometryError> {
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(GeometryError::NonFinite(i));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
    pts.dedup();
    if pts.len() < 3 {
        return Err(GeometryError::TooFewVertices(pts.len()));
    }
    fn chain<'a>(pts: impl Iterator<Item = &'a Point2>) -> Vec<Point2> {
        let mut h: Vec<Point2> = Vec::new();
        for &p in pts {
            while h.len() >= 2 && orient(h[h.len() - 2], h[h.len() - 1], p) <= 0.0 {
                h.pop();
            }
            h.push(p);
        }
        h.pop();
        h
    }
    let mut hull = chain(pts.iter());
    hull.extend(chain(pts.iter().rev()));
    ConvexPolygon::new(hull)
}

/// Convex hull of the orbit of `seeds` under the dihedral group with n
/// mirror axes through the origin, one of them the x-axis. For n = 2 the
/// axes are orthogonal; for n = 3 they meet at π/3.
pub fn dihedral_hull(seeds: &[Point2], n: usize) -> Result<ConvexPolygon, GeometryError> {
    if n == 0 {
        return Err(GeometryError::OutOfRange {
            name: "n",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let mut orbit = Vec::with_capacity(2 * n * seeds.len());
    for k in 0..n {
        let (s, c) = (2.0 * PI * k as f64 / n as f64).sin_cos();
        for p in seeds {
            for q in [*p, Point2::new(p.x, -p.y)] {
                orbit.push(Point2::new(c * q.x - s * q.y, s * q.x + c * q.y));
            }
        }
    }
    convex_hull(&orbit)
}

/// The outer approximant of the trapezoid construction: Ω_a with every
/// corner cut along the segment Q1(c)Q2(c) and its images, a 12-gon for
/// a < c < 1/2. Its perimeter is P̃(a, c).
pub fn ca_outer_polygon(a: f64, c: f64) -> Result<ConvexPolygon, GeometryError> {
    check_range("a", a, a > 0.0 && a < 0.5, "(0, 1/2)")?;
    check_range("c", c, c >= a && c <= 0.5, "[a, 1/2]")?;
    let hex = omega_a(a)?;
    let v = hex.vertices();
    let n = v.len();
    let cut_short = a * (c - a) / (1.0 - 2.0 * a);
    let cut_long = c - a;
    let cut = |len: f64| if (len - a).abs() < 1e-12 { cut_short } else { cut_long };
    let mut out: Vec<Point2> = Vec::with_capacity(2 * n);
    let mut push = |p: Point2| {
        let dup = |q: &Point2| q.dist(p) < 1e-13;
        if !out.last().is_some_and(dup) && !out.first().is_some_and(dup) {
            out.push(p);
        }
    };
    for i in 0..n {
        let prev = v[(i + n - 1) % n];
        let cur = v[i];
        let next = v[(i + 1) % n];
        let lp = cur.dist(prev);
        let ln = cur.dist(next);
        push(cur.add(prev.sub(cur).scale(cut(lp) / lp)));
        push(cur.add(next.sub(cur).scale(cut(ln) / ln)));
    }
    ConvexPolygon::new(out)
}

/// A simple polygon that need not be convex. Only the mesher accepts it.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplePolygon {
    vertices: Vec<Point2>,
}

impl SimplePolygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite(i));
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if vertices[i] == vertices[j] {
                return Err(GeometryError::DuplicateVertex(i, j));
            }
        }
        let area = signed_area(&vertices);
        if area.abs() < MIN_AREA {
            return Err(GeometryError::Degenerate(area));
        }
        if area < 0.0 {
            return Err(GeometryError::Clockwise(area));
        }
        if let Some((i, j)) = first_crossing(&vertices) {
            return Err(GeometryError::SelfIntersecting(i, j));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        perimeter_of(&self.vertices)
    }
}

impl From<ConvexPolygon> for SimplePolygon {
    fn from(p: ConvexPolygon) -> Self {
        SimplePolygon { vertices: p.vertices }
    }
}

impl From<&ConvexPolygon> for SimplePolygon {
    fn from(p: &ConvexPolygon) -> Self {
        SimplePolygon {
            vertices: p.vertices.clone(),
        }
    }
}

fn segments_cross(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |a: Point2, b: Point2, p: Point2, d: f64| {
        d == 0.0 && p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

/// Brute-force check over non-adjacent edge pairs.
fn first_crossing(v: &[Point2]) -> Option<(usize, usize)> {
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            if segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// The sawtooth slope b = √(1/(16a²) − 1) that makes each side of the
/// zigzag square have length 1/4.
pub fn zigzag_slope(a: f64) -> f64 {
    (1.0 / (16.0 * a * a) - 1.0).max(0.0).sqrt()
}

/// The square Q_a = [0, a]² with n outward isosceles teeth of base a/n and
/// height a b/(2n) on every side. The perimeter is 1 for every n.
pub fn zigzag_domain(a: f64, n: usize) -> Result<SimplePolygon, GeometryError> {
    check_range("a", a, a > 0.0 && a <= 0.25, "(0, 1/4]")?;
    if n == 0 {
        return Err(GeometryError::OutOfRange {
            name: "n",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let height = a * zigzag_slope(a) / (2.0 * n as f64);
    let corners = [Point2::new(0.0, 0.0), Point2::new(a, 0.0), Point2::new(a, a), Point2::new(0.0, a)];
    let mut vertices = Vec::with_capacity(8 * n);
    for s in 0..4 {
        let p = corners[s];
        let q = corners[(s + 1) % 4];
        let e = q.sub(p);
        // Outward normal of a counter-clockwise edge.
        let out = Point2::new(e.y, -e.x).scale(1.0 / a);
        for k in 0..n {
            let t0 = k as f64 / n as f64;
            let tm = (k as f64 + 0.5) / n as f64;
            vertices.push(p.add(e.scale(t0)));
            vertices.push(p.add(e.scale(tm)).add(out.scale(height)));
        }
    }
    SimplePolygon::new(vertices)
}

#[derive(Debug, Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<[f64; 2]>,
}

pub fn polygon_from_json(text: &str) -> Result<Vec<Point2>, Error> {
    let f: PolygonFile = serde_json::from_str(text)?;
    Ok(f.vertices.into_iter().map(Point2::from).collect())
}

/// Writes `{"vertices": [[x, y], ...]}`; serde_json prints the shortest
/// round-trip representation, which never needs more than 17 digits.
pub fn polygon_to_json(vertices: &[Point2]) -> String {
    let f = PolygonFile {
        vertices: vertices.iter().map(|&p| p.into()).collect(),
    };
    serde_json::to_string(&f).expect("plain floats always serialize")
}

pub fn read_polygon(path: &Path) -> Result<ConvexPolygon, Error> {
    let text = std::fs::read_to_string(path)?;
    Ok(ConvexPolygon::new(polygon_from_json(&text)?)?)
}

pub fn write_polygon(path: &Path, vertices: &[Point2]) -> Result<(), Error> {
    std::fs::write(path, polygon_to_json(vertices))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn unit_square_metrics() {
        let m = unit_square().metrics();
        assert!(close(m.perimeter, 4.0, 1e-15));
        assert!(close(m.area, 1.0, 1e-15));
        assert!(close(m.diameter, 2f64.sqrt(), 1e-15));
        assert!(close(m.min_width, 1.0, 1e-15));
    }

    #[test]
    fn triangle_t_metrics() {
        let m = triangle_t().metrics();
        assert!(close(m.perimeter, 3.0, 1e-15));
        assert!(close(m.area, SQRT3 / 4.0, 1e-15));
        assert!(close(m.min_width, SQRT3 / 2.0, 1e-15));
        assert!(close(m.diameter, 1.0, 1e-15));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            ConvexPolygon::new(vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)]),
            Err(GeometryError::TooFewVertices(2))
        ));
        let cw = vec![Point2::new(0.0, 0.0), Point2::new(0.0, 1.0), Point2::new(1.0, 0.0)];
        assert!(matches!(ConvexPolygon::new(cw), Err(GeometryError::Clockwise(_))));
        let flat = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(2.0, 1e-16)];
        assert!(matches!(ConvexPolygon::new(flat), Err(GeometryError::Degenerate(_))));
        let dart = vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 0.3),
            Point2::new(1.0, 1.0),
        ];
        assert!(matches!(ConvexPolygon::new(dart), Err(GeometryError::NotConvex { .. })));
        assert!(hat_triangle(0.6).is_err());
        assert!(omega_a(0.5).is_err());
        assert!(regular_polygon(2).is_err());
        assert!(zigzag_domain(0.3, 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = hex_ha(0.25).unwrap();
        let text = polygon_to_json(p.vertices());
        let back = polygon_from_json(&text).unwrap();
        assert_eq!(back, p.vertices());
    }

    #[test]
    fn zigzag_vertex_count() {
        let z = zigzag_domain(0.2, 5).unwrap();
        assert_eq!(z.vertices().len(), 40);
    }
}
