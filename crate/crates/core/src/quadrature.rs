//! Adaptive cubature over triangles and convex polygons. This is the test
//! oracle for the closed forms; it never feeds the certified verdict.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::QuadratureError;
use crate::geometry::{orient, ConvexPolygon, Point2};

/// Polynomial degree integrated exactly by the base rule.
pub const RULE_DEGREE: usize = 8;

/// Cells allowed before the adaptive loop gives up.
pub const MAX_CELLS: usize = 1_000_000;

const ABS_FLOOR: f64 = 1e-14;

// Dunavant's 16-point degree-8 rule: barycentric orbits and weights
// normalised to sum 1. All weights are positive.
const CENTROID_W: f64 = 0.144_315_607_677_787;
const S21: [(f64, f64); 3] = [
    (0.459_292_588_292_723, 0.095_091_634_267_285),
    (0.170_569_307_751_760, 0.103_217_370_534_718),
    (0.050_547_228_317_031, 0.032_458_497_623_198),
];
const S111: (f64, f64, f64) = (0.008_394_777_409_958, 0.263_112_829_634_638, 0.027_230_314_174_435);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    pub p: [Point2; 3],
}

impl Triangle {
    /// Rejects zero-area triangles; use [`Triangle::allow_degenerate`] when a
    /// vanishing domain is meaningful.
    pub fn new(a: Point2, b: Point2, c: Point2) -> Option<Self> {
        let t = Self { p: [a, b, c] };
        (t.area() > 0.0).then_some(t)
    }

    pub fn allow_degenerate(a: Point2, b: Point2, c: Point2) -> Self {
        Self { p: [a, b, c] }
    }

    pub fn area(&self) -> f64 {
        0.5 * orient(self.p[0], self.p[1], self.p[2]).abs()
    }

    fn point(&self, l0: f64, l1: f64, l2: f64) -> Point2 {
        let [a, b, c] = self.p;
        Point2::new(l0 * a.x + l1 * b.x + l2 * c.x, l0 * a.y + l1 * b.y + l2 * c.y)
    }

    fn split(&self) -> [Triangle; 4] {
        let [a, b, c] = self.p;
        let ab = a.midpoint(b);
        let bc = b.midpoint(c);
        let ca = c.midpoint(a);
        [
            Triangle { p: [a, ab, ca] },
            Triangle { p: [ab, b, bc] },
            Triangle { p: [ca, bc, c] },
            Triangle { p: [ab, bc, ca] },
        ]
    }
}

/// One application of the base rule.
pub fn rule<F: Fn(Point2) -> f64>(f: &F, t: &Triangle) -> f64 {
    let third = 1.0 / 3.0;
    let mut s = CENTROID_W * f(t.point(third, third, third));
    for &(a, w) in &S21 {
        let b = 1.0 - 2.0 * a;
        s += w * (f(t.point(a, a, b)) + f(t.point(a, b, a)) + f(t.point(b, a, a)));
    }
    let (a, b, w) = S111;
    let c = 1.0 - a - b;
    s += w
        * (f(t.point(a, b, c))
            + f(t.point(a, c, b))
            + f(t.point(b, a, c))
            + f(t.point(b, c, a))
            + f(t.point(c, a, b))
            + f(t.point(c, b, a)));
    s * t.area()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub cells: usize,
}

struct Cell {
    tri: Triangle,
    children: [f64; 4],
    value: f64,
    error: f64,
}

impl Cell {
    fn new<F: Fn(Point2) -> f64>(f: &F, tri: Triangle, coarse: f64) -> Self {
        let kids = tri.split();
        let children = [rule(f, &kids[0]), rule(f, &kids[1]), rule(f, &kids[2]), rule(f, &kids[3])];
        let value = children.iter().sum::<f64>();
        Cell {
            tri,
            children,
            value,
            error: (value - coarse).abs(),
        }
    }
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive integration: the cell with the largest
/// parent/children discrepancy is split into four until the summed
/// estimate drops below `rel_tol * |value| + 1e-14`.
pub fn integrate_triangle<F: Fn(Point2) -> f64>(f: F, t: &Triangle, rel_tol: f64) -> Result<QuadResult, QuadratureError> {
    integrate_triangle_budget(f, t, rel_tol, MAX_CELLS)
}

/// [`integrate_triangle`] with an explicit cell budget.
pub fn integrate_triangle_budget<F: Fn(Point2) -> f64>(
    f: F,
    t: &Triangle,
    rel_tol: f64,
    max_cells: usize,
) -> Result<QuadResult, QuadratureError> {
    if !(rel_tol >= 1e-13) {
        return Err(QuadratureError::TolTooSmall(rel_tol));
    }
    if t.area() == 0.0 {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            cells: 1,
        });
    }
    let coarse = rule(&f, t);
    let root = Cell::new(&f, *t, coarse);
    if !root.value.is_finite() {
        let c = t.point(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
        return Err(QuadratureError::NonFinite { x: c.x, y: c.y });
    }
    let mut value = root.value;
    let mut error = root.error;
    let mut cells = 1usize;
    let mut heap = BinaryHeap::new();
    heap.push(root);
    loop {
        if error <= rel_tol * value.abs() + ABS_FLOOR {
            break;
        }
        if cells + 3 > max_cells {
            return Err(QuadratureError::BudgetExhausted { value, error, cells });
        }
        let Some(worst) = heap.pop() else { break };
        if worst.error == 0.0 {
            heap.push(worst);
            break;
        }
        value -= worst.value;
        error -= worst.error;
        for (tri, coarse) in worst.tri.split().into_iter().zip(worst.children) {
            let c = Cell::new(&f, tri, coarse);
            if !c.value.is_finite() {
                let m = tri.point(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
                return Err(QuadratureError::NonFinite { x: m.x, y: m.y });
            }
            value += c.value;
            error += c.error;
            heap.push(c);
        }
        cells += 3;
        // Running sums drift; refresh them now and then.
        if cells % 3000 == 0 {
            value = heap.iter().map(|c| c.value).sum();
            error = heap.iter().map(|c| c.error).sum();
        }
    }
    let value = heap.iter().map(|c| c.value).sum();
    let error = heap.iter().map(|c| c.error).sum();
    Ok(QuadResult { value, error, cells })
}

/// Fan triangulation from the centroid; errors combine in root-sum-square.
pub fn integrate_polygon<F: Fn(Point2) -> f64>(f: F, poly: &ConvexPolygon, rel_tol: f64) -> Result<QuadResult, QuadratureError> {
    let c = poly.centroid();
    let v = poly.vertices();
    let n = v.len();
    let mut value = 0.0;
    let mut err2 = 0.0;
    let mut cells = 0;
    for i in 0..n {
        let t = Triangle::allow_degenerate(c, v[i], v[(i + 1) % n]);
        let r = integrate_triangle(&f, &t, rel_tol)?;
        value += r.value;
        err2 += r.error * r.error;
        cells += r.cells;
    }
    Ok(QuadResult {
        value,
        error: err2.sqrt(),
        cells,
    })
}
