//! Random shapes with two symmetry axes and the FEM scan of P²μ₁ over them.

use std::f64::consts::PI;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::mu1_fem;
use crate::bounds::TARGET;
use crate::error::FemError;
use crate::geometry::{ca_outer_polygon, convex_hull, dihedral_hull, ConvexPolygon, Point2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShapeFamily {
    /// Hull of a point orbit under the dihedral group with `n` axes.
    Dihedral(usize),
    /// The 12-gon outer approximant Ω₁(a, c).
    TrapezoidCut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub id: usize,
    pub family: ShapeFamily,
    pub vertices: usize,
    pub p2_mu1: f64,
    /// 16π² − P²μ₁; negative means the shape beats the conjectured bound.
    pub margin: f64,
}

/// Shape `id` of the scan: dihedral hulls with 2, 3, 4 or 6 axes and
/// trapezoid cuts with a ∈ [0.05, 0.3], cycling through the families.
pub fn random_symmetric_shape<R: Rng>(rng: &mut R, id: usize) -> Result<(ShapeFamily, ConvexPolygon), FemError> {
    let family = match id % 5 {
        0 => ShapeFamily::Dihedral(2),
        1 => ShapeFamily::Dihedral(3),
        2 => ShapeFamily::TrapezoidCut,
        3 => ShapeFamily::Dihedral(4),
        _ => ShapeFamily::Dihedral(6),
    };
    let poly = match family {
        ShapeFamily::Dihedral(n) => {
            let seeds: Vec<Point2> = (0..rng.random_range(1..=4))
                .map(|_| {
                    let r = rng.random_range(0.3..1.0);
                    let t = rng.random_range(0.0..PI / n as f64);
                    Point2::new(r * t.cos(), r * t.sin())
                })
                .collect();
            dihedral_hull(&seeds, n)?
        }
        ShapeFamily::TrapezoidCut => {
            let a = rng.random_range(0.05..0.3);
            let c = rng.random_range(a..0.5);
            ca_outer_polygon(a, c)?
        }
    };
    Ok((family, poly))
}

/// Hull of 3 to 12 uniform points in the unit square.
pub fn random_convex_polygon<R: Rng>(rng: &mut R) -> ConvexPolygon {
    loop {
        let n = rng.random_range(3..=12);
        let pts: Vec<Point2> = (0..n)
            .map(|_| Point2::new(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)))
            .collect();
        if let Ok(p) = convex_hull(&pts) {
            let m = p.metrics();
            // Skip slivers, which need very fine meshes.
            if m.min_width > 0.15 * m.diameter {
                return p;
            }
        }
    }
}

/// P²μ₁ of one polygon with mesh size `h_rel` times its diameter, using
/// the Richardson value.
pub fn scan_polygon(poly: &ConvexPolygon, h_rel: f64) -> Result<f64, FemError> {
    let m = poly.metrics();
    let r = mu1_fem(poly.vertices(), h_rel * m.diameter, true)?;
    Ok(m.perimeter * m.perimeter * r.best())
}

pub fn conjecture_scan(count: usize, seed: u64, h_rel: f64) -> Result<Vec<ScanRow>, FemError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|id| {
            let (family, poly) = random_symmetric_shape(&mut rng, id)?;
            let v = scan_polygon(&poly, h_rel)?;
            Ok(ScanRow {
                id,
                family,
                vertices: poly.len(),
                p2_mu1: v,
                margin: TARGET - v,
            })
        })
        .collect()
}
