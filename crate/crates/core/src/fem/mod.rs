//! P1 finite-element oracle for the first nonzero Neumann eigenvalue.

mod eigen;
pub mod mesh;
pub mod scan;
pub mod sparse;

use serde::{Deserialize, Serialize};

use crate::error::FemError;
use crate::geometry::{zigzag_domain, Point2};

pub use eigen::{assemble, smallest_nonzero, Assembled, Eigenpair, RESIDUAL_TOL};
pub use mesh::{triangulate, Mesh};
pub use scan::{conjecture_scan, random_convex_polygon, random_symmetric_shape, scan_polygon, ScanRow, ShapeFamily};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigResult {
    /// μ₁ on the finest mesh used.
    pub mu1: f64,
    /// Element diameter of that mesh.
    pub h: f64,
    pub dof: usize,
    pub residual: f64,
    pub zero_mode: f64,
    pub iterations: usize,
    /// μ(h/2) + (μ(h/2) − μ(h))/3 from the mesh and its uniform refinement.
    pub extrapolated: Option<f64>,
}

impl EigResult {
    /// The extrapolated value when present, otherwise μ₁.
    pub fn best(&self) -> f64 {
        self.extrapolated.unwrap_or(self.mu1)
    }
}

pub fn mu1_mesh(mesh: &Mesh) -> Result<EigResult, FemError> {
    let asm = assemble(mesh)?;
    let coords: Vec<[f64; 2]> = mesh.nodes.iter().map(|&p| p.into()).collect();
    let e = smallest_nonzero(&asm, &coords)?;
    Ok(EigResult {
        mu1: e.lambda,
        h: mesh.h(),
        dof: mesh.nodes.len(),
        residual: e.residual,
        zero_mode: e.zero_mode,
        iterations: e.iterations,
        extrapolated: None,
    })
}

/// μ₁ of a simple polygon on a mesh of diameter ≤ h; with `richardson` the
/// mesh is refined once and the two values are extrapolated in h².
pub fn mu1_fem(vertices: &[Point2], h: f64, richardson: bool) -> Result<EigResult, FemError> {
    let mesh = triangulate(vertices, h)?;
    let coarse = mu1_mesh(&mesh)?;
    if !richardson {
        return Ok(coarse);
    }
    let mut fine = mu1_mesh(&mesh.refine_uniform())?;
    fine.extrapolated = Some(fine.mu1 + (fine.mu1 - coarse.mu1) / 3.0);
    Ok(fine)
}

/// μ₁ of the zigzag domain; h must resolve the teeth, h ≤ a/(4n).
pub fn mu1_zigzag(a: f64, n: usize, h: f64, richardson: bool) -> Result<EigResult, FemError> {
    let limit = a / (4.0 * n as f64);
    if h > limit {
        return Err(FemError::UnresolvedTeeth { h, limit });
    }
    let poly = zigzag_domain(a, n)?;
    mu1_fem(poly.vertices(), h, richardson)
}
