use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("polygon is not convex at vertex {index} (cross product {cross:e})")]
    NotConvex { index: usize, cross: f64 },
    #[error("vertices are not in counter-clockwise order (signed area {0:e})")]
    Clockwise(f64),
    #[error("degenerate polygon, area {0:e} below 1e-14")]
    Degenerate(f64),
    #[error("edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("parameter {name} = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("rel_tol {0:e} is below the supported floor 1e-13")]
    TolTooSmall(f64),
    #[error("integrand is not finite at ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
    #[error("cell budget exhausted after {cells} cells; partial value {value} with error estimate {error:e}")]
    BudgetExhausted { value: f64, error: f64, cells: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FemError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("mesh size h = {h} must be positive and finite")]
    BadMeshSize { h: f64 },
    #[error("mesh size h = {h} does not resolve the sawtooth (need h <= {limit})")]
    UnresolvedTeeth { h: f64, limit: f64 },
    #[error("meshing failed: {0}")]
    Meshing(String),
    #[error("element {0} is inverted or degenerate")]
    InvertedElement(usize),
    #[error("matrix is not positive definite at pivot {0}")]
    NotPositiveDefinite(usize),
    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("F is not finite at (a, c) = ({a}, {c})")]
    NonFinite { a: f64, c: f64 },
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Umbrella error for callers that mix modules, mainly the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Fem(#[from] FemError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
