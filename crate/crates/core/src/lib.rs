//! Bounds and a computer-assisted certificate for the first nonzero Neumann
//! eigenvalue μ₁ of planar convex polygons, with a P1 finite-element oracle.
//!
//! The central claim checked here is P²μ₁ ≤ 16π² on convex domains with
//! two axes of symmetry at angle π/3, via the trapezoid family of test
//! functions built from the equilateral triangle's eigenfunctions.

pub mod bounds;
pub mod certify;
pub mod closed_form;
pub mod error;
pub mod fem;
pub mod geometry;
pub mod quadrature;
pub mod trig_eigen;

pub use bounds::{bound_set, BoundSet};
pub use certify::{full_verdict, sweep, zones, FullVerdict, GridReport, SweepConfig, Zone, ZoneName};
pub use closed_form::{ndf, CaPoint, Ndf};
pub use error::{CertifyError, Error, FemError, GeometryError, QuadratureError};
pub use geometry::{ConvexPolygon, Point2, ShapeMetrics, SimplePolygon};
pub use trig_eigen::MixParam;
