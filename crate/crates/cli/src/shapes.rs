//! Named shapes accepted by `--shape`.

use std::f64::consts::PI;
use std::str::FromStr;

use neumann_core::geometry::{
    ca_outer_polygon, hex_ha, omega_a, rectangle, regular_polygon, triangle_t, unit_square, zigzag_domain, ConvexPolygon, Point2,
};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Square,
    Triangle,
    Rectangle {
        l: f64,
        w: f64,
    },
    /// Regular N-gon with circumradius 1.
    Regular(usize),
    /// Regular 128-gon scaled to area π.
    Disk,
    Hexagon(f64),
    Omega(f64),
    /// The 12-gon Ω₁(a, c).
    Trapezoid {
        a: f64,
        c: f64,
    },
    Zigzag {
        a: f64,
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeParseError(pub String);

impl std::fmt::Display for ShapeParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "unknown shape '{}'; expected square, triangle, disk, rectangle:L:W, regular:N, hexagon:A, omega:A, trapezoid:A:C or zigzag:A:N",
            self.0
        )
    }
}

impl std::error::Error for ShapeParseError {}

impl FromStr for Shape {
    type Err = ShapeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ShapeParseError(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<f64, ShapeParseError> { parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad) };
        let int = |i: usize| -> Result<usize, ShapeParseError> { parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad) };
        let arity = |n: usize| if parts.len() == n { Ok(()) } else { Err(bad()) };
        match parts[0] {
            "square" => arity(1).map(|_| Shape::Square),
            "triangle" => arity(1).map(|_| Shape::Triangle),
            "disk" => arity(1).map(|_| Shape::Disk),
            "rectangle" => {
                arity(3)?;
                Ok(Shape::Rectangle { l: num(1)?, w: num(2)? })
            }
            "regular" => {
                arity(2)?;
                Ok(Shape::Regular(int(1)?))
            }
            "hexagon" => {
                arity(2)?;
                Ok(Shape::Hexagon(num(1)?))
            }
            "omega" => {
                arity(2)?;
                Ok(Shape::Omega(num(1)?))
            }
            "trapezoid" => {
                arity(3)?;
                Ok(Shape::Trapezoid { a: num(1)?, c: num(2)? })
            }
            "zigzag" => {
                arity(3)?;
                Ok(Shape::Zigzag { a: num(1)?, n: int(2)? })
            }
            _ => Err(bad()),
        }
    }
}

impl Shape {
    /// The convex polygon, or an error for the zigzag domain.
    pub fn convex(&self) -> Result<ConvexPolygon, CliError> {
        Ok(match *self {
            Shape::Square => unit_square(),
            Shape::Triangle => triangle_t(),
            Shape::Rectangle { l, w } => rectangle(l, w)?,
            Shape::Regular(n) => regular_polygon(n)?,
            Shape::Disk => {
                let p = regular_polygon(128)?;
                p.scaled((PI / p.area()).sqrt())?
            }
            Shape::Hexagon(a) => hex_ha(a)?,
            Shape::Omega(a) => omega_a(a)?,
            Shape::Trapezoid { a, c } => ca_outer_polygon(a, c)?,
            Shape::Zigzag { .. } => return Err(CliError::NotConvex("zigzag".into())),
        })
    }

    /// Boundary vertices in counter-clockwise order, convex or not.
    pub fn vertices(&self) -> Result<Vec<Point2>, CliError> {
        match *self {
            Shape::Zigzag { a, n } => Ok(zigzag_domain(a, n)?.vertices().to_vec()),
            _ => Ok(self.convex()?.vertices().to_vec()),
        }
    }
}
