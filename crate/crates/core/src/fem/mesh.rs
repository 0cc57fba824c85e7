//! Conforming triangulations of simple polygons.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use spade::{AngleLimit, ConstrainedDelaunayTriangulation, RefinementParameters, Triangulation};

use crate::error::{Error, FemError};
use crate::geometry::{signed_area, Point2, SimplePolygon};

/// Minimum angle requested from the Delaunay refinement, in degrees.
const ANGLE_LIMIT_DEG: f64 = 28.0;

/// Rounds of longest-edge splitting before giving up.
const MAX_SPLIT_ROUNDS: usize = 60;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub nodes: Vec<Point2>,
    pub elements: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
struct MeshFile {
    nodes: Vec<[f64; 2]>,
    elements: Vec<[usize; 3]>,
}

impl Mesh {
    pub fn element_area(&self, e: usize) -> f64 {
        let [i, j, k] = self.elements[e];
        signed_area(&[self.nodes[i], self.nodes[j], self.nodes[k]])
    }

    pub fn area(&self) -> f64 {
        (0..self.elements.len()).map(|e| self.element_area(e)).sum()
    }

    /// Largest element diameter, which for triangles is the longest edge.
    pub fn h(&self) -> f64 {
        self.elements
            .iter()
            .map(|&[i, j, k]| {
                let (a, b, c) = (self.nodes[i], self.nodes[j], self.nodes[k]);
                a.dist(b).max(b.dist(c)).max(c.dist(a))
            })
            .fold(0.0, f64::max)
    }

    /// Smallest interior angle over all elements, in degrees.
    pub fn min_angle_deg(&self) -> f64 {
        let mut min = 180.0f64;
        for &[i, j, k] in &self.elements {
            let p = [self.nodes[i], self.nodes[j], self.nodes[k]];
            for v in 0..3 {
                let e1 = p[(v + 1) % 3].sub(p[v]);
                let e2 = p[(v + 2) % 3].sub(p[v]);
                let ang = e1.cross(e2).abs().atan2(e1.dot(e2)).to_degrees();
                min = min.min(ang);
            }
        }
        min
    }

    /// Index of the first element with non-positive signed area.
    pub fn first_inverted(&self) -> Option<usize> {
        (0..self.elements.len()).find(|&e| self.element_area(e) <= 0.0)
    }

    /// Splits every triangle into four through its edge midpoints.
    pub fn refine_uniform(&self) -> Mesh {
        let mut nodes = self.nodes.clone();
        let mut mids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |i: usize, j: usize, nodes: &mut Vec<Point2>| -> usize {
            let key = (i.min(j), i.max(j));
            *mids.entry(key).or_insert_with(|| {
                nodes.push(nodes[i].midpoint(nodes[j]));
                nodes.len() - 1
            })
        };
        let mut elements = Vec::with_capacity(4 * self.elements.len());
        for &[a, b, c] in &self.elements {
            let ab = mid(a, b, &mut nodes);
            let bc = mid(b, c, &mut nodes);
            let ca = mid(c, a, &mut nodes);
            elements.extend_from_slice(&[[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
        }
        Mesh { nodes, elements }
    }

    pub fn to_json(&self) -> String {
        let f = MeshFile {
            nodes: self.nodes.iter().map(|&p| p.into()).collect(),
            elements: self.elements.clone(),
        };
        serde_json::to_string(&f).expect("plain floats always serialize")
    }

    pub fn from_json(text: &str) -> Result<Mesh, Error> {
        let f: MeshFile = serde_json::from_str(text)?;
        Ok(Mesh {
            nodes: f.nodes.into_iter().map(Point2::from).collect(),
            elements: f.elements,
        })
    }

    pub fn write_json(&self, path: &Path) -> Result<(), Error> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// Boundary with every edge split into pieces no longer than `h`.
fn subdivided_boundary(v: &[Point2], h: f64) -> Vec<Point2> {
    let n = v.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (p, q) = (v[i], v[(i + 1) % n]);
        let pieces = (p.dist(q) / h).ceil().max(1.0) as usize;
        for s in 0..pieces {
            out.push(p.add(q.sub(p).scale(s as f64 / pieces as f64)));
        }
    }
    out
}

/// CDT of the boundary refined for quality and area, then split along
/// the longest edge of every element still wider than `h` until none is.
fn cdt_mesh(boundary: &[Point2], h: f64) -> Result<Mesh, FemError> {
    type Cdt = ConstrainedDelaunayTriangulation<spade::Point2<f64>>;
    let m = boundary.len();
    let verts: Vec<spade::Point2<f64>> = boundary.iter().map(|p| spade::Point2::new(p.x, p.y)).collect();
    let edges: Vec<[usize; 2]> = (0..m).map(|i| [i, (i + 1) % m]).collect();
    let mut cdt = Cdt::bulk_load_cdt(verts, edges).map_err(|e| FemError::Meshing(format!("{e:?}")))?;
    let params = RefinementParameters::<f64>::new()
        .with_max_allowed_area(0.35 * h * h)
        .with_angle_limit(AngleLimit::from_deg(ANGLE_LIMIT_DEG))
        .with_max_additional_vertices(50_000_000)
        .exclude_outer_faces(true);
    for _ in 0..MAX_SPLIT_ROUNDS {
        let result = cdt.refine(params.clone());
        if !result.refinement_complete {
            return Err(FemError::Meshing("refinement hit the vertex budget".into()));
        }
        let excluded: HashSet<_> = result.excluded_faces.into_iter().collect();
        let mut splits = Vec::new();
        for face in cdt.inner_faces() {
            if excluded.contains(&face.fix()) {
                continue;
            }
            let p = face.positions();
            let (mut best, mut len2) = (0, 0.0);
            for i in 0..3 {
                let (dx, dy) = (p[(i + 1) % 3].x - p[i].x, p[(i + 1) % 3].y - p[i].y);
                let l2 = dx * dx + dy * dy;
                if l2 > len2 {
                    (best, len2) = (i, l2);
                }
            }
            if len2 > h * h {
                let (a, b) = (p[best], p[(best + 1) % 3]);
                splits.push(spade::Point2::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y)));
            }
        }
        if splits.is_empty() {
            return Ok(collect_mesh(&cdt, &excluded));
        }
        for p in splits {
            cdt.insert(p).map_err(|e| FemError::Meshing(format!("{e:?}")))?;
        }
    }
    Err(FemError::Meshing(format!("could not reach element diameter {h}")))
}

fn collect_mesh<T: Triangulation<Vertex = spade::Point2<f64>>>(
    cdt: &T,
    excluded: &HashSet<spade::handles::FixedFaceHandle<spade::handles::InnerTag>>,
) -> Mesh {
    let mut index: HashMap<usize, usize> = HashMap::new();
    let mut nodes = Vec::new();
    let mut elements = Vec::new();
    for face in cdt.inner_faces() {
        if excluded.contains(&face.fix()) {
            continue;
        }
        let mut tri = [0usize; 3];
        for (slot, v) in face.vertices().iter().enumerate() {
            let id = v.fix().index();
            tri[slot] = *index.entry(id).or_insert_with(|| {
                let p = v.position();
                nodes.push(Point2::new(p.x, p.y));
                nodes.len() - 1
            });
        }
        if signed_area(&[nodes[tri[0]], nodes[tri[1]], nodes[tri[2]]]) < 0.0 {
            tri.swap(1, 2);
        }
        elements.push(tri);
    }
    Mesh { nodes, elements }
}

/// Constrained Delaunay triangulation of a simple polygon with every
/// element diameter at most `h`. All polygon vertices are mesh nodes.
pub fn triangulate(vertices: &[Point2], h: f64) -> Result<Mesh, FemError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(FemError::BadMeshSize { h });
    }
    let poly = SimplePolygon::new(vertices.to_vec())?;
    let boundary = subdivided_boundary(poly.vertices(), 0.9 * h);
    let mesh = cdt_mesh(&boundary, h)?;
    if let Some(e) = mesh.first_inverted() {
        return Err(FemError::InvertedElement(e));
    }
    Ok(mesh)
}
