//! P1 stiffness and mass assembly and the smallest nonzero eigenpair of
//! K x = λ M x.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::mesh::Mesh;
use super::sparse::{rcm, Csr, Skyline};
use crate::error::FemError;

/// Block size of the subspace iteration.
const BLOCK: usize = 8;
const MAX_ITERATIONS: usize = 400;
/// Required ‖K v − λ M v‖ / ‖M v‖.
pub const RESIDUAL_TOL: f64 = 1e-8;

pub struct Assembled {
    pub k: Csr,
    pub m: Csr,
}

/// Exact P1 element matrices: K_e = A ∇φᵢ·∇φⱼ, M_e = A/12 (1 + δᵢⱼ).
pub fn assemble(mesh: &Mesh) -> Result<Assembled, FemError> {
    let n = mesh.nodes.len();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for &[a, b, c] in &mesh.elements {
        for (i, j) in [(a, b), (b, c), (c, a)] {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    for row in &mut adj {
        row.sort_unstable();
        row.dedup();
    }
    let mut k = Csr::with_pattern(&adj);
    let mut m = Csr::with_pattern(&adj);
    for (e, tri) in mesh.elements.iter().enumerate() {
        let p = [mesh.nodes[tri[0]], mesh.nodes[tri[1]], mesh.nodes[tri[2]]];
        let area = mesh.element_area(e);
        if !(area > 0.0) {
            return Err(FemError::InvertedElement(e));
        }
        // ∇φᵢ is the opposite edge rotated by −90°, over 2A.
        let grad: [[f64; 2]; 3] = std::array::from_fn(|i| {
            let e = p[(i + 2) % 3].sub(p[(i + 1) % 3]);
            [-e.y / (2.0 * area), e.x / (2.0 * area)]
        });
        for i in 0..3 {
            for j in 0..3 {
                let kij = area * (grad[i][0] * grad[j][0] + grad[i][1] * grad[j][1]);
                let mij = area / 12.0 * if i == j { 2.0 } else { 1.0 };
                k.add(tri[i], tri[j], kij);
                m.add(tri[i], tri[j], mij);
            }
        }
    }
    Ok(Assembled { k, m })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenpair {
    pub lambda: f64,
    /// ‖K v − λ M v‖ / ‖M v‖.
    pub residual: f64,
    /// |1ᵀ K 1| / 1ᵀ M 1, the Rayleigh quotient of the constant mode.
    pub zero_mode: f64,
    pub iterations: usize,
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// M-orthonormalizes the columns in place (two passes of modified
/// Gram-Schmidt), also against `ones`. Returns false if a column collapsed.
fn m_orthonormalize(cols: &mut [Vec<f64>], m: &Csr, ones: &[f64], m_ones: &[f64], ones_mass: f64) -> bool {
    for j in 0..cols.len() {
        for _ in 0..2 {
            let c = dot(m_ones, &cols[j]) / ones_mass;
            for (x, o) in cols[j].iter_mut().zip(ones) {
                *x -= c * o;
            }
            for i in 0..j {
                let mi = m.apply(&cols[i]);
                let c = dot(&mi, &cols[j]);
                let (head, tail) = cols.split_at_mut(j);
                for (x, y) in tail[0].iter_mut().zip(&head[i]) {
                    *x -= c * y;
                }
            }
        }
        let nrm = dot(&m.apply(&cols[j]), &cols[j]).sqrt();
        if !(nrm > 1e-300) {
            return false;
        }
        for x in &mut cols[j] {
            *x /= nrm;
        }
    }
    true
}

/// Smallest nonzero eigenvalue by subspace iteration on (K + σM)⁻¹ M with
/// the constant mode projected out.
pub fn smallest_nonzero(asm: &Assembled, coords: &[[f64; 2]]) -> Result<Eigenpair, FemError> {
    let n = asm.k.n;
    if n < 3 {
        return Err(FemError::Meshing("mesh has fewer than three nodes".into()));
    }
    let ones = vec![1.0; n];
    let m_ones = asm.m.apply(&ones);
    let ones_mass = dot(&ones, &m_ones);
    let zero_mode = dot(&ones, &asm.k.apply(&ones)).abs() / ones_mass;
    // A shift of order 1/area keeps K + σM positive definite without
    // swamping the low end of the spectrum.
    let sigma = 1.0 / ones_mass;
    let shifted = asm.k.axpy_same_pattern(sigma, &asm.m);
    let chol = Skyline::factor(&shifted, rcm(&shifted))?;

    let p = BLOCK.min(n - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cols: Vec<Vec<f64>> = (0..p)
        .map(|j| match j {
            0 => coords.iter().map(|c| c[0]).collect(),
            1 => coords.iter().map(|c| c[1]).collect(),
            _ => (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(),
        })
        .collect();
    m_orthonormalize(&mut cols, &asm.m, &ones, &m_ones, ones_mass);

    let mut last_residual = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        let mut next: Vec<Vec<f64>> = cols.iter().map(|x| chol.solve(&asm.m.apply(x))).collect();
        if !m_orthonormalize(&mut next, &asm.m, &ones, &m_ones, ones_mass) {
            for col in next.iter_mut() {
                if !col.iter().all(|v| v.is_finite()) || norm(col) == 0.0 {
                    *col = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
                }
            }
            m_orthonormalize(&mut next, &asm.m, &ones, &m_ones, ones_mass);
        }
        let kx: Vec<Vec<f64>> = next.iter().map(|x| asm.k.apply(x)).collect();
        let proj = DMatrix::from_fn(p, p, |i, j| 0.5 * (dot(&next[i], &kx[j]) + dot(&next[j], &kx[i])));
        let eig = SymmetricEigen::new(proj);
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        cols = order
            .iter()
            .map(|&c| {
                let mut v = vec![0.0; n];
                for (i, x) in next.iter().enumerate() {
                    let w = eig.eigenvectors[(i, c)];
                    for (vi, xi) in v.iter_mut().zip(x) {
                        *vi += w * xi;
                    }
                }
                v
            })
            .collect();
        let lambda = eig.eigenvalues[order[0]];
        let v = &cols[0];
        let kv = asm.k.apply(v);
        let mv = asm.m.apply(v);
        let r: Vec<f64> = kv.iter().zip(&mv).map(|(a, b)| a - lambda * b).collect();
        last_residual = norm(&r) / norm(&mv);
        if last_residual <= RESIDUAL_TOL {
            return Ok(Eigenpair {
                lambda,
                residual: last_residual,
                zero_mode,
                iterations: it,
            });
        }
    }
    Err(FemError::NoConvergence {
        iterations: MAX_ITERATIONS,
        residual: last_residual,
    })
}
