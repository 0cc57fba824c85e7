//! Grids of (a, c) points covering a zone up to half a step in each direction.

use std::collections::BTreeSet;

use super::Zone;

/// Kept grid points, stored on the half-step lattice so that refinement
/// points and regular nodes share one index space.
#[derive(Debug, Clone)]
pub struct Grid {
    pub zone: Zone,
    /// Half-step lattice indices (2i, 2j for regular nodes), sorted.
    keys: Vec<(u32, u32)>,
}

impl Grid {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    fn coord(&self, key: (u32, u32)) -> (f64, f64) {
        let z = &self.zone;
        (
            z.a_min + key.0 as f64 * 0.5 * z.delta_a(),
            z.c_min + key.1 as f64 * 0.5 * z.delta_c(),
        )
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        self.keys.iter().map(|&k| self.coord(k)).collect()
    }

    /// A kept point whose half-step box contains (a, c), if any.
    pub fn cover(&self, a: f64, c: f64) -> Option<(f64, f64)> {
        let z = &self.zone;
        let (ha, hc) = (0.5 * z.delta_a(), 0.5 * z.delta_c());
        let ui = ((a - z.a_min) / ha).floor() as i64;
        let vj = ((c - z.c_min) / hc).floor() as i64;
        let eps = 1e-12;
        for du in -2..=3 {
            for dv in -2..=3 {
                let (u, v) = (ui + du, vj + dv);
                if u < 0 || v < 0 {
                    continue;
                }
                let key = (u as u32, v as u32);
                if self.keys.binary_search(&key).is_ok() {
                    let (pa, pc) = self.coord(key);
                    if (pa - a).abs() <= ha * (1.0 + eps) && (pc - c).abs() <= hc * (1.0 + eps) {
                        return Some((pa, pc));
                    }
                }
            }
        }
        None
    }
}

/// The uniform (n_a + 1) × (n_c + 1) grid of the zone rectangle. For a zone
/// cut by c ≥ a, every cell crossed by the diagonal also gets its four edge
/// midpoints and its center, and points with c < a are dropped.
pub fn build_grid(z: &Zone) -> Grid {
    let mut keys = BTreeSet::new();
    let (na, nc) = (z.n_a, z.n_c);
    for i in 0..=na {
        for j in 0..=nc {
            keys.insert((2 * i, 2 * j));
        }
    }
    if z.diagonal_cut {
        let (da, dc) = (z.delta_a(), z.delta_c());
        for i in 0..na {
            for j in 0..nc {
                let a0 = z.a_min + i as f64 * da;
                let c0 = z.c_min + j as f64 * dc;
                // c − a is largest at the top-left corner and smallest at the bottom-right.
                let hi = (c0 + dc) - a0;
                let lo = c0 - (a0 + da);
                if lo < 0.0 && hi > 0.0 {
                    let (u, v) = (2 * i, 2 * j);
                    for key in [(u + 1, v), (u + 1, v + 2), (u, v + 1), (u + 2, v + 1), (u + 1, v + 1)] {
                        keys.insert(key);
                    }
                }
            }
        }
    }
    let mut grid = Grid {
        zone: z.clone(),
        keys: keys.into_iter().collect(),
    };
    if z.diagonal_cut {
        let kept: Vec<_> = grid
            .keys
            .iter()
            .copied()
            .filter(|&k| {
                let (a, c) = grid.coord(k);
                c >= a.max(z.c_min) - 1e-15
            })
            .collect();
        grid.keys = kept;
    }
    grid
}
