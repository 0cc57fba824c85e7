//! Symmetric sparse matrices in CSR form, reverse Cuthill-McKee ordering,
//! and an envelope (skyline) Cholesky factorization.

use std::collections::VecDeque;

use crate::error::FemError;

/// Square sparse matrix with both triangles stored, rows sorted.
#[derive(Debug, Clone)]
pub struct Csr {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub cols: Vec<usize>,
    pub vals: Vec<f64>,
}

impl Csr {
    /// Empty matrix with the sparsity pattern given by sorted adjacency lists
    /// that include the diagonal.
    pub fn with_pattern(adj: &[Vec<usize>]) -> Self {
        let mut row_ptr = Vec::with_capacity(adj.len() + 1);
        let mut cols = Vec::new();
        row_ptr.push(0);
        for row in adj {
            cols.extend_from_slice(row);
            row_ptr.push(cols.len());
        }
        let nnz = cols.len();
        Csr {
            n: adj.len(),
            row_ptr,
            cols,
            vals: vec![0.0; nnz],
        }
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        let row = &self.cols[self.row_ptr[i]..self.row_ptr[i + 1]];
        self.row_ptr[i] + row.binary_search(&j).expect("entry is in the pattern")
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let s = self.slot(i, j);
        self.vals[s] += v;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let row = &self.cols[self.row_ptr[i]..self.row_ptr[i + 1]];
        row.binary_search(&j).map(|k| self.vals[self.row_ptr[i] + k]).unwrap_or(0.0)
    }

    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        for i in 0..self.n {
            let mut s = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                s += self.vals[k] * x[self.cols[k]];
            }
            y[i] = s;
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        self.mul_vec(x, &mut y);
        y
    }

    /// self + s * other, for matrices sharing one pattern.
    pub fn axpy_same_pattern(&self, s: f64, other: &Csr) -> Csr {
        let mut out = self.clone();
        for (v, w) in out.vals.iter_mut().zip(&other.vals) {
            *v += s * w;
        }
        out
    }

    fn neighbours(&self, i: usize) -> &[usize] {
        &self.cols[self.row_ptr[i]..self.row_ptr[i + 1]]
    }
}

fn bfs_levels(a: &Csr, start: usize, seen: &mut [bool]) -> Vec<usize> {
    let mut order = vec![start];
    seen[start] = true;
    let mut head = 0;
    while head < order.len() {
        let i = order[head];
        head += 1;
        for &j in a.neighbours(i) {
            if !seen[j] {
                seen[j] = true;
                order.push(j);
            }
        }
    }
    order
}

/// Reverse Cuthill-McKee: perm[new] = old.
pub fn rcm(a: &Csr) -> Vec<usize> {
    let n = a.n;
    let degree: Vec<usize> = (0..n).map(|i| a.neighbours(i).len()).collect();
    let mut placed = vec![false; n];
    let mut perm = Vec::with_capacity(n);
    for root in 0..n {
        if placed[root] {
            continue;
        }
        // Move towards a pseudo-peripheral node: the last node of a BFS.
        let mut start = root;
        for _ in 0..2 {
            let mut seen = placed.clone();
            let order = bfs_levels(a, start, &mut seen);
            start = *order.last().expect("bfs includes the start");
        }
        let mut queue = VecDeque::from([start]);
        placed[start] = true;
        while let Some(i) = queue.pop_front() {
            perm.push(i);
            let mut next: Vec<usize> = a.neighbours(i).iter().copied().filter(|&j| !placed[j]).collect();
            next.sort_by_key(|&j| (degree[j], j));
            for j in next {
                placed[j] = true;
                queue.push_back(j);
            }
        }
    }
    perm.reverse();
    perm
}

/// Lower-triangular Cholesky factor stored row by row over the envelope,
/// for the matrix permuted by `perm`.
#[derive(Debug, Clone)]
pub struct Skyline {
    n: usize,
    perm: Vec<usize>,
    first: Vec<usize>,
    start: Vec<usize>,
    vals: Vec<f64>,
}

impl Skyline {
    pub fn factor(a: &Csr, perm: Vec<usize>) -> Result<Skyline, FemError> {
        let n = a.n;
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut first = vec![0; n];
        for (i, f) in first.iter_mut().enumerate() {
            *f = a.neighbours(perm[i]).iter().map(|&j| inv[j]).filter(|&j| j <= i).min().unwrap_or(i);
        }
        let mut start = Vec::with_capacity(n + 1);
        start.push(0);
        for i in 0..n {
            start.push(start[i] + (i - first[i] + 1));
        }
        let mut vals = vec![0.0; start[n]];
        for i in 0..n {
            let old = perm[i];
            for k in a.row_ptr[old]..a.row_ptr[old + 1] {
                let j = inv[a.cols[k]];
                if j <= i {
                    vals[start[i] + j - first[i]] = a.vals[k];
                }
            }
        }
        for i in 0..n {
            let fi = first[i];
            for j in fi..i {
                let fj = first[j];
                let lo = fi.max(fj);
                let (ri, rj) = (start[i] + lo - fi, start[j] + lo - fj);
                let len = j - lo;
                let dot: f64 = vals[ri..ri + len].iter().zip(&vals[rj..rj + len]).map(|(x, y)| x * y).sum();
                let ljj = vals[start[j] + j - fj];
                let s = start[i] + j - fi;
                vals[s] = (vals[s] - dot) / ljj;
            }
            let row = &vals[start[i]..start[i] + (i - fi)];
            let d = vals[start[i] + i - fi] - row.iter().map(|x| x * x).sum::<f64>();
            if !(d > 0.0) {
                return Err(FemError::NotPositiveDefinite(i));
            }
            vals[start[i] + i - fi] = d.sqrt();
        }
        Ok(Skyline {
            n,
            perm,
            first,
            start,
            vals,
        })
    }

    /// Number of stored factor entries.
    pub fn envelope(&self) -> usize {
        self.vals.len()
    }

    /// Solves A x = b in the original numbering.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y: Vec<f64> = self.perm.iter().map(|&old| b[old]).collect();
        for i in 0..n {
            let fi = self.first[i];
            let row = &self.vals[self.start[i]..self.start[i] + (i - fi)];
            let dot: f64 = row.iter().zip(&y[fi..i]).map(|(l, v)| l * v).sum();
            y[i] = (y[i] - dot) / self.vals[self.start[i] + i - fi];
        }
        for i in (0..n).rev() {
            let fi = self.first[i];
            let xi = y[i] / self.vals[self.start[i] + i - fi];
            y[i] = xi;
            let row = &self.vals[self.start[i]..self.start[i] + (i - fi)];
            for (l, v) in row.iter().zip(&mut y[fi..i]) {
                *v -= l * xi;
            }
        }
        let mut x = vec![0.0; n];
        for (new, &old) in self.perm.iter().enumerate() {
            x[old] = y[new];
        }
        x
    }
}
