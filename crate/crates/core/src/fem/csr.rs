//! Compressed-row sparse matrices for operator application, plus the bridge
//! to the direct factorization backend.

use crate::{Error, Result};
use faer::prelude::*;
use faer::sparse::{SparseColMat, Triplet};

/// Row-major sparse matrix built from (row, col, value) triplets with
/// duplicate summing.
#[derive(Debug, Clone)]
pub struct Csr {
    pub n_rows: usize,
    pub n_cols: usize,
    pub indptr: Vec<usize>,
    pub indices: Vec<usize>,
    pub data: Vec<f64>,
}

impl Csr {
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        mut trips: Vec<(usize, usize, f64)>,
    ) -> Self {
        trips.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut indptr = vec![0usize; n_rows + 1];
        let mut indices = Vec::with_capacity(trips.len());
        let mut data = Vec::with_capacity(trips.len());
        let mut it = trips.into_iter().peekable();
        while let Some((r, c, mut v)) = it.next() {
            debug_assert!(r < n_rows && c < n_cols, "entry ({r},{c}) out of bounds");
            while let Some(&(r2, c2, v2)) = it.peek() {
                if r2 == r && c2 == c {
                    v += v2;
                    it.next();
                } else {
                    break;
                }
            }
            indices.push(c);
            data.push(v);
            indptr[r + 1] += 1;
        }
        for r in 0..n_rows {
            indptr[r + 1] += indptr[r];
        }
        Self {
            n_rows,
            n_cols,
            indptr,
            indices,
            data,
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n_cols);
        debug_assert_eq!(y.len(), self.n_rows);
        for r in 0..self.n_rows {
            let mut acc = 0.0;
            for k in self.indptr[r]..self.indptr[r + 1] {
                acc += self.data[k] * x[self.indices[k]];
            }
            y[r] = acc;
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n_rows];
        self.matvec_into(x, &mut y);
        y
    }

    /// Entry lookup; zero when structurally absent.
    pub fn get(&self, r: usize, c: usize) -> f64 {
        let lo = self.indptr[r];
        let hi = self.indptr[r + 1];
        match self.indices[lo..hi].binary_search(&c) {
            Ok(k) => self.data[lo + k],
            Err(_) => 0.0,
        }
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        (self.indptr[r]..self.indptr[r + 1]).map(move |k| (self.indices[k], self.data[k]))
    }

    pub fn triplets(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::with_capacity(self.nnz());
        for r in 0..self.n_rows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                out.push((r, self.indices[k], self.data[k]));
            }
        }
        out
    }

    /// Largest absolute asymmetry, `max |A - A^T|`, for symmetry checks.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0f64;
        for r in 0..self.n_rows {
            for (c, v) in self.row(r) {
                worst = worst.max((v - self.get(c, r)).abs());
            }
        }
        worst
    }
}

/// Direct sparse LU factorization, reused across every solve of a run.
pub struct Factorized {
    n: usize,
    lu: faer::sparse::linalg::solvers::Lu<usize, f64>,
}

impl Factorized {
    pub fn new(n: usize, trips: &[(usize, usize, f64)]) -> Result<Self> {
        let faer_trips: Vec<Triplet<usize, usize, f64>> = trips
            .iter()
            .map(|&(r, c, v)| Triplet::new(r, c, v))
            .collect();
        let mat = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &faer_trips)
            .map_err(|e| Error::Factorization(format!("building sparse matrix: {e:?}")))?;
        let lu = mat
            .sp_lu()
            .map_err(|e| Error::Factorization(format!("sparse LU: {e:?}")))?;
        Ok(Self { n, lu })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        debug_assert_eq!(rhs.len(), self.n);
        let b = Mat::<f64>::from_fn(self.n, 1, |i, _| rhs[i]);
        let x = self.lu.solve(&b);
        (0..self.n).map(|i| x[(i, 0)]).collect()
    }
}

impl std::fmt::Debug for Factorized {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Factorized").field("n", &self.n).finish()
    }
}

/// Dirichlet elimination: keeps the factorization of the free-free block and
/// the free-constrained coupling for right-hand-side correction.
#[derive(Debug)]
pub struct ReducedSystem {
    pub n_full: usize,
    /// Full dof -> free index (None when constrained).
    pub free_of: Vec<Option<usize>>,
    /// Constrained dofs in ascending order; `solve` takes values in this
    /// order.
    pub con: Vec<usize>,
    free_dofs: Vec<usize>,
    factor: Factorized,
    a_fc: Csr,
}

impl ReducedSystem {
    pub fn build(
        n_full: usize,
        trips: &[(usize, usize, f64)],
        constrained: &[usize],
    ) -> Result<Self> {
        let mut is_con = vec![false; n_full];
        for &c in constrained {
            is_con[c] = true;
        }
        let mut con: Vec<usize> = constrained.to_vec();
        con.sort_unstable();
        con.dedup();
        let mut free_of = vec![None; n_full];
        let mut con_of = vec![usize::MAX; n_full];
        let mut free_dofs = Vec::with_capacity(n_full - con.len());
        for dof in 0..n_full {
            if !is_con[dof] {
                free_of[dof] = Some(free_dofs.len());
                free_dofs.push(dof);
            }
        }
        for (k, &c) in con.iter().enumerate() {
            con_of[c] = k;
        }
        let n_free = free_dofs.len();
        let mut ff = Vec::new();
        let mut fc = Vec::new();
        for &(r, c, v) in trips {
            match (free_of[r], free_of[c]) {
                (Some(rf), Some(cf)) => ff.push((rf, cf, v)),
                (Some(rf), None) => fc.push((rf, con_of[c], v)),
                _ => {}
            }
        }
        let factor = Factorized::new(n_free, &ff)?;
        let a_fc = Csr::from_triplets(n_free, con.len(), fc);
        Ok(Self {
            n_full,
            free_of,
            con,
            free_dofs,
            factor,
            a_fc,
        })
    }

    pub fn n_free(&self) -> usize {
        self.free_dofs.len()
    }

    /// Solve with the given full-length right-hand side (constrained rows
    /// ignored) and constrained values; returns the full solution vector.
    pub fn solve(&self, rhs_full: &[f64], con_values: &[f64]) -> Vec<f64> {
        debug_assert_eq!(rhs_full.len(), self.n_full);
        debug_assert_eq!(con_values.len(), self.con.len());
        let mut b: Vec<f64> = self.free_dofs.iter().map(|&d| rhs_full[d]).collect();
        if !con_values.is_empty() {
            let corr = self.a_fc.matvec(con_values);
            for (bi, ci) in b.iter_mut().zip(corr) {
                *bi -= ci;
            }
        }
        let x_free = self.factor.solve(&b);
        let mut x = vec![0.0; self.n_full];
        for (i, &d) in self.free_dofs.iter().enumerate() {
            x[d] = x_free[i];
        }
        for (k, &c) in self.con.iter().enumerate() {
            x[c] = con_values[k];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csr_dedups_and_multiplies() {
        let a = Csr::from_triplets(
            2,
            3,
            vec![(0, 0, 1.0), (0, 0, 2.0), (1, 2, 4.0), (0, 1, -1.0)],
        );
        assert_eq!(a.nnz(), 3);
        assert_eq!(a.get(0, 0), 3.0);
        assert_eq!(a.get(1, 1), 0.0);
        let y = a.matvec(&[1.0, 2.0, 3.0]);
        assert_eq!(y, vec![1.0, 12.0]);
    }

    #[test]
    fn factorization_solves_small_system() {
        // [2 1; 1 3] x = [3; 5] -> x = [4/5, 7/5].
        let f = Factorized::new(2, &[(0, 0, 2.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 3.0)]).unwrap();
        let x = f.solve(&[3.0, 5.0]);
        assert!((x[0] - 0.8).abs() < 1e-14);
        assert!((x[1] - 1.4).abs() < 1e-14);
    }

    #[test]
    fn reduced_system_applies_dirichlet_values() {
        // 1D Laplacian on 4 nodes, u0 = 1, u3 = 4; interior solves to the
        // linear interpolant.
        let mut trips = Vec::new();
        for i in 0..4usize {
            trips.push((i, i, 2.0));
        }
        for i in 0..3usize {
            trips.push((i, i + 1, -1.0));
            trips.push((i + 1, i, -1.0));
        }
        let sys = ReducedSystem::build(4, &trips, &[0, 3]).unwrap();
        let x = sys.solve(&[0.0; 4], &[1.0, 4.0]);
        for (i, want) in [1.0, 2.0, 3.0, 4.0].iter().enumerate() {
            assert!((x[i] - want).abs() < 1e-13, "x[{i}] = {}", x[i]);
        }
    }

    #[test]
    fn singular_matrix_is_reported() {
        let r = Factorized::new(2, &[(0, 0, 1.0)]);
        assert!(r.is_err());
    }
}
