//! Interface trace and extension operators.
//!
//! Interface data is represented nodally on the shared quadratic trace
//! lattice. With the fluid on top, the interface normal is `(0, -1)`, so the
//! normal velocity trace is `-u2` at the interface nodes. `extend_*` embeds
//! an interface density into the dual (right-hand-side) slot through the 1D
//! interface mass matrix; `restrict` of an extended unit vector therefore
//! reproduces a mass-matrix column.

use super::csr::Csr;
use super::dofmap::DofMap;
use super::shape::{q2_1d, GAUSS_PTS, GAUSS_WTS};

#[derive(Debug, Clone)]
pub struct InterfaceOps {
    /// 1D quadratic mass matrix on the interface (periodic wrap included).
    pub m_gamma: Csr,
    /// Stokes u2 dof per interface node.
    pub u2_dofs: Vec<usize>,
    /// Darcy dof per interface node.
    pub p_dofs: Vec<usize>,
    /// Stokes system size (for extension vectors).
    pub n_stokes: usize,
    pub n_darcy: usize,
}

impl InterfaceOps {
    pub fn build(dofs: &DofMap) -> Self {
        let n = dofs.n_iface();
        let mut trips = Vec::with_capacity(9 * dofs.nx);
        for cx in 0..dofs.nx {
            let hx = dofs.x_q1[cx + 1] - dofs.x_q1[cx];
            let idx = |a: usize| (2 * cx + a) % n.max(1);
            let mut m = [[0.0; 3]; 3];
            for (q, &t) in GAUSS_PTS.iter().enumerate() {
                let l = q2_1d(t);
                let w = GAUSS_WTS[q] * hx;
                for a in 0..3 {
                    for b in 0..3 {
                        m[a][b] += w * l[a] * l[b];
                    }
                }
            }
            for a in 0..3 {
                for b in 0..3 {
                    trips.push((idx(a), idx(b), m[a][b]));
                }
            }
        }
        InterfaceOps {
            m_gamma: Csr::from_triplets(n, n, trips),
            u2_dofs: dofs.iface_f.iter().map(|&nd| dofs.u_dof(nd, 1)).collect(),
            p_dofs: dofs.iface_p.clone(),
            n_stokes: dofs.n_stokes(),
            n_darcy: dofs.n_darcy(),
        }
    }

    pub fn n(&self) -> usize {
        self.u2_dofs.len()
    }

    /// Normal velocity trace `u . n = -u2` at the interface nodes.
    pub fn restrict_stokes(&self, state: &[f64]) -> Vec<f64> {
        self.u2_dofs.iter().map(|&d| -state[d]).collect()
    }

    /// Darcy pressure trace at the interface nodes.
    pub fn restrict_darcy(&self, state: &[f64]) -> Vec<f64> {
        self.p_dofs.iter().map(|&d| state[d]).collect()
    }

    /// Dual embedding `<lambda, v . n>` into the Stokes right-hand-side
    /// layout: `-(M lambda)` at the u2 slots.
    pub fn extend_stokes(&self, lambda: &[f64]) -> Vec<f64> {
        let weighted = self.m_gamma.matvec(lambda);
        let mut out = vec![0.0; self.n_stokes];
        for (k, &d) in self.u2_dofs.iter().enumerate() {
            out[d] = -weighted[k];
        }
        out
    }

    /// Dual embedding `<lambda, q>` into the Darcy right-hand-side layout.
    pub fn extend_darcy(&self, lambda: &[f64]) -> Vec<f64> {
        let weighted = self.m_gamma.matvec(lambda);
        let mut out = vec![0.0; self.n_darcy];
        for (k, &d) in self.p_dofs.iter().enumerate() {
            out[d] = weighted[k];
        }
        out
    }

    /// `<lambda, mu>` interface inner product.
    pub fn pair(&self, lambda: &[f64], mu: &[f64]) -> f64 {
        self.m_gamma
            .matvec(lambda)
            .iter()
            .zip(mu)
            .map(|(a, b)| a * b)
            .sum()
    }
}
