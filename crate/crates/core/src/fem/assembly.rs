//! Assembly of the semi-discrete subdomain systems and the monolithic
//! coupled system.
//!
//! Per time step the Stokes unknowns solve
//!
//! ```text
//! (u, v) + theta dt (2 mu_f (grad^s u, grad^s v) + xi_f <u_t, v_t> + a_f <u.n, v.n>)
//!        + dt b_f(v, p)  = F_f(v) - theta dt <lambda_f, v.n>
//! b_f(u, q) = 0
//! ```
//!
//! and the Darcy unknown solves
//!
//! ```text
//! (S_p p, q) + theta dt ((eta grad p, grad q) + (1/a_p) <p, q>)
//!        = F_p(q) + (theta dt / a_p) <lambda_p, q>
//! ```
//!
//! The assembled blocks are kept both as a factorized reduced system (for
//! the repeated interface solves) and as plain sparse operators (mass and
//! spatial parts) for building the theta-method history functionals.
//! The monolithic variant couples the subdomains through the interface mass
//! instead of the Robin terms and is the reference the decoupled iteration
//! must reproduce at convergence.

use super::csr::{Csr, ReducedSystem};
use super::dofmap::DofMap;
use super::interface::InterfaceOps;
use super::shape::{q1_basis, q2_1d, q2_basis, GAUSS_PTS, GAUSS_WTS};
use crate::params::{DiscretizationParams, PhysicalParams, RobinPair};
use crate::{Error, Result};

type Trip = (usize, usize, f64);

/// Element integrals on one rectangle, 3x3 Gauss.
struct CellQuad {
    hx: f64,
    hy: f64,
}

impl CellQuad {
    /// Velocity/pressure element blocks: Q2 mass, Q2 gradient products
    /// (xx, yy, xy), and the mixed divergence block against Q1.
    fn q2_blocks(
        &self,
    ) -> (
        [[f64; 9]; 9],
        [[f64; 9]; 9],
        [[f64; 9]; 9],
        [[f64; 9]; 9],
        [[[f64; 2]; 9]; 4],
    ) {
        let (hx, hy) = (self.hx, self.hy);
        let jac = hx * hy;
        let mut mass = [[0.0; 9]; 9];
        let mut kxx = [[0.0; 9]; 9];
        let mut kyy = [[0.0; 9]; 9];
        let mut kxy = [[0.0; 9]; 9]; // integral of N_a,x N_b,y
        let mut div = [[[0.0; 2]; 9]; 4]; // div[m][b][c] = int Q1_m d_c N_b
        for (qx, &xi) in GAUSS_PTS.iter().enumerate() {
            for (qy, &eta) in GAUSS_PTS.iter().enumerate() {
                let w = GAUSS_WTS[qx] * GAUSS_WTS[qy] * jac;
                let (n2, g2) = q2_basis(xi, eta);
                let (n1, _) = q1_basis(xi, eta);
                let gx: [f64; 9] = std::array::from_fn(|a| g2[a][0] / hx);
                let gy: [f64; 9] = std::array::from_fn(|a| g2[a][1] / hy);
                for a in 0..9 {
                    for b in 0..9 {
                        mass[a][b] += w * n2[a] * n2[b];
                        kxx[a][b] += w * gx[a] * gx[b];
                        kyy[a][b] += w * gy[a] * gy[b];
                        kxy[a][b] += w * gx[a] * gy[b];
                    }
                }
                for m in 0..4 {
                    for b in 0..9 {
                        div[m][b][0] += w * n1[m] * gx[b];
                        div[m][b][1] += w * n1[m] * gy[b];
                    }
                }
            }
        }
        (mass, kxx, kyy, kxy, div)
    }
}

/// Raw element-level blocks shared by the Robin subdomain systems and the
/// monolithic system.
#[derive(Debug)]
pub struct FemBlocks {
    /// Velocity mass (both components), `n_u x n_u`.
    pub mass_u: Csr,
    /// `2 mu_f (grad^s ., grad^s .)` plus the tangential friction edge term
    /// when `xi_f` is finite; no Robin contribution. `n_u x n_u`.
    pub visc: Csr,
    /// Interface edge mass on the normal velocity trace `int u2 v2`,
    /// `n_u x n_u`.
    pub iface_u2: Csr,
    /// Divergence block `B[m, u] = -int q_m div(phi_u)`, `n_pf x n_u`.
    pub b_div: Csr,
    /// Darcy mass (unweighted), `n_pp x n_pp`.
    pub mass_p: Csr,
    /// Darcy permeability stiffness, `n_pp x n_pp`.
    pub stiff_p: Csr,
    /// Interface edge mass on the Darcy trace, `n_pp x n_pp`.
    pub iface_p: Csr,
}

pub fn assemble_blocks(dofs: &DofMap, phys: &PhysicalParams) -> FemBlocks {
    let n_u = dofs.n_u();
    let mut t_mass: Vec<Trip> = Vec::new();
    let mut t_visc: Vec<Trip> = Vec::new();
    let mut t_iface_u2: Vec<Trip> = Vec::new();
    let mut t_div: Vec<Trip> = Vec::new();
    let mu = phys.mu_f;

    for cy in 0..dofs.ny_f {
        for cx in 0..dofs.nx {
            let quad = CellQuad {
                hx: dofs.x_q1[cx + 1] - dofs.x_q1[cx],
                hy: dofs.yf_q1[cy + 1] - dofs.yf_q1[cy],
            };
            let (mass, kxx, kyy, kxy, div) = quad.q2_blocks();
            let nodes = dofs.q2f_cell_nodes(cx, cy);
            let pnodes = dofs.q1f_cell_nodes(cx, cy);
            for a in 0..9 {
                for b in 0..9 {
                    for c in 0..2 {
                        t_mass.push((dofs.u_dof(nodes[a], c), dofs.u_dof(nodes[b], c), mass[a][b]));
                    }
                    // 2 mu grad^s : grad^s, component blocks.
                    let a0 = dofs.u_dof(nodes[a], 0);
                    let a1 = dofs.u_dof(nodes[a], 1);
                    let b0 = dofs.u_dof(nodes[b], 0);
                    let b1 = dofs.u_dof(nodes[b], 1);
                    t_visc.push((a0, b0, mu * (2.0 * kxx[a][b] + kyy[a][b])));
                    t_visc.push((a1, b1, mu * (2.0 * kyy[a][b] + kxx[a][b])));
                    // int N_a,y N_b,x = kxy[b][a].
                    t_visc.push((a0, b1, mu * kxy[b][a]));
                    t_visc.push((a1, b0, mu * kxy[a][b]));
                }
            }
            for m in 0..4 {
                for b in 0..9 {
                    for c in 0..2 {
                        t_div.push((pnodes[m], dofs.u_dof(nodes[b], c), -div[m][b][c]));
                    }
                }
            }
        }
    }

    // Interface edge terms on the fluid side: Robin normal mass (u2 u2) and,
    // for finite friction, the tangential penalty (u1 u1).
    for cx in 0..dofs.nx {
        let hx = dofs.x_q1[cx + 1] - dofs.x_q1[cx];
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
                let na = dofs.q2f_node(2 * cx + a, 0);
                let nb = dofs.q2f_node(2 * cx + b, 0);
                t_iface_u2.push((dofs.u_dof(na, 1), dofs.u_dof(nb, 1), m[a][b]));
                if !phys.zero_tangential() {
                    t_visc.push((dofs.u_dof(na, 0), dofs.u_dof(nb, 0), phys.xi_f * m[a][b]));
                }
            }
        }
    }

    // Darcy blocks.
    let n_pp = dofs.n_darcy();
    let mut t_mass_p: Vec<Trip> = Vec::new();
    let mut t_stiff: Vec<Trip> = Vec::new();
    let mut t_iface_p: Vec<Trip> = Vec::new();
    for cy in 0..dofs.ny_p {
        for cx in 0..dofs.nx {
            let quad = CellQuad {
                hx: dofs.x_q1[cx + 1] - dofs.x_q1[cx],
                hy: dofs.yp_q2[2 * cy + 2] - dofs.yp_q2[2 * cy],
            };
            let (mass, kxx, kyy, _, _) = quad.q2_blocks();
            let nodes = dofs.q2p_cell_nodes(cx, cy);
            for a in 0..9 {
                for b in 0..9 {
                    t_mass_p.push((nodes[a], nodes[b], mass[a][b]));
                    t_stiff.push((
                        nodes[a],
                        nodes[b],
                        phys.eta1 * kxx[a][b] + phys.eta2 * kyy[a][b],
                    ));
                }
            }
        }
    }
    for cx in 0..dofs.nx {
        let hx = dofs.x_q1[cx + 1] - dofs.x_q1[cx];
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
                let na = dofs.q2p_node(2 * cx + a, 2 * dofs.ny_p);
                let nb = dofs.q2p_node(2 * cx + b, 2 * dofs.ny_p);
                t_iface_p.push((na, nb, m[a][b]));
            }
        }
    }

    FemBlocks {
        mass_u: Csr::from_triplets(n_u, n_u, t_mass),
        visc: Csr::from_triplets(n_u, n_u, t_visc),
        iface_u2: Csr::from_triplets(n_u, n_u, t_iface_u2),
        b_div: Csr::from_triplets(dofs.n_q1f, n_u, t_div),
        mass_p: Csr::from_triplets(n_pp, n_pp, t_mass_p),
        stiff_p: Csr::from_triplets(n_pp, n_pp, t_stiff),
        iface_p: Csr::from_triplets(n_pp, n_pp, t_iface_p),
    }
}

/// Factorized Stokes subdomain system for one (theta dt, Robin) setting.
#[derive(Debug)]
pub struct StokesSystem {
    pub reduced: ReducedSystem,
    /// Assembled full matrix `[A_tilde, dt B^T; B, 0]`.
    pub full: Csr,
    /// Velocity mass, full `n_u` space.
    pub mass_u: Csr,
    /// Spatial operator `a_f + alpha_f <u.n, v.n>`, full `n_u` space.
    pub spatial_u: Csr,
    pub n_u: usize,
    pub n_total: usize,
    pub theta: f64,
    pub dt: f64,
    pub alpha_f: f64,
}

impl StokesSystem {
    /// Solve with interface datum `lambda` and Dirichlet values `g`:
    /// the weak right-hand side is `rhs - theta dt <lambda, v.n>`.
    pub fn solve(&self, iface: &InterfaceOps, rhs: &[f64], lambda: &[f64], g: &[f64]) -> Vec<f64> {
        let mut b = rhs.to_vec();
        let ext = iface.extend_stokes(lambda);
        let c = self.theta * self.dt;
        for (bi, ei) in b.iter_mut().zip(ext) {
            *bi -= c * ei;
        }
        self.reduced.solve(&b, g)
    }

    /// Theta-method history functional: loads at both time levels, previous
    /// velocity, and the previous interface datum (ignored for `theta = 1`).
    pub fn step_rhs(
        &self,
        iface: &InterfaceOps,
        fv_new: &[f64],
        fv_old: &[f64],
        u_prev: &[f64],
        lambda_f_prev: &[f64],
    ) -> Vec<f64> {
        let theta = self.theta;
        let dt = self.dt;
        let mut rhs = vec![0.0; self.n_total];
        for i in 0..self.n_total {
            rhs[i] = dt * (theta * fv_new[i] + (1.0 - theta) * fv_old[i]);
        }
        let mu = self.mass_u.matvec(u_prev);
        for (r, v) in mu.into_iter().enumerate() {
            rhs[r] += v;
        }
        if theta < 1.0 {
            let c = (1.0 - theta) * dt;
            let ku = self.spatial_u.matvec(u_prev);
            for (r, v) in ku.into_iter().enumerate() {
                rhs[r] -= c * v;
            }
            let ext = iface.extend_stokes(lambda_f_prev);
            for (r, v) in ext.into_iter().enumerate() {
                rhs[r] -= c * v;
            }
        }
        rhs
    }
}

pub fn assemble_stokes(
    dofs: &DofMap,
    blocks: &FemBlocks,
    disc: &DiscretizationParams,
    robin: &RobinPair,
) -> Result<StokesSystem> {
    if dofs.n_q1f == 0 {
        return Err(Error::SingularSystem("no fluid pressure dofs".into()));
    }
    let n_u = dofs.n_u();
    let n_total = dofs.n_stokes();
    let th_dt = disc.theta * disc.dt;

    // spatial_u = visc (+BJS) + alpha_f * interface normal mass.
    let mut spatial: Vec<Trip> = blocks.visc.triplets();
    for (r, c, v) in blocks.iface_u2.triplets() {
        spatial.push((r, c, robin.alpha_f * v));
    }
    let spatial_u = Csr::from_triplets(n_u, n_u, spatial);

    let mut trips: Vec<Trip> = Vec::new();
    for (r, c, v) in blocks.mass_u.triplets() {
        trips.push((r, c, v));
    }
    for (r, c, v) in spatial_u.triplets() {
        trips.push((r, c, th_dt * v));
    }
    for (m, u, v) in blocks.b_div.triplets() {
        trips.push((n_u + m, u, v)); // continuity row
        trips.push((u, n_u + m, disc.dt * v)); // dt B^T
    }
    let full = Csr::from_triplets(n_total, n_total, trips);
    let reduced = ReducedSystem::build(n_total, &full.triplets(), &dofs.stokes_constrained_dofs())?;
    Ok(StokesSystem {
        reduced,
        full,
        mass_u: blocks.mass_u.clone(),
        spatial_u,
        n_u,
        n_total,
        theta: disc.theta,
        dt: disc.dt,
        alpha_f: robin.alpha_f,
    })
}

/// Factorized Darcy subdomain system.
#[derive(Debug)]
pub struct DarcySystem {
    pub reduced: ReducedSystem,
    pub full: Csr,
    pub mass: Csr,
    /// `a_p + (1/alpha_p) <p, q>` over the full space.
    pub spatial: Csr,
    pub n: usize,
    pub theta: f64,
    pub dt: f64,
    pub s_p: f64,
    pub alpha_p: f64,
}

impl DarcySystem {
    /// Solve with interface datum `lambda` and Dirichlet values `g`:
    /// the weak right-hand side is `rhs + (theta dt / alpha_p) <lambda, q>`.
    pub fn solve(&self, iface: &InterfaceOps, rhs: &[f64], lambda: &[f64], g: &[f64]) -> Vec<f64> {
        let mut b = rhs.to_vec();
        let ext = iface.extend_darcy(lambda);
        let c = self.theta * self.dt / self.alpha_p;
        for (bi, ei) in b.iter_mut().zip(ext) {
            *bi += c * ei;
        }
        self.reduced.solve(&b, g)
    }

    /// Theta-method history functional for the porous side.
    pub fn step_rhs(
        &self,
        iface: &InterfaceOps,
        fp_new: &[f64],
        fp_old: &[f64],
        p_prev: &[f64],
        lambda_p_prev: &[f64],
    ) -> Vec<f64> {
        let theta = self.theta;
        let dt = self.dt;
        let mut rhs = vec![0.0; self.n];
        for i in 0..self.n {
            rhs[i] = dt * (theta * fp_new[i] + (1.0 - theta) * fp_old[i]);
        }
        let mp = self.mass.matvec(p_prev);
        for (r, v) in mp.into_iter().enumerate() {
            rhs[r] += self.s_p * v;
        }
        if theta < 1.0 {
            let c = (1.0 - theta) * dt;
            let kp = self.spatial.matvec(p_prev);
            for (r, v) in kp.into_iter().enumerate() {
                rhs[r] -= c * v;
            }
            let ext = iface.extend_darcy(lambda_p_prev);
            for (r, v) in ext.into_iter().enumerate() {
                rhs[r] += c / self.alpha_p * v;
            }
        }
        rhs
    }
}

pub fn assemble_darcy(
    dofs: &DofMap,
    blocks: &FemBlocks,
    phys: &PhysicalParams,
    disc: &DiscretizationParams,
    robin: &RobinPair,
) -> Result<DarcySystem> {
    let n = dofs.n_darcy();
    let th_dt = disc.theta * disc.dt;
    let mut spatial: Vec<Trip> = blocks.stiff_p.triplets();
    for (r, c, v) in blocks.iface_p.triplets() {
        spatial.push((r, c, v / robin.alpha_p));
    }
    let spatial = Csr::from_triplets(n, n, spatial);
    let mut trips: Vec<Trip> = Vec::new();
    for (r, c, v) in blocks.mass_p.triplets() {
        trips.push((r, c, phys.s_p * v));
    }
    for (r, c, v) in spatial.triplets() {
        trips.push((r, c, th_dt * v));
    }
    let full = Csr::from_triplets(n, n, trips);
    let reduced = ReducedSystem::build(n, &full.triplets(), &dofs.darcy_constrained_dofs())?;
    Ok(DarcySystem {
        reduced,
        full,
        mass: blocks.mass_p.clone(),
        spatial,
        n,
        theta: disc.theta,
        dt: disc.dt,
        s_p: phys.s_p,
        alpha_p: robin.alpha_p,
    })
}

/// Monolithic coupled system over `(u, p_f, p_p)`.
#[derive(Debug)]
pub struct MonolithicSystem {
    pub reduced: ReducedSystem,
    pub n_u: usize,
    pub n_stokes: usize,
    pub n_total: usize,
    /// Spatial velocity operator without Robin terms (viscous + friction).
    pub visc: Csr,
    pub mass_u: Csr,
    pub mass_p: Csr,
    pub stiff_p: Csr,
    pub theta: f64,
    pub dt: f64,
    pub s_p: f64,
}

pub fn assemble_monolithic(
    dofs: &DofMap,
    blocks: &FemBlocks,
    iface: &InterfaceOps,
    phys: &PhysicalParams,
    disc: &DiscretizationParams,
) -> Result<MonolithicSystem> {
    let n_u = dofs.n_u();
    let n_stokes = dofs.n_stokes();
    let n_total = n_stokes + dofs.n_darcy();
    let th_dt = disc.theta * disc.dt;

    let mut trips: Vec<Trip> = Vec::new();
    for (r, c, v) in blocks.mass_u.triplets() {
        trips.push((r, c, v));
    }
    for (r, c, v) in blocks.visc.triplets() {
        trips.push((r, c, th_dt * v));
    }
    for (m, u, v) in blocks.b_div.triplets() {
        trips.push((n_u + m, u, v));
        trips.push((u, n_u + m, disc.dt * v));
    }
    for (r, c, v) in blocks.mass_p.triplets() {
        trips.push((n_stokes + r, n_stokes + c, phys.s_p * v));
    }
    for (r, c, v) in blocks.stiff_p.triplets() {
        trips.push((n_stokes + r, n_stokes + c, th_dt * v));
    }
    // Interface coupling through the trace mass: +theta dt <p_p, v.n> on the
    // momentum rows, -theta dt <u.n, q> on the Darcy rows.
    let n_g = iface.n();
    for i in 0..n_g {
        for (j, v) in iface.m_gamma.row(i) {
            let u2_i = iface.u2_dofs[i];
            let pp_j = n_stokes + iface.p_dofs[j];
            trips.push((u2_i, pp_j, -th_dt * v));
            let pp_i = n_stokes + iface.p_dofs[i];
            let u2_j = iface.u2_dofs[j];
            trips.push((pp_i, u2_j, th_dt * v));
        }
    }

    let mut constrained = dofs.stokes_constrained_dofs();
    constrained.extend(dofs.darcy_constrained_dofs().iter().map(|d| n_stokes + d));
    let reduced = ReducedSystem::build(n_total, &trips, &constrained)?;
    Ok(MonolithicSystem {
        reduced,
        n_u,
        n_stokes,
        n_total,
        visc: blocks.visc.clone(),
        mass_u: blocks.mass_u.clone(),
        mass_p: blocks.mass_p.clone(),
        stiff_p: blocks.stiff_p.clone(),
        theta: disc.theta,
        dt: disc.dt,
        s_p: phys.s_p,
    })
}

impl MonolithicSystem {
    /// History functional of the coupled theta step. The interface traces of
    /// the previous state replace the eliminated interface unknowns.
    #[allow(clippy::too_many_arguments)]
    pub fn step_rhs(
        &self,
        iface: &InterfaceOps,
        fv_new: &[f64],
        fv_old: &[f64],
        fp_new: &[f64],
        fp_old: &[f64],
        u_prev: &[f64],
        pp_prev: &[f64],
    ) -> Vec<f64> {
        let theta = self.theta;
        let dt = self.dt;
        let mut rhs = vec![0.0; self.n_total];
        for i in 0..self.n_stokes {
            rhs[i] = dt * (theta * fv_new[i] + (1.0 - theta) * fv_old[i]);
        }
        for i in 0..self.n_total - self.n_stokes {
            rhs[self.n_stokes + i] = dt * (theta * fp_new[i] + (1.0 - theta) * fp_old[i]);
        }
        let mu = self.mass_u.matvec(u_prev);
        for (r, v) in mu.into_iter().enumerate() {
            rhs[r] += v;
        }
        let mp = self.mass_p.matvec(pp_prev);
        for (r, v) in mp.into_iter().enumerate() {
            rhs[self.n_stokes + r] += self.s_p * v;
        }
        if theta < 1.0 {
            let c = (1.0 - theta) * dt;
            let ku = self.visc.matvec(u_prev);
            for (r, v) in ku.into_iter().enumerate() {
                rhs[r] -= c * v;
            }
            let kp = self.stiff_p.matvec(pp_prev);
            for (r, v) in kp.into_iter().enumerate() {
                rhs[self.n_stokes + r] -= c * v;
            }
            // Interface legacy: -(1-theta) dt <p_p^{n-1}, v.n> on momentum
            // rows, +(1-theta) dt <u^{n-1}.n, q> on Darcy rows.
            let pp_trace = iface.restrict_darcy(pp_prev);
            let ext_s = iface.extend_stokes(&pp_trace);
            for (r, v) in ext_s.into_iter().enumerate() {
                rhs[r] -= c * v;
            }
            let un_trace = iface.restrict_stokes(u_prev);
            let ext_d = iface.extend_darcy(&un_trace);
            for (r, v) in ext_d.into_iter().enumerate() {
                rhs[self.n_stokes + r] += c * v;
            }
        }
        rhs
    }
}

/// Momentum load vector `(f, v)` over the fluid domain; rows are the full
/// Stokes layout (continuity rows zero).
pub fn force_vec_stokes(dofs: &DofMap, f: &dyn Fn(f64, f64) -> [f64; 2]) -> Vec<f64> {
    let mut out = vec![0.0; dofs.n_stokes()];
    for cy in 0..dofs.ny_f {
        for cx in 0..dofs.nx {
            let x0 = dofs.x_q1[cx];
            let hx = dofs.x_q1[cx + 1] - x0;
            let y0 = dofs.yf_q1[cy];
            let hy = dofs.yf_q1[cy + 1] - y0;
            let nodes = dofs.q2f_cell_nodes(cx, cy);
            for (qx, &xi) in GAUSS_PTS.iter().enumerate() {
                for (qy, &eta) in GAUSS_PTS.iter().enumerate() {
                    let w = GAUSS_WTS[qx] * GAUSS_WTS[qy] * hx * hy;
                    let (n2, _) = q2_basis(xi, eta);
                    let val = f(x0 + hx * xi, y0 + hy * eta);
                    for a in 0..9 {
                        for c in 0..2 {
                            out[dofs.u_dof(nodes[a], c)] += w * val[c] * n2[a];
                        }
                    }
                }
            }
        }
    }
    out
}

/// Load vector `(f, q)` over the porous domain.
pub fn force_vec_darcy(dofs: &DofMap, f: &dyn Fn(f64, f64) -> f64) -> Vec<f64> {
    let mut out = vec![0.0; dofs.n_darcy()];
    for cy in 0..dofs.ny_p {
        for cx in 0..dofs.nx {
            let x0 = dofs.x_q1[cx];
            let hx = dofs.x_q1[cx + 1] - x0;
            let y0 = dofs.yp_q2[2 * cy];
            let hy = dofs.yp_q2[2 * cy + 2] - y0;
            let nodes = dofs.q2p_cell_nodes(cx, cy);
            for (qx, &xi) in GAUSS_PTS.iter().enumerate() {
                for (qy, &eta) in GAUSS_PTS.iter().enumerate() {
                    let w = GAUSS_WTS[qx] * GAUSS_WTS[qy] * hx * hy;
                    let (n2, _) = q2_basis(xi, eta);
                    let val = f(x0 + hx * xi, y0 + hy * eta);
                    for a in 0..9 {
                        out[nodes[a]] += w * val * n2[a];
                    }
                }
            }
        }
    }
    out
}
