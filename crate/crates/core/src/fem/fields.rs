//! Field evaluation, error norms and postprocessing on the discrete spaces.

use super::dofmap::DofMap;
use super::shape::{q1_basis, q2_basis, GAUSS_PTS, GAUSS_WTS};

/// Evaluate the discrete velocity inside fluid cell `(cx, cy)` at the
/// reference point `(xi, eta)`.
pub fn eval_velocity(
    dofs: &DofMap,
    u: &[f64],
    cx: usize,
    cy: usize,
    xi: f64,
    eta: f64,
) -> [f64; 2] {
    let (n2, _) = q2_basis(xi, eta);
    let nodes = dofs.q2f_cell_nodes(cx, cy);
    let mut out = [0.0; 2];
    for a in 0..9 {
        for c in 0..2 {
            out[c] += u[dofs.u_dof(nodes[a], c)] * n2[a];
        }
    }
    out
}

/// Evaluate the Darcy pressure and its physical gradient inside porous cell
/// `(cx, cy)`.
pub fn eval_darcy(
    dofs: &DofMap,
    p: &[f64],
    cx: usize,
    cy: usize,
    xi: f64,
    eta: f64,
) -> (f64, [f64; 2]) {
    let hx = dofs.x_q1[cx + 1] - dofs.x_q1[cx];
    let hy = dofs.yp_q2[2 * cy + 2] - dofs.yp_q2[2 * cy];
    let (n2, g2) = q2_basis(xi, eta);
    let nodes = dofs.q2p_cell_nodes(cx, cy);
    let mut v = 0.0;
    let mut g = [0.0; 2];
    for a in 0..9 {
        let coef = p[nodes[a]];
        v += coef * n2[a];
        g[0] += coef * g2[a][0] / hx;
        g[1] += coef * g2[a][1] / hy;
    }
    (v, g)
}

/// L2 norm of the velocity error against an exact field.
pub fn l2_error_velocity(dofs: &DofMap, u: &[f64], exact: &dyn Fn(f64, f64) -> [f64; 2]) -> f64 {
    let mut acc = 0.0;
    for cy in 0..dofs.ny_f {
        for cx in 0..dofs.nx {
            let x0 = dofs.x_q1[cx];
            let hx = dofs.x_q1[cx + 1] - x0;
            let y0 = dofs.yf_q1[cy];
            let hy = dofs.yf_q1[cy + 1] - y0;
            for (qx, &xi) in GAUSS_PTS.iter().enumerate() {
                for (qy, &eta) in GAUSS_PTS.iter().enumerate() {
                    let w = GAUSS_WTS[qx] * GAUSS_WTS[qy] * hx * hy;
                    let uh = eval_velocity(dofs, u, cx, cy, xi, eta);
                    let ue = exact(x0 + hx * xi, y0 + hy * eta);
                    acc += w * ((uh[0] - ue[0]).powi(2) + (uh[1] - ue[1]).powi(2));
                }
            }
        }
    }
    acc.sqrt()
}

/// L2 norm of the fluid pressure error (bilinear space).
pub fn l2_error_pressure_f(dofs: &DofMap, state: &[f64], exact: &dyn Fn(f64, f64) -> f64) -> f64 {
    let mut acc = 0.0;
    for cy in 0..dofs.ny_f {
        for cx in 0..dofs.nx {
            let x0 = dofs.x_q1[cx];
            let hx = dofs.x_q1[cx + 1] - x0;
            let y0 = dofs.yf_q1[cy];
            let hy = dofs.yf_q1[cy + 1] - y0;
            let nodes = dofs.q1f_cell_nodes(cx, cy);
            for (qx, &xi) in GAUSS_PTS.iter().enumerate() {
                for (qy, &eta) in GAUSS_PTS.iter().enumerate() {
                    let w = GAUSS_WTS[qx] * GAUSS_WTS[qy] * hx * hy;
                    let (n1, _) = q1_basis(xi, eta);
                    let mut ph = 0.0;
                    for m in 0..4 {
                        ph += state[dofs.p_dof(nodes[m])] * n1[m];
                    }
                    acc += w * (ph - exact(x0 + hx * xi, y0 + hy * eta)).powi(2);
                }
            }
        }
    }
    acc.sqrt()
}

/// L2 norm of the Darcy pressure error.
pub fn l2_error_darcy(dofs: &DofMap, p: &[f64], exact: &dyn Fn(f64, f64) -> f64) -> f64 {
    let mut acc = 0.0;
    for cy in 0..dofs.ny_p {
        for cx in 0..dofs.nx {
            let x0 = dofs.x_q1[cx];
            let hx = dofs.x_q1[cx + 1] - x0;
            let y0 = dofs.yp_q2[2 * cy];
            let hy = dofs.yp_q2[2 * cy + 2] - y0;
            for (qx, &xi) in GAUSS_PTS.iter().enumerate() {
                for (qy, &eta) in GAUSS_PTS.iter().enumerate() {
                    let w = GAUSS_WTS[qx] * GAUSS_WTS[qy] * hx * hy;
                    let (ph, _) = eval_darcy(dofs, p, cx, cy, xi, eta);
                    acc += w * (ph - exact(x0 + hx * xi, y0 + hy * eta)).powi(2);
                }
            }
        }
    }
    acc.sqrt()
}

/// Cell-centered Darcy velocity `u_p = -eta grad p_p` .
pub fn postprocess_darcy_velocity(
    dofs: &DofMap,
    p: &[f64],
    eta1: f64,
    eta2: f64,
) -> Vec<([f64; 2], [f64; 2])> {
    let mut out = Vec::with_capacity(dofs.nx * dofs.ny_p);
    for cy in 0..dofs.ny_p {
        for cx in 0..dofs.nx {
            let (_, g) = eval_darcy(dofs, p, cx, cy, 0.5, 0.5);
            let xc = 0.5 * (dofs.x_q1[cx] + dofs.x_q1[cx + 1]);
            let yc = 0.5 * (dofs.yp_q2[2 * cy] + dofs.yp_q2[2 * cy + 2]);
            out.push(([xc, yc], [-eta1 * g[0], -eta2 * g[1]]));
        }
    }
    out
}

/// Nodal interpolant of a velocity field on the full Stokes layout.
pub fn interpolate_velocity(dofs: &DofMap, f: &dyn Fn(f64, f64) -> [f64; 2]) -> Vec<f64> {
    let mut out = vec![0.0; dofs.n_u()];
    for node in 0..dofs.n_q2f {
        let [x, y] = dofs.q2f_coord[node];
        let v = f(x, y);
        out[dofs.u_dof(node, 0)] = v[0];
        out[dofs.u_dof(node, 1)] = v[1];
    }
    out
}

/// Nodal interpolant of a Darcy pressure.
pub fn interpolate_darcy(dofs: &DofMap, f: &dyn Fn(f64, f64) -> f64) -> Vec<f64> {
    (0..dofs.n_q2p)
        .map(|node| {
            let [x, y] = dofs.q2p_coord[node];
            f(x, y)
        })
        .collect()
}
