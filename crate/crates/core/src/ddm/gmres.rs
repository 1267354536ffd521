//! Full GMRES (no restart) with modified Gram-Schmidt and one
//! reorthogonalization pass; deterministic across runs.

/// Result of a GMRES solve.
#[derive(Debug, Clone)]
pub struct GmresResult {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// Relative residual after each iteration (monotone non-increasing).
    pub residuals: Vec<f64>,
    pub converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Solve `A x = b` with the matrix-free operator `apply`.
///
/// Convergence: `||b - A x|| <= tol * ||b||` (absolute when `b = 0`). The
/// iteration count equals the number of operator applications beyond the
/// initial residual.
pub fn gmres(
    apply: &mut dyn FnMut(&[f64]) -> Vec<f64>,
    b: &[f64],
    x0: &[f64],
    tol: f64,
    max_iter: usize,
) -> GmresResult {
    let n = b.len();
    debug_assert_eq!(x0.len(), n);
    let bnorm = norm(b);
    let denom = if bnorm > 0.0 { bnorm } else { 1.0 };

    let ax0 = apply(x0);
    let mut r0 = vec![0.0; n];
    for i in 0..n {
        r0[i] = b[i] - ax0[i];
    }
    let beta = norm(&r0);
    if beta / denom <= tol {
        return GmresResult {
            x: x0.to_vec(),
            iterations: 0,
            residuals: vec![beta / denom],
            converged: true,
        };
    }

    let m_max = max_iter.min(n);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m_max + 1);
    basis.push(r0.iter().map(|v| v / beta).collect());
    // Hessenberg stored column-wise after Givens elimination.
    let mut h_cols: Vec<Vec<f64>> = Vec::with_capacity(m_max);
    let mut cs: Vec<f64> = Vec::with_capacity(m_max);
    let mut sn: Vec<f64> = Vec::with_capacity(m_max);
    let mut g = vec![beta];
    let mut residuals = Vec::with_capacity(m_max);
    let mut converged = false;
    let mut m = 0;

    for j in 0..m_max {
        let mut w = apply(&basis[j]);
        let mut h = vec![0.0; j + 2];
        for i in 0..=j {
            let hij = dot(&w, &basis[i]);
            h[i] = hij;
            for (wk, qk) in w.iter_mut().zip(&basis[i]) {
                *wk -= hij * qk;
            }
        }
        // One reorthogonalization pass.
        for i in 0..=j {
            let corr = dot(&w, &basis[i]);
            h[i] += corr;
            for (wk, qk) in w.iter_mut().zip(&basis[i]) {
                *wk -= corr * qk;
            }
        }
        let h_next = norm(&w);
        h[j + 1] = h_next;

        // Apply accumulated rotations, then the new one.
        for i in 0..j {
            let t = cs[i] * h[i] + sn[i] * h[i + 1];
            h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
            h[i] = t;
        }
        let r = (h[j] * h[j] + h[j + 1] * h[j + 1]).sqrt();
        let (c, s) = if r == 0.0 {
            (1.0, 0.0)
        } else {
            (h[j] / r, h[j + 1] / r)
        };
        cs.push(c);
        sn.push(s);
        h[j] = r;
        h[j + 1] = 0.0;
        g.push(-s * g[j]);
        g[j] *= c;
        h_cols.push(h);

        m = j + 1;
        let rel = g[j + 1].abs() / denom;
        residuals.push(rel);
        let breakdown = h_next <= 1e-300;
        if rel <= tol || breakdown {
            converged = rel <= tol || breakdown;
            break;
        }
        basis.push(w.iter().map(|v| v / h_next).collect());
    }

    // Back substitution for the least-squares coefficients.
    let mut y = vec![0.0; m];
    for i in (0..m).rev() {
        let mut acc = g[i];
        for k in i + 1..m {
            acc -= h_cols[k][i] * y[k];
        }
        y[i] = acc / h_cols[i][i];
    }
    let mut x = x0.to_vec();
    for (k, yk) in y.iter().enumerate() {
        for i in 0..n {
            x[i] += yk * basis[k][i];
        }
    }
    GmresResult {
        x,
        iterations: m,
        residuals,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Lcg64;

    #[test]
    fn solves_dense_system() {
        // Small well-conditioned nonsymmetric system.
        let n = 24;
        let mut rng = Lcg64::new(11);
        let a: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            4.0
                        } else {
                            0.4 * rng.next_symmetric()
                        }
                    })
                    .collect()
            })
            .collect();
        let x_true: Vec<f64> = (0..n).map(|i| (i as f64 * 0.3).sin()).collect();
        let b: Vec<f64> = a.iter().map(|row| dot(row, &x_true)).collect();
        let mut apply = |v: &[f64]| a.iter().map(|row| dot(row, v)).collect::<Vec<_>>();
        let out = gmres(&mut apply, &b, &vec![0.0; n], 1e-12, 100);
        assert!(out.converged);
        for (xi, ti) in out.x.iter().zip(&x_true) {
            assert!((xi - ti).abs() < 1e-9);
        }
        // Residual history is monotone non-increasing.
        for w in out.residuals.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12));
        }
    }

    #[test]
    fn exact_initial_guess_takes_zero_iterations() {
        let a = [[2.0, 1.0], [0.0, 3.0]];
        let mut apply = |v: &[f64]| {
            vec![
                a[0][0] * v[0] + a[0][1] * v[1],
                a[1][0] * v[0] + a[1][1] * v[1],
            ]
        };
        let x = [1.0, -2.0];
        let b = apply(&x);
        let out = gmres(&mut apply, &b, &x, 1e-10, 10);
        assert!(out.converged);
        assert_eq!(out.iterations, 0);
    }

    #[test]
    fn zero_rhs_converges_immediately_from_zero() {
        let mut apply = |v: &[f64]| v.to_vec();
        let out = gmres(&mut apply, &[0.0, 0.0], &[0.0, 0.0], 1e-10, 10);
        assert!(out.converged);
        assert_eq!(out.iterations, 0);
    }
}
