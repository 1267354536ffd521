//! Reference-element shape functions and Gauss quadrature.
//!
//! Everything lives on the unit reference square `[0,1]^2` with tensor-product
//! Lagrange bases: biquadratic (9 nodes at {0, 1/2, 1}^2) and bilinear
//! (4 corner nodes). Cells are axis-aligned rectangles, so the Jacobian is
//! diagonal and three Gauss points per direction integrate every assembled
//! integrand exactly.

/// 3-point Gauss rule on [0, 1].
pub const GAUSS_PTS: [f64; 3] = [
    0.112_701_665_379_258_3, // (1 - sqrt(3/5))/2
    0.5,
    0.887_298_334_620_741_7,
];
pub const GAUSS_WTS: [f64; 3] = [
    0.277_777_777_777_777_8, // 5/18
    0.444_444_444_444_444_4, // 8/18
    0.277_777_777_777_777_8,
];

/// Quadratic Lagrange basis on {0, 1/2, 1}.
#[inline]
pub fn q2_1d(t: f64) -> [f64; 3] {
    [
        (2.0 * t - 1.0) * (t - 1.0),
        4.0 * t * (1.0 - t),
        t * (2.0 * t - 1.0),
    ]
}

#[inline]
pub fn q2_1d_deriv(t: f64) -> [f64; 3] {
    [4.0 * t - 3.0, 4.0 - 8.0 * t, 4.0 * t - 1.0]
}

/// Linear Lagrange basis on {0, 1}.
#[inline]
pub fn q1_1d(t: f64) -> [f64; 2] {
    [1.0 - t, t]
}

#[inline]
pub fn q1_1d_deriv() -> [f64; 2] {
    [-1.0, 1.0]
}

/// Values and reference gradients of the 9 biquadratic basis functions at
/// `(xi, eta)`; local node `a = 3*iy + ix` sits at `(ix/2, iy/2)`.
pub fn q2_basis(xi: f64, eta: f64) -> ([f64; 9], [[f64; 2]; 9]) {
    let lx = q2_1d(xi);
    let dx = q2_1d_deriv(xi);
    let ly = q2_1d(eta);
    let dy = q2_1d_deriv(eta);
    let mut n = [0.0; 9];
    let mut g = [[0.0; 2]; 9];
    for iy in 0..3 {
        for ix in 0..3 {
            let a = 3 * iy + ix;
            n[a] = lx[ix] * ly[iy];
            g[a] = [dx[ix] * ly[iy], lx[ix] * dy[iy]];
        }
    }
    (n, g)
}

/// Values and reference gradients of the 4 bilinear basis functions; local
/// node `a = 2*iy + ix`.
pub fn q1_basis(xi: f64, eta: f64) -> ([f64; 4], [[f64; 2]; 4]) {
    let lx = q1_1d(xi);
    let dx = q1_1d_deriv();
    let ly = q1_1d(eta);
    let dy = q1_1d_deriv();
    let mut n = [0.0; 4];
    let mut g = [[0.0; 2]; 4];
    for iy in 0..2 {
        for ix in 0..2 {
            let a = 2 * iy + ix;
            n[a] = lx[ix] * ly[iy];
            g[a] = [dx[ix] * ly[iy], lx[ix] * dy[iy]];
        }
    }
    (n, g)
}
