//! Closed-form reference solution on the stacked unit-half-width geometry
//! (fluid above porous, interface at y = 1):
//!
//! ```text
//! u   = ( sqrt(mu eta) cos t,  b x cos t )
//! p_f = ( 2 mu (x + y - 1) + 1/(3 eta) ) cos t
//! p_p = ( (-b x (y-1) + y^3/3 - y^2 + y)/eta + 2 mu x ) cos t
//! ```
//!
//! The slip coefficient `b = xi_f sqrt(eta/mu)` makes the pair satisfy the
//! friction interface condition exactly; the normal-flux and normal-stress
//! conditions hold by construction. The body forces below were obtained by
//! substituting the fields into the strong equations (the derivation is
//! nothing deeper than differentiating polynomials); the finite-difference
//! residual test at the bottom guards every term.

use crate::params::PhysicalParams;

#[derive(Debug, Clone, Copy)]
pub struct ManufacturedFields {
    mu: f64,
    eta: f64,
    s_p: f64,
    /// Coefficient of the tangential velocity component.
    pub b: f64,
}

impl ManufacturedFields {
    pub fn new(phys: &PhysicalParams) -> Self {
        let eta = phys.eta_p();
        Self {
            mu: phys.mu_f,
            eta,
            s_p: phys.s_p,
            b: phys.xi_f * (eta / phys.mu_f).sqrt(),
        }
    }

    pub fn velocity(&self, t: f64, x: f64, _y: f64) -> [f64; 2] {
        [(self.mu * self.eta).sqrt() * t.cos(), self.b * x * t.cos()]
    }

    pub fn pressure_f(&self, t: f64, x: f64, y: f64) -> f64 {
        (2.0 * self.mu * (x + y - 1.0) + 1.0 / (3.0 * self.eta)) * t.cos()
    }

    fn poly_q(&self, x: f64, y: f64) -> f64 {
        -self.b * x * (y - 1.0) + y * y * y / 3.0 - y * y + y
    }

    pub fn pressure_p(&self, t: f64, x: f64, y: f64) -> f64 {
        (self.poly_q(x, y) / self.eta + 2.0 * self.mu * x) * t.cos()
    }

    /// Body force of the momentum equation
    /// `du/dt - div(2 mu grad^s u - p I) = f`.
    pub fn force_f(&self, t: f64, x: f64, _y: f64) -> [f64; 2] {
        let a = (self.mu * self.eta).sqrt();
        // The symmetric-gradient divergence of this velocity vanishes, so
        // only the time derivative and the pressure gradient survive.
        [
            -a * t.sin() + 2.0 * self.mu * t.cos(),
            -self.b * x * t.sin() + 2.0 * self.mu * t.cos(),
        ]
    }

    /// Source of `S_p dp/dt - div(eta grad p) = f`.
    pub fn force_p(&self, t: f64, x: f64, y: f64) -> f64 {
        -self.s_p * (self.poly_q(x, y) / self.eta + 2.0 * self.mu * x) * t.sin()
            - (2.0 * y - 2.0) * t.cos()
    }
}
