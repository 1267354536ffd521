//! Fourier symbols of the semi-discrete Robin-Robin interface iteration.
//!
//! For the half-plane model problem with tangential frequency `k`, the
//! iteration contracts each mode by `|rho(k)|` with
//!
//! ```text
//! rho(k, af, ap) = (G(k) - af) (H(k) - ap) / ((G(k) + ap) (H(k) + af))
//! G(k) = 1 / (eta_p sqrt(k^2 + S_p/(eta2 theta dt)))
//! H(k) = (2 mu_f R(k) - (2 mu_f k^2 dt + 1) F(k)) / (1 - |k| dt F(k))
//! R(k) = sqrt(k^2 + 1/(mu_f theta dt))
//! ```
//!
//! where `F(k)` collects the tangential (friction) coupling. Replacing the
//! friction condition by zero tangential velocity (`xi_f -> inf`) collapses
//! `H` to
//!
//! ```text
//! H(k) = R(k) / (|k| dt (R(k) - |k|))
//! ```
//!
//! which is evaluated here in the cancellation-free form
//! `R (R + |k|) / (|k| dt sigma)` using `R^2 - k^2 = sigma`. The bare `dt`
//! factors honor the [`TimeFactorConvention`] of the discretization; the
//! factors inside the square roots are always `theta dt`.

use crate::params::{DiscretizationParams, PhysicalParams, RobinPair, TimeFactorConvention};
use crate::{Error, Result};

/// `sigma = 1/(mu_f theta dt)`, the Stokes time-regularization shift.
fn stokes_shift(p: &PhysicalParams, d: &DiscretizationParams) -> f64 {
    1.0 / (p.mu_f * d.theta_dt())
}

/// `R(k) = sqrt(k^2 + sigma)`.
fn stokes_root(k: f64, p: &PhysicalParams, d: &DiscretizationParams) -> f64 {
    (k * k + stokes_shift(p, d)).sqrt()
}

/// Darcy symbol `G(k)`; strictly positive and strictly decreasing in `|k|`.
pub fn symbol_g(k: f64, p: &PhysicalParams, d: &DiscretizationParams) -> Result<f64> {
    let shift = p.s_p / (p.eta2 * d.theta_dt());
    if k == 0.0 && shift == 0.0 {
        return Err(Error::InvalidInput("G(0) is unbounded for S_p = 0".into()));
    }
    Ok(1.0 / (p.eta_p() * (k * k + shift).sqrt()))
}

/// Tangential coupling symbol `F(k)`.
///
/// The `xi_f = +inf` sentinel dispatches to the zero-tangential-velocity
/// limit `R(k) / (k^2 dt)`.
pub fn symbol_f(k: f64, p: &PhysicalParams, d: &DiscretizationParams) -> Result<f64> {
    if k == 0.0 {
        return Err(Error::InvalidInput("F(0) is singular".into()));
    }
    let r = stokes_root(k, p, d);
    let dt = d.bare_dt();
    if p.zero_tangential() {
        return Ok(r / (k * k * dt));
    }
    let mu = p.mu_f;
    let xi = p.xi_f;
    let num = mu * k * k + (mu * r + xi) * r;
    let den = k * k * dt * (2.0 * mu * k.abs() + xi);
    Ok(num / den)
}

/// Stokes symbol `H(k)`, either in the full (friction) form or in the
/// simplified zero-tangential-velocity form.
pub fn symbol_h(
    k: f64,
    p: &PhysicalParams,
    d: &DiscretizationParams,
    simplified: bool,
) -> Result<f64> {
    if k == 0.0 {
        return Err(Error::InvalidInput("H(0) is singular".into()));
    }
    let r = stokes_root(k, p, d);
    let dt = d.bare_dt();
    if simplified || p.zero_tangential() {
        // R/( |k| dt (R - |k|) ) = R (R + |k|) / (|k| dt sigma).
        let sigma = stokes_shift(p, d);
        return Ok(r * (r + k.abs()) / (k.abs() * dt * sigma));
    }
    let f = symbol_f(k, p, d)?;
    let mu = p.mu_f;
    let num = 2.0 * mu * r - (2.0 * mu * k * k * dt + 1.0) * f;
    let den = 1.0 - k.abs() * dt * f;
    debug_assert!(den < 0.0, "1 - |k| dt F(k) must be negative (k = {k})");
    Ok(num / den)
}

/// `k_hat`, the minimizer of the simplified `H`.
pub fn critical_frequency(p: &PhysicalParams, d: &DiscretizationParams) -> f64 {
    let golden = 5f64.sqrt() - 1.0;
    (0.5 * (golden / (p.mu_f * d.theta_dt()))).sqrt()
}

/// `l = H(k_hat)`, the minimum of the simplified `H`; the optimization
/// anchors `alpha_p` to this value.
pub fn anchor_l(p: &PhysicalParams, d: &DiscretizationParams) -> f64 {
    let k_hat = critical_frequency(p, d);
    symbol_h(k_hat, p, d, true).expect("k_hat > 0")
}

/// One-parameter convergence factor `rho(k, s)` with `alpha_f = G(s)` and
/// `alpha_p = l`, using the simplified `H`.
///
/// Zeros sit exactly at `k = s` and `k = k_hat`.
pub fn rho(k: f64, s: f64, p: &PhysicalParams, d: &DiscretizationParams) -> Result<f64> {
    let g_s = symbol_g(s, p, d)?;
    let l = anchor_l(p, d);
    rho_with_pair_simplified(k, g_s, l, p, d)
}

/// `rho(k)` for an explicit coefficient pair, simplified `H`.
pub fn rho_with_pair_simplified(
    k: f64,
    alpha_f: f64,
    alpha_p: f64,
    p: &PhysicalParams,
    d: &DiscretizationParams,
) -> Result<f64> {
    if k == 0.0 {
        return Err(Error::InvalidInput(
            "rho(0) is not defined by the band symbols; use rho_at_zero".into(),
        ));
    }
    let g = symbol_g(k, p, d)?;
    let h = symbol_h(k, p, d, true)?;
    Ok((g - alpha_f) / (h + alpha_f) * ((h - alpha_p) / (g + alpha_p)))
}

/// `rho(k)` for an explicit pair with the full friction symbol `H`;
/// evaluation only, the optimization always uses the simplified form.
pub fn rho_with_pair_full(
    k: f64,
    robin: &RobinPair,
    p: &PhysicalParams,
    d: &DiscretizationParams,
) -> Result<f64> {
    if k == 0.0 {
        return Err(Error::InvalidInput("rho(0): use rho_at_zero".into()));
    }
    let g = symbol_g(k, p, d)?;
    let h = symbol_h(k, p, d, false)?;
    Ok((g - robin.alpha_f) / (h + robin.alpha_f) * ((h - robin.alpha_p) / (g + robin.alpha_p)))
}

/// Zero-frequency factor of a laterally periodic strip, half-plane porous
/// region: `(1 - af d0)/(1 + ap d0)` with `d0 = eta_p sqrt(S_p/(theta eta2 dt))`.
pub fn rho_at_zero(robin: &RobinPair, p: &PhysicalParams, d: &DiscretizationParams) -> Result<f64> {
    if p.s_p == 0.0 {
        return Err(Error::InvalidInput(
            "zero-frequency symbol degenerates for S_p = 0".into(),
        ));
    }
    let d0 = p.eta_p() * (p.s_p / (d.theta * p.eta2 * d.dt)).sqrt();
    Ok((1.0 - robin.alpha_f * d0) / (1.0 + robin.alpha_p * d0))
}

/// Zero-frequency factor when the porous region has finite depth `depth`
/// below the interface (pressure clamped at the far wall).
///
/// The decaying half-plane mode `exp(-eps x)` becomes a hyperbolic profile,
/// which replaces the half-plane coefficient `eta1 eps` by
/// `eta1 eps coth(eps depth)`; for `S_p -> 0` this tends to `eta1/depth`
/// instead of vanishing, which is why the periodic experiments remain
/// sensitive to `alpha_f` even at negligible storativity.
pub fn rho_at_zero_bounded(
    robin: &RobinPair,
    p: &PhysicalParams,
    d: &DiscretizationParams,
    depth: f64,
) -> Result<f64> {
    if !(depth > 0.0) {
        return Err(Error::InvalidInput(format!(
            "depth must be positive: {depth}"
        )));
    }
    let eps = (p.s_p / (d.theta * p.eta1 * d.dt)).sqrt();
    let x = eps * depth;
    // eps * coth(eps L): series for small argument, tanh is stable otherwise.
    let eps_coth = if x < 1e-6 {
        (1.0 + x * x / 3.0) / depth
    } else {
        eps / x.tanh()
    };
    let d0 = p.eta1 * eps_coth;
    Ok((1.0 - robin.alpha_f * d0) / (1.0 + robin.alpha_p * d0))
}

/// Convention cross-check used by tests: the as-printed anchor is exactly
/// `theta` times the effective one.
pub fn anchor_l_as_printed(p: &PhysicalParams, d: &DiscretizationParams) -> f64 {
    let printed = DiscretizationParams {
        convention: TimeFactorConvention::AsPrinted,
        ..*d
    };
    anchor_l(p, &printed)
}
