//! Frequency-domain analysis: interface symbols, convergence factor and the
//! min-max optimization of the Robin coefficients.

mod minmax;
mod symbols;

pub use minmax::{
    brute_force_minmax, classify_regime, interior_maximum, solve_minmax_numeric,
    solve_minmax_theorem, NumericOptions, ZeroMode,
};
pub use symbols::{
    anchor_l, anchor_l_as_printed, critical_frequency, rho, rho_at_zero, rho_at_zero_bounded,
    rho_with_pair_full, rho_with_pair_simplified, symbol_f, symbol_g, symbol_h,
};

use crate::params::RobinPair;

/// Position of the critical frequency `k_hat` relative to the band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `k_hat < k_min`.
    BelowBand,
    /// `k_min <= k_hat <= k_max` (boundary ties included).
    InBand,
    /// `k_hat > k_max`.
    AboveBand,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::BelowBand => "below-band",
            Regime::InBand => "in-band",
            Regime::AboveBand => "above-band",
        }
    }
}

/// Which pair of local maxima equioscillates at the optimum.
///
/// The `Equioscillate_*` variants belong to the in-band regime, the
/// `BandAbove_*`/`BandBelow_*` variants to `k_hat` above and below the band.
/// `NumericZeroMode` marks numeric solutions whose active maximum includes
/// the zero frequency, which the case analysis does not cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum EquioscillationCase {
    Equioscillate_kmin_kmax,
    Equioscillate_kmin_interior,
    Equioscillate_interior_kmax,
    BandAbove_kmin_kmax,
    BandAbove_interior,
    BandBelow_kmin_kmax,
    BandBelow_interior,
    NumericZeroMode,
}

impl EquioscillationCase {
    pub fn label(self) -> &'static str {
        match self {
            EquioscillationCase::Equioscillate_kmin_kmax => "equioscillate(kmin,kmax)",
            EquioscillationCase::Equioscillate_kmin_interior => "equioscillate(kmin,interior)",
            EquioscillationCase::Equioscillate_interior_kmax => "equioscillate(interior,kmax)",
            EquioscillationCase::BandAbove_kmin_kmax => "band-above(kmin,kmax)",
            EquioscillationCase::BandAbove_interior => "band-above(kmin,interior)",
            EquioscillationCase::BandBelow_kmin_kmax => "band-below(kmin,kmax)",
            EquioscillationCase::BandBelow_interior => "band-below(interior,kmax)",
            EquioscillationCase::NumericZeroMode => "numeric(zero-mode)",
        }
    }

    pub fn is_interior(self) -> bool {
        matches!(
            self,
            EquioscillationCase::Equioscillate_kmin_interior
                | EquioscillationCase::Equioscillate_interior_kmax
                | EquioscillationCase::BandAbove_interior
                | EquioscillationCase::BandBelow_interior
        )
    }
}

/// Result of a min-max solve.
#[derive(Debug, Clone, Copy)]
pub struct MinMaxSolution {
    /// Optimal zero location `s*` (so `alpha_f = G(s*)`).
    pub s_star: f64,
    /// The optimized Robin coefficients.
    pub robin: RobinPair,
    /// Achieved maximum of `|rho|` over the objective set.
    pub rho_max: f64,
    /// Which maxima are active at the optimum.
    pub case_label: EquioscillationCase,
    /// Location of the interior maximum when the case involves it.
    pub k_tilde: Option<f64>,
}
