//! Optimized Schwarz (Robin-Robin) solver for the time-dependent
//! Stokes-Darcy coupling.
//!
//! The crate has two halves that talk through a pair of Robin coefficients
//! `(alpha_f, alpha_p)`:
//!
//! * [`analysis`] works in the frequency domain. It evaluates the Fourier
//!   symbols of the semi-discrete interface iteration and solves the
//!   associated min-max problem for the Robin coefficients, either through
//!   the equioscillation case analysis or numerically (Nelder-Mead over a
//!   sampled frequency band, optionally including the zero mode of a
//!   laterally periodic domain).
//! * [`mesh`], [`fem`], [`ddm`] and [`timeloop`] form the physical-space
//!   solver: structured quadrilateral meshes of the two-subdomain geometry,
//!   Q2-Q1 Taylor-Hood Stokes / Q2 Darcy assembly, the Robin-Robin interface
//!   iteration (stationary, Jacobi or matrix-free GMRES) with a monolithic
//!   coupled solve as reference, and the theta-method time loop driving the
//!   three experiment scenarios.

pub mod analysis;
pub mod ddm;
pub mod error;
pub mod fem;
pub mod mesh;
pub mod params;
pub mod rng;
pub mod timeloop;

pub use error::Error;
pub use params::{
    DiscretizationParams, FrequencyBand, PhysicalParams, Provenance, RobinPair, TestCase,
    TimeFactorConvention,
};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
