//! Finite element layer: biquadratic/bilinear Taylor-Hood Stokes elements
//! and biquadratic Darcy elements on structured quadrilateral meshes, with
//! direct sparse factorizations reused across interface iterations and time
//! steps.

pub mod assembly;
pub mod csr;
pub mod dofmap;
pub mod fields;
pub mod interface;
pub mod shape;

pub use assembly::{
    assemble_blocks, assemble_darcy, assemble_monolithic, assemble_stokes, force_vec_darcy,
    force_vec_stokes, DarcySystem, FemBlocks, MonolithicSystem, StokesSystem,
};
pub use csr::{Csr, Factorized, ReducedSystem};
pub use dofmap::{BcTag, Constraint, DofMap};
pub use fields::{
    eval_darcy, eval_velocity, interpolate_darcy, interpolate_velocity, l2_error_darcy,
    l2_error_pressure_f, l2_error_velocity, postprocess_darcy_velocity,
};
pub use interface::InterfaceOps;
