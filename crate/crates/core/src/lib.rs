//! Two-qubit Heisenberg XYZ chains with Dzyaloshinskii-Moriya coupling under
//! Milburn intrinsic decoherence.
//!
//! The crate builds the Hamiltonians, evolves density matrices with the
//! spectral propagator, and evaluates concurrence, two-copy entanglement
//! teleportation and mixed-state fidelity. [`studio`] runs deterministic
//! parameter sweeps and emits CSV.

pub mod acceptance;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod model;
pub mod numerics;
pub mod studio;
pub mod teleport;

pub use error::{Error, Result};
