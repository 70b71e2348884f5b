//! Numerical verification of the SU(2) route from qubit edge states to a
//! three-dimensional emergent space.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: Small dense complex matrices, generator bases (Pauli and
//!   generalized Gell-Mann), Haar sampling, the Killing form, and SVD-based
//!   rank/kernel primitives.
//! * [`projection`]: The Bloch map `ψ ↦ (⟨T_a⟩)` and its inverse on the state body.
//! * [`equivariance`]: The adjoint representation `SU(N) → SO(N²−1)` and
//!   residual checks for equivariance, the homomorphism property and the 2:1 cover.
//! * [`graph`]: Combinatorial graphs carrying one qubit per edge and one
//!   shared generator frame; saturation and counterfactual dimension measurements.
//! * [`invariant`]: The SU(2)-invariant subspace of `(ℂ²)^⊗k`, by Catalan
//!   numbers and by the kernel of the total-spin operators.
//! * [`sun`]: Why `N ≥ 3` fails to give a sphere of directions.
//! * [`experiments`]: Seeded drivers that produce [`experiments::ExperimentRecord`]s.
//! * [`cli`]: The `blochdim` command line and its CSV/JSON writers.

pub mod cli;
pub mod equivariance;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod invariant;
pub mod linalg;
pub mod projection;
pub mod sun;

pub use error::{Error, Result};
