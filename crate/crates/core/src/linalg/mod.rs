//! Dense small-matrix numerics shared by every other module.

mod basis;
mod killing;
mod matrix;
mod random;
mod rank;
mod state;

pub use basis::{gell_mann_basis, pauli_basis, GeneratorBasis};
pub use killing::killing_form;
pub use matrix::{c64, identity, trace_product, CMatrix, MatrixPredicates, RMatrix};
pub use random::{haar_pure_state, haar_special_unitary, RngSeed, StreamRng};
pub use rank::{kernel_dimension, numerical_rank, singular_values, DEFAULT_RANK_TOL};
pub use state::{DensityMatrix, PureState};
