//! Dense linear algebra over GF(q): vectors, matrices, subspaces and spinning.

mod matrix;
mod module;
mod space;
mod subspace;

pub use matrix::{direct_sum, kron, mat_ops, MatOp, MatOpOutput, Matrix, Vector};
pub use module::{is_completely_reducible, is_irreducible, line_spins, minimal_spins, socle, spin};
pub use space::{Space, SPACE_CAP};
pub use subspace::Subspace;
