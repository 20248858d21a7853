//! Matrix groups: order and membership through a stabilizer chain on vectors, orbits and
//! stabilizers under arbitrary actions, derived series, and semilinear groups.

pub mod action;
pub mod chain;
pub mod group;
pub mod semilinear;
pub mod series;

pub use action::{Action, FnAction, OnCosets, OnLines, OnSubspaces, OnVectors};
pub use chain::{StabChain, ORDER_CAP};
pub use group::MatrixGroup;
pub use semilinear::{blow_up, blow_vector, galois_power, shrink_vector, SemilinearElement, SemilinearGroup};
pub use series::{derived_series, derived_subgroup, is_p_solvable, is_perfect, is_solvable, normal_closure, perfect_residual};
