//! Constructive base recipes and the numeric bounds they are checked against.

pub mod constants;
pub mod assembly;
pub mod gamma;
pub mod special;
pub mod tensor;

pub use constants::*;
pub use assembly::*;
pub use gamma::*;
pub use special::*;
pub use tensor::*;
