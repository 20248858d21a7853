pub mod basesize;
pub mod catalog;
pub mod construct;
pub mod error;
pub mod gf;
pub mod grp;
pub mod matlin;
pub mod oracle;

pub use error::{Error, Result};
