//! The group catalog, group files, and the verification suites run by the bin.

pub mod corpus;
pub mod file;
pub mod recipe;
pub mod report;
pub mod suites;

pub use corpus::*;
pub use file::*;
pub use recipe::*;
pub use report::*;
pub use suites::*;
