pub mod algebra;
pub mod error;
pub mod exact;
pub mod lattice_voa;
pub mod monoidal_completion;
pub mod pointed_base;
pub mod report;
pub mod sum_completion;

pub use error::{Error, Result};
pub use report::Report;
