pub mod error;
pub mod linalg;
pub mod module_cat;

pub use error::{Error, Result};
pub mod frobenius;
pub mod under_cat;
pub mod homotopy_decider;
pub mod oracle;
pub mod sample;
pub mod json;
pub mod certificate;
pub mod instances;
pub mod report;
pub mod cli;
