pub mod algebra;
pub mod bundles;
pub mod decomp;
pub mod verifier;
pub mod cli;
pub mod theta;
pub mod error;

pub use error::{Error, Result};
