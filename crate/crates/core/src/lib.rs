pub mod error;
pub mod extension;
pub mod cli;
pub mod cohomotopy;
pub mod fgab;
pub mod ktheory;
pub mod labels;
pub mod surgery;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use fgab::{FgAbGroup, Homomorphism, IntegerMatrix};
pub use tables::Tables;
