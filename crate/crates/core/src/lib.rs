pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod hamiltonian;
pub mod power_model;
pub mod specfun;
pub mod weyl_numeric;

pub use error::{Error, Result};
