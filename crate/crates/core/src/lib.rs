pub mod asymptotics;
pub mod cli;
pub mod curve;
pub mod error;
pub mod gf;
pub mod oracle;
pub mod places;
pub mod ratfunc_q;
pub mod zeta;

pub use error::{Error, Result};
