//! Library error type.

use thiserror::Error;

/// Failures surfaced by the library.
///
/// `Config` covers everything wrong with the problem statement itself
/// (bad parameters, malformed tables, ill-posed wells). `Domain` means a
/// function was handed an argument outside its mathematical domain.
/// `NonConvergence` means an iterative scheme hit its budget before
/// reaching tolerance. `Capacity` is the physical limit: the well cannot
/// bind the requested number of particles.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("capacity exceeded: well binds {available} states, {requested} requested")]
    Capacity { requested: usize, available: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn no_convergence(msg: impl Into<String>) -> Self {
        Error::NonConvergence(msg.into())
    }
}
