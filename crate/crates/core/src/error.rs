use thiserror::Error;

use crate::components::{ComponentError, RecoveryError};
use crate::equations::SyzygyError;
use crate::lattice::LatticeError;
use crate::oracle::OracleError;

/// Any failure of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Component(#[from] ComponentError),
    #[error(transparent)]
    Recovery(#[from] RecoveryError),
    #[error(transparent)]
    Syzygy(#[from] SyzygyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
