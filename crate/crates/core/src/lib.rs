//! Exact numerics for XY spin chains: the three-spin effective two-qubit
//! gate, its protocol applications, engineered-coupling chains for
//! half-time entanglement, and transfer-fidelity asymptotics for long
//! homogeneous chains.
//!
//! All energies are in units of a reference coupling (hbar = 1); times are
//! in units of the inverse coupling.

pub mod asymptotics;
pub mod chain;
pub mod cli;
pub mod design;
pub mod evolve;
pub mod gate;
pub mod optimize;
pub mod protocols;

pub use chain::{ChainSpec, Hermitian, Model, Parity, Topology};
pub use evolve::{Basis, Spectrum, StateVector};

use thiserror::Error;

pub type C64 = num_complex::Complex<f64>;
pub type CMatrix = nalgebra::DMatrix<C64>;
pub type CVector = nalgebra::DVector<C64>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid chain spec: {0}")]
    InvalidSpec(String),
    #[error("{n} spins exceeds the full-space limit of {max} (use the excitation subspace)")]
    DimensionOverflow { n: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("state vector is not normalized (|norm - 1| = {0:.3e})")]
    NotNormalized(f64),
    #[error("mediator subspace is not invariant: leakage {leakage:.3e} exceeds {threshold:.0e}")]
    LeakageTooLarge { leakage: f64, threshold: f64 },
    #[error("couplings are not mirror-symmetric: the half-chain basis is not invariant")]
    NotMirrorSymmetric,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed spec file: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
