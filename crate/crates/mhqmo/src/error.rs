//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or analyzing a
/// quasi-measurement family.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M[i][j] - conj(M[j][i])| = {deviation:.3e} exceeds {limit:.0e}")]
    NotHermitian { deviation: f64, limit: f64 },

    #[error("dimension {dim} is not a power of two")]
    DimNotPowerOfTwo { dim: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("observables within a group must commute: max |[A,B]| entry = {norm:.3e} exceeds {limit:.0e}")]
    NonCommutingGroup { norm: f64, limit: f64 },

    #[error("keep set must be non-empty")]
    EmptyKeepSet,

    #[error("observable index {index} out of range for {count} observables")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("invalid grouping: {reason}")]
    InvalidGrouping { reason: String },

    #[error("spectrum is not integer-valued: outcome {value} is not an integer")]
    NonIntegerSpectrum { value: f64 },

    #[error("spectrum label {value} outside the supported outcome set {{-1, 0, +1}}")]
    UnsupportedSpectrum { value: f64 },

    #[error("off-diagonal block leakage: max |entry| = {leakage:.3e} exceeds {limit:.0e}; the family is not spin-1 symmetric in the coupled basis")]
    BlockLeakage { leakage: f64, limit: f64 },

    #[error("family is not positive at eta = {eta}: min eigenvalue {min_eig:.3e}")]
    NotPositiveAtZero { eta: f64, min_eig: f64 },

    #[error("min-eigenvalue curve changes sign {changes} times on the pre-scan grid; a single crossing is required for a threshold")]
    SignStructure { changes: usize },

    #[error("unknown closed-form label `{label}` for scenario `{scenario}`")]
    UnknownLabel { label: String, scenario: String },

    #[error("unsharpness parameter must lie in [0, 1], got {value}")]
    EtaOutOfRange { value: f64 },

    #[error("marginal POVM element for outcome {outcome:?} is not positive semidefinite: min eigenvalue {min_eig:.3e}")]
    MarginalNotPositive { outcome: Vec<f64>, min_eig: f64 },

    #[error("invalid density matrix: {reason}")]
    InvalidDensityMatrix { reason: String },

    #[error("invalid matrix data: {reason}")]
    InvalidMatrix { reason: String },

    #[error("invalid eta grid: {reason}")]
    InvalidGrid { reason: String },

    #[error("unknown scenario `{name}` (expected qubit, qutrit or two-qubit)")]
    UnknownScenario { name: String },
}
