//! Numerical tolerances used across the crate.
//!
//! All operators handled here are O(1)-scaled (Pauli algebra, projectors,
//! density matrices), so absolute tolerances are appropriate. Validation
//! code and tests reference these constants instead of ad-hoc literals.

/// Max allowed |M[i][j] - conj(M[j][i])| for a matrix accepted as Hermitian.
pub const HERMITICITY: f64 = 1e-12;

/// Residual budget of the Jacobi eigensolver: max |M v - lambda v|.
pub const EIG_RESIDUAL: f64 = 1e-11;

/// Eigenvalues closer than this are merged into one spectral point.
pub const EIG_MERGE: f64 = 1e-10;

/// Merged eigenvalues within this distance of an integer are snapped to it.
pub const LABEL_SNAP: f64 = 1e-10;

/// Pauli decompose/reconstruct round-trip budget (max entry error).
pub const PAULI_ROUNDTRIP: f64 = 1e-13;

/// Budget for "sums to identity" checks (family normalization, projector
/// completeness).
pub const NORMALIZATION: f64 = 1e-11;

/// Budget for |Tr(rho) - 1| of a density matrix.
pub const TRACE_ONE: f64 = 1e-11;

/// Max |[A,B]| entry for observables accepted as mutually commuting.
pub const COMMUTATOR: f64 = 1e-10;

/// Min-eigenvalue slack below which an operator counts as not positive
/// semidefinite. Shared by fuzzification, verdicts and threshold scans.
pub const POSITIVITY_SLACK: f64 = 1e-10;

/// Max allowed |entry| in the off-diagonal blocks when extracting the
/// spin-1 block of a coupled-basis operator.
pub const BLOCK_LEAKAGE: f64 = 1e-12;

/// Entry-wise budget for the characteristic-function route agreeing with
/// the symmetrized-product route.
pub const ORACLE_EQUIVALENCE: f64 = 1e-10;

/// Jacobi sweep convergence: off-diagonal Frobenius norm relative to the
/// Frobenius norm of the input.
pub const JACOBI_OFF_FACTOR: f64 = 1e-14;

/// Hard cap on Jacobi sweeps; convergence is quadratic and dims are <= 16,
/// so this is never reached in practice.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Absolute eta resolution of threshold bisection. Tighter than the 1e-9
/// reporting contract so that independent brackets agree within it.
pub const BISECT_ETA: f64 = 1e-11;

/// Quasi-probability entries below this are flagged as negative.
pub const NEGATIVITY_FLAG: f64 = -1e-11;
