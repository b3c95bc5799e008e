//! Margenau-Hill quasi-measurement operators and joint measurability of
//! finite-dimensional spin observables.
//!
//! The Margenau-Hill correspondence maps classical monomials of
//! non-commuting observables to symmetrized operator products. Applied to
//! the spectral projectors of a set of observables it yields a family of
//! Hermitian operators — the quasi-measurement operators — that is
//! normalized to the identity and has the right marginals, but may fail
//! positivity. Whenever the family at unsharpness eta is positive
//! semidefinite it is a genuine parent POVM, so positivity certifies
//! joint measurability of the fuzzy observables; the largest such eta is
//! the compatibility threshold computed here.
//!
//! Pipeline:
//!
//! 1. [`observable::spectral`] resolves Hermitian matrices into
//!    eigenvalue/projector pairs ([`matrix::CMatrix`] carries all
//!    operators, [`eig`] is a cyclic Jacobi solver).
//! 2. [`qmo::qmo_jordan`] builds the sharp family by symmetrized
//!    projector products over commuting groups;
//!    [`qmo::qmo_from_charfn`] re-derives it through the
//!    characteristic-function/DFT route as an independent cross-check.
//! 3. [`fuzz::fuzzify`] applies the unsharpness parameter through
//!    weighted Pauli expansions; [`fuzz::extract_marginal_povm`] recovers
//!    the per-observable fuzzy POVMs.
//! 4. [`scenario`] wires up the three reference setups (qubit, qutrit
//!    via Clebsch-Gordan embedding, 2-qubit) with closed-form eigenvalue
//!    curves as fixtures.
//! 5. [`compat`] scans min-eigenvalue curves and bisects compatibility
//!    thresholds.
//!
//! ```
//! use mhqmo::compat::threshold;
//! use mhqmo::scenario::{FamilyBuilder, ScenarioKind};
//!
//! let builder = FamilyBuilder::new(ScenarioKind::Qubit);
//! let t = threshold(|eta| builder.family_at(eta)).unwrap();
//! let eta_star = t.value().unwrap();
//! assert!((eta_star - 0.7071068).abs() < 1e-6);
//! ```

pub mod compat;
pub mod eig;
pub mod error;
pub mod fuzz;
pub mod matrix;
pub mod observable;
pub mod pauli;
pub mod qmo;
pub mod scenario;
pub mod tol;

pub use error::{Error, Result};
pub use matrix::{tensor, CMatrix};
pub use observable::{spectral, Observable};
pub use qmo::{DensityMatrix, Grouping, OutcomeTuple, QmoFamily, QuasiProbTable};
