//! Pauli strings and operator expansions over tensor-product Pauli bases.
//!
//! Any Hermitian operator on a 2^n-dimensional space expands uniquely as
//! sum_s c_s P_s over the 4^n Pauli strings P_s with real coefficients
//! c_s = Tr[M P_s] / 2^n. The per-factor weight (I: 0, X: 1, Z: 1, Y: 2)
//! drives the unsharpness substitution in [`crate::fuzz`]: sigma_y only
//! ever arises as a product of one sigma_x and one sigma_z, so it carries
//! two powers of the fuzz parameter.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Single-qubit Pauli factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// Fuzz weight of the factor.
    pub fn weight(self) -> u32 {
        match self {
            Pauli::I => 0,
            Pauli::X | Pauli::Z => 1,
            Pauli::Y => 2,
        }
    }

    /// 2x2 matrix of the factor.
    pub fn matrix(self) -> CMatrix {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => CMatrix::identity(2),
            Pauli::X => CMatrix::from_complex(2, &[o, l, l, o]),
            Pauli::Y => CMatrix::from_complex(2, &[o, -i, i, o]),
            Pauli::Z => CMatrix::from_complex(2, &[l, o, o, -l]),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Ordered tensor product of Pauli factors, one per qubit slot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(factors: Vec<Pauli>) -> Self {
        assert!(
            !factors.is_empty(),
            "a Pauli string needs at least one slot"
        );
        PauliString(factors)
    }

    pub fn factors(&self) -> &[Pauli] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total fuzz weight: sum of per-factor weights.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|p| p.weight()).sum()
    }

    /// Dense matrix of the string (left factor acts on the first slot).
    pub fn matrix(&self) -> CMatrix {
        let mats: Vec<CMatrix> = self.0.iter().map(|p| p.matrix()).collect();
        let refs: Vec<&CMatrix> = mats.iter().collect();
        crate::matrix::tensor_all(&refs)
    }

    /// All 4^n strings on `nqubits` slots, lexicographic in (I, X, Y, Z)
    /// with the last slot varying fastest.
    pub fn all(nqubits: usize) -> Vec<PauliString> {
        assert!(nqubits >= 1);
        let mut out = Vec::with_capacity(4usize.pow(nqubits as u32));
        let mut current = vec![Pauli::I; nqubits];
        fill(&mut out, &mut current, 0);
        out
    }

    /// Identity string on `nqubits` slots.
    pub fn identity(nqubits: usize) -> Self {
        PauliString(vec![Pauli::I; nqubits])
    }
}

fn fill(out: &mut Vec<PauliString>, current: &mut Vec<Pauli>, slot: usize) {
    if slot == current.len() {
        out.push(PauliString(current.clone()));
        return;
    }
    for p in Pauli::ALL {
        current[slot] = p;
        fill(out, current, slot + 1);
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

/// Coefficients of an operator over the Pauli-string basis.
#[derive(Clone, Debug)]
pub struct PauliExpansion {
    nqubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliExpansion {
    pub fn nqubits(&self) -> usize {
        self.nqubits
    }

    pub fn coefficient(&self, s: &PauliString) -> Complex64 {
        self.terms
            .get(s)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    /// Build an expansion from explicit terms (missing strings are zero).
    pub fn from_terms(
        nqubits: usize,
        terms: impl IntoIterator<Item = (PauliString, Complex64)>,
    ) -> Self {
        let map: BTreeMap<PauliString, Complex64> = terms
            .into_iter()
            .inspect(|(s, _)| assert_eq!(s.len(), nqubits, "string length must match nqubits"))
            .collect();
        PauliExpansion {
            nqubits,
            terms: map,
        }
    }

    /// Scale every coefficient by `eta^weight(s)`.
    pub fn scaled_by_weight(&self, eta: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(s, c)| (s.clone(), c * eta.powi(s.weight() as i32)))
            .collect();
        PauliExpansion {
            nqubits: self.nqubits,
            terms,
        }
    }

    /// Materialize sum_s c_s P_s.
    pub fn reconstruct(&self) -> CMatrix {
        let dim = 1usize << self.nqubits;
        let mut out = CMatrix::zeros(dim);
        for (s, c) in &self.terms {
            out = &out + &s.matrix().scale(*c);
        }
        out
    }
}

/// Expand a matrix over the Pauli-string basis: c_s = Tr[m P_s] / dim.
///
/// The dimension must be a power of two.
pub fn pauli_decompose(m: &CMatrix) -> Result<PauliExpansion> {
    let dim = m.dim();
    if !dim.is_power_of_two() || dim < 2 {
        return Err(Error::DimNotPowerOfTwo { dim });
    }
    let nqubits = dim.trailing_zeros() as usize;
    let inv_dim = 1.0 / dim as f64;
    let mut terms = BTreeMap::new();
    for s in PauliString::all(nqubits) {
        let c = m.trace_product(&s.matrix()) * inv_dim;
        terms.insert(s, c);
    }
    Ok(PauliExpansion { nqubits, terms })
}

/// Materialize an expansion; inverse of [`pauli_decompose`].
pub fn pauli_reconstruct(e: &PauliExpansion) -> CMatrix {
    e.reconstruct()
}
