//! One-parameter unsharpness (eta) fuzzification of a sharp family.
//!
//! Fuzzification substitutes sigma_x -> eta sigma_x and sigma_z -> eta
//! sigma_z before any simplification. On the Pauli-expansion side that is
//! a pure rescaling: each string coefficient picks up eta^weight with the
//! per-factor weights w(I) = 0, w(X) = w(Z) = 1, w(Y) = 2, since sigma_y
//! only ever appears as a sigma_x sigma_z product. That weight rule is
//! this crate's committed extension of the substitution to operators
//! outside the span of sigma_x/sigma_z monomials.
//!
//! Fuzzification is defined on qubit-embedding spaces (dimension a power
//! of two); spin-1 families are fuzzified in their 4-dimensional
//! embedding before block extraction.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::observable::Observable;
use crate::pauli::{pauli_decompose, PauliExpansion};
use crate::qmo::{marginalize, OutcomeTuple, QmoFamily};
use crate::tol;

fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) || eta.is_nan() {
        return Err(Error::EtaOutOfRange { value: eta });
    }
    Ok(())
}

/// Rescale every element's Pauli coefficients by eta^weight.
///
/// At eta = 1 the input family is returned unchanged. Unsharpness
/// composes multiplicatively, so the result carries `fam.eta() * eta`;
/// feeding a sharp (eta = 1) family yields the family at `eta`.
pub fn fuzzify(fam: &QmoFamily, eta: f64) -> Result<QmoFamily> {
    check_eta(eta)?;
    if !fam.space_dim().is_power_of_two() || fam.space_dim() < 2 {
        return Err(Error::DimNotPowerOfTwo {
            dim: fam.space_dim(),
        });
    }
    if eta == 1.0 {
        return Ok(fam.clone());
    }
    let elements = fam
        .elements()
        .iter()
        .map(|(o, m)| {
            let scaled = pauli_decompose(m)?.scaled_by_weight(eta).reconstruct();
            Ok((o.clone(), scaled))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QmoFamily::from_parts(
        fam.observables().to_vec(),
        fam.eta() * eta,
        elements,
        fam.space_dim(),
    ))
}

/// Cached Pauli expansions of a family for repeated eta sweeps.
///
/// Decomposes every element once; [`Fuzzifier::family_at`] then only
/// rescales and rematerializes, which keeps threshold bisection cheap.
#[derive(Clone, Debug)]
pub struct Fuzzifier {
    observables: Vec<Observable>,
    base_eta: f64,
    space_dim: usize,
    expansions: Vec<(OutcomeTuple, PauliExpansion)>,
}

impl Fuzzifier {
    pub fn new(fam: &QmoFamily) -> Result<Self> {
        if !fam.space_dim().is_power_of_two() || fam.space_dim() < 2 {
            return Err(Error::DimNotPowerOfTwo {
                dim: fam.space_dim(),
            });
        }
        let expansions = fam
            .elements()
            .iter()
            .map(|(o, m)| Ok((o.clone(), pauli_decompose(m)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Fuzzifier {
            observables: fam.observables().to_vec(),
            base_eta: fam.eta(),
            space_dim: fam.space_dim(),
            expansions,
        })
    }

    pub fn family_at(&self, eta: f64) -> Result<QmoFamily> {
        check_eta(eta)?;
        let elements = self
            .expansions
            .iter()
            .map(|(o, e)| (o.clone(), e.scaled_by_weight(eta).reconstruct()))
            .collect();
        Ok(QmoFamily::from_parts(
            self.observables.clone(),
            self.base_eta * eta,
            elements,
            self.space_dim,
        ))
    }
}

/// Marginal POVM of one observable, extracted from a family.
#[derive(Clone, Debug)]
pub struct MarginalPovm {
    observable_index: usize,
    eta: f64,
    elements: Vec<(f64, CMatrix)>,
}

impl MarginalPovm {
    pub fn observable_index(&self) -> usize {
        self.observable_index
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn elements(&self) -> &[(f64, CMatrix)] {
        &self.elements
    }

    pub fn element(&self, outcome: f64) -> Option<&CMatrix> {
        self.elements
            .iter()
            .find(|(o, _)| *o == outcome)
            .map(|(_, m)| m)
    }

    /// Smallest eigenvalue over all elements.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let mut min = f64::INFINITY;
        for (_, m) in &self.elements {
            min = min.min(crate::eig::min_eigenvalue(m)?);
        }
        Ok(min)
    }
}

/// Marginalize onto one observable and validate positivity.
///
/// Every element must have min eigenvalue >= -[`tol::POSITIVITY_SLACK`];
/// a family whose marginals fail this is not a fuzzy measurement of the
/// observable at all.
pub fn extract_marginal_povm(fam: &QmoFamily, index: usize) -> Result<MarginalPovm> {
    let marg = marginalize(fam, &[index])?;
    let mut elements = Vec::with_capacity(marg.elements().len());
    for (o, m) in marg.elements() {
        let min_eig = crate::eig::min_eigenvalue(m)?;
        if min_eig < -tol::POSITIVITY_SLACK {
            return Err(Error::MarginalNotPositive {
                outcome: o.values().to_vec(),
                min_eig,
            });
        }
        elements.push((o.values()[0], m.clone()));
    }
    Ok(MarginalPovm {
        observable_index: index,
        eta: fam.eta(),
        elements,
    })
}

/// Wire form mirrors the family JSON plus `observable_index`.
impl Serialize for MarginalPovm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct ElementRepr<'a> {
            outcome: [f64; 1],
            matrix: &'a CMatrix,
        }
        let outcomes: Vec<Vec<f64>> = vec![self.elements.iter().map(|(o, _)| *o).collect()];
        let elements: Vec<ElementRepr> = self
            .elements
            .iter()
            .map(|(o, m)| ElementRepr {
                outcome: [*o],
                matrix: m,
            })
            .collect();
        let mut s = serializer.serialize_struct("MarginalPovm", 4)?;
        s.serialize_field("eta", &self.eta)?;
        s.serialize_field("observable_index", &self.observable_index)?;
        s.serialize_field("outcomes", &outcomes)?;
        s.serialize_field("elements", &elements)?;
        s.end()
    }
}
