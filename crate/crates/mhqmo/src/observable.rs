//! Observables with their spectral decomposition.
//!
//! An [`Observable`] is a Hermitian matrix together with its resolved
//! spectrum: one projector per distinct eigenvalue, with degenerate
//! eigenvalues merged. Eigenvalues double as measurement-outcome labels,
//! so merged values sitting within [`tol::LABEL_SNAP`] of an integer are
//! snapped to it; the characteristic-function machinery requires integer
//! labels and serialized outcomes stay clean.

use crate::eig::eig_hermitian;
use crate::error::Result;
use crate::matrix::CMatrix;
use crate::tol;

/// One point of a resolved spectrum.
#[derive(Clone, Debug)]
pub struct SpectralPoint {
    /// Eigenvalue, used as the outcome label.
    pub value: f64,
    /// Projector onto the eigenspace.
    pub projector: CMatrix,
    /// Dimension of the eigenspace.
    pub multiplicity: usize,
}

/// Hermitian observable with spectral decomposition.
///
/// The spectrum is ordered by descending eigenvalue.
#[derive(Clone, Debug)]
pub struct Observable {
    matrix: CMatrix,
    spectrum: Vec<SpectralPoint>,
}

/// Spectrally decompose a Hermitian matrix.
///
/// Eigenvalues within [`tol::EIG_MERGE`] of each other collapse into a
/// single spectral point whose projector spans the merged eigenspace.
pub fn spectral(m: &CMatrix) -> Result<Observable> {
    let eig = eig_hermitian(m)?;
    let n = m.dim();

    let mut spectrum = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (eig.values[end] - eig.values[start]).abs() <= tol::EIG_MERGE {
            end += 1;
        }
        let mut value = eig.values[start..end].iter().sum::<f64>() / (end - start) as f64;
        if (value - value.round()).abs() <= tol::LABEL_SNAP {
            value = value.round();
        }
        // P = sum over merged columns of v v^dagger
        let mut projector = CMatrix::zeros(n);
        for k in start..end {
            for i in 0..n {
                for j in 0..n {
                    let add = eig.vectors.get(i, k) * eig.vectors.get(j, k).conj();
                    projector.set(i, j, projector.get(i, j) + add);
                }
            }
        }
        spectrum.push(SpectralPoint {
            value,
            projector,
            multiplicity: end - start,
        });
        start = end;
    }

    Ok(Observable {
        matrix: m.clone(),
        spectrum,
    })
}

impl Observable {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &[SpectralPoint] {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Outcome labels, descending.
    pub fn outcomes(&self) -> Vec<f64> {
        self.spectrum.iter().map(|p| p.value).collect()
    }

    /// Projector for an exact outcome label.
    pub fn projector_for(&self, outcome: f64) -> Option<&CMatrix> {
        self.spectrum
            .iter()
            .find(|p| p.value == outcome)
            .map(|p| &p.projector)
    }

    /// True when every outcome label is an integer.
    pub fn has_integer_spectrum(&self) -> bool {
        self.spectrum.iter().all(|p| p.value == p.value.round())
    }

    /// exp(i t X) = sum_x e^{i x t} P(x), exact given the spectrum.
    pub fn exp_i(&self, t: f64) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim());
        for p in &self.spectrum {
            let phase = num_complex::Complex64::from_polar(1.0, p.value * t);
            out = &out + &p.projector.scale(phase);
        }
        out
    }
}
