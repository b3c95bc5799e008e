//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! For the dimensions handled here (<= 16) classical Jacobi iteration is
//! accurate and bit-reproducible: pivots are visited in a fixed (p, q)
//! order and the sweep loop stops once the off-diagonal Frobenius norm
//! falls below [`tol::JACOBI_OFF_FACTOR`] times the Frobenius norm of the
//! input, capped at [`tol::JACOBI_MAX_SWEEPS`] sweeps.

use num_complex::Complex64;

use crate::error::Result;
use crate::matrix::CMatrix;
use crate::tol;

/// Eigendecomposition of a Hermitian matrix.
///
/// `values` are sorted descending; column `k` of `vectors` is the
/// eigenvector of `values[k]`. Ties keep the sweep order.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Diagonalize a Hermitian matrix.
///
/// Fails with [`Error::NotHermitian`](crate::Error::NotHermitian) when the
/// input deviates from Hermiticity by more than [`tol::HERMITICITY`].
pub fn eig_hermitian(m: &CMatrix) -> Result<Eigen> {
    m.require_hermitian()?;
    let n = m.dim();

    // Work on the exactly Hermitian part; the allowed 1e-12 asymmetry is
    // within the residual budget.
    let mut a = m.adjoint();
    a = (&a + m).scale_re(0.5);
    let mut v = CMatrix::identity(n);

    let norm = a.frobenius_norm();
    let threshold = tol::JACOBI_OFF_FACTOR * norm;

    for _sweep in 0..tol::JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(j, j)
            .re
            .partial_cmp(&a.get(i, i).re)
            .expect("eigenvalues are finite")
    });

    let values: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let vectors = CMatrix::from_fn(n, |i, k| v.get(i, order[k]));
    Ok(Eigen { values, vectors })
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &CMatrix) -> Result<f64> {
    let eig = eig_hermitian(m)?;
    Ok(*eig.values.last().expect("dim >= 1"))
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One unitary Jacobi rotation annihilating the (p, q) entry.
///
/// With a[p][q] = r e^{i phi}, the rotation is the identity except for
/// J[p][p] = J[q][q] = c, J[p][q] = s e^{i phi}, J[q][p] = -s e^{-i phi};
/// t = s/c solves t^2 + 2 tau t - 1 = 0 with tau = (a[q][q] - a[p][p]) / (2r),
/// taking the smaller root for stability.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.dim();
    let cs = Complex64::new(c, 0.0);
    let sp = phase * s; // s e^{i phi}
    let spc = phase.conj() * s; // s e^{-i phi}

    // A <- A J  (columns p, q)
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, cs * akp - spc * akq);
        a.set(k, q, sp * akp + cs * akq);
    }
    // A <- J^dagger A  (rows p, q)
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, cs * apk - sp * aqk);
        a.set(q, k, spc * apk + cs * aqk);
    }
    // V <- V J
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, cs * vkp - spc * vkq);
        v.set(k, q, sp * vkp + cs * vkq);
    }
}
