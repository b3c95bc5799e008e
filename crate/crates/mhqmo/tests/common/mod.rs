//! Shared helpers for the property suites: seeded random operators and an
//! LU determinant oracle independent of the Jacobi eigensolver.

// each test target compiles this module separately and uses a subset
#![allow(dead_code)]

use mhqmo::matrix::CMatrix;
use mhqmo::qmo::DensityMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex_matrix(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    let a = random_complex_matrix(rng, dim);
    (&a + &a.adjoint()).scale_re(0.5)
}

/// Random full-rank density matrix rho = A A^dagger / Tr[A A^dagger].
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
    let a = random_complex_matrix(rng, dim);
    let g = a.matmul(&a.adjoint());
    let tr = g.trace().re;
    DensityMatrix::new(g.scale_re(1.0 / tr)).expect("Gram matrices are valid states")
}

/// Determinant by LU elimination with partial pivoting; independent of
/// the eigensolver under test.
pub fn lu_determinant(m: &CMatrix) -> Complex64 {
    let n = m.dim();
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j)).collect())
        .collect();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .norm()
                    .partial_cmp(&a[j][col].norm())
                    .expect("finite entries")
            })
            .expect("non-empty column range");
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (k, pivot_entry) in pivot_row.iter().enumerate().skip(col) {
                a[row][k] -= factor * pivot_entry;
            }
        }
    }
    det
}
