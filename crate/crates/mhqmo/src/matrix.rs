//! Dense complex matrices for small-dimensional operator algebra.
//!
//! [`CMatrix`] is the carrier for every operator in this crate:
//! observables, spectral projectors, density matrices and
//! quasi-measurement elements. Dimensions stay in the range 2..=16, so
//! storage is dense, row-major and unconditionally owned.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tol;

/// Dense square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build a matrix entry by entry.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        m
    }

    /// Build from a row-major slice of real entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must equal dim^2");
        CMatrix {
            dim,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    /// Build from a row-major slice of complex entries.
    pub fn from_complex(dim: usize, entries: &[Complex64]) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must equal dim^2");
        CMatrix {
            dim,
            data: entries.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Tr(self * other) without materializing the product.
    pub fn trace_product(&self, other: &CMatrix) -> Complex64 {
        assert_eq!(self.dim, other.dim, "trace_product dimension mismatch");
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += self.get(i, j) * other.get(j, i);
            }
        }
        acc
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Matrix product, naive triple loop.
    pub fn matmul(&self, rhs: &CMatrix) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    /// Max |self[i][j] - conj(self[j][i])| over all entries.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian_within(&self, limit: f64) -> bool {
        self.hermiticity_error() <= limit
    }

    /// Error unless the matrix is Hermitian within [`tol::HERMITICITY`].
    pub fn require_hermitian(&self) -> Result<()> {
        let deviation = self.hermiticity_error();
        if deviation > tol::HERMITICITY {
            return Err(Error::NotHermitian {
                deviation,
                limit: tol::HERMITICITY,
            });
        }
        Ok(())
    }

    /// Max |a[i][j] - b[i][j]| over all entries.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max |entry|.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max |(AB - BA)[i][j]| over all entries.
    pub fn commutator_norm(&self, other: &CMatrix) -> f64 {
        let ab = self.matmul(other);
        let ba = other.matmul(self);
        ab.max_abs_diff(&ba)
    }
}

/// Kronecker (tensor) product; output dimension is `a.dim() * b.dim()`.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    let mut out = CMatrix::zeros(n);
    for i1 in 0..da {
        for j1 in 0..da {
            let av = a.get(i1, j1);
            for i2 in 0..db {
                for j2 in 0..db {
                    out.set(i1 * db + i2, j1 * db + j2, av * b.get(i2, j2));
                }
            }
        }
    }
    out
}

/// Tensor product of a sequence of factors, left-to-right.
pub fn tensor_all(factors: &[&CMatrix]) -> CMatrix {
    assert!(!factors.is_empty(), "tensor_all needs at least one factor");
    let mut out = factors[0].clone();
    for f in &factors[1..] {
        out = tensor(&out, f);
    }
    out
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let v = self.get(i, j);
                write!(f, "{:+.4}{:+.4}i  ", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Wire form: `{"dim": n, "entries": [[re, im], ...]}` with `entries`
/// row-major of length `dim^2`.
#[derive(Serialize, Deserialize)]
struct CMatrixRepr {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = CMatrixRepr {
            dim: self.dim,
            entries: self.data.iter().map(|c| [c.re, c.im]).collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CMatrixRepr::deserialize(deserializer)?;
        CMatrix::try_from_repr(repr).map_err(serde::de::Error::custom)
    }
}

impl CMatrix {
    fn try_from_repr(repr: CMatrixRepr) -> Result<Self> {
        if repr.dim < 1 {
            return Err(Error::InvalidMatrix {
                reason: "dim must be at least 1".into(),
            });
        }
        if repr.entries.len() != repr.dim * repr.dim {
            return Err(Error::InvalidMatrix {
                reason: format!(
                    "expected {} entries for dim {}, got {}",
                    repr.dim * repr.dim,
                    repr.dim,
                    repr.entries.len()
                ),
            });
        }
        Ok(CMatrix {
            dim: repr.dim,
            data: repr
                .entries
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        })
    }
}
