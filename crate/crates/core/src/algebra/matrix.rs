//! Dense complex matrices for up to four qubits.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense square complex matrix, row-major, dim in {2, 4, 8, 16}.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

fn valid_dim(dim: usize) -> bool {
    matches!(dim, 2 | 4 | 8 | 16)
}

impl<T: Scalar> ComplexMatrix<T> {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Result<Self> {
        if !valid_dim(dim) {
            return Err(Error::BadDimension { got: dim });
        }
        Ok(Self {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        })
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        Ok(m)
    }

    /// Build from a row-major entry list; length must be `dim * dim`.
    pub fn from_entries(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if !valid_dim(dim) {
            return Err(Error::BadDimension { got: dim });
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: dim * dim,
            });
        }
        Ok(Self { dim, data: entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex<T>) {
        self.data[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| x + y)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| x - y)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
        })
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: T) -> Self {
        self.scale(Complex::new(factor, T::zero()))
    }

    /// Matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let n = self.dim;
        let mut out = vec![Complex::new(T::zero(), T::zero()); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = out[i * n + j] + a * other.data[k * n + j];
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = vec![Complex::new(T::zero(), T::zero()); n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.data[i * n + j].conj();
            }
        }
        Self { dim: n, data: out }
    }

    pub fn trace(&self) -> Complex<T> {
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..self.dim {
            t = t + self.data[i * self.dim + i];
        }
        t
    }

    /// tr(self * other) without forming the product.
    pub fn trace_mul(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let n = self.dim;
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..n {
            for j in 0..n {
                t = t + self.data[i * n + j] * other.data[j * n + i];
            }
        }
        Ok(t)
    }

    /// Largest |self[i][j] - conj(self[j][i])|.
    pub fn hermiticity_deviation(&self) -> T {
        let n = self.dim;
        let mut dev = T::zero();
        for i in 0..n {
            for j in i..n {
                let d = self.data[i * n + j] - self.data[j * n + i].conj();
                dev = dev.max(d.norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Frobenius norm squared.
    pub fn frobenius_sq(&self) -> T {
        self.data.iter().map(|x| x.norm_sqr()).sum()
    }

    pub fn max_abs_entry_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm())
            .fold(T::zero(), T::max)
    }
}

/// Kronecker product; output dimension must not exceed 16.
pub fn kron<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let n = a.dim * b.dim;
    if n > 16 {
        return Err(Error::KronOverflow(n));
    }
    let mut out = ComplexMatrix::zeros(n)?;
    for i in 0..a.dim {
        for j in 0..a.dim {
            let aij = a.get(i, j);
            for k in 0..b.dim {
                for l in 0..b.dim {
                    out.set(i * b.dim + k, j * b.dim + l, aij * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// 2x2 identity.
pub fn identity2<T: Scalar>() -> ComplexMatrix<T> {
    ComplexMatrix::identity(2).expect("dim 2")
}

/// Pauli sigma_1 (X).
pub fn pauli_x<T: Scalar>() -> ComplexMatrix<T> {
    let o = T::zero();
    let l = T::one();
    ComplexMatrix::from_entries(
        2,
        vec![
            Complex::new(o, o),
            Complex::new(l, o),
            Complex::new(l, o),
            Complex::new(o, o),
        ],
    )
    .expect("dim 2")
}

/// Pauli sigma_2 (Y), +i in the (2,1) entry.
pub fn pauli_y<T: Scalar>() -> ComplexMatrix<T> {
    let o = T::zero();
    let l = T::one();
    ComplexMatrix::from_entries(
        2,
        vec![
            Complex::new(o, o),
            Complex::new(o, -l),
            Complex::new(o, l),
            Complex::new(o, o),
        ],
    )
    .expect("dim 2")
}

/// Pauli sigma_3 (Z).
pub fn pauli_z<T: Scalar>() -> ComplexMatrix<T> {
    let o = T::zero();
    let l = T::one();
    ComplexMatrix::from_entries(
        2,
        vec![
            Complex::new(l, o),
            Complex::new(o, o),
            Complex::new(o, o),
            Complex::new(-l, o),
        ],
    )
    .expect("dim 2")
}

/// sigma_k for k in 0..=3 with sigma_0 = I.
pub fn pauli<T: Scalar>(k: usize) -> ComplexMatrix<T> {
    match k {
        0 => identity2(),
        1 => pauli_x(),
        2 => pauli_y(),
        3 => pauli_z(),
        _ => panic!("pauli index {k} outside 0..=3"),
    }
}
