//! Pauli correlation tensor of a four-qubit state.
//!
//! Every component Q_{k1 k2 k3 k4} = tr(rho sigma_{k1} (x) sigma_{k2} (x)
//! sigma_{k3} (x) sigma_{k4}) with sigma_0 = I. The 255 non-identity
//! components plus the identity reconstruct rho exactly. Components are
//! grouped into the named vectors alpha, beta, gamma, epsilon (singles),
//! T (123), S (124), V (134), U (234) (triples) and Q (quad); 27- and
//! 81-component vectors are flattened lexicographically, first index slowest.

use num_complex::Complex;

use crate::algebra::{kron, pauli, ComplexMatrix, DensityMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// All 256 Pauli-word expectations of a 4-qubit state, index
/// `k1*64 + k2*16 + k3*4 + k4`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensor<T> {
    components: Vec<T>,
}

fn word_index(k: [usize; 4]) -> usize {
    k[0] * 64 + k[1] * 16 + k[2] * 4 + k[3]
}

/// 16x16 matrix for the Pauli word sigma_{k1} (x) ... (x) sigma_{k4}.
pub fn pauli_word<T: Scalar>(k: [usize; 4]) -> ComplexMatrix<T> {
    let mut m = pauli::<T>(k[0]);
    for &kj in &k[1..] {
        m = kron(&m, &pauli(kj)).expect("dim 16");
    }
    m
}

/// Extracts the full correlation tensor of a 4-qubit density matrix.
pub fn correlation_tensor<T: Scalar>(rho: &DensityMatrix<T>) -> Result<CorrelationTensor<T>> {
    if rho.dim() != 16 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 16,
        });
    }
    let mut components = vec![T::zero(); 256];
    for k1 in 0..4 {
        for k2 in 0..4 {
            for k3 in 0..4 {
                for k4 in 0..4 {
                    let word = pauli_word::<T>([k1, k2, k3, k4]);
                    let t = rho.matrix().trace_mul(&word).expect("dim 16");
                    components[word_index([k1, k2, k3, k4])] = t.re;
                }
            }
        }
    }
    Ok(CorrelationTensor { components })
}

impl<T: Scalar> CorrelationTensor<T> {
    /// Single component Q_{k1 k2 k3 k4}, indices in 0..=3 (0 = identity).
    pub fn component(&self, k: [usize; 4]) -> T {
        self.components[word_index(k)]
    }

    /// Single-qubit vector for `qubit` in 1..=4 (alpha, beta, gamma, epsilon).
    pub fn single(&self, qubit: usize) -> [T; 3] {
        let mut out = [T::zero(); 3];
        for (x, out_x) in out.iter_mut().enumerate() {
            let mut k = [0usize; 4];
            k[qubit - 1] = x + 1;
            *out_x = self.component(k);
        }
        out
    }

    pub fn alpha(&self) -> [T; 3] {
        self.single(1)
    }

    pub fn beta(&self) -> [T; 3] {
        self.single(2)
    }

    pub fn gamma(&self) -> [T; 3] {
        self.single(3)
    }

    pub fn epsilon(&self) -> [T; 3] {
        self.single(4)
    }

    /// 3x3 correlation matrix between two distinct qubits.
    pub fn pair(&self, q1: usize, q2: usize) -> [[T; 3]; 3] {
        let mut out = [[T::zero(); 3]; 3];
        for x in 0..3 {
            for y in 0..3 {
                let mut k = [0usize; 4];
                k[q1 - 1] = x + 1;
                k[q2 - 1] = y + 1;
                out[x][y] = self.component(k);
            }
        }
        out
    }

    /// 27-vector of a qubit triple, lexicographic with the first listed
    /// qubit's index slowest.
    pub fn triple(&self, qubits: [usize; 3]) -> [T; 27] {
        let mut out = [T::zero(); 27];
        let mut n = 0;
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let mut k = [0usize; 4];
                    k[qubits[0] - 1] = x + 1;
                    k[qubits[1] - 1] = y + 1;
                    k[qubits[2] - 1] = z + 1;
                    out[n] = self.component(k);
                    n += 1;
                }
            }
        }
        out
    }

    /// T vector: qubits (1,2,3).
    pub fn t_vec(&self) -> [T; 27] {
        self.triple([1, 2, 3])
    }

    /// S vector: qubits (1,2,4).
    pub fn s_vec(&self) -> [T; 27] {
        self.triple([1, 2, 4])
    }

    /// V vector: qubits (1,3,4).
    pub fn v_vec(&self) -> [T; 27] {
        self.triple([1, 3, 4])
    }

    /// U vector: qubits (2,3,4).
    pub fn u_vec(&self) -> [T; 27] {
        self.triple([2, 3, 4])
    }

    /// 81-component rank-4 vector, lexicographic, first index slowest.
    pub fn quad(&self) -> [T; 81] {
        let mut out = [T::zero(); 81];
        let mut n = 0;
        for k1 in 1..=3 {
            for k2 in 1..=3 {
                for k3 in 1..=3 {
                    for k4 in 1..=3 {
                        out[n] = self.component([k1, k2, k3, k4]);
                        n += 1;
                    }
                }
            }
        }
        out
    }

    /// Squared Euclidean norms of the nine named vectors, in the order
    /// alpha, beta, gamma, epsilon, S, T, U, V, Q.
    pub fn named_norms_sq(&self) -> [T; 9] {
        let sq = |xs: &[T]| xs.iter().map(|x| *x * *x).sum::<T>();
        [
            sq(&self.alpha()),
            sq(&self.beta()),
            sq(&self.gamma()),
            sq(&self.epsilon()),
            sq(&self.s_vec()),
            sq(&self.t_vec()),
            sq(&self.u_vec()),
            sq(&self.v_vec()),
            sq(&self.quad()),
        ]
    }

    /// Rebuilds the density matrix from all 256 components (Eq.-13-style
    /// expansion: rho = sum Q_k sigma_k / 16).
    pub fn reconstruct(&self) -> DensityMatrix<T> {
        let mut m = ComplexMatrix::<T>::zeros(16).expect("dim 16");
        for k1 in 0..4 {
            for k2 in 0..4 {
                for k3 in 0..4 {
                    for k4 in 0..4 {
                        let coef = self.component([k1, k2, k3, k4]);
                        if coef.is_zero() {
                            continue;
                        }
                        let word = pauli_word::<T>([k1, k2, k3, k4]);
                        m = m.add(&word.scale_real(coef)).expect("dim 16");
                    }
                }
            }
        }
        DensityMatrix::from_matrix_unchecked(m.scale_real(T::one() / T::lit(16.0)))
    }
}

/// Sum of the squared norms of the four singles, four triples, and the quad
/// vector (pair components excluded).
pub fn lemma_sum<T: Scalar>(t: &CorrelationTensor<T>) -> T {
    t.named_norms_sq().into_iter().sum()
}

/// Sum of squared norms of all 255 non-identity components; equals
/// 16 tr(rho^2) - 1.
pub fn total_correlation_norm<T: Scalar>(t: &CorrelationTensor<T>) -> T {
    let all: T = t.components.iter().map(|x| *x * *x).sum();
    all - t.component([0, 0, 0, 0]) * t.component([0, 0, 0, 0])
}

/// Conjugates rho by a product of single-qubit unitaries.
pub fn apply_local_unitaries<T: Scalar>(
    rho: &DensityMatrix<T>,
    u: &[ComplexMatrix<T>; 4],
) -> Result<DensityMatrix<T>> {
    if rho.dim() != 16 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 16,
        });
    }
    let tol = T::DENSITY_EPS;
    for uj in u {
        if uj.dim() != 2 {
            return Err(Error::DimensionMismatch {
                left: uj.dim(),
                right: 2,
            });
        }
        let prod = uj.mul(&uj.adjoint()).expect("2x2");
        let dev = prod.max_abs_entry_diff(&crate::algebra::identity2());
        if dev > tol {
            return Err(Error::NotUnitary {
                dev: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let mut big = u[0].clone();
    for uj in &u[1..] {
        big = kron(&big, uj)?;
    }
    let out = big.mul(rho.matrix())?.mul(&big.adjoint())?;
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// Identity 2x2 scaled rotation helper: U = exp(-i theta/2 n.sigma) built
/// directly from its closed form.
pub fn su2<T: Scalar>(theta: T, axis: [T; 3]) -> ComplexMatrix<T> {
    let half = theta * T::lit(0.5);
    let (s, c) = (half.sin(), half.cos());
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let n = if norm.is_zero() {
        [T::zero(), T::zero(), T::one()]
    } else {
        [axis[0] / norm, axis[1] / norm, axis[2] / norm]
    };
    ComplexMatrix::from_entries(
        2,
        vec![
            Complex::new(c, -s * n[2]),
            Complex::new(-s * n[1], -s * n[0]),
            Complex::new(s * n[1], -s * n[0]),
            Complex::new(c, s * n[2]),
        ],
    )
    .expect("dim 2")
}
