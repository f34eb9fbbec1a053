//! Dense complex linear algebra for up to four qubits: Pauli matrices,
//! Kronecker products, observables from direction vectors, pure and mixed
//! states, expectation values, and qubit permutations.
//!
//! Qubit 1 is the leftmost (most significant) tensor factor throughout: the
//! basis index of |i1 i2 i3 i4> is the 4-bit integer i1 i2 i3 i4.

mod eigen;
mod matrix;

pub use eigen::{hermitian_eigenvalues, spectral_radius, sym3_eigen};
pub use matrix::{identity2, kron, pauli, pauli_x, pauli_y, pauli_z, ComplexMatrix};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Real 3-vector of unit length; a measurement direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector3<T> {
    x: T,
    y: T,
    z: T,
}

impl<T: Scalar> UnitVector3<T> {
    /// Accepts a vector whose norm deviates from 1 by at most the input
    /// tolerance, then stores it renormalized.
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if (norm - T::one()).abs() > T::INPUT_EPS {
            return Err(Error::NotUnit {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(x: T, y: T, z: T) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if norm < T::lit(1e-30) {
            return Err(Error::NotUnit { norm: 0.0 });
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    pub fn x_axis() -> Self {
        Self {
            x: T::one(),
            y: T::zero(),
            z: T::zero(),
        }
    }

    pub fn y_axis() -> Self {
        Self {
            x: T::zero(),
            y: T::one(),
            z: T::zero(),
        }
    }

    pub fn z_axis() -> Self {
        Self {
            x: T::zero(),
            y: T::zero(),
            z: T::one(),
        }
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn y(&self) -> T {
        self.y
    }

    pub fn z(&self) -> T {
        self.z
    }

    pub fn components(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }
}

/// Pure state on `qubits` qubits (1..=4), 2^qubits complex amplitudes.
/// Qubit 1 is the most significant bit of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T> {
    qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> PureState<T> {
    /// Accepts amplitudes normalized within the input tolerance and stores
    /// them renormalized.
    pub fn new(qubits: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        if !(1..=4).contains(&qubits) {
            return Err(Error::BadDimension { got: 1 << qubits });
        }
        if amps.len() != 1 << qubits {
            return Err(Error::DimensionMismatch {
                left: amps.len(),
                right: 1 << qubits,
            });
        }
        let norm_sq: T = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - T::one()).abs() > T::INPUT_EPS {
            return Err(Error::NotNormalized {
                norm_sq: norm_sq.to_f64().unwrap_or(f64::NAN),
            });
        }
        let inv = T::one() / norm_sq.sqrt();
        Ok(Self {
            qubits,
            amps: amps.into_iter().map(|a| a.scale(inv)).collect(),
        })
    }

    /// Computational basis state |index> on `qubits` qubits.
    pub fn basis(qubits: usize, index: usize) -> Self {
        assert!((1..=4).contains(&qubits) && index < (1 << qubits));
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << qubits];
        amps[index] = Complex::new(T::one(), T::zero());
        Self { qubits, amps }
    }

    /// Construct from amplitudes known to be normalized.
    pub(crate) fn from_normalized(qubits: usize, amps: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(amps.len(), 1 << qubits);
        Self { qubits, amps }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm_sq(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.qubits != other.qubits {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for (a, b) in self.amps.iter().zip(&other.amps) {
            acc = acc + a.conj() * b;
        }
        Ok(acc)
    }

    /// Tensor product self (higher qubits) with other (lower qubits).
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let qubits = self.qubits + other.qubits;
        if qubits > 4 {
            return Err(Error::KronOverflow(1 << qubits));
        }
        let mut amps = Vec::with_capacity(1 << qubits);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Self { qubits, amps })
    }
}

/// Density matrix on 1..=4 qubits: Hermitian, unit trace, positive
/// semidefinite within tolerances.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    mat: ComplexMatrix<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validates Hermiticity, trace, and an eigenvalue floor.
    pub fn from_matrix(mat: ComplexMatrix<T>) -> Result<Self> {
        let dev = mat.hermiticity_deviation();
        if dev > T::DENSITY_EPS {
            return Err(Error::NotDensity {
                reason: format!("hermiticity deviation {dev}"),
            });
        }
        let tr = mat.trace();
        if (tr.re - T::one()).abs() > T::DENSITY_EPS || tr.im.abs() > T::DENSITY_EPS {
            return Err(Error::NotDensity {
                reason: format!("trace {} + {}i", tr.re, tr.im),
            });
        }
        let min_eig = hermitian_eigenvalues(&mat)
            .into_iter()
            .fold(T::infinity(), T::min);
        if min_eig < -T::PSD_FLOOR {
            return Err(Error::NotDensity {
                reason: format!("negative eigenvalue {min_eig}"),
            });
        }
        Ok(Self { mat })
    }

    /// Skips validation; for outputs that are density matrices by
    /// construction (outer products, convex mixtures, unitary conjugation).
    pub(crate) fn from_matrix_unchecked(mat: ComplexMatrix<T>) -> Self {
        Self { mat }
    }

    /// Maximally mixed state I/2^qubits.
    pub fn maximally_mixed(qubits: usize) -> Self {
        let dim = 1 << qubits;
        let m = ComplexMatrix::identity(dim).expect("dim <= 16");
        Self {
            mat: m.scale_real(T::one() / T::from_usize(dim).expect("small")),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn qubits(&self) -> usize {
        self.mat.dim().trailing_zeros() as usize
    }

    /// tr(rho^2).
    pub fn purity(&self) -> T {
        self.mat.trace_mul(&self.mat).expect("same dim").re
    }
}

/// Hermitian dichotomic observable v . sigma with eigenvalues +1 and -1.
pub fn observable_from_direction<T: Scalar>(v: &UnitVector3<T>) -> ComplexMatrix<T> {
    let mut m = pauli_x::<T>().scale_real(v.x());
    m = m.add(&pauli_y::<T>().scale_real(v.y())).expect("2x2");
    m = m.add(&pauli_z::<T>().scale_real(v.z())).expect("2x2");
    m
}

/// v . sigma for an arbitrary (not necessarily unit) real 3-vector.
pub fn observable_from_components<T: Scalar>(v: [T; 3]) -> ComplexMatrix<T> {
    let mut m = pauli_x::<T>().scale_real(v[0]);
    m = m.add(&pauli_y::<T>().scale_real(v[1])).expect("2x2");
    m = m.add(&pauli_z::<T>().scale_real(v[2])).expect("2x2");
    m
}

/// I (x) ... (x) M (x) ... (x) I with the 2x2 matrix M at position `slot`
/// (1-based, qubit 1 leftmost); output is 16x16.
pub fn embed_on_qubit<T: Scalar>(m: &ComplexMatrix<T>, slot: usize) -> Result<ComplexMatrix<T>> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: 2,
        });
    }
    if !(1..=4).contains(&slot) {
        return Err(Error::BadSlot(slot));
    }
    let mut out = m.clone();
    for q in 1..=4 {
        if q < slot {
            out = kron(&identity2::<T>(), &out)?;
        } else if q > slot {
            out = kron(&out, &identity2::<T>())?;
        }
    }
    Ok(out)
}

/// tr(rho M) for Hermitian M; the imaginary residue must be below tolerance.
pub fn expectation<T: Scalar>(rho: &DensityMatrix<T>, m: &ComplexMatrix<T>) -> Result<T> {
    if rho.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: m.dim(),
        });
    }
    let dev = m.hermiticity_deviation();
    if dev > T::lit(1e-12).max(T::epsilon() * T::lit(64.0)) {
        return Err(Error::NotHermitian {
            dev: dev.to_f64().unwrap_or(f64::NAN),
        });
    }
    let t = rho.matrix().trace_mul(m)?;
    if t.im.abs() > T::IMAG_EPS {
        return Err(Error::ImaginaryResidue {
            residue: t.im.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(t.re)
}

/// Rank-1 projector |psi><psi|.
pub fn pure_to_density<T: Scalar>(psi: &PureState<T>) -> DensityMatrix<T> {
    let dim = psi.dim();
    let mut m = ComplexMatrix::zeros(dim).expect("dim <= 16");
    for (i, a) in psi.amplitudes().iter().enumerate() {
        for (j, b) in psi.amplitudes().iter().enumerate() {
            m.set(i, j, a * b.conj());
        }
    }
    DensityMatrix::from_matrix_unchecked(m)
}

/// Convex combination of pure states. Weights must be positive and sum to 1
/// within tolerance.
pub fn mix<T: Scalar>(terms: &[(T, PureState<T>)]) -> Result<DensityMatrix<T>> {
    if terms.is_empty() {
        return Err(Error::BadWeights {
            reason: "empty mixture".into(),
        });
    }
    let dim = terms[0].1.dim();
    let mut sum = T::zero();
    for (p, psi) in terms {
        if *p <= T::zero() {
            return Err(Error::BadWeights {
                reason: format!("non-positive weight {p}"),
            });
        }
        if psi.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: psi.dim(),
                right: dim,
            });
        }
        sum += *p;
    }
    if (sum - T::one()).abs() > T::INPUT_EPS {
        return Err(Error::BadWeights {
            reason: format!("weights sum to {sum}"),
        });
    }
    let mut m = ComplexMatrix::zeros(dim)?;
    for (p, psi) in terms {
        let term = pure_to_density(psi);
        m = m.add(&term.matrix().scale_real(*p / sum))?;
    }
    Ok(DensityMatrix::from_matrix_unchecked(m))
}

/// Relabels qubits of a 4-qubit state: the amplitude of
/// |i_{perm[0]} i_{perm[1]} i_{perm[2]} i_{perm[3]}> in the output equals the
/// amplitude of |i1 i2 i3 i4> in the input (1-based entries).
pub fn permute_qubits<T: Scalar>(psi: &PureState<T>, perm: [usize; 4]) -> Result<PureState<T>> {
    if psi.qubits() != 4 {
        return Err(Error::DimensionMismatch {
            left: psi.dim(),
            right: 16,
        });
    }
    let mut seen = [false; 4];
    for &p in &perm {
        if !(1..=4).contains(&p) || seen[p - 1] {
            return Err(Error::BadPermutation(perm));
        }
        seen[p - 1] = true;
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut amps = vec![zero; 16];
    for idx in 0..16usize {
        // bits of the input index, qubit 1 = most significant
        let bit = |q: usize| (idx >> (4 - q)) & 1;
        let mut out_idx = 0usize;
        for (pos, &p) in perm.iter().enumerate() {
            out_idx |= bit(p) << (3 - pos);
        }
        amps[out_idx] = psi.amplitudes()[idx];
    }
    Ok(PureState::from_normalized(4, amps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn observable_from_z_is_pauli_z() {
        let m = observable_from_direction(&UnitVector3::<f64>::z_axis());
        assert_eq!(m.get(0, 0), c(1.0, 0.0));
        assert_eq!(m.get(1, 1), c(-1.0, 0.0));
        assert_eq!(m.get(0, 1), c(0.0, 0.0));
    }

    #[test]
    fn observable_from_x_is_pauli_x() {
        let m = observable_from_direction(&UnitVector3::<f64>::x_axis());
        assert_eq!(m.get(0, 1), c(1.0, 0.0));
        assert_eq!(m.get(1, 0), c(1.0, 0.0));
    }

    #[test]
    fn observable_diagonal_direction_has_unit_eigenvalues() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = UnitVector3::new(s, 0.0, s).unwrap();
        let vals = hermitian_eigenvalues(&observable_from_direction(&v));
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_unit_direction() {
        assert!(UnitVector3::new(1.0, 0.0, 1e-4).is_err());
        // within 1e-9 is accepted and renormalized
        let v = UnitVector3::new(1.0f64 + 5e-10, 0.0, 0.0).unwrap();
        assert!((v.components()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kron_identities() {
        let i2 = identity2::<f64>();
        let i4 = kron(&i2, &i2).unwrap();
        assert_eq!(i4, ComplexMatrix::identity(4).unwrap());

        let zz = kron(&pauli_z::<f64>(), &pauli_z()).unwrap();
        for (i, want) in [1.0, -1.0, -1.0, 1.0].into_iter().enumerate() {
            assert_eq!(zz.get(i, i), c(want, 0.0));
        }
    }

    #[test]
    fn kron_matches_index_formula() {
        // independent elementwise oracle: (A x B)[bi*2+ri][bj*2+rj] = A[bi][bj] B[ri][rj]
        let a = pauli_x::<f64>();
        let b = pauli_y::<f64>();
        let k = kron(&a, &b).unwrap();
        for bi in 0..2 {
            for bj in 0..2 {
                for ri in 0..2 {
                    for rj in 0..2 {
                        let want = a.get(bi, bj) * b.get(ri, rj);
                        assert_eq!(k.get(bi * 2 + ri, bj * 2 + rj), want);
                    }
                }
            }
        }
    }

    #[test]
    fn kron_overflow_rejected() {
        let i16 = ComplexMatrix::<f64>::identity(16).unwrap();
        assert!(matches!(
            kron(&i16, &identity2()),
            Err(Error::KronOverflow(32))
        ));
    }

    #[test]
    fn embed_examples() {
        let z1 = embed_on_qubit(&pauli_z::<f64>(), 1).unwrap();
        let mut want = pauli_z::<f64>();
        for _ in 0..3 {
            want = kron(&want, &identity2()).unwrap();
        }
        assert_eq!(z1, want);

        let e = embed_on_qubit(&identity2::<f64>(), 3).unwrap();
        assert_eq!(e, ComplexMatrix::identity(16).unwrap());

        let x3 = embed_on_qubit(&pauli_x::<f64>(), 3).unwrap();
        let i4 = ComplexMatrix::<f64>::identity(4).unwrap();
        let alt = kron(&i4, &kron(&pauli_x(), &identity2()).unwrap()).unwrap();
        assert_eq!(x3, alt);
    }

    #[test]
    fn expectation_examples() {
        let rho = pure_to_density(&PureState::<f64>::basis(4, 0));
        let zzzz = embed_on_qubit(&pauli_z(), 1)
            .unwrap()
            .mul(&embed_on_qubit(&pauli_z(), 2).unwrap())
            .unwrap()
            .mul(&embed_on_qubit(&pauli_z(), 3).unwrap())
            .unwrap()
            .mul(&embed_on_qubit(&pauli_z(), 4).unwrap())
            .unwrap();
        assert!((expectation(&rho, &zzzz).unwrap() - 1.0).abs() < 1e-14);

        let mixed = DensityMatrix::<f64>::maximally_mixed(4);
        assert!(expectation(&mixed, &zzzz).unwrap().abs() < 1e-14);
    }

    #[test]
    fn expectation_rejects_non_hermitian() {
        let rho = DensityMatrix::<f64>::maximally_mixed(1);
        let mut m = ComplexMatrix::zeros(2).unwrap();
        m.set(0, 1, c(1.0, 0.0)); // not Hermitian
        assert!(matches!(
            expectation(&rho, &m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn pure_to_density_examples() {
        let rho = pure_to_density(&PureState::<f64>::basis(4, 0));
        assert_eq!(rho.matrix().get(0, 0), c(1.0, 0.0));
        assert_eq!(rho.matrix().get(5, 5), c(0.0, 0.0));

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![c(0.0, 0.0); 16];
        amps[0] = c(s, 0.0);
        amps[15] = c(s, 0.0);
        let ghz = PureState::new(4, amps).unwrap();
        let rho = pure_to_density(&ghz);
        for (i, j) in [(0, 0), (0, 15), (15, 0), (15, 15)] {
            assert!((rho.matrix().get(i, j) - c(0.5, 0.0)).norm() < 1e-14);
        }
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mix_examples() {
        let psi0 = PureState::<f64>::basis(4, 0);
        let psi15 = PureState::<f64>::basis(4, 15);
        let rho = mix(&[(0.5, psi0.clone()), (0.5, psi15)]).unwrap();
        assert_eq!(rho.matrix().get(0, 0), c(0.5, 0.0));
        assert_eq!(rho.matrix().get(15, 15), c(0.5, 0.0));

        let single = mix(&[(1.0, psi0.clone())]).unwrap();
        assert_eq!(single.matrix(), pure_to_density(&psi0).matrix());

        let uniform: Vec<_> = (0..16)
            .map(|i| (1.0 / 16.0, PureState::<f64>::basis(4, i)))
            .collect();
        let rho = mix(&uniform).unwrap();
        assert!(
            rho.matrix()
                .max_abs_entry_diff(DensityMatrix::maximally_mixed(4).matrix())
                < 1e-14
        );

        assert!(mix::<f64>(&[]).is_err());
        assert!(mix(&[(0.5, psi0.clone())]).is_err());
        assert!(mix(&[(-0.1, psi0.clone()), (1.1, PureState::basis(4, 1))]).is_err());
    }

    #[test]
    fn permute_examples() {
        let psi = PureState::<f64>::basis(4, 0b0100);
        let ident = permute_qubits(&psi, [1, 2, 3, 4]).unwrap();
        assert_eq!(ident, psi);

        let swapped = permute_qubits(&psi, [2, 1, 3, 4]).unwrap();
        assert_eq!(swapped, PureState::basis(4, 0b1000));

        // 4-cycle applied four times is the identity
        let mut cur = PureState::<f64>::basis(4, 0b0110);
        for _ in 0..4 {
            cur = permute_qubits(&cur, [2, 3, 4, 1]).unwrap();
        }
        assert_eq!(cur, PureState::basis(4, 0b0110));

        assert!(permute_qubits(&psi, [1, 1, 3, 4]).is_err());
    }

    #[test]
    fn density_validation() {
        let rho = DensityMatrix::<f64>::from_matrix(
            pure_to_density(&PureState::<f64>::basis(4, 3)).matrix().clone(),
        );
        assert!(rho.is_ok());

        let mut bad = ComplexMatrix::<f64>::identity(2).unwrap();
        bad.set(0, 0, c(1.5, 0.0));
        bad.set(1, 1, c(-0.5, 0.0));
        assert!(DensityMatrix::from_matrix(bad).is_err()); // negative eigenvalue
    }
}
