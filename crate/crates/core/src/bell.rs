//! Two-setting Bell operators for four qubits.
//!
//! Each observer j measures one of two dichotomic observables
//! A_j = a_j . sigma, B_j = b_j . sigma. The three-qubit operator B3 is the
//! Mermin combination (-AAA + ABB + BAB + BBA)/2 and the four-qubit operator
//! for index i acts with B3 on the three qubits other than i:
//!
//!   D4(i) = B3 (x) (A_i + B_i)/2  +  I (x) (A_i - B_i)/2
//!
//! with every factor embedded on its own qubit slot, so expectation values do
//! not depend on notation order.

use crate::algebra::{
    identity2, kron, observable_from_components, ComplexMatrix, DensityMatrix, UnitVector3,
};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The eight measurement directions: a_j, b_j for qubits j = 1..=4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SettingSet<T> {
    pub a: [UnitVector3<T>; 4],
    pub b: [UnitVector3<T>; 4],
}

impl<T: Scalar> SettingSet<T> {
    pub fn new(a: [UnitVector3<T>; 4], b: [UnitVector3<T>; 4]) -> Self {
        Self { a, b }
    }

    /// All-identical settings a_j = b_j = v.
    pub fn uniform(v: UnitVector3<T>) -> Self {
        Self {
            a: [v; 4],
            b: [v; 4],
        }
    }

    /// Raw component view (used by the optimizer's unnormalized evaluations).
    pub fn directions(&self) -> Directions<T> {
        Directions {
            a: [
                self.a[0].components(),
                self.a[1].components(),
                self.a[2].components(),
                self.a[3].components(),
            ],
            b: [
                self.b[0].components(),
                self.b[1].components(),
                self.b[2].components(),
                self.b[3].components(),
            ],
        }
    }

    /// Settings consistent with [`crate::algebra::permute_qubits`]: position m
    /// of the output takes the vectors of qubit perm[m-1] of the input.
    pub fn permute(&self, perm: [usize; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &p in &perm {
            if !(1..=4).contains(&p) || seen[p - 1] {
                return Err(Error::BadPermutation(perm));
            }
            seen[p - 1] = true;
        }
        Ok(Self {
            a: [
                self.a[perm[0] - 1],
                self.a[perm[1] - 1],
                self.a[perm[2] - 1],
                self.a[perm[3] - 1],
            ],
            b: [
                self.b[perm[0] - 1],
                self.b[perm[1] - 1],
                self.b[perm[2] - 1],
                self.b[perm[3] - 1],
            ],
        })
    }
}

/// Arbitrary (not necessarily unit) direction components for all 8 slots.
/// This is the evaluation path the see-saw optimizer differentiates through.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Directions<T> {
    pub a: [[T; 3]; 4],
    pub b: [[T; 3]; 4],
}

impl<T: Scalar> Directions<T> {
    pub fn slot(&self, slot: Slot) -> [T; 3] {
        match slot {
            Slot::A(j) => self.a[j - 1],
            Slot::B(j) => self.b[j - 1],
        }
    }

    pub fn slot_mut(&mut self, slot: Slot) -> &mut [T; 3] {
        match slot {
            Slot::A(j) => &mut self.a[j - 1],
            Slot::B(j) => &mut self.b[j - 1],
        }
    }

    /// Converts back to validated unit-vector settings.
    pub fn to_settings(&self) -> Result<SettingSet<T>> {
        let mk = |v: [T; 3]| UnitVector3::normalized(v[0], v[1], v[2]);
        Ok(SettingSet {
            a: [mk(self.a[0])?, mk(self.a[1])?, mk(self.a[2])?, mk(self.a[3])?],
            b: [mk(self.b[0])?, mk(self.b[1])?, mk(self.b[2])?, mk(self.b[3])?],
        })
    }
}

/// One of the eight direction slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    A(usize),
    B(usize),
}

impl Slot {
    pub const ALL: [Slot; 8] = [
        Slot::A(1),
        Slot::B(1),
        Slot::A(2),
        Slot::B(2),
        Slot::A(3),
        Slot::B(3),
        Slot::A(4),
        Slot::B(4),
    ];

    pub fn qubit(&self) -> usize {
        match self {
            Slot::A(j) | Slot::B(j) => *j,
        }
    }
}

/// A four-qubit Bell operator D4(i) together with its settings.
#[derive(Debug, Clone)]
pub struct BellOperator<T> {
    pub which: usize,
    pub matrix: ComplexMatrix<T>,
    pub settings: SettingSet<T>,
}

fn check_triple(triple: [usize; 3]) -> Result<()> {
    if triple[0] >= triple[1]
        || triple[1] >= triple[2]
        || triple[0] < 1
        || triple[2] > 4
    {
        return Err(Error::BadTriple(triple));
    }
    Ok(())
}

fn mermin_b3_components<T: Scalar>(
    a: [[T; 3]; 3],
    b: [[T; 3]; 3],
) -> ComplexMatrix<T> {
    // 1/2 (-A1 A2 A3 + A1 B2 B3 + B1 A2 B3 + B1 B2 A3), slots in given order
    let obs = |v: [T; 3]| observable_from_components(v);
    let prod3 = |x: &ComplexMatrix<T>, y: &ComplexMatrix<T>, z: &ComplexMatrix<T>| {
        kron(&kron(x, y).expect("4x4"), z).expect("8x8")
    };
    let (a1, a2, a3) = (obs(a[0]), obs(a[1]), obs(a[2]));
    let (b1, b2, b3) = (obs(b[0]), obs(b[1]), obs(b[2]));
    let mut m = prod3(&a1, &a2, &a3).scale_real(-T::one());
    m = m.add(&prod3(&a1, &b2, &b3)).expect("8x8");
    m = m.add(&prod3(&b1, &a2, &b3)).expect("8x8");
    m = m.add(&prod3(&b1, &b2, &a3)).expect("8x8");
    m.scale_real(T::lit(0.5))
}

/// Three-qubit Mermin operator on the given ascending qubit triple, 8x8 with
/// tensor slots in ascending qubit order.
pub fn mermin_b3<T: Scalar>(
    settings: &SettingSet<T>,
    triple: [usize; 3],
) -> Result<ComplexMatrix<T>> {
    check_triple(triple)?;
    let a = [
        settings.a[triple[0] - 1].components(),
        settings.a[triple[1] - 1].components(),
        settings.a[triple[2] - 1].components(),
    ];
    let b = [
        settings.b[triple[0] - 1].components(),
        settings.b[triple[1] - 1].components(),
        settings.b[triple[2] - 1].components(),
    ];
    Ok(mermin_b3_components(a, b))
}

/// 16x16 D4(i) from raw direction components; no unit-norm validation.
pub fn bell_matrix_raw<T: Scalar>(dirs: &Directions<T>, i: usize) -> Result<ComplexMatrix<T>> {
    if !(1..=4).contains(&i) {
        return Err(Error::BadOperatorIndex(i));
    }
    let triple: Vec<usize> = (1..=4).filter(|&j| j != i).collect();
    let (p, q, r) = (triple[0], triple[1], triple[2]);

    let at = [dirs.a[p - 1], dirs.a[q - 1], dirs.a[r - 1]];
    let bt = [dirs.b[p - 1], dirs.b[q - 1], dirs.b[r - 1]];
    let b3 = mermin_b3_components(at, bt);

    let half = T::lit(0.5);
    let ci = observable_from_components([
        (dirs.a[i - 1][0] + dirs.b[i - 1][0]) * half,
        (dirs.a[i - 1][1] + dirs.b[i - 1][1]) * half,
        (dirs.a[i - 1][2] + dirs.b[i - 1][2]) * half,
    ]);
    let di = observable_from_components([
        (dirs.a[i - 1][0] - dirs.b[i - 1][0]) * half,
        (dirs.a[i - 1][1] - dirs.b[i - 1][1]) * half,
        (dirs.a[i - 1][2] - dirs.b[i - 1][2]) * half,
    ]);

    // local qubit order (p, q, r, i), then permute slots to global order
    let i8m = ComplexMatrix::identity(8).expect("dim 8");
    let local = kron(&b3, &ci)?.add(&kron(&i8m, &di)?)?;

    let order = [p, q, r, i];
    let mut map = [0usize; 16];
    for (g, entry) in map.iter_mut().enumerate() {
        let mut l = 0usize;
        for (k, &qubit) in order.iter().enumerate() {
            let bit = (g >> (4 - qubit)) & 1;
            l |= bit << (3 - k);
        }
        *entry = l;
    }
    let mut out = ComplexMatrix::zeros(16)?;
    for gi in 0..16 {
        for gj in 0..16 {
            out.set(gi, gj, local.get(map[gi], map[gj]));
        }
    }
    Ok(out)
}

/// Builds the Bell operator D4(i) for validated settings.
pub fn build_d4<T: Scalar>(settings: &SettingSet<T>, i: usize) -> Result<BellOperator<T>> {
    let matrix = bell_matrix_raw(&settings.directions(), i)?;
    debug_assert!(matrix.is_hermitian(T::lit(1e-12).max(T::epsilon() * T::lit(64.0))));
    Ok(BellOperator {
        which: i,
        matrix,
        settings: *settings,
    })
}

/// tr(rho D4(i)) via the full 16x16 trace.
pub fn bell_value<T: Scalar>(
    rho: &DensityMatrix<T>,
    settings: &SettingSet<T>,
    i: usize,
) -> Result<T> {
    let op = build_d4(settings, i)?;
    crate::algebra::expectation(rho, &op.matrix)
}

/// Unvalidated evaluation used by the optimizer: arbitrary direction
/// components, no Hermiticity or imaginary-residue checks.
pub fn bell_value_raw<T: Scalar>(rho: &DensityMatrix<T>, dirs: &Directions<T>, i: usize) -> T {
    let m = bell_matrix_raw(dirs, i).expect("valid operator index");
    rho.matrix().trace_mul(&m).expect("same dim").re
}

/// Sum of the four squared Bell expectations at common settings.
pub fn omega<T: Scalar>(rho: &DensityMatrix<T>, settings: &SettingSet<T>) -> Result<T> {
    let mut total = T::zero();
    for i in 1..=4 {
        let v = bell_value(rho, settings, i)?;
        total += v * v;
    }
    Ok(total)
}

/// Identity padded to 16x16 (handy in tests).
pub fn identity16<T: Scalar>() -> ComplexMatrix<T> {
    let _ = identity2::<T>();
    ComplexMatrix::identity(16).expect("dim 16")
}
