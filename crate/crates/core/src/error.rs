use thiserror::Error;

/// Errors produced by constructors and operations in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {got} is not a power of two between 2 and 16")]
    BadDimension { got: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("Kronecker product dimension {0} exceeds 16")]
    KronOverflow(usize),
    #[error("matrix is not Hermitian (max deviation {dev})")]
    NotHermitian { dev: f64 },
    #[error("vector norm {norm} deviates from 1 beyond tolerance")]
    NotUnit { norm: f64 },
    #[error("state norm^2 {norm_sq} deviates from 1 beyond tolerance")]
    NotNormalized { norm_sq: f64 },
    #[error("matrix is not a density matrix: {reason}")]
    NotDensity { reason: String },
    #[error("matrix is not unitary (max deviation {dev})")]
    NotUnitary { dev: f64 },
    #[error("trace has imaginary residue {residue} beyond tolerance")]
    ImaginaryResidue { residue: f64 },
    #[error("qubit slot {0} outside 1..=4")]
    BadSlot(usize),
    #[error("operator index {0} outside 1..=4")]
    BadOperatorIndex(usize),
    #[error("{0:?} is not a permutation of 1..=4")]
    BadPermutation([usize; 4]),
    #[error("invalid qubit triple {0:?}: need 3 distinct ascending indices in 1..=4")]
    BadTriple([usize; 3]),
    #[error("mixture weights invalid: {reason}")]
    BadWeights { reason: String },
    #[error("parameter {name} = {value} outside its valid range {range}")]
    ParameterRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("slot assignment invalid: {0}")]
    BadSlotAssignment(String),
    #[error("grid of {points} points exceeds the evaluation budget {budget}")]
    GridBudget { points: u128, budget: u128 },
    #[error("state specification invalid: {0}")]
    BadSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
