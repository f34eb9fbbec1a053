//! Separability-class exclusion from optimized Bell violations.
//!
//! Each class carries a per-operator threshold vector. A class is excluded
//! exactly when some optimized violation exceeds its threshold at that
//! position by more than the tolerance; a state violating no bound is
//! consistent with every class, which certifies nothing (the conditions are
//! necessary, not sufficient).

use serde::{Deserialize, Serialize};

use crate::algebra::DensityMatrix;
use crate::error::Result;
use crate::optimize::{seesaw_bell, seesaw_omega, OptimizeConfig};
use crate::scalar::Scalar;

/// The fourteen named product structures plus the unrestricted class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeparabilityClass {
    FullySeparable,
    /// rho_{ij-k-l}: the pair (i, j) may be entangled, k and l are product.
    TriSeparable { pair: (u8, u8) },
    /// rho_{ij-kl}: two entangled pairs.
    BiSeparable2x2 { partition: ((u8, u8), (u8, u8)) },
    /// rho_{i-jkl}: one qubit in product with a genuine tripartite block.
    BiSeparable1x3 { singleton: u8 },
    Unrestricted,
}

impl SeparabilityClass {
    /// All fifteen classes in a fixed reporting order.
    pub fn all() -> Vec<SeparabilityClass> {
        let mut out = vec![SeparabilityClass::FullySeparable];
        for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
            out.push(SeparabilityClass::TriSeparable { pair: (i, j) });
        }
        for partition in [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))] {
            out.push(SeparabilityClass::BiSeparable2x2 { partition });
        }
        for singleton in 1..=4 {
            out.push(SeparabilityClass::BiSeparable1x3 { singleton });
        }
        out.push(SeparabilityClass::Unrestricted);
        out
    }

    /// Stable identifier used in reports and CSV output.
    pub fn id(&self) -> String {
        match self {
            SeparabilityClass::FullySeparable => "fully_separable".into(),
            SeparabilityClass::TriSeparable { pair: (i, j) } => {
                format!("tri_separable_{i}{j}")
            }
            SeparabilityClass::BiSeparable2x2 {
                partition: ((i, j), (k, l)),
            } => format!("bi_separable_{i}{j}_{k}{l}"),
            SeparabilityClass::BiSeparable1x3 { singleton } => {
                let rest: String = (1..=4u8)
                    .filter(|q| q != singleton)
                    .map(|q| q.to_string())
                    .collect();
                format!("bi_separable_{singleton}_{rest}")
            }
            SeparabilityClass::Unrestricted => "unrestricted".into(),
        }
    }

    /// Per-operator violation thresholds implied by the class structure.
    pub fn thresholds<T: Scalar>(&self) -> [T; 4] {
        let one = T::one();
        let three_half = T::lit(1.5);
        let sqrt3 = T::lit(3.0).sqrt();
        let two = T::lit(2.0);
        match self {
            SeparabilityClass::FullySeparable => [one; 4],
            SeparabilityClass::TriSeparable { pair: (i, j) } => {
                let mut t = [three_half; 4];
                t[*i as usize - 1] = one;
                t[*j as usize - 1] = one;
                t
            }
            SeparabilityClass::BiSeparable2x2 { .. } => [three_half; 4],
            SeparabilityClass::BiSeparable1x3 { .. } => [sqrt3; 4],
            SeparabilityClass::Unrestricted => [two; 4],
        }
    }
}

/// Static table of every class and its threshold vector.
pub fn threshold_table<T: Scalar>() -> Vec<(SeparabilityClass, [T; 4])> {
    SeparabilityClass::all()
        .into_iter()
        .map(|c| (c, c.thresholds()))
        .collect()
}

/// Result of running the exclusion witnesses on one state.
#[derive(Debug, Clone)]
pub struct ClassificationReport<T> {
    /// Optimized |<D4(i)>| for i = 1..=4.
    pub violations: [T; 4],
    /// Optimized omega.
    pub omega_max: T,
    pub excluded: Vec<SeparabilityClass>,
    pub consistent: Vec<SeparabilityClass>,
    pub tolerance: T,
}

impl<T: Scalar> ClassificationReport<T> {
    pub fn is_excluded(&self, class: SeparabilityClass) -> bool {
        self.excluded.contains(&class)
    }

    /// Serializable document with the optimizer settings attached.
    pub fn document(&self, cfg: &OptimizeConfig<T>) -> ReportDocument {
        ReportDocument {
            violations: self
                .violations
                .iter()
                .map(|v| v.to_f64().unwrap_or(f64::NAN))
                .collect(),
            omega_max: self.omega_max.to_f64().unwrap_or(f64::NAN),
            excluded: self.excluded.iter().map(|c| c.id()).collect(),
            consistent: self.consistent.iter().map(|c| c.id()).collect(),
            tolerance: self.tolerance.to_f64().unwrap_or(f64::NAN),
            optimizer: OptimizerMeta {
                seed: cfg.seed,
                restarts: cfg.restarts,
                tol: cfg.tol.to_f64().unwrap_or(f64::NAN),
            },
        }
    }
}

/// Wire form of a classification report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub violations: Vec<f64>,
    pub omega_max: f64,
    pub excluded: Vec<String>,
    pub consistent: Vec<String>,
    pub tolerance: f64,
    pub optimizer: OptimizerMeta,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimizerMeta {
    pub seed: u64,
    pub restarts: usize,
    pub tol: f64,
}

/// Splits a violation vector into excluded and consistent classes.
pub fn classify_violations<T: Scalar>(
    violations: [T; 4],
    omega_max: T,
    tolerance: T,
) -> ClassificationReport<T> {
    let mut excluded = Vec::new();
    let mut consistent = Vec::new();
    for class in SeparabilityClass::all() {
        let th = class.thresholds::<T>();
        let over = (0..4).any(|k| violations[k] > th[k] + tolerance);
        if over {
            excluded.push(class);
        } else {
            consistent.push(class);
        }
    }
    ClassificationReport {
        violations,
        omega_max,
        excluded,
        consistent,
        tolerance,
    }
}

/// Optimizes the four Bell violations and omega, then applies the
/// threshold table.
pub fn classify<T: Scalar>(
    rho: &DensityMatrix<T>,
    cfg: &OptimizeConfig<T>,
    tolerance: T,
) -> Result<ClassificationReport<T>> {
    let mut violations = [T::zero(); 4];
    for i in 1..=4 {
        violations[i - 1] = seesaw_bell(rho, i, cfg)?.best_value;
    }
    let omega_max = seesaw_omega(rho, cfg)?.best_value;
    Ok(classify_violations(violations, omega_max, tolerance))
}

/// Default threshold-comparison tolerance: an order of magnitude above the
/// optimizer tolerance so numerical noise never excludes a class.
pub fn default_tolerance<T: Scalar>() -> T {
    T::lit(1e-6)
}
