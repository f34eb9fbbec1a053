//! Batched runs behind the `sweep` and `figure1` commands: optimize families
//! along a parameter grid and scatter class-sampled states into the
//! (|<D4(1)>|, |<D4(3)>|) plane.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{pure_to_density, DensityMatrix};
use crate::classify::SeparabilityClass;
use crate::error::{Error, Result};
use crate::optimize::{seesaw_bell, seesaw_omega, OptimizeConfig};
use crate::scalar::Scalar;
use crate::states::{sample, FamilyName, StateSpec};

/// One optimized grid point of a family sweep.
#[derive(Debug, Clone)]
pub struct SweepRow<T> {
    pub param: f64,
    pub values: [T; 4],
    pub omega: T,
    pub class: String,
}

/// Optimizes every operator (and omega) for `steps` evenly spaced parameter
/// values in [from, to]. With `operator = Some(i)` only that operator is
/// see-sawed; the other columns report the values at its best settings.
pub fn sweep_family<T: Scalar>(
    name: FamilyName,
    param: &str,
    fixed: &BTreeMap<String, f64>,
    from: f64,
    to: f64,
    steps: usize,
    operator: Option<usize>,
    cfg: &OptimizeConfig<T>,
) -> Result<Vec<SweepRow<T>>> {
    if steps == 0 || !from.is_finite() || !to.is_finite() || to < from {
        return Err(Error::BadSpec(format!(
            "invalid sweep range: from={from}, to={to}, steps={steps}"
        )));
    }
    let family_id = serde_json::to_value(name)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_else(|| format!("{name:?}"));
    let grid: Vec<f64> = (0..steps)
        .map(|k| {
            if steps == 1 {
                from
            } else {
                from + (to - from) * (k as f64) / ((steps - 1) as f64)
            }
        })
        .collect();

    grid.par_iter()
        .map(|&value| {
            let mut params = fixed.clone();
            params.insert(param.to_string(), value);
            let spec = StateSpec::Family {
                name,
                params,
                parts: Vec::new(),
            };
            let rho = spec.build::<T>()?.density();
            let (values, omega) = optimize_all(&rho, operator, cfg)?;
            Ok(SweepRow {
                param: value,
                values,
                omega,
                class: family_id.clone(),
            })
        })
        .collect()
}

fn optimize_all<T: Scalar>(
    rho: &DensityMatrix<T>,
    operator: Option<usize>,
    cfg: &OptimizeConfig<T>,
) -> Result<([T; 4], T)> {
    match operator {
        None => {
            let mut values = [T::zero(); 4];
            for i in 1..=4 {
                values[i - 1] = seesaw_bell(rho, i, cfg)?.best_value;
            }
            let omega = seesaw_omega(rho, cfg)?.best_value;
            Ok((values, omega))
        }
        Some(i) => {
            let result = seesaw_bell(rho, i, cfg)?;
            let mut values = [T::zero(); 4];
            for j in 1..=4 {
                values[j - 1] = crate::bell::bell_value(rho, &result.best_settings, j)?.abs();
            }
            let omega = crate::bell::omega(rho, &result.best_settings)?;
            Ok((values, omega))
        }
    }
}

/// The sampled constructions of the projection scatter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureClass {
    FullySeparable,
    Tri12_3_4,
    Tri14_2_3,
    Bi12_34,
    Bi14_23,
    Bi1_234,
    Bi3_124,
    Genuine,
}

impl FigureClass {
    pub const ALL: [FigureClass; 8] = [
        FigureClass::FullySeparable,
        FigureClass::Tri12_3_4,
        FigureClass::Tri14_2_3,
        FigureClass::Bi12_34,
        FigureClass::Bi14_23,
        FigureClass::Bi1_234,
        FigureClass::Bi3_124,
        FigureClass::Genuine,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            FigureClass::FullySeparable => "fully_separable",
            FigureClass::Tri12_3_4 => "tri_separable_12",
            FigureClass::Tri14_2_3 => "tri_separable_14",
            FigureClass::Bi12_34 => "bi_separable_12_34",
            FigureClass::Bi14_23 => "bi_separable_14_23",
            FigureClass::Bi1_234 => "bi_separable_1_234",
            FigureClass::Bi3_124 => "bi_separable_3_124",
            FigureClass::Genuine => "genuine",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|c| c.id() == id)
    }

    /// The separability class whose thresholds bound this construction, if
    /// any (the genuine candidates are unconstrained).
    pub fn separability_class(&self) -> Option<SeparabilityClass> {
        match self {
            FigureClass::FullySeparable => Some(SeparabilityClass::FullySeparable),
            FigureClass::Tri12_3_4 => Some(SeparabilityClass::TriSeparable { pair: (1, 2) }),
            FigureClass::Tri14_2_3 => Some(SeparabilityClass::TriSeparable { pair: (1, 4) }),
            FigureClass::Bi12_34 => Some(SeparabilityClass::BiSeparable2x2 {
                partition: ((1, 2), (3, 4)),
            }),
            FigureClass::Bi14_23 => Some(SeparabilityClass::BiSeparable2x2 {
                partition: ((1, 4), (2, 3)),
            }),
            FigureClass::Bi1_234 => Some(SeparabilityClass::BiSeparable1x3 { singleton: 1 }),
            FigureClass::Bi3_124 => Some(SeparabilityClass::BiSeparable1x3 { singleton: 3 }),
            FigureClass::Genuine => None,
        }
    }

    /// Draws one pure member state; the stream index keeps samples
    /// reproducible and independent.
    pub fn draw<T: Scalar>(&self, seed: u64, index: u64) -> DensityMatrix<T> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream((Self::ALL.iter().position(|c| c == self).unwrap() as u64) << 32 | index);
        let psi = match self {
            FigureClass::FullySeparable => sample::fully_separable_pure(&mut rng),
            FigureClass::Tri12_3_4 => sample::tri_separable_pure((1, 2), &mut rng),
            FigureClass::Tri14_2_3 => sample::tri_separable_pure((1, 4), &mut rng),
            FigureClass::Bi12_34 => sample::bi_separable_2x2_pure(((1, 2), (3, 4)), &mut rng),
            FigureClass::Bi14_23 => sample::bi_separable_2x2_pure(((1, 4), (2, 3)), &mut rng),
            FigureClass::Bi1_234 => {
                let kind = if index % 2 == 0 {
                    sample::TripartiteKind::GhzType
                } else {
                    sample::TripartiteKind::WType
                };
                sample::bi_separable_1x3_pure(1, kind, &mut rng)
            }
            FigureClass::Bi3_124 => {
                let kind = if index % 2 == 0 {
                    sample::TripartiteKind::GhzType
                } else {
                    sample::TripartiteKind::WType
                };
                sample::bi_separable_1x3_pure(3, kind, &mut rng)
            }
            FigureClass::Genuine => sample::genuine_haar(&mut rng),
        };
        pure_to_density(&psi)
    }
}

/// One scatter point.
#[derive(Debug, Clone)]
pub struct FigureRow<T> {
    pub class: FigureClass,
    pub index: u64,
    pub values: [T; 4],
    pub omega: T,
}

/// Samples `samples` states per requested class and optimizes all objectives
/// for each; rows come back grouped by class in sample order.
pub fn figure1_rows<T: Scalar>(
    samples: u64,
    seed: u64,
    classes: &[FigureClass],
    cfg: &OptimizeConfig<T>,
) -> Result<Vec<FigureRow<T>>> {
    let tasks: Vec<(FigureClass, u64)> = classes
        .iter()
        .flat_map(|&c| (0..samples).map(move |k| (c, k)))
        .collect();
    tasks
        .par_iter()
        .map(|&(class, index)| {
            let rho = class.draw::<T>(seed, index);
            let (values, omega) = optimize_all(&rho, None, cfg)?;
            Ok(FigureRow {
                class,
                index,
                values,
                omega,
            })
        })
        .collect()
}
