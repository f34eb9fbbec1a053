//! Maximization of |<D4(i)>| and omega over measurement settings.
//!
//! The expectation is affine-linear in each of the eight direction vectors
//! with the others held fixed, so a see-saw sweep replaces one vector at a
//! time by its closed-form optimum. For the Bell objective that optimum is
//! +-g/|g|; for omega it is the exact maximizer of a quadratic-plus-linear
//! form on the unit sphere (a 3x3 trust-region subproblem). Both updates can
//! only increase the objective, which is asserted on every update.
//!
//! Restart schedule: restart indices below the catalog size start from fixed
//! axis-aligned setting patterns, the rest from random unit vectors drawn
//! from a ChaCha8 stream keyed by (seed, restart index). Purely random
//! initialization converges to a spurious stationary point at value 1 with
//! high probability on states with a pure single-qubit marginal (every
//! gradient of the three-qubit block vanishes once the A_i - B_i branch
//! saturates), so the catalog is part of the contract, not a heuristic.

mod grid;

pub use grid::{grid_oracle, grid_oracle_in_plane, grid_scan, Plane, DEFAULT_GRID_BUDGET};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{sym3_eigen, DensityMatrix, UnitVector3};
use crate::bell::{bell_value_raw, Directions, SettingSet, Slot};
use crate::error::Result;
use crate::scalar::Scalar;

/// See-saw configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeConfig<T> {
    /// Total number of restarts (catalog prefix plus random).
    pub restarts: usize,
    /// Sweep cap per restart.
    pub max_sweeps: usize,
    /// Absolute objective improvement per sweep below which a restart stops.
    pub tol: T,
    /// Seed for the random restart streams.
    pub seed: u64,
}

impl<T: Scalar> Default for OptimizeConfig<T> {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_sweeps: 200,
            tol: T::lit(1e-9),
            seed: 0,
        }
    }
}

impl<T: Scalar> OptimizeConfig<T> {
    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts.max(1);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// What a see-saw run maximized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// |<D4(i)>| for the given operator index.
    Bell(usize),
    /// Sum of the four squared expectations.
    Omega,
}

/// Outcome of a see-saw run.
#[derive(Debug, Clone)]
pub struct OptimizeResult<T> {
    pub best_value: T,
    pub best_settings: SettingSet<T>,
    pub sweeps_used: usize,
    pub restart_values: Vec<T>,
    pub objective: Objective,
}

/// Fixed initial setting patterns tried before the random restarts.
pub fn init_catalog<T: Scalar>() -> Vec<Directions<T>> {
    let x = [T::one(), T::zero(), T::zero()];
    let y = [T::zero(), T::one(), T::zero()];
    let z = [T::zero(), T::zero(), T::one()];
    let mut out = Vec::with_capacity(13);
    for (u, v) in [
        (x, y),
        (y, x),
        (x, z),
        (z, x),
        (y, z),
        (z, y),
        (x, x),
        (y, y),
        (z, z),
    ] {
        out.push(Directions {
            a: [u; 4],
            b: [v; 4],
        });
    }
    // z on one qubit, the x/y Mermin pattern on the rest
    for special in 0..4 {
        let mut dirs = Directions {
            a: [x; 4],
            b: [y; 4],
        };
        dirs.a[special] = z;
        dirs.b[special] = z;
        out.push(dirs);
    }
    out
}

fn random_unit<T: Scalar, R: Rng>(rng: &mut R) -> [T; 3] {
    loop {
        let v = [
            T::lit(rng.gen_range(-1.0..1.0)),
            T::lit(rng.gen_range(-1.0..1.0)),
            T::lit(rng.gen_range(-1.0..1.0)),
        ];
        let norm_sq = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if norm_sq > T::lit(1e-4) && norm_sq <= T::one() {
            let inv = T::one() / norm_sq.sqrt();
            return [v[0] * inv, v[1] * inv, v[2] * inv];
        }
    }
}

fn init_for_restart<T: Scalar>(index: usize, seed: u64, catalog: &[Directions<T>]) -> Directions<T> {
    if index < catalog.len() {
        return catalog[index];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    let mut dirs = Directions {
        a: [[T::zero(); 3]; 4],
        b: [[T::zero(); 3]; 4],
    };
    for j in 0..4 {
        dirs.a[j] = random_unit(&mut rng);
        dirs.b[j] = random_unit(&mut rng);
    }
    dirs
}

/// Affine decomposition of the objective in one slot: value = g . v + c.
/// g is obtained by evaluating at the three basis vectors and subtracting the
/// v = 0 baseline (renormalization disabled on this path).
pub fn direction_gradient<T: Scalar>(
    rho: &DensityMatrix<T>,
    settings: &SettingSet<T>,
    i: usize,
    slot: Slot,
) -> Result<[T; 3]> {
    crate::bell::build_d4(settings, i)?; // validates inputs
    let dirs = settings.directions();
    Ok(gradient_raw(rho, &dirs, i, slot).0)
}

fn gradient_raw<T: Scalar>(
    rho: &DensityMatrix<T>,
    dirs: &Directions<T>,
    i: usize,
    slot: Slot,
) -> ([T; 3], T) {
    let mut work = *dirs;
    *work.slot_mut(slot) = [T::zero(); 3];
    let c = bell_value_raw(rho, &work, i);
    let mut g = [T::zero(); 3];
    for (k, gk) in g.iter_mut().enumerate() {
        let mut basis = [T::zero(); 3];
        basis[k] = T::one();
        *work.slot_mut(slot) = basis;
        *gk = bell_value_raw(rho, &work, i) - c;
    }
    (g, c)
}

fn norm3<T: Scalar>(v: [T; 3]) -> T {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// One see-saw restart for |<D4(i)>|; returns (objective, settings, sweeps).
fn run_bell_restart<T: Scalar>(
    rho: &DensityMatrix<T>,
    i: usize,
    init: Directions<T>,
    max_sweeps: usize,
    tol: T,
) -> (T, Directions<T>, usize) {
    let mut dirs = init;
    let mut value = bell_value_raw(rho, &dirs, i).abs();
    let slack = T::lit(1e-11);
    let mut sweeps = 0;
    for _ in 0..max_sweeps {
        sweeps += 1;
        let before = value;
        for slot in Slot::ALL {
            let (g, c) = gradient_raw(rho, &dirs, i, slot);
            let gn = norm3(g);
            if gn < T::lit(1e-14) {
                continue; // flat direction: keep the incumbent vector
            }
            let sign = if c >= T::zero() { T::one() } else { -T::one() };
            let inv = sign / gn;
            *dirs.slot_mut(slot) = [g[0] * inv, g[1] * inv, g[2] * inv];
            let new_value = gn + c.abs();
            assert!(
                new_value >= value - slack,
                "see-saw objective decreased: {value} -> {new_value}"
            );
            value = new_value;
        }
        if value - before < tol {
            break;
        }
    }
    (value, dirs, sweeps)
}

fn finish<T: Scalar>(
    objective: Objective,
    outcomes: Vec<(T, Directions<T>, usize)>,
) -> OptimizeResult<T> {
    let restart_values: Vec<T> = outcomes.iter().map(|(v, _, _)| *v).collect();
    let mut best = 0usize;
    for idx in 1..outcomes.len() {
        if outcomes[idx].0 > outcomes[best].0 {
            best = idx;
        }
    }
    let (best_value, dirs, sweeps_used) = outcomes[best].clone();
    let best_settings = dirs
        .to_settings()
        .expect("see-saw vectors stay unit length");
    OptimizeResult {
        best_value,
        best_settings,
        sweeps_used,
        restart_values,
        objective,
    }
}

fn seesaw_bell_impl<T: Scalar>(
    rho: &DensityMatrix<T>,
    i: usize,
    cfg: &OptimizeConfig<T>,
    extra_inits: &[Directions<T>],
) -> Result<OptimizeResult<T>> {
    if !(1..=4).contains(&i) {
        return Err(crate::error::Error::BadOperatorIndex(i));
    }
    let catalog = init_catalog::<T>();
    let total = cfg.restarts.max(1) + extra_inits.len();
    let outcomes: Vec<(T, Directions<T>, usize)> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let init = if idx < extra_inits.len() {
                extra_inits[idx]
            } else {
                init_for_restart(idx - extra_inits.len(), cfg.seed, &catalog)
            };
            run_bell_restart(rho, i, init, cfg.max_sweeps, cfg.tol)
        })
        .collect();
    Ok(finish(Objective::Bell(i), outcomes))
}

/// Maximizes |<D4(i)>| over all settings by multi-start see-saw.
pub fn seesaw_bell<T: Scalar>(
    rho: &DensityMatrix<T>,
    i: usize,
    cfg: &OptimizeConfig<T>,
) -> Result<OptimizeResult<T>> {
    seesaw_bell_impl(rho, i, cfg, &[])
}

/// Like [`seesaw_bell`], with an extra warm-start initialization (used when
/// comparing against the grid oracle).
pub fn seesaw_bell_seeded<T: Scalar>(
    rho: &DensityMatrix<T>,
    i: usize,
    cfg: &OptimizeConfig<T>,
    warm: &SettingSet<T>,
) -> Result<OptimizeResult<T>> {
    seesaw_bell_impl(rho, i, cfg, &[warm.directions()])
}

/// Exact maximizer of v^T M v + 2 q.v over |v| = 1 (3x3 symmetric M).
/// Returns None when the maximizer is not unique in a way that matters
/// (degenerate top eigenspace with no linear pull), in which case the caller
/// keeps the incumbent vector.
fn sphere_quadratic_max<T: Scalar>(m: [[T; 3]; 3], q: [T; 3]) -> Option<[T; 3]> {
    let (d, v) = sym3_eigen(m);
    // rotate q into the eigenbasis
    let mut qe = [T::zero(); 3];
    for (j, qe_j) in qe.iter_mut().enumerate() {
        *qe_j = v[0][j] * q[0] + v[1][j] * q[1] + v[2][j] * q[2];
    }
    let qnorm = norm3(qe);
    let scale = d[2].abs().max(d[0].abs()).max(T::one());
    let tiny = scale * T::lit(1e-13);

    if qnorm <= tiny {
        if d[2] - d[1] <= tiny {
            return None; // degenerate principal eigenspace, no pull
        }
        return Some([v[0][2], v[1][2], v[2][2]]);
    }

    let from_eigen = |w: [T; 3]| {
        [
            v[0][0] * w[0] + v[0][1] * w[1] + v[0][2] * w[2],
            v[1][0] * w[0] + v[1][1] * w[1] + v[1][2] * w[2],
            v[2][0] * w[0] + v[2][1] * w[1] + v[2][2] * w[2],
        ]
    };

    let phi_sq = |lambda: T| -> T {
        let mut s = T::zero();
        for j in 0..3 {
            let r = qe[j] / (lambda - d[j]);
            s += r * r;
        }
        s
    };

    // hard case: no component along the top eigenvector and the interior
    // solution already fits inside the sphere at lambda = d_max
    let top_component = qe[2].abs();
    if top_component <= tiny {
        let mut w = [T::zero(); 3];
        let mut norm_sq = T::zero();
        for j in 0..2 {
            if d[2] - d[j] > tiny {
                w[j] = qe[j] / (d[2] - d[j]);
                norm_sq += w[j] * w[j];
            }
        }
        if norm_sq <= T::one() {
            w[2] = (T::one() - norm_sq).max(T::zero()).sqrt();
            return Some(from_eigen(w));
        }
    }

    // secular equation phi(lambda) = 1 on (d_max, d_max + |q| + 1]
    let mut lo = d[2] + scale * T::lit(1e-15);
    let mut hi = d[2] + qnorm + T::one();
    if phi_sq(lo) < T::one() {
        // numerical guard: push lo toward d[2] until phi >= 1 or give up
        let mut shrink = scale * T::lit(1e-15);
        let mut ok = false;
        for _ in 0..60 {
            shrink = shrink * T::lit(0.5);
            lo = d[2] + shrink;
            if phi_sq(lo) >= T::one() {
                ok = true;
                break;
            }
        }
        if !ok {
            // effectively the hard case; fall back to the top eigenvector
            return Some(from_eigen([T::zero(), T::zero(), T::one()]));
        }
    }
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if phi_sq(mid) >= T::one() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= scale * T::lit(1e-16) {
            break;
        }
    }
    let lambda = (lo + hi) * T::lit(0.5);
    let mut w = [T::zero(); 3];
    for j in 0..3 {
        w[j] = qe[j] / (lambda - d[j]);
    }
    // renormalize against bisection residue
    let n = norm3(w);
    if !n.is_finite() || n <= T::zero() {
        return Some(from_eigen([T::zero(), T::zero(), T::one()]));
    }
    for wj in &mut w {
        *wj = *wj / n;
    }
    Some(from_eigen(w))
}

fn omega_raw<T: Scalar>(rho: &DensityMatrix<T>, dirs: &Directions<T>) -> T {
    let mut total = T::zero();
    for i in 1..=4 {
        let v = bell_value_raw(rho, dirs, i);
        total += v * v;
    }
    total
}

fn run_omega_restart<T: Scalar>(
    rho: &DensityMatrix<T>,
    init: Directions<T>,
    max_sweeps: usize,
    tol: T,
) -> (T, Directions<T>, usize) {
    let mut dirs = init;
    let mut value = omega_raw(rho, &dirs);
    let slack = T::lit(1e-10);
    let mut sweeps = 0;
    for _ in 0..max_sweeps {
        sweeps += 1;
        let before = value;
        for slot in Slot::ALL {
            // omega restricted to this slot is sum_i (g_i . v + c_i)^2:
            // a quadratic form v^T M v + 2 q.v + const with M = sum g g^T
            let mut m = [[T::zero(); 3]; 3];
            let mut q = [T::zero(); 3];
            let mut constant = T::zero();
            for i in 1..=4 {
                let (g, c) = gradient_raw(rho, &dirs, i, slot);
                for r in 0..3 {
                    for s in 0..3 {
                        m[r][s] += g[r] * g[s];
                    }
                    q[r] += c * g[r];
                }
                constant += c * c;
            }
            if let Some(v) = sphere_quadratic_max(m, q) {
                let mut model = constant;
                for r in 0..3 {
                    model += q[r] * v[r] * T::lit(2.0);
                    for s in 0..3 {
                        model += v[r] * m[r][s] * v[s];
                    }
                }
                assert!(
                    model >= value - slack,
                    "omega objective decreased: {value} -> {model}"
                );
                if model > value {
                    *dirs.slot_mut(slot) = v;
                    value = model;
                }
            }
        }
        if value - before < tol {
            break;
        }
    }
    (value, dirs, sweeps)
}

/// Maximizes omega = sum_i <D4(i)>^2 over all settings.
pub fn seesaw_omega<T: Scalar>(
    rho: &DensityMatrix<T>,
    cfg: &OptimizeConfig<T>,
) -> Result<OptimizeResult<T>> {
    let catalog = init_catalog::<T>();
    let outcomes: Vec<(T, Directions<T>, usize)> = (0..cfg.restarts.max(1))
        .into_par_iter()
        .map(|idx| {
            let init = init_for_restart(idx, cfg.seed, &catalog);
            run_omega_restart(rho, init, cfg.max_sweeps, cfg.tol)
        })
        .collect();
    Ok(finish(Objective::Omega, outcomes))
}

/// Re-evaluates an optimizer result against its reported value.
pub fn reevaluate<T: Scalar>(rho: &DensityMatrix<T>, result: &OptimizeResult<T>) -> Result<T> {
    match result.objective {
        Objective::Bell(i) => Ok(crate::bell::bell_value(rho, &result.best_settings, i)?.abs()),
        Objective::Omega => crate::bell::omega(rho, &result.best_settings),
    }
}

/// Convenience: unit vector from spherical-free components, for tests.
pub fn unit<T: Scalar>(x: T, y: T, z: T) -> UnitVector3<T> {
    UnitVector3::normalized(x, y, z).expect("nonzero vector")
}
