//! Exhaustive planar grid search for |<D4(i)>|.
//!
//! Every one of the eight direction vectors ranges over a circle of
//! `round(360/resolution)` points in a fixed plane. The six angles of the
//! Mermin triple are enumerated outright; for each combination the two
//! angles of the special qubit decouple (the objective is affine in a_i and
//! b_i separately), so their contribution is maximized by two independent
//! scans. The result is the exact maximum over the gridded settings and
//! hence a lower bound on the true supremum.
//!
//! Evaluation goes through the Pauli correlation tensor rather than dense
//! traces. That keeps the oracle's arithmetic route independent of the
//! see-saw path it cross-checks, and makes the enumeration tractable.

use rayon::prelude::*;

use crate::algebra::{DensityMatrix, UnitVector3};
use crate::bell::SettingSet;
use crate::correlation::correlation_tensor;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Plane in which every grid vector lies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    /// Vectors (cos t, sin t, 0).
    Xy,
    /// Vectors (cos t, 0, sin t).
    Xz,
}

impl Plane {
    fn unit<T: Scalar>(&self, theta: T) -> [T; 3] {
        match self {
            Plane::Xy => [theta.cos(), theta.sin(), T::zero()],
            Plane::Xz => [theta.cos(), T::zero(), theta.sin()],
        }
    }
}

/// Enumerated triple-angle combinations allowed by default (n^6 for n grid
/// points per circle).
pub const DEFAULT_GRID_BUDGET: u128 = 300_000_000;

/// Exhaustive grid maximum of |<D4(i)>| over both coordinate planes at the
/// given angular resolution (degrees).
pub fn grid_oracle<T: Scalar>(rho: &DensityMatrix<T>, i: usize, resolution_deg: T) -> Result<T> {
    let xy = grid_oracle_in_plane(rho, i, resolution_deg, Plane::Xy)?;
    let xz = grid_oracle_in_plane(rho, i, resolution_deg, Plane::Xz)?;
    Ok(xy.max(xz))
}

/// Exhaustive grid maximum within one plane.
pub fn grid_oracle_in_plane<T: Scalar>(
    rho: &DensityMatrix<T>,
    i: usize,
    resolution_deg: T,
    plane: Plane,
) -> Result<T> {
    Ok(grid_scan(rho, i, resolution_deg, plane, DEFAULT_GRID_BUDGET)?.0)
}

/// Full scan returning the maximum and the settings attaining it.
pub fn grid_scan<T: Scalar>(
    rho: &DensityMatrix<T>,
    i: usize,
    resolution_deg: T,
    plane: Plane,
    budget: u128,
) -> Result<(T, SettingSet<T>)> {
    if !(1..=4).contains(&i) {
        return Err(Error::BadOperatorIndex(i));
    }
    let res = resolution_deg
        .to_f64()
        .filter(|r| r.is_finite() && *r > 0.0)
        .ok_or(Error::ParameterRange {
            name: "resolution_deg",
            value: resolution_deg.to_f64().unwrap_or(f64::NAN),
            range: "(0, 360]",
        })?;
    let n = (360.0 / res).round().max(1.0) as usize;
    let points = (n as u128).pow(6);
    if points > budget {
        return Err(Error::GridBudget { points, budget });
    }

    let tensor = correlation_tensor(rho)?;
    let triple: Vec<usize> = (1..=4).filter(|&j| j != i).collect();
    let (p, q, r) = (triple[0], triple[1], triple[2]);

    // reorder the 256 components to T[kp][kq][kr][ki]
    let mut t = vec![T::zero(); 256];
    for kp in 0..4 {
        for kq in 0..4 {
            for kr in 0..4 {
                for ki in 0..4 {
                    let mut k = [0usize; 4];
                    k[p - 1] = kp;
                    k[q - 1] = kq;
                    k[r - 1] = kr;
                    k[i - 1] = ki;
                    t[((kp * 4 + kq) * 4 + kr) * 4 + ki] = tensor.component(k);
                }
            }
        }
    }
    let alpha = tensor.single(i);

    // circle vectors
    let step = T::lit(std::f64::consts::TAU) / T::from_usize(n).expect("small n");
    let vecs: Vec<[T; 3]> = (0..n)
        .map(|k| plane.unit(step * T::from_usize(k).expect("small")))
        .collect();

    // contract slot r: pr[kr-angle][(kp*4+kq)*4+ki]
    let contract_r = |v: [T; 3]| -> [T; 64] {
        let mut out = [T::zero(); 64];
        for kp in 0..4 {
            for kq in 0..4 {
                for ki in 0..4 {
                    let mut acc = T::zero();
                    for c in 0..3 {
                        acc += t[((kp * 4 + kq) * 4 + (c + 1)) * 4 + ki] * v[c];
                    }
                    out[(kp * 4 + kq) * 4 + ki] = acc;
                }
            }
        }
        out
    };
    let pr: Vec<[T; 64]> = vecs.iter().map(|&v| contract_r(v)).collect();

    // contract slot q: rq[q-angle][r-angle][kp*4+ki]
    let mut rq = vec![[T::zero(); 16]; n * n];
    for (kq_idx, vq) in vecs.iter().enumerate() {
        for kr_idx in 0..n {
            let src = &pr[kr_idx];
            let dst = &mut rq[kq_idx * n + kr_idx];
            for kp in 0..4 {
                for ki in 0..4 {
                    let mut acc = T::zero();
                    for c in 0..3 {
                        acc += src[(kp * 4 + (c + 1)) * 4 + ki] * vq[c];
                    }
                    dst[kp * 4 + ki] = acc;
                }
            }
        }
    }

    let half = T::lit(0.5);
    // per (aq, ar, bq, br): M_a = -RQ[aq][ar] + RQ[bq][br] (terms with a_p),
    // M_b = RQ[aq][br] + RQ[bq][ar] (terms with b_p)
    let best = (0..n)
        .into_par_iter()
        .map(|aq| {
            let mut local_best = T::neg_infinity();
            let mut local_args = [0usize; 8]; // aq, ar, bq, br, ap, bp, ai, bi
            let mut pa = vec![[T::zero(); 4]; n];
            let mut pb = vec![[T::zero(); 4]; n];
            for ar in 0..n {
                for bq in 0..n {
                    for br in 0..n {
                        let maq = &rq[aq * n + ar];
                        let mbq = &rq[bq * n + br];
                        let mab = &rq[aq * n + br];
                        let mba = &rq[bq * n + ar];
                        let mut m_a = [T::zero(); 16];
                        let mut m_b = [T::zero(); 16];
                        for idx in 0..16 {
                            m_a[idx] = mbq[idx] - maq[idx];
                            m_b[idx] = mab[idx] + mba[idx];
                        }
                        // contract slot p for every p-angle (both tables)
                        for (k, v) in vecs.iter().enumerate() {
                            for ki in 0..4 {
                                let mut acc_a = T::zero();
                                let mut acc_b = T::zero();
                                for c in 0..3 {
                                    acc_a += m_a[(c + 1) * 4 + ki] * v[c];
                                    acc_b += m_b[(c + 1) * 4 + ki] * v[c];
                                }
                                pa[k][ki] = acc_a * half;
                                pb[k][ki] = acc_b * half;
                            }
                        }
                        for (ap, pa_k) in pa.iter().enumerate() {
                            for (bp, pb_k) in pb.iter().enumerate() {
                                // g . s_i - alpha . t_i, split over a_i, b_i
                                let g = [
                                    pa_k[1] + pb_k[1],
                                    pa_k[2] + pb_k[2],
                                    pa_k[3] + pb_k[3],
                                ];
                                let ha = [
                                    (g[0] + alpha[0]) * half,
                                    (g[1] + alpha[1]) * half,
                                    (g[2] + alpha[2]) * half,
                                ];
                                let hb = [
                                    (g[0] - alpha[0]) * half,
                                    (g[1] - alpha[1]) * half,
                                    (g[2] - alpha[2]) * half,
                                ];
                                let scan = |h: [T; 3]| {
                                    let mut hi = T::neg_infinity();
                                    let mut lo = T::infinity();
                                    let mut hi_k = 0usize;
                                    let mut lo_k = 0usize;
                                    for (k, v) in vecs.iter().enumerate() {
                                        let d = h[0] * v[0] + h[1] * v[1] + h[2] * v[2];
                                        if d > hi {
                                            hi = d;
                                            hi_k = k;
                                        }
                                        if d < lo {
                                            lo = d;
                                            lo_k = k;
                                        }
                                    }
                                    (hi, hi_k, lo, lo_k)
                                };
                                let (a_hi, a_hi_k, a_lo, a_lo_k) = scan(ha);
                                let (b_hi, b_hi_k, b_lo, b_lo_k) = scan(hb);
                                let plus = a_hi + b_hi;
                                let minus = -(a_lo + b_lo);
                                let (val, ai, bi) = if plus >= minus {
                                    (plus, a_hi_k, b_hi_k)
                                } else {
                                    (minus, a_lo_k, b_lo_k)
                                };
                                if val > local_best {
                                    local_best = val;
                                    local_args = [aq, ar, bq, br, ap, bp, ai, bi];
                                }
                            }
                        }
                    }
                }
            }
            (local_best, local_args)
        })
        .reduce(
            || (T::neg_infinity(), [0usize; 8]),
            |x, y| {
                if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                    y
                } else {
                    x
                }
            },
        );

    let (value, args) = best;
    let [aq, ar, bq, br, ap, bp, ai, bi] = args;
    let uv = |k: usize| {
        let v = vecs[k];
        UnitVector3::new(v[0], v[1], v[2]).expect("grid vectors are unit")
    };
    let mut a = [uv(0); 4];
    let mut b = [uv(0); 4];
    a[p - 1] = uv(ap);
    a[q - 1] = uv(aq);
    a[r - 1] = uv(ar);
    a[i - 1] = uv(ai);
    b[p - 1] = uv(bp);
    b[q - 1] = uv(bq);
    b[r - 1] = uv(br);
    b[i - 1] = uv(bi);
    Ok((value, SettingSet::new(a, b)))
}
