//! Shared test helpers: the closed-form scalar oracles for the proof-form
//! product states, a partial trace, and random-input generators. Everything
//! here is an independent route to the quantities the dense machinery
//! computes; none of it calls the production operator builders.

#![allow(dead_code)]

use bell4::algebra::{ComplexMatrix, DensityMatrix, PureState, UnitVector3};
use bell4::bell::SettingSet;
use bell4::C64;
use rand::Rng;

pub type V3 = [f64; 3];

pub fn unit(v: V3) -> UnitVector3<f64> {
    UnitVector3::normalized(v[0], v[1], v[2]).expect("nonzero")
}

pub fn rand_unit<R: Rng>(rng: &mut R) -> V3 {
    loop {
        let v = [
            rng.gen_range(-1.0..1.0f64),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-2 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

pub fn rand_settings<R: Rng>(rng: &mut R) -> (SettingSet<f64>, [V3; 4], [V3; 4]) {
    let a = [
        rand_unit(rng),
        rand_unit(rng),
        rand_unit(rng),
        rand_unit(rng),
    ];
    let b = [
        rand_unit(rng),
        rand_unit(rng),
        rand_unit(rng),
        rand_unit(rng),
    ];
    let settings = SettingSet::new(
        [unit(a[0]), unit(a[1]), unit(a[2]), unit(a[3])],
        [unit(b[0]), unit(b[1]), unit(b[2]), unit(b[3])],
    );
    (settings, a, b)
}

pub fn ghz4() -> PureState<f64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![C64::new(0.0, 0.0); 16];
    amps[0] = C64::new(s, 0.0);
    amps[15] = C64::new(s, 0.0);
    PureState::new(4, amps).unwrap()
}

/// Settings at which GHZ4 attains <D4(1)> = -2.
pub fn ghz_optimal_settings() -> SettingSet<f64> {
    let x = UnitVector3::x_axis();
    let y = UnitVector3::y_axis();
    SettingSet::new([x; 4], [x, y, y, y])
}

/// Partial trace of a 16x16 density matrix onto the given ascending qubits.
pub fn partial_trace(rho: &DensityMatrix<f64>, keep: &[usize]) -> ComplexMatrix<f64> {
    assert_eq!(rho.dim(), 16);
    let env: Vec<usize> = (1..=4).filter(|q| !keep.contains(q)).collect();
    let k = keep.len();
    let mut out = ComplexMatrix::zeros(1 << k).unwrap();
    for i in 0..(1usize << k) {
        for j in 0..(1usize << k) {
            let mut acc = C64::new(0.0, 0.0);
            for e in 0..(1usize << env.len()) {
                let mut row = 0usize;
                let mut col = 0usize;
                for (pos, &q) in keep.iter().enumerate() {
                    row |= ((i >> (k - 1 - pos)) & 1) << (4 - q);
                    col |= ((j >> (k - 1 - pos)) & 1) << (4 - q);
                }
                for (pos, &q) in env.iter().enumerate() {
                    let bit_e = (e >> (env.len() - 1 - pos)) & 1;
                    row |= bit_e << (4 - q);
                    col |= bit_e << (4 - q);
                }
                acc += rho.matrix().get(row, col);
            }
            out.set(i, j, acc);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Closed-form scalar oracles for the proof-form product states.
// Index convention: a[j][k] is the k-th component (x, y, z) of vector a_{j+1}.
// ---------------------------------------------------------------------------

/// <D4(1)> on |0000>.
pub fn thm1_d41(a: [V3; 4], b: [V3; 4]) -> f64 {
    0.25 * (a[0][2] + b[0][2])
        * (-a[1][2] * a[2][2] * a[3][2]
            + a[1][2] * b[2][2] * b[3][2]
            + b[1][2] * a[2][2] * b[3][2]
            + b[1][2] * b[2][2] * a[3][2])
        + 0.5 * (a[0][2] - b[0][2])
}

/// <D4(1)> on (cos a|01> - sin a|10>) (x) |0> (x) |0>.
pub fn thm2_d41(a: [V3; 4], b: [V3; 4], alpha: f64) -> f64 {
    let s2a = (2.0 * alpha).sin();
    let c2a = (2.0 * alpha).cos();
    let xy = |u: V3, v: V3| u[0] * v[0] + u[1] * v[1];
    let br_a = -(a[0][2] * a[1][2] + a[1][2] * b[0][2]) - (xy(a[0], a[1]) + xy(a[1], b[0])) * s2a;
    let br_b = -(a[0][2] * b[1][2] + b[0][2] * b[1][2]) - (xy(a[0], b[1]) + xy(b[0], b[1])) * s2a;
    0.5 * br_a * 0.5 * (-a[2][2] * a[3][2] + b[2][2] * b[3][2])
        + 0.5 * br_b * 0.5 * (a[2][2] * b[3][2] + b[2][2] * a[3][2])
        + 0.5 * (a[0][2] - b[0][2]) * c2a
}

/// <D4(3)> on the same state.
pub fn thm2_d43(a: [V3; 4], b: [V3; 4], alpha: f64) -> f64 {
    let s2a = (2.0 * alpha).sin();
    let xy = |u: V3, v: V3| u[0] * v[0] + u[1] * v[1];
    let br1 = -(-a[0][2] * a[1][2] + b[0][2] * b[1][2])
        - (-xy(a[0], a[1]) + xy(b[0], b[1])) * s2a;
    let br2 = -(a[0][2] * b[1][2] + b[0][2] * a[1][2]) - (xy(a[0], b[1]) + xy(b[0], a[1])) * s2a;
    0.25 * (br1 * (a[2][2] + b[2][2]) * a[3][2] + br2 * (a[2][2] + b[2][2]) * b[3][2])
        + 0.5 * (a[2][2] - b[2][2])
}

/// <D4(1)> on (cos a|01> - sin a|10>) (x) (cos b|01> - sin b|10>).
pub fn thm3i_d41(a: [V3; 4], b: [V3; 4], alpha: f64, beta: f64) -> f64 {
    let s2a = (2.0 * alpha).sin();
    let c2a = (2.0 * alpha).cos();
    let s2b = (2.0 * beta).sin();
    let xy = |u: V3, v: V3| u[0] * v[0] + u[1] * v[1];
    let br_a = -(a[0][2] * a[1][2] + a[1][2] * b[0][2]) - (xy(a[0], a[1]) + xy(a[1], b[0])) * s2a;
    let br_b = -(a[0][2] * b[1][2] + b[0][2] * b[1][2]) - (xy(a[0], b[1]) + xy(b[0], b[1])) * s2a;
    let f_a = -(-a[2][2] * a[3][2] + b[2][2] * b[3][2])
        - (-xy(a[2], a[3]) + xy(b[2], b[3])) * s2b;
    let f_b = -(a[2][2] * b[3][2] + a[3][2] * b[2][2]) - (xy(a[2], b[3]) + xy(a[3], b[2])) * s2b;
    0.25 * (br_a * f_a + br_b * f_b) + 0.5 * (a[0][2] - b[0][2]) * c2a
}

/// Correlator <(v2.s)(v3.s)(v4.s)> on the GHZ-type tripartite state.
///
/// Expanded over all 27 Pauli words: the |000><000| branch keeps only ZZZ,
/// the product branch contributes products of sin/cos double angles with Y
/// components vanishing, and the cross branch carries the phase through
/// Re(e^{i phi} (-i)^{#Y}), which cycles cos, sin, -cos, -sin.
pub fn ghz_corr(v2: V3, v3: V3, v4: V3, delta: f64, al: f64, be: f64, ga: f64, phi: f64) -> f64 {
    let (cd, sd) = (delta.cos(), delta.sin());
    let k = 1.0 / (1.0 + 2.0 * cd * sd * al.cos() * be.cos() * ga.cos() * phi.cos());
    let angles = [al, be, ga];
    let vecs = [v2, v3, v4];
    let mut total = 0.0;
    for p2 in 0..3 {
        for p3 in 0..3 {
            for p4 in 0..3 {
                let word = [p2, p3, p4];
                let mut z_branch = 1.0;
                let mut m_branch = 1.0;
                let mut t_mag = 1.0;
                let mut n_y = 0usize;
                for (pauli, ang) in word.iter().zip(angles) {
                    match pauli {
                        0 => {
                            // X
                            z_branch = 0.0;
                            m_branch *= (2.0 * ang).sin();
                            t_mag *= ang.sin();
                        }
                        1 => {
                            // Y
                            z_branch = 0.0;
                            m_branch = 0.0;
                            t_mag *= ang.sin();
                            n_y += 1;
                        }
                        _ => {
                            // Z
                            m_branch *= (2.0 * ang).cos();
                            t_mag *= ang.cos();
                        }
                    }
                }
                let re_phase = match n_y % 4 {
                    0 => phi.cos(),
                    1 => phi.sin(),
                    2 => -phi.cos(),
                    _ => -phi.sin(),
                };
                let coef = cd * cd * z_branch + sd * sd * m_branch + 2.0 * cd * sd * re_phase * t_mag;
                total += vecs[0][p2] * vecs[1][p3] * vecs[2][p4] * coef;
            }
        }
    }
    k * total
}

/// Correlator <(v2.s)(v3.s)(v4.s)> on the W-type tripartite state.
pub fn w_corr(v2: V3, v3: V3, v4: V3, a: f64, b: f64, c: f64) -> f64 {
    let d = 1.0 - a - b - c;
    (d - a - b - c) * v2[2] * v3[2] * v4[2]
        + 2.0 * (c * d).sqrt() * v2[0] * v3[2] * v4[2]
        + 2.0 * (b * d).sqrt() * v2[2] * v3[0] * v4[2]
        + 2.0 * (a * d).sqrt() * v2[2] * v3[2] * v4[0]
        + 2.0 * (b * c).sqrt() * (v2[0] * v3[0] * v4[2] + v2[1] * v3[1] * v4[2])
        + 2.0 * (a * c).sqrt() * (v2[0] * v3[2] * v4[0] + v2[1] * v3[2] * v4[1])
        + 2.0 * (a * b).sqrt() * (v2[2] * v3[0] * v4[0] + v2[2] * v3[1] * v4[1])
}

/// <D4(1)> on |0> (x) |psi3> assembled from a tripartite correlator oracle.
pub fn d41_singleton_first(
    a: [V3; 4],
    b: [V3; 4],
    corr: impl Fn(V3, V3, V3) -> f64,
) -> f64 {
    let mermin = 0.5
        * (-corr(a[1], a[2], a[3]) + corr(a[1], b[2], b[3]) + corr(b[1], a[2], b[3])
            + corr(b[1], b[2], a[3]));
    mermin * 0.5 * (a[0][2] + b[0][2]) + 0.5 * (a[0][2] - b[0][2])
}
