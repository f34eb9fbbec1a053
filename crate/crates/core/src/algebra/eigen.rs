//! Jacobi eigensolvers: complex Hermitian (values) and 3x3 real symmetric
//! (values and vectors). Cyclic sweeps; plenty for dimensions up to 16.

use num_complex::Complex;

use super::matrix::ComplexMatrix;
use crate::scalar::Scalar;

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
/// first, so tiny Hermiticity violations are averaged away.
pub fn hermitian_eigenvalues<T: Scalar>(m: &ComplexMatrix<T>) -> Vec<T> {
    let n = m.dim();
    let mut a: Vec<Complex<T>> = Vec::with_capacity(n * n);
    let half = T::lit(0.5);
    for i in 0..n {
        for j in 0..n {
            let v = (m.get(i, j) + m.get(j, i).conj()).scale(half);
            a.push(v);
        }
    }

    let scale = a
        .iter()
        .map(|x| x.norm())
        .fold(T::zero(), T::max)
        .max(T::one());
    let tol = scale * T::epsilon() * T::lit(8.0);

    for _sweep in 0..100 {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p * n + q].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r <= tol {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let phase = apq.unscale(r);
                let tau = (aqq - app) / (r + r);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;

                // columns p, q: A <- A G with G_pp=c, G_pq=s*phase, G_qp=-s*conj(phase), G_qq=c
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp.scale(c) - akq * phase.conj().scale(s);
                    a[k * n + q] = akp * phase.scale(s) + akq.scale(c);
                }
                // rows p, q: A <- G^dagger A (conjugate-symmetric update)
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk.scale(c) - aqk * phase.scale(s);
                    a[q * n + k] = apk * phase.conj().scale(s) + aqk.scale(c);
                }
                let z = T::zero();
                a[p * n + q] = Complex::new(z, z);
                a[q * n + p] = Complex::new(z, z);
                a[p * n + p] = Complex::new(a[p * n + p].re, z);
                a[q * n + q] = Complex::new(a[q * n + q].re, z);
            }
        }
    }

    let mut vals: Vec<T> = (0..n).map(|i| a[i * n + i].re).collect();
    vals.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    vals
}

/// Largest |eigenvalue| of a Hermitian matrix.
pub fn spectral_radius<T: Scalar>(m: &ComplexMatrix<T>) -> T {
    hermitian_eigenvalues(m)
        .into_iter()
        .map(|v| v.abs())
        .fold(T::zero(), T::max)
}

/// Eigen-decomposition of a real symmetric 3x3 matrix.
/// Returns (eigenvalues ascending, matching eigenvector columns).
pub fn sym3_eigen<T: Scalar>(m: [[T; 3]; 3]) -> ([T; 3], [[T; 3]; 3]) {
    let mut a = m;
    // symmetrize
    for i in 0..3 {
        for j in (i + 1)..3 {
            let v = (a[i][j] + a[j][i]) * T::lit(0.5);
            a[i][j] = v;
            a[j][i] = v;
        }
    }
    let mut v = [[T::zero(); 3]; 3];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = T::one();
    }
    let scale = a
        .iter()
        .flatten()
        .map(|x| x.abs())
        .fold(T::zero(), T::max)
        .max(T::one());
    let tol = scale * T::epsilon() * T::lit(4.0);

    for _sweep in 0..60 {
        let mut off = T::zero();
        for p in 0..3 {
            for q in (p + 1)..3 {
                off = off.max(a[p][q].abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..3 {
                if a[p][q].abs() <= tol {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (T::lit(2.0) * a[p][q]);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                for k in 0..3 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..3 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = T::zero();
                a[q][p] = T::zero();
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).expect("finite"));
    let vals = [a[order[0]][order[0]], a[order[1]][order[1]], a[order[2]][order[2]]];
    let mut vecs = [[T::zero(); 3]; 3];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..3 {
            vecs[row][new_col] = v[row][old_col];
        }
    }
    (vals, vecs)
}
