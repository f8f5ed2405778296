//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods whenever std is linked
use num_traits::Float;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::matrix::{inner, norm, CMatrix, ZERO};

/// Eigenvalues in descending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// Eigenvectors as columns, same order as `values`.
    pub vectors: CMatrix,
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes a Hermitian matrix. Only the Hermitian part of `h` is used.
pub fn jacobi_hermitian(h: &CMatrix, tol: &Tolerances) -> Result<Eigen> {
    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm().max(1.0);
    let threshold = tol.eigen * scale;

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a);
    while off > threshold {
        if sweeps == tol.max_sweeps {
            return Err(Error::ConvergenceFailure { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        off = off_diagonal_norm(&a);
    }

    let values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    Ok(canonicalize(values, &v, tol))
}

/// Applies the unitary rotation G on the (p, q) plane that zeroes a[p][q]:
/// a ← G† a G, v ← v G.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let h = b.norm();
    if h <= f64::MIN_POSITIVE {
        return;
    }
    // Phase e^{-iα} moves the block to a real symmetric one, then a real rotation.
    let phase = b / h;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * h);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = [[c, s], [-s e^{-iα}, c e^{-iα}]] in the (p, q) rows and columns.
    let pc = phase.conj();
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = pc * (-s);
    let g_qq = pc * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Sorts descending and replaces each degenerate cluster's eigenvectors by a
/// basis that depends only on the cluster's eigenspace.
fn canonicalize(values: Vec<f64>, v: &CMatrix, tol: &Tolerances) -> Eigen {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap_or(Ordering::Equal));

    let sorted_values: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let sorted_vectors: Vec<Vec<Complex64>> = order.iter().map(|&i| v.column(i)).collect();

    let mut out_vectors: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && sorted_values[end - 1] - sorted_values[end] <= tol.degeneracy {
            end += 1;
        }
        if end - start == 1 {
            let mut col = sorted_vectors[start].clone();
            fix_phase(&mut col);
            out_vectors.push(col);
        } else {
            out_vectors.extend(cluster_basis(&sorted_vectors[start..end], n));
        }
        start = end;
    }

    let vectors = CMatrix::from_columns(&out_vectors).expect("square by construction");
    Eigen { values: sorted_values, vectors }
}

/// Gram–Schmidt of the eigenspace projections of e₀, e₁, … taken in input order.
fn cluster_basis(cluster: &[Vec<Complex64>], n: usize) -> Vec<Vec<Complex64>> {
    let m = cluster.len();
    // Some remaining projection always has norm >= 1/sqrt(n).
    let accept = 0.5 / (n as f64).sqrt();
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    for k in 0..n {
        if basis.len() == m {
            break;
        }
        // P e_k = Σ v (v_k)*
        let mut w: Vec<Complex64> = (0..n).map(|r| cluster.iter().map(|col| col[r] * col[k].conj()).sum()).collect();
        for _ in 0..2 {
            for b in &basis {
                let c = inner(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let len = norm(&w);
        if len >= accept {
            for wi in w.iter_mut() {
                *wi /= len;
            }
            fix_phase(&mut w);
            basis.push(w);
        }
    }
    basis.sort_by_key(|x| core::cmp::Reverse(lexicographic_key(x)));
    basis
}

fn lexicographic_key(v: &[Complex64]) -> Vec<(i64, i64)> {
    v.iter().map(|z| ((z.re / 1e-9).round() as i64, (z.im / 1e-9).round() as i64)).collect()
}

/// Rotates the global phase so the first non-negligible component is real and positive.
pub(crate) fn fix_phase(v: &mut [Complex64]) {
    if let Some(z) = v.iter().copied().find(|z| z.norm() > 1e-10) {
        let u = z.conj() / z.norm();
        for x in v.iter_mut() {
            *x *= u;
        }
        if let Some(first) = v.iter_mut().find(|z| z.norm() > 1e-10) {
            first.im = 0.0;
        }
    }
}
