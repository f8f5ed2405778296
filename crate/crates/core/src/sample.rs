//! Random states, kets and unitaries for property checks and basis generation.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods whenever std is linked
use num_traits::Float;
use rand_core::RngCore;

use crate::density::DensityMatrix;
use crate::eigen::fix_phase;
use crate::matrix::{inner, norm, CMatrix, Unitary};
use crate::purestate::PureKet;

fn uniform<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    // 53 random bits in (0, 1].
    ((rng.next_u64() >> 11) as f64 + 1.0) / (1u64 << 53) as f64
}

/// Standard normal deviate (Box–Muller).
pub fn gaussian<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    let u1 = uniform(rng);
    let u2 = uniform(rng);
    (-2.0 * u1.ln()).sqrt() * (2.0 * core::f64::consts::PI * u2).cos()
}

pub fn complex_gaussian<R: RngCore + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

/// Haar-random unitary: QR of a complex Ginibre matrix with column phases fixed.
pub fn random_unitary<R: RngCore + ?Sized>(dim: usize, rng: &mut R) -> Unitary {
    loop {
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
        let mut ok = true;
        for _ in 0..dim {
            let mut v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
            for _ in 0..2 {
                for b in &cols {
                    let c = inner(b, &v);
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi -= c * bi;
                    }
                }
            }
            let n = norm(&v);
            if n < 1e-8 {
                ok = false;
                break;
            }
            v.iter_mut().for_each(|x| *x /= n);
            cols.push(v);
        }
        if ok {
            let m = CMatrix::from_columns(&cols).expect("square");
            return Unitary::new(m).expect("Gram-Schmidt output is unitary");
        }
    }
}

/// Haar-random pure state.
pub fn random_ket<R: RngCore + ?Sized>(dim: usize, rng: &mut R) -> PureKet {
    let mut v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    let n = norm(&v);
    v.iter_mut().for_each(|x| *x /= n);
    fix_phase(&mut v);
    PureKet::new(v).expect("normalized")
}

/// Random state ρ = GG†/Tr(GG†) with G a d×k Ginibre matrix and rank k drawn
/// uniformly from 1..=d, so pure, rank-deficient and full-rank states all occur.
pub fn random_density<R: RngCore + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let rank = 1 + (rng.next_u64() % dim as u64) as usize;
    random_density_of_rank(dim, rank, rng)
}

pub fn random_density_of_rank<R: RngCore + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> DensityMatrix {
    let g: Vec<Vec<Complex64>> = (0..dim).map(|_| (0..rank).map(|_| complex_gaussian(rng)).collect()).collect();
    let mut m = CMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = (0..rank).map(|k| g[i][k] * g[j][k].conj()).sum();
        }
    }
    let t = m.trace().re;
    DensityMatrix::from_trusted(m.scale(1.0 / t).hermitian_part())
}

/// Uniform point on the probability simplex.
pub fn random_probabilities<R: RngCore + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    let e: Vec<f64> = (0..dim).map(|_| -uniform(rng).ln()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_states_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 2..=6 {
            for _ in 0..20 {
                let rho = random_density(d, &mut rng);
                assert!(DensityMatrix::new(rho.into_matrix()).is_ok());
                assert!(random_unitary(d, &mut rng).matrix().unitarity_residual() < 1e-12);
                let p = random_probabilities(d, &mut rng);
                assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }
}
