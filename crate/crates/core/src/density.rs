//! Density matrices: validation, trace algebra, spectra, entropy and classification.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods whenever std is linked
use num_traits::Float;

use crate::config::Tolerances;
use crate::eigen::jacobi_hermitian;
use crate::error::{check_dims, Error, Result};
use crate::matrix::{CMatrix, Unitary};

/// A d×d Hermitian, positive semi-definite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    /// Validates `m` with the default tolerances.
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(m: CMatrix, tol: &Tolerances) -> Result<Self> {
        let d = m.dim();
        if d < 2 || d > tol.max_dim {
            return Err(Error::DimensionOutOfRange { dim: d, min: 2, max: tol.max_dim });
        }
        let residual = m.hermitian_residual();
        if residual.is_nan() || residual > tol.validation {
            return Err(Error::NotHermitian { residual });
        }
        let m = m.hermitian_part();
        let residual = (m.trace().re - 1.0).abs();
        if residual.is_nan() || residual > tol.validation {
            return Err(Error::TraceNotOne { residual });
        }
        let eig = jacobi_hermitian(&m, tol)?;
        let min_eigenvalue = eig.values[d - 1];
        if min_eigenvalue < -tol.validation {
            return Err(Error::NotPositiveSemiDefinite { min_eigenvalue });
        }
        Ok(DensityMatrix { m })
    }

    /// Wraps a matrix already known to be a valid state.
    pub(crate) fn from_trusted(m: CMatrix) -> Self {
        DensityMatrix { m }
    }

    /// diag(p₀, …, p_{d−1}); the probabilities must form a distribution.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(CMatrix::from_real_diagonal(probs))
    }

    /// |k⟩⟨k| in dimension `dim`.
    pub fn basis_projector(dim: usize, k: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        m[(k, k)] = Complex64::new(1.0, 0.0);
        DensityMatrix { m }
    }

    /// The maximally mixed state I/d. Unlike [`DensityMatrix::new`] this admits d = 1.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 || dim > Tolerances::DEFAULT.max_dim {
            return Err(Error::DimensionOutOfRange { dim, min: 1, max: Tolerances::DEFAULT.max_dim });
        }
        Ok(DensityMatrix { m: CMatrix::identity(dim).scale(1.0 / dim as f64) })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    /// Real diagonal (the measurement probabilities in the representation basis).
    pub fn diagonal_probabilities(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.m[(i, i)].re).collect()
    }

    /// Tr(ρ²).
    pub fn purity(&self) -> f64 {
        self.m.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Eigenvalues p₁ ≥ … ≥ p_d with orthonormal eigenvectors as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl Spectrum {
    /// Eigenvalues with the small negative drift clamped to zero.
    pub fn probabilities(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|&p| p.max(0.0)).collect()
    }

    /// The eigenbasis as a unitary (columns are eigenvectors).
    pub fn basis(&self) -> Unitary {
        Unitary::with_tolerances(self.eigenvectors.clone(), &Tolerances::DEFAULT.with_validation(1e-8))
            .expect("Jacobi eigenvectors are orthonormal")
    }

    /// Σ pᵢ |vᵢ⟩⟨vᵢ|
    pub fn reconstruct(&self) -> CMatrix {
        let u = &self.eigenvectors;
        CMatrix::from_real_diagonal(&self.eigenvalues).conjugate_by(u)
    }
}

/// Tr(a·b) for two states of equal dimension.
pub fn trace_product(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    let n = a.dim();
    let mut t = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            t += a.m[(i, j)] * b.m[(j, i)];
        }
    }
    debug_assert!(t.im.abs() <= 1e-12, "trace of Hermitian product has imaginary part {}", t.im);
    Ok(t.re)
}

/// Σᵢⱼ |aᵢⱼ − bᵢⱼ|².
pub fn frobenius_norm_sq(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    Ok(a.m.frobenius_dist_sq(&b.m))
}

pub fn eig_hermitian(rho: &DensityMatrix) -> Result<Spectrum> {
    eig_hermitian_with(rho, &Tolerances::DEFAULT)
}

pub fn eig_hermitian_with(rho: &DensityMatrix, tol: &Tolerances) -> Result<Spectrum> {
    let e = jacobi_hermitian(&rho.m, tol)?;
    Ok(Spectrum { eigenvalues: e.values, eigenvectors: e.vectors })
}

/// Von Neumann entropy S in nats and the entropic number of states W = e^S.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entropy {
    pub s: f64,
    pub w: f64,
}

pub fn entropy_and_w(rho: &DensityMatrix) -> Result<Entropy> {
    let spectrum = eig_hermitian(rho)?;
    Ok(entropy_of_probabilities(&spectrum.probabilities()))
}

/// −Σ p ln p with 0·ln 0 = 0.
pub fn entropy_of_probabilities(probs: &[f64]) -> Entropy {
    let s: f64 = probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).sum::<f64>().max(0.0);
    Entropy { s, w: s.exp() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateClass {
    /// Tr ρ² = 1: on the extremal boundary.
    Pure,
    /// Mixed with a zero eigenvalue (det ρ = 0): on the boundary of the statespace.
    SurfaceMixed,
    Interior,
}

impl StateClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StateClass::Pure => "Pure",
            StateClass::SurfaceMixed => "SurfaceMixed",
            StateClass::Interior => "Interior",
        }
    }
}

pub fn classify(rho: &DensityMatrix) -> Result<StateClass> {
    classify_with(rho, &Tolerances::DEFAULT)
}

pub fn classify_with(rho: &DensityMatrix, tol: &Tolerances) -> Result<StateClass> {
    if (rho.purity() - 1.0).abs() <= tol.classification {
        return Ok(StateClass::Pure);
    }
    let spectrum = eig_hermitian_with(rho, tol)?;
    let smallest = spectrum.probabilities()[rho.dim() - 1];
    if smallest <= tol.classification {
        Ok(StateClass::SurfaceMixed)
    } else {
        Ok(StateClass::Interior)
    }
}

/// u ρ u†.
pub fn change_basis(rho: &DensityMatrix, u: &Unitary) -> Result<DensityMatrix> {
    check_dims(rho.dim(), u.dim())?;
    Ok(DensityMatrix::from_trusted(rho.m.conjugate_by(u.matrix()).hermitian_part()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn real(rows: &[&[f64]]) -> CMatrix {
        let rows: Vec<Vec<Complex64>> =
            rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
        CMatrix::from_rows(&rows).unwrap()
    }

    fn worked_example() -> DensityMatrix {
        DensityMatrix::new(real(&[&[0.5, 1.0 / 6.0], &[1.0 / 6.0, 0.5]])).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(DensityMatrix::new(real(&[&[1.0, 0.0], &[0.0, 0.0]])).is_ok());
        assert!(DensityMatrix::new(real(&[&[0.5, 1.0 / 6.0], &[1.0 / 6.0, 0.5]])).is_ok());
        // 2×2 eigenvalue formula: ½ ± √((Δ/2)² + |c|²) with Δ = 0.4, c = 0.5.
        let expected_min = 0.5 - (0.2f64 * 0.2 + 0.25).sqrt();
        match DensityMatrix::new(real(&[&[0.7, 0.5], &[0.5, 0.3]])) {
            Err(Error::NotPositiveSemiDefinite { min_eigenvalue }) => {
                assert!((min_eigenvalue - expected_min).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validate_error_paths() {
        let m = CMatrix::from_rows(&[
            vec![Complex64::new(0.5, 0.0), Complex64::new(0.1, 0.1)],
            vec![Complex64::new(0.1, 0.1), Complex64::new(0.5, 0.0)],
        ])
        .unwrap();
        match DensityMatrix::new(m) {
            Err(Error::NotHermitian { residual }) => assert!((residual - 0.2).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
        match DensityMatrix::new(real(&[&[0.6, 0.0], &[0.0, 0.6]])) {
            Err(Error::TraceNotOne { residual }) => assert!((residual - 0.2).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(DensityMatrix::new(real(&[&[1.0]])), Err(Error::DimensionOutOfRange { dim: 1, .. })));
        let tol = Tolerances { max_dim: 3, ..Tolerances::DEFAULT };
        assert!(matches!(
            DensityMatrix::with_tolerances(CMatrix::identity(4).scale(0.25), &tol),
            Err(Error::DimensionOutOfRange { dim: 4, .. })
        ));
    }

    #[test]
    fn trace_product_examples() {
        let half = DensityMatrix::maximally_mixed(2).unwrap();
        assert_eq!(trace_product(&half, &half).unwrap(), 0.5);
        let p0 = DensityMatrix::basis_projector(2, 0);
        let p1 = DensityMatrix::basis_projector(2, 1);
        assert_eq!(trace_product(&p0, &p1).unwrap(), 0.0);
        let rho = worked_example();
        // 0.25 + 1/36 + 1/36 + 0.25
        assert!((trace_product(&rho, &rho).unwrap() - 5.0 / 9.0).abs() < 1e-15);
        assert!(matches!(
            trace_product(&rho, &DensityMatrix::maximally_mixed(3).unwrap()),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn frobenius_examples() {
        let rho = worked_example();
        assert_eq!(frobenius_norm_sq(&rho, &rho).unwrap(), 0.0);
        let p0 = DensityMatrix::basis_projector(2, 0);
        let p1 = DensityMatrix::basis_projector(2, 1);
        assert_eq!(frobenius_norm_sq(&p0, &p1).unwrap(), 2.0);
        let a = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
        let b = DensityMatrix::maximally_mixed(2).unwrap();
        assert!((frobenius_norm_sq(&a, &b).unwrap() - 0.08).abs() < 1e-15);
    }

    #[test]
    fn eig_examples() {
        let s = eig_hermitian(&worked_example()).unwrap();
        assert!((s.eigenvalues[0] - 2.0 / 3.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 1.0 / 3.0).abs() < 1e-14);
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let v0 = s.eigenvectors.column(0);
        let v1 = s.eigenvectors.column(1);
        assert!((v0[0] - Complex64::new(h, 0.0)).norm() < 1e-14);
        assert!((v0[1] - Complex64::new(h, 0.0)).norm() < 1e-14);
        assert!((v1[0] - Complex64::new(h, 0.0)).norm() < 1e-14);
        assert!((v1[1] - Complex64::new(-h, 0.0)).norm() < 1e-14);

        let s = eig_hermitian(&DensityMatrix::maximally_mixed(3).unwrap()).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0 / 3.0; 3]);

        let s = eig_hermitian(&DensityMatrix::diagonal(&[0.7, 0.3]).unwrap()).unwrap();
        assert_eq!(s.eigenvalues, vec![0.7, 0.3]);
        assert_eq!(s.eigenvectors, CMatrix::identity(2));
    }

    #[test]
    fn entropy_examples() {
        let e = entropy_and_w(&DensityMatrix::basis_projector(2, 0)).unwrap();
        assert_eq!((e.s, e.w), (0.0, 1.0));
        let e = entropy_and_w(&DensityMatrix::maximally_mixed(3).unwrap()).unwrap();
        assert!((e.s - 3f64.ln()).abs() < 1e-12 && (e.w - 3.0).abs() < 1e-12);
        let e = entropy_and_w(&DensityMatrix::diagonal(&[0.5, 0.5, 0.0]).unwrap()).unwrap();
        assert!((e.s - 2f64.ln()).abs() < 1e-12 && (e.w - 2.0).abs() < 1e-12);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&DensityMatrix::basis_projector(2, 0)).unwrap(), StateClass::Pure);
        assert_eq!(classify(&DensityMatrix::diagonal(&[0.5, 0.5, 0.0]).unwrap()).unwrap(), StateClass::SurfaceMixed);
        assert_eq!(classify(&DensityMatrix::maximally_mixed(2).unwrap()).unwrap(), StateClass::Interior);
    }

    #[test]
    fn change_basis_examples() {
        let rho = worked_example();
        let out = change_basis(&rho, &Unitary::hadamard()).unwrap();
        let target = CMatrix::from_real_diagonal(&[2.0 / 3.0, 1.0 / 3.0]);
        assert!(out.matrix().frobenius_dist_sq(&target).sqrt() < 1e-12);
        assert_eq!(change_basis(&rho, &Unitary::identity(2)).unwrap(), rho);
        let mixed = DensityMatrix::maximally_mixed(3).unwrap();
        let out = change_basis(&mixed, &Unitary::fourier(3)).unwrap();
        assert!(out.matrix().frobenius_dist_sq(mixed.matrix()) < 1e-30);
    }
}
