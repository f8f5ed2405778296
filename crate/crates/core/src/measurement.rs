//! Projective measurements, leaf-confined decoherence and tomography.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods whenever std is linked
use num_traits::Float;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Tolerances;
use crate::density::DensityMatrix;
use crate::eigen::jacobi_hermitian;
use crate::embedding::{hermitian_coords, hermitian_from_coords};
use crate::error::{check_dims, Error, Result};
use crate::matrix::{CMatrix, Unitary};
use crate::sample::random_unitary;
use crate::simplex::ProbabilityVector;

/// Orthonormal basis |Bᵢ⟩, stored as the columns of a unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis(Unitary);

impl MeasurementBasis {
    pub fn new(u: Unitary) -> Self {
        MeasurementBasis(u)
    }

    pub fn computational(dim: usize) -> Self {
        MeasurementBasis(Unitary::identity(dim))
    }

    /// Qubit eigenbasis of σx: |+⟩, |−⟩.
    pub fn pauli_x() -> Self {
        MeasurementBasis(Unitary::hadamard())
    }

    /// Qubit eigenbasis of σy: (|0⟩ ± i|1⟩)/√2.
    pub fn pauli_y() -> Self {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let m = CMatrix::from_rows(&[
            vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            vec![Complex64::new(0.0, h), Complex64::new(0.0, -h)],
        ])
        .expect("2x2");
        MeasurementBasis(Unitary::new(m).expect("unitary"))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.0.column(i)
    }

    pub fn unitary(&self) -> &Unitary {
        &self.0
    }

    /// |Bᵢ⟩⟨Bᵢ|.
    pub fn projector(&self, i: usize) -> DensityMatrix {
        let v = self.vector(i);
        DensityMatrix::from_trusted(CMatrix::outer(&v, &v).hermitian_part())
    }

    /// ρ written in this basis, U†ρU. Its diagonal is the outcome
    /// distribution and its off-diagonals are the leaf coordinates.
    pub fn represent(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        check_dims(rho.dim(), self.dim())?;
        Ok(DensityMatrix::from_trusted(self.rotate_in(rho.matrix()).hermitian_part()))
    }

    /// U†ρU: the state written in this basis.
    fn rotate_in(&self, m: &CMatrix) -> CMatrix {
        m.conjugate_by(&self.0.matrix().adjoint())
    }

    /// UσU†: back to the computational basis.
    fn rotate_out(&self, m: &CMatrix) -> CMatrix {
        m.conjugate_by(self.0.matrix())
    }
}

impl From<Unitary> for MeasurementBasis {
    fn from(u: Unitary) -> Self {
        MeasurementBasis(u)
    }
}

/// pᵢ = ⟨Bᵢ|ρ|Bᵢ⟩.
pub fn measure_probabilities(rho: &DensityMatrix, basis: &MeasurementBasis) -> Result<ProbabilityVector> {
    check_dims(rho.dim(), basis.dim())?;
    let probs = (0..basis.dim())
        .map(|i| {
            let v = basis.vector(i);
            let rv = rho.matrix().mul_vec(&v);
            v.iter().zip(&rv).map(|(a, b)| a.conj() * b).sum::<Complex64>().re
        })
        .collect();
    ProbabilityVector::new(probs)
}

/// Decoherence rate used by [`decohere`].
pub const DEFAULT_DECOHERENCE_RATE: f64 = 1.0;

/// Uniform exponential damping of the off-diagonal elements in `basis`,
/// with rate 1. The diagonal in that basis is untouched, so the state moves
/// along a straight line inside its decoherence leaf toward the leaf centre.
///
/// This dynamics is a modelling choice: only the path geometry (leaf-confined,
/// ending on the probability simplex) is fixed.
pub fn decohere(rho: &DensityMatrix, basis: &MeasurementBasis, t: f64) -> Result<DensityMatrix> {
    decohere_with_rate(rho, basis, t, DEFAULT_DECOHERENCE_RATE)
}

pub fn decohere_with_rate(rho: &DensityMatrix, basis: &MeasurementBasis, t: f64, rate: f64) -> Result<DensityMatrix> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeTime { t });
    }
    check_dims(rho.dim(), basis.dim())?;
    let factor = (-rate * t).exp();
    let mut sigma = basis.rotate_in(rho.matrix());
    let n = sigma.dim();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sigma[(i, j)] *= factor;
            }
        }
    }
    Ok(DensityMatrix::from_trusted(basis.rotate_out(&sigma).hermitian_part()))
}

/// Observed diagonal frequencies, one probability vector per basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TomographyRecord {
    pub entries: Vec<(MeasurementBasis, ProbabilityVector)>,
}

impl TomographyRecord {
    pub fn new(entries: Vec<(MeasurementBasis, ProbabilityVector)>) -> Result<Self> {
        let (first, _) = entries.first().ok_or(Error::EmptyRecord)?;
        let d = first.dim();
        for (b, p) in &entries {
            check_dims(d, b.dim())?;
            check_dims(d, p.dim())?;
        }
        Ok(TomographyRecord { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries[0].0.dim()
    }
}

/// Exact outcome probabilities of `rho` in every basis.
pub fn forward_simulate(rho: &DensityMatrix, bases: &[MeasurementBasis]) -> Result<TomographyRecord> {
    let entries = bases.iter().map(|b| Ok((b.clone(), measure_probabilities(rho, b)?))).collect::<Result<Vec<_>>>()?;
    TomographyRecord::new(entries)
}

/// Seed of the deterministic unitary sequence behind [`default_bases`].
pub const DEFAULT_BASIS_SEED: u64 = 0x5151_7a7e;

/// An informationally complete basis set: the three Pauli bases for d = 2;
/// otherwise the computational basis followed by Haar-random bases from a
/// fixed-seed generator, extended until the linear constraints reach rank d²−1.
pub fn default_bases(dim: usize) -> Vec<MeasurementBasis> {
    if dim == 2 {
        return vec![MeasurementBasis::computational(2), MeasurementBasis::pauli_x(), MeasurementBasis::pauli_y()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_BASIS_SEED ^ dim as u64);
    let mut bases = vec![MeasurementBasis::computational(dim)];
    while bases.len() < dim + 1 || constraint_rank(&bases) < dim * dim - 1 {
        bases.push(MeasurementBasis(random_unitary(dim, &mut rng)));
    }
    bases
}

/// Rows ⟨Bᵢ|λₖ|Bᵢ⟩ = 2·(½Tr(|Bᵢ⟩⟨Bᵢ|λₖ)) of the linear model pᵢ = 1/d + Σₖ cₖ⟨Bᵢ|λₖ|Bᵢ⟩.
fn design_rows(bases: &[MeasurementBasis]) -> Vec<Vec<f64>> {
    let mut rows = Vec::new();
    for b in bases {
        for i in 0..b.dim() {
            let v = b.vector(i);
            let row = hermitian_coords(&CMatrix::outer(&v, &v)).into_iter().map(|x| 2.0 * x).collect();
            rows.push(row);
        }
    }
    rows
}

fn normal_matrix(rows: &[Vec<f64>], n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n);
    for row in rows {
        for i in 0..n {
            for j in 0..n {
                m[(i, j)].re += row[i] * row[j];
            }
        }
    }
    m
}

const PINV_CUTOFF: f64 = 1e-10;

fn constraint_rank(bases: &[MeasurementBasis]) -> usize {
    let d = bases[0].dim();
    let n = d * d - 1;
    let normal = normal_matrix(&design_rows(bases), n);
    let e = jacobi_hermitian(&normal, &Tolerances::DEFAULT).expect("small symmetric matrix");
    let top = e.values[0].max(f64::MIN_POSITIVE);
    e.values.iter().filter(|&&l| l > PINV_CUTOFF * top).count()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub rho: DensityMatrix,
    /// Root-sum-square misfit of the least-squares fit plus the Frobenius
    /// distance moved by the projection onto the PSD cone.
    pub residual: f64,
}

/// Minimum-norm least-squares state over Hermitian unit-trace matrices,
/// projected onto the PSD cone.
pub fn reconstruct(record: &TomographyRecord) -> Result<Reconstruction> {
    let d = record.dim();
    let n = d * d - 1;
    let bases: Vec<MeasurementBasis> = record.entries.iter().map(|(b, _)| b.clone()).collect();
    let rows = design_rows(&bases);
    let rhs: Vec<f64> =
        record.entries.iter().flat_map(|(_, p)| p.as_slice().iter().map(move |x| x - 1.0 / d as f64)).collect();

    let normal = normal_matrix(&rows, n);
    let mut atb = vec![0.0; n];
    for (row, y) in rows.iter().zip(&rhs) {
        for k in 0..n {
            atb[k] += row[k] * y;
        }
    }

    // Pseudo-inverse through the eigendecomposition of the normal matrix.
    let e = jacobi_hermitian(&normal, &Tolerances::DEFAULT)?;
    let top = e.values[0].max(f64::MIN_POSITIVE);
    let mut coords = vec![0.0; n];
    for (k, &lambda) in e.values.iter().enumerate() {
        if lambda <= PINV_CUTOFF * top {
            continue;
        }
        let v: Vec<f64> = e.vectors.column(k).iter().map(|z| z.re).collect();
        let proj: f64 = v.iter().zip(&atb).map(|(a, b)| a * b).sum::<f64>() / lambda;
        for (c, vi) in coords.iter_mut().zip(&v) {
            *c += proj * vi;
        }
    }

    let misfit: f64 = rows
        .iter()
        .zip(&rhs)
        .map(|(row, y)| {
            let fit: f64 = row.iter().zip(&coords).map(|(a, b)| a * b).sum();
            (fit - y) * (fit - y)
        })
        .sum();

    let fitted = hermitian_from_coords(d, &coords);
    let (rho, moved) = project_to_states(&fitted)?;
    Ok(Reconstruction { rho, residual: misfit.sqrt() + moved })
}

/// Clamps negative eigenvalues to zero and renormalizes the trace.
fn project_to_states(h: &CMatrix) -> Result<(DensityMatrix, f64)> {
    let e = jacobi_hermitian(h, &Tolerances::DEFAULT)?;
    if e.values.iter().all(|&l| l >= 0.0) {
        return Ok((DensityMatrix::from_trusted(h.hermitian_part()), 0.0));
    }
    let clamped: Vec<f64> = e.values.iter().map(|&l| l.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    let probs: Vec<f64> = clamped.iter().map(|l| l / total).collect();
    let projected = CMatrix::from_real_diagonal(&probs).conjugate_by(&e.vectors).hermitian_part();
    let moved = projected.frobenius_dist_sq(h).sqrt();
    Ok((DensityMatrix::from_trusted(projected), moved))
}
