//! Euclidean embedding of d-level states in ℝ^(d²−1).
//!
//! The chart uses generalized Gell-Mann generators λₖ normalized so that
//! Tr(λⱼλₖ) = 2δⱼₖ, with coordinates cₖ = ½Tr(ρλₖ). With this scaling the
//! Euclidean distance between coordinate vectors is
//! r_ab = √(½Tr ρ_a² + ½Tr ρ_b² − Tr ρ_aρ_b), pure qubit states sit on a sphere
//! of radius ½, and ρ = I/d + Σ cₖλₖ.
//!
//! Generator order (frozen, coordinates depend on it):
//! 1. symmetric `E_jk + E_kj` for j < k, row-major over (j, k);
//! 2. antisymmetric `−i E_jk + i E_kj` for j < k, same order;
//! 3. diagonal `√(2/(l(l+1))) · diag(1, …, 1, −l, 0, …)` for l = 1 … d−1.
//!
//! For d = 2 this gives (σx, σy, σz).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods whenever std is linked
use num_traits::Float;

use crate::config::Tolerances;
use crate::density::{frobenius_norm_sq, trace_product, DensityMatrix};
use crate::error::{check_dims, Error, Result};
use crate::matrix::CMatrix;

/// Upper-triangle index pairs (j, k), j < k, in row-major order.
pub fn offdiagonal_pairs(dim: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..dim).flat_map(move |j| ((j + 1)..dim).map(move |k| (j, k)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBasis {
    dim: usize,
    generators: Vec<CMatrix>,
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }
}

pub fn generator_basis(dim: usize) -> Result<GeneratorBasis> {
    let max = Tolerances::DEFAULT.max_dim;
    if dim < 2 || dim > max {
        return Err(Error::DimensionOutOfRange { dim, min: 2, max });
    }
    let mut generators = Vec::with_capacity(dim * dim - 1);
    for (j, k) in offdiagonal_pairs(dim) {
        let mut m = CMatrix::zeros(dim);
        m[(j, k)] = Complex64::new(1.0, 0.0);
        m[(k, j)] = Complex64::new(1.0, 0.0);
        generators.push(m);
    }
    for (j, k) in offdiagonal_pairs(dim) {
        let mut m = CMatrix::zeros(dim);
        m[(j, k)] = Complex64::new(0.0, -1.0);
        m[(k, j)] = Complex64::new(0.0, 1.0);
        generators.push(m);
    }
    for l in 1..dim {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut diag = vec![0.0; dim];
        diag[..l].iter_mut().for_each(|x| *x = norm);
        diag[l] = -(l as f64) * norm;
        generators.push(CMatrix::from_real_diagonal(&diag));
    }
    Ok(GeneratorBasis { dim, generators })
}

/// Generalized Bloch vector: coordinates relative to the maximally mixed state I/d.
#[derive(Debug, Clone, PartialEq)]
pub struct StatePoint {
    dim: usize,
    coords: Vec<f64>,
}

impl StatePoint {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionOutOfRange { dim, min: 2, max: Tolerances::DEFAULT.max_dim });
        }
        check_dims(dim * dim - 1, coords.len())?;
        Ok(StatePoint { dim, coords })
    }

    pub fn origin(dim: usize) -> Self {
        StatePoint { dim, coords: vec![0.0; dim * dim - 1] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Distance to the maximally mixed origin.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn distance_to(&self, other: &StatePoint) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &StatePoint) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }
}

/// cₖ = ½Tr(ρλₖ), evaluated directly from the matrix entries.
pub fn to_statepoint(rho: &DensityMatrix) -> StatePoint {
    StatePoint { dim: rho.dim(), coords: hermitian_coords(rho.matrix()) }
}

pub(crate) fn hermitian_coords(m: &CMatrix) -> Vec<f64> {
    let d = m.dim();
    let mut coords = Vec::with_capacity(d * d - 1);
    // ½Tr(ρ(E_jk + E_kj)) = Re ρ_jk
    coords.extend(offdiagonal_pairs(d).map(|(j, k)| 0.5 * (m[(j, k)].re + m[(k, j)].re)));
    // ½Tr(ρ(−iE_jk + iE_kj)) = −Im ρ_jk
    coords.extend(offdiagonal_pairs(d).map(|(j, k)| 0.5 * (m[(k, j)].im - m[(j, k)].im)));
    let mut partial = 0.0;
    for l in 1..d {
        partial += m[(l - 1, l - 1)].re;
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        coords.push(0.5 * norm * (partial - l as f64 * m[(l, l)].re));
    }
    coords
}

/// I/d + Σ cₖλₖ, without any positivity check.
pub(crate) fn hermitian_from_coords(dim: usize, coords: &[f64]) -> CMatrix {
    let mut m = CMatrix::identity(dim).scale(1.0 / dim as f64);
    let pairs = dim * (dim - 1) / 2;
    for (n, (j, k)) in offdiagonal_pairs(dim).enumerate() {
        let z = Complex64::new(coords[n], -coords[pairs + n]);
        m[(j, k)] += z;
        m[(k, j)] += z.conj();
    }
    let diag = &coords[2 * pairs..];
    for (idx, &c) in diag.iter().enumerate() {
        let l = idx + 1;
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        for i in 0..l {
            m[(i, i)].re += c * norm;
        }
        m[(l, l)].re -= c * norm * l as f64;
    }
    m
}

/// Inverse chart. Fails when the point lies outside the statespace.
pub fn from_statepoint(p: &StatePoint) -> Result<DensityMatrix> {
    DensityMatrix::new(hermitian_from_coords(p.dim, &p.coords))
}

/// r_ab = √(½Tr ρ_a² + ½Tr ρ_b² − Tr ρ_aρ_b).
///
/// Evaluated as √(½‖ρ_a − ρ_b‖²_F), which is the same quantity without the
/// cancellation of the three-term form near coincident states.
pub fn distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    Ok((0.5 * frobenius_norm_sq(a, b)?).sqrt())
}

/// √(½Tr ρ²): length of the statevector from the infinite-dimensional
/// maximally mixed origin.
pub fn origin_radius(rho: &DensityMatrix) -> f64 {
    (0.5 * rho.purity()).sqrt()
}

/// Angle between the statevectors of `a` and `b` drawn from the
/// infinite-dimensional origin: arccos(Tr(ρ_aρ_b) / (2 r_a r_b)).
///
/// Origin radii are at least 1/√(2d) for valid states, so this is defined for
/// every pair including maximally mixed states.
pub fn angle(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    let overlap = trace_product(a, b)?;
    let ra = origin_radius(a);
    let rb = origin_radius(b);
    if ra <= Tolerances::DEFAULT.validation || rb <= Tolerances::DEFAULT.validation {
        return Err(Error::ZeroStatevector);
    }
    Ok((overlap / (2.0 * ra * rb)).clamp(-1.0, 1.0).acos())
}

/// Angle at `vertex` between the segments to `a` and `b`, in the chart
/// (coordinates measured from the state `vertex`).
///
/// Errors with [`Error::ZeroStatevector`] when `a` or `b` coincides with the vertex.
pub fn angle_at(vertex: &DensityMatrix, a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    check_dims(vertex.dim(), a.dim())?;
    check_dims(vertex.dim(), b.dim())?;
    let v = to_statepoint(vertex);
    let pa = to_statepoint(a);
    let pb = to_statepoint(b);
    let da: Vec<f64> = pa.coords.iter().zip(&v.coords).map(|(x, y)| x - y).collect();
    let db: Vec<f64> = pb.coords.iter().zip(&v.coords).map(|(x, y)| x - y).collect();
    let na = da.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = db.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na <= Tolerances::DEFAULT.validation || nb <= Tolerances::DEFAULT.validation {
        return Err(Error::ZeroStatevector);
    }
    let dot: f64 = da.iter().zip(&db).map(|(x, y)| x * y).sum();
    Ok((dot / (na * nb)).clamp(-1.0, 1.0).acos())
}
