//! Decoherence leaves: states sharing a diagonal in the representation basis.
//!
//! All operations use the basis the matrix is written in. Rotate first with
//! [`crate::change_basis`] to work in another basis.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods whenever std is linked
use num_traits::Float;

use crate::density::DensityMatrix;
use crate::embedding::offdiagonal_pairs;
use crate::error::{check_dims, Result};
use crate::matrix::CMatrix;
use crate::simplex::ProbabilityVector;

/// Off-diagonal element ρ_ij (i < j) in polar form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coherence {
    pub magnitude: f64,
    /// In (−π, π]; zero when the magnitude is zero.
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeafCoordinates {
    pub diag: ProbabilityVector,
    /// Row-major over (0,1), (0,2), …, (1,2), … .
    pub offdiag: Vec<Coherence>,
}

impl LeafCoordinates {
    pub fn dim(&self) -> usize {
        self.diag.dim()
    }

    /// r_c = √(Σ magnitudes²), the distance from the leaf centre.
    pub fn radius(&self) -> f64 {
        self.offdiag.iter().map(|c| c.magnitude * c.magnitude).sum::<f64>().sqrt()
    }
}

/// ρ_P: the same diagonal with every off-diagonal element removed.
pub fn project_to_simplex(rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::from_trusted(CMatrix::from_real_diagonal(&rho.diagonal_probabilities()))
}

pub fn leaf_coordinates(rho: &DensityMatrix) -> LeafCoordinates {
    let diag =
        ProbabilityVector::new(rho.diagonal_probabilities()).expect("diagonal of a valid state is a distribution");
    let offdiag = offdiagonal_pairs(rho.dim())
        .map(|(i, j)| {
            let z = rho.entry(i, j);
            let magnitude = z.norm();
            let phase = if magnitude == 0.0 {
                0.0
            } else {
                let a = z.arg();
                if a <= -core::f64::consts::PI {
                    core::f64::consts::PI
                } else {
                    a
                }
            };
            Coherence { magnitude, phase }
        })
        .collect();
    LeafCoordinates { diag, offdiag }
}

/// √(Σ_{i<j} |ρ_ij|²) = √(½‖ρ − ρ_P‖²).
pub fn leaf_radius(rho: &DensityMatrix) -> f64 {
    let mut s = 0.0;
    for (i, j) in offdiagonal_pairs(rho.dim()) {
        s += rho.entry(i, j).norm_sqr();
    }
    s.sqrt()
}

/// Whether two states lie in the same decoherence leaf of the representation basis.
pub fn same_leaf(a: &DensityMatrix, b: &DensityMatrix) -> Result<bool> {
    same_leaf_within(a, b, 1e-9)
}

pub fn same_leaf_within(a: &DensityMatrix, b: &DensityMatrix, tol: f64) -> Result<bool> {
    check_dims(a.dim(), b.dim())?;
    Ok(a.diagonal_probabilities().iter().zip(b.diagonal_probabilities()).all(|(x, y)| (x - y).abs() <= tol))
}
