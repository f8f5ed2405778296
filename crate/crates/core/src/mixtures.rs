//! Barycentric mixing of states.
//!
//! The statepoint of Σ wᵢρᵢ is the weighted average Σ wᵢrᵢ of the component
//! statepoints, so a two-component mixture with weights (p_a, p_b) cuts the
//! segment from a to b at fraction p_b measured from a.

use alloc::vec::Vec;

use crate::density::DensityMatrix;
use crate::embedding::distance;
use crate::error::{check_dims, Error, Result};
use crate::matrix::CMatrix;

/// Sums within this distance of one are renormalized; others are rejected.
pub const WEIGHT_SUM_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedEnsemble {
    components: Vec<(f64, DensityMatrix)>,
}

impl WeightedEnsemble {
    pub fn new(components: Vec<(f64, DensityMatrix)>) -> Result<Self> {
        let first = components.first().ok_or(Error::BadWeights { reason: "empty ensemble" })?;
        let dim = first.1.dim();
        for (w, rho) in &components {
            check_dims(dim, rho.dim())?;
            if !w.is_finite() || *w < 0.0 {
                return Err(Error::BadWeights { reason: "weights must be finite and non-negative" });
            }
        }
        let sum: f64 = components.iter().map(|(w, _)| w).sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_SLACK {
            return Err(Error::BadWeights { reason: "weights do not sum to one" });
        }
        let components = components.into_iter().map(|(w, rho)| (w / sum, rho)).collect();
        Ok(WeightedEnsemble { components })
    }

    pub fn dim(&self) -> usize {
        self.components[0].1.dim()
    }

    pub fn components(&self) -> &[(f64, DensityMatrix)] {
        &self.components
    }
}

/// Σ wᵢρᵢ.
pub fn mix(ensemble: &WeightedEnsemble) -> DensityMatrix {
    let mut m = CMatrix::zeros(ensemble.dim());
    for (w, rho) in &ensemble.components {
        m = m.add(&rho.matrix().scale(*w));
    }
    DensityMatrix::from_trusted(m.hermitian_part())
}

/// (1 − t)·a + t·b.
pub fn mix_pair(a: &DensityMatrix, b: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    let e = WeightedEnsemble::new(alloc::vec![(1.0 - t, a.clone()), (t, b.clone())])?;
    Ok(mix(&e))
}

/// Position of `m` along the segment from `a` to `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutRatio {
    /// distance(a, m) / distance(a, b).
    pub t: f64,
    /// distance(a, m) + distance(m, b) − distance(a, b); zero when m is on the segment.
    pub residual: f64,
}

pub fn cut_ratio(a: &DensityMatrix, b: &DensityMatrix, m: &DensityMatrix) -> Result<CutRatio> {
    check_dims(a.dim(), m.dim())?;
    let ab = distance(a, b)?;
    if ab <= 1e-9 {
        return Err(Error::CoincidentEndpoints { distance: ab });
    }
    let am = distance(a, m)?;
    let mb = distance(m, b)?;
    Ok(CutRatio { t: am / ab, residual: am + mb - ab })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::to_statepoint;
    use crate::purestate::PureKet;
    use alloc::vec;
    use num_complex::Complex64;

    fn up() -> DensityMatrix {
        DensityMatrix::basis_projector(2, 0)
    }
    fn down() -> DensityMatrix {
        DensityMatrix::basis_projector(2, 1)
    }
    fn right() -> DensityMatrix {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        PureKet::new(vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)]).unwrap().to_density()
    }

    #[test]
    fn seventy_thirty_mixture() {
        let m = mix(&WeightedEnsemble::new(vec![(0.7, up()), (0.3, down())]).unwrap());
        assert_eq!(m, DensityMatrix::diagonal(&[0.7, 0.3]).unwrap());
        let r = cut_ratio(&up(), &down(), &m).unwrap();
        assert!((r.t - 0.3).abs() < 1e-15 && r.residual.abs() < 1e-15);
        // Statepoint 0.2 from the centre toward the up vertex.
        assert!((to_statepoint(&m).coords()[2] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn thirds_mixture_reproduces_worked_example() {
        let t = 1.0 / 3.0;
        let m = mix(&WeightedEnsemble::new(vec![(t, up()), (t, down()), (t, right())]).unwrap());
        let s = 1.0 / 6.0;
        let expected = [[0.5, s], [s, 0.5]];
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert!((m.entry(i, j) - Complex64::new(*want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn equal_mixture_of_basis_is_center() {
        for d in 2..6 {
            let comps = (0..d).map(|k| (1.0 / d as f64, DensityMatrix::basis_projector(d, k))).collect();
            let m = mix(&WeightedEnsemble::new(comps).unwrap());
            let target = DensityMatrix::maximally_mixed(d).unwrap();
            assert!(m.matrix().frobenius_dist_sq(target.matrix()) < 1e-30);
        }
    }

    #[test]
    fn cut_ratio_examples() {
        let r = cut_ratio(&up(), &down(), &up()).unwrap();
        assert_eq!((r.t, r.residual), (0.0, 0.0));
        let off = cut_ratio(&up(), &down(), &right()).unwrap();
        assert!(off.residual > 0.1);
        assert!(matches!(cut_ratio(&up(), &up(), &down()), Err(Error::CoincidentEndpoints { .. })));
    }

    #[test]
    fn weight_validation() {
        assert!(matches!(WeightedEnsemble::new(vec![]), Err(Error::BadWeights { .. })));
        assert!(matches!(WeightedEnsemble::new(vec![(0.6, up()), (0.6, down())]), Err(Error::BadWeights { .. })));
        assert!(matches!(WeightedEnsemble::new(vec![(1.5, up()), (-0.5, down())]), Err(Error::BadWeights { .. })));
        assert!(matches!(
            WeightedEnsemble::new(vec![(0.5, up()), (0.5, DensityMatrix::maximally_mixed(3).unwrap())]),
            Err(Error::DimensionMismatch { .. })
        ));
        let e = WeightedEnsemble::new(vec![(0.5 + 4e-7, up()), (0.5, down())]).unwrap();
        let s: f64 = e.components().iter().map(|(w, _)| w).sum();
        assert!((s - 1.0).abs() < 1e-15);
    }
}
