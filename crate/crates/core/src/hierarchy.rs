//! Maximally mixed states of increasing dimension and the closed-form
//! lengths and angles between their statevectors.
//!
//! Lengths are in statespace units; angles in radians. "Origin" is the
//! infinite-dimensional maximally mixed limit, which is never materialized:
//! a statevector's length is [`crate::origin_radius`].

#[allow(unused_imports)] // shadowed by inherent methods whenever std is linked
use num_traits::Float;

use crate::config::Tolerances;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;

pub fn maximally_mixed(dim: usize) -> Result<DensityMatrix> {
    DensityMatrix::maximally_mixed(dim)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HierarchyMetrics {
    pub dim: usize,
    /// r_{M,d} = 1/√(2d): origin to I/d.
    pub mixed_radius: f64,
    /// r_d = √(½ − 1/(2d)): I/d to any pure state in its simplex.
    pub vertex_distance: f64,
    /// r_{d+1,d} = 1/√(2d(d+1)): I/d to I/(d+1).
    pub successor_distance: f64,
    /// θ_d = arccos(1/(1−d)): angle at I/d subtending two orthogonal pure states.
    pub vertex_angle: f64,
    /// θ_{M,d} = arccos(1/√d): between the statevectors of I/d and a pure state in it.
    pub pure_mixed_angle: f64,
    /// θ_{d,d+1} = arccos(√(d/(d+1))): between the statevectors of I/d and I/(d+1).
    pub successor_angle: f64,
}

pub fn hierarchy_metrics(dim: usize) -> Result<HierarchyMetrics> {
    if dim < 2 {
        return Err(Error::DimensionOutOfRange { dim, min: 2, max: usize::MAX });
    }
    let d = dim as f64;
    Ok(HierarchyMetrics {
        dim,
        mixed_radius: 1.0 / (2.0 * d).sqrt(),
        vertex_distance: (0.5 - 0.5 / d).sqrt(),
        successor_distance: 1.0 / (2.0 * d * (d + 1.0)).sqrt(),
        vertex_angle: (1.0 / (1.0 - d)).acos(),
        pure_mixed_angle: (1.0 / d.sqrt()).acos(),
        successor_angle: (d / (d + 1.0)).sqrt().acos(),
    })
}

/// r_{d,d'} = √(1/(2d') − 1/(2d)), the distance between I/d and a maximally
/// mixed state of lower dimension d' nested inside it.
pub fn cross_level_distance(dim: usize, lower: usize) -> Result<f64> {
    if lower == 0 {
        return Err(Error::DimensionOutOfRange { dim: lower, min: 1, max: dim });
    }
    if lower > dim {
        return Err(Error::BadOrdering { larger: dim, smaller: lower });
    }
    Ok((0.5 / lower as f64 - 0.5 / dim as f64).max(0.0).sqrt())
}

/// Embeds a state into a larger dimension by zero-padding: the nesting of a
/// lower-dimensional statespace inside a higher one.
pub fn embed_padded(rho: &DensityMatrix, dim: usize) -> Result<DensityMatrix> {
    let max = Tolerances::DEFAULT.max_dim;
    if dim < rho.dim() {
        return Err(Error::BadOrdering { larger: dim, smaller: rho.dim() });
    }
    if dim > max {
        return Err(Error::DimensionOutOfRange { dim, min: rho.dim(), max });
    }
    let mut m = CMatrix::zeros(dim);
    for i in 0..rho.dim() {
        for j in 0..rho.dim() {
            m[(i, j)] = rho.entry(i, j);
        }
    }
    Ok(DensityMatrix::from_trusted(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn maximally_mixed_examples() {
        assert_eq!(maximally_mixed(2).unwrap(), DensityMatrix::diagonal(&[0.5, 0.5]).unwrap());
        assert_eq!(maximally_mixed(3).unwrap().diagonal_probabilities(), [1.0 / 3.0; 3]);
        let one = maximally_mixed(1).unwrap();
        assert_eq!((one.dim(), one.entry(0, 0).re), (1, 1.0));
        assert!(maximally_mixed(0).is_err());
    }

    #[test]
    fn metric_examples() {
        let m = hierarchy_metrics(2).unwrap();
        assert!((m.vertex_angle - PI).abs() < 1e-15);
        assert!((m.vertex_distance - 0.5).abs() < 1e-15 && (m.mixed_radius - 0.5).abs() < 1e-15);
        assert!((hierarchy_metrics(3).unwrap().vertex_angle - 2.0 * PI / 3.0).abs() < 1e-15);
        let t4 = hierarchy_metrics(4).unwrap().vertex_angle.to_degrees();
        assert!((t4 - 109.5).abs() < 0.05);
        assert!(hierarchy_metrics(1).is_err());
    }

    #[test]
    fn cross_level_examples() {
        assert_eq!(cross_level_distance(5, 5).unwrap(), 0.0);
        assert_eq!(cross_level_distance(2, 1).unwrap(), 0.5);
        assert!((cross_level_distance(3, 2).unwrap() - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert_eq!(cross_level_distance(2, 3), Err(Error::BadOrdering { larger: 2, smaller: 3 }));
        let m = hierarchy_metrics(6).unwrap();
        assert!((cross_level_distance(6, 1).unwrap() - m.vertex_distance).abs() < 1e-15);
        assert!((cross_level_distance(7, 6).unwrap() - m.successor_distance).abs() < 1e-15);
    }

    #[test]
    fn padded_embedding_is_cross_checked_numerically() {
        let inner = embed_padded(&maximally_mixed(2).unwrap(), 3).unwrap();
        let r = crate::distance(&inner, &maximally_mixed(3).unwrap()).unwrap();
        assert!((r - cross_level_distance(3, 2).unwrap()).abs() < 1e-15);
        assert!(embed_padded(&maximally_mixed(3).unwrap(), 2).is_err());
    }
}
