//! Pure states as kets and their boundary geometry.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods whenever std is linked
use num_traits::Float;

use crate::config::Tolerances;
use crate::density::DensityMatrix;
use crate::error::{check_dims, Error, Result};
use crate::matrix::{inner, norm, CMatrix};
use crate::measurement::MeasurementBasis;

/// Unit-norm ket |Ψ⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct PureKet {
    amps: Vec<Complex64>,
}

impl PureKet {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        let max = Tolerances::DEFAULT.max_dim;
        if amps.len() < 2 || amps.len() > max {
            return Err(Error::DimensionOutOfRange { dim: amps.len(), min: 2, max });
        }
        if let Some(k) = amps.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: k, col: 0 });
        }
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > Tolerances::DEFAULT.validation {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(PureKet { amps })
    }

    /// |k⟩ in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amps = alloc::vec![Complex64::new(0.0, 0.0); dim];
        amps[k] = Complex64::new(1.0, 0.0);
        PureKet { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// |Ψ⟩⟨Ψ|.
    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_trusted(CMatrix::outer(&self.amps, &self.amps).hermitian_part())
    }
}

pub fn to_density(psi: &PureKet) -> DensityMatrix {
    psi.to_density()
}

/// ⟨b|ψ⟩.
pub fn overlap(b: &PureKet, psi: &PureKet) -> Result<Complex64> {
    check_dims(b.dim(), psi.dim())?;
    Ok(inner(&b.amps, &psi.amps))
}

/// r_BΨ = √(1 − |⟨B|Ψ⟩|²).
pub fn pure_distance(b: &PureKet, psi: &PureKet) -> Result<f64> {
    let o = overlap(b, psi)?;
    Ok((1.0 - o.norm_sqr()).max(0.0).sqrt())
}

/// Orthonormal partner |A⟩ of |B⟩ in the plane of |B⟩ and |Ψ⟩, such that
/// |Ψ⟩ = `amp_a`·|A⟩ + `amp_b`·|B⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitCompletion {
    pub a: PureKet,
    /// ⟨B|Ψ⟩.
    pub amp_b: Complex64,
    /// r_BΨ, real and positive.
    pub amp_a: f64,
}

/// |A⟩ = (|Ψ⟩ − ⟨B|Ψ⟩|B⟩) / r_BΨ.
pub fn complete_qubit_basis(b: &PureKet, psi: &PureKet) -> Result<QubitCompletion> {
    let distance = pure_distance(b, psi)?;
    if distance <= 1e-9 {
        return Err(Error::CoincidentStates { distance });
    }
    let amp_b = inner(&b.amps, &psi.amps);
    let mut w: Vec<Complex64> = psi.amps.iter().zip(&b.amps).map(|(p, q)| p - amp_b * q).collect();
    let drift = inner(&b.amps, &w);
    w.iter_mut().zip(&b.amps).for_each(|(wi, bi)| *wi -= drift * bi);
    // ‖w‖ equals r_BΨ; normalizing by the computed norm keeps ⟨A|A⟩ = 1 to rounding.
    let amp_a = norm(&w);
    w.iter_mut().for_each(|x| *x /= amp_a);
    Ok(QubitCompletion { a: PureKet { amps: w }, amp_b, amp_a })
}

/// ⟨Bᵢ|Ψ⟩ in polar form (magnitude, phase), with the global phase chosen so the
/// first non-zero entry has phase 0.
pub fn column_coordinates(psi: &PureKet, basis: &MeasurementBasis) -> Result<Vec<(f64, f64)>> {
    check_dims(psi.dim(), basis.dim())?;
    let entries: Vec<Complex64> = (0..basis.dim()).map(|i| inner(&basis.vector(i), &psi.amps)).collect();
    let reference = entries.iter().find(|z| z.norm() > 1e-12).map(|z| z.arg()).unwrap_or(0.0);
    Ok(entries
        .iter()
        .map(|z| {
            let m = z.norm();
            if m <= 1e-12 {
                (m, 0.0)
            } else {
                let mut phase = z.arg() - reference;
                if phase <= -core::f64::consts::PI {
                    phase += 2.0 * core::f64::consts::PI;
                } else if phase > core::f64::consts::PI {
                    phase -= 2.0 * core::f64::consts::PI;
                }
                (m, phase)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Unitary;
    use alloc::vec;
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ket(v: &[Complex64]) -> PureKet {
        PureKet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn to_density_examples() {
        let h = FRAC_1_SQRT_2;
        assert_eq!(PureKet::basis(2, 0).to_density(), DensityMatrix::basis_projector(2, 0));
        let plus = ket(&[c(h, 0.0), c(h, 0.0)]).to_density();
        for i in 0..2 {
            for j in 0..2 {
                assert!((plus.entry(i, j) - c(0.5, 0.0)).norm() < 1e-15);
            }
        }
        let y = ket(&[c(h, 0.0), c(0.0, h)]).to_density();
        assert!((y.entry(0, 1) - c(0.0, -0.5)).norm() < 1e-15);
        assert!((y.entry(1, 0) - c(0.0, 0.5)).norm() < 1e-15);
        assert_eq!(crate::classify(&y).unwrap(), crate::StateClass::Pure);
    }

    #[test]
    fn pure_distance_examples() {
        let h = FRAC_1_SQRT_2;
        let plus = ket(&[c(h, 0.0), c(h, 0.0)]);
        assert!(pure_distance(&plus, &plus).unwrap() < 1e-7);
        assert_eq!(pure_distance(&PureKet::basis(3, 0), &PureKet::basis(3, 2)).unwrap(), 1.0);
        // |⟨B|Ψ⟩| = ½ gives √(1 − ¼).
        let s = (0.75f64).sqrt();
        let psi = ket(&[c(0.5, 0.0), c(0.0, s)]);
        let r = pure_distance(&PureKet::basis(2, 0), &psi).unwrap();
        assert!((r - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(pure_distance(&PureKet::basis(2, 0), &PureKet::basis(3, 0)).is_err());
    }

    #[test]
    fn completion_examples() {
        let h = FRAC_1_SQRT_2;
        let q = complete_qubit_basis(&PureKet::basis(2, 0), &ket(&[c(h, 0.0), c(h, 0.0)])).unwrap();
        assert!((q.a.amplitudes()[1] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(q.a.amplitudes()[0].norm() < 1e-15);
        assert!((q.amp_b - c(h, 0.0)).norm() < 1e-15 && (q.amp_a - h).abs() < 1e-15);

        let q = complete_qubit_basis(&PureKet::basis(2, 0), &PureKet::basis(2, 1)).unwrap();
        assert_eq!(q.a, PureKet::basis(2, 1));
        assert_eq!((q.amp_b, q.amp_a), (c(0.0, 0.0), 1.0));

        let psi = ket(&[c(h, 0.0), c(0.0, 0.0), c(h, 0.0)]);
        let q = complete_qubit_basis(&PureKet::basis(3, 0), &psi).unwrap();
        assert!((q.a.amplitudes()[2] - c(1.0, 0.0)).norm() < 1e-15);

        let b = PureKet::basis(2, 0);
        let phased = ket(&[c(0.0, 1.0), c(0.0, 0.0)]);
        assert!(matches!(complete_qubit_basis(&b, &phased), Err(Error::CoincidentStates { .. })));
    }

    #[test]
    fn column_coordinate_examples() {
        let id = MeasurementBasis::computational(3);
        let cc = column_coordinates(&PureKet::basis(3, 1), &id).unwrap();
        assert_eq!(cc, vec![(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);

        let h = FRAC_1_SQRT_2;
        let right = ket(&[c(h, 0.0), c(h, 0.0)]);
        let cc = column_coordinates(&right, &MeasurementBasis::computational(2)).unwrap();
        assert_eq!(cc, vec![(h, 0.0), (h, 0.0)]);

        let y = ket(&[c(h, 0.0), c(0.0, h)]);
        let cc = column_coordinates(&y, &MeasurementBasis::computational(2)).unwrap();
        assert!((cc[0].0 - h).abs() < 1e-15 && cc[0].1 == 0.0);
        assert!((cc[1].0 - h).abs() < 1e-15 && (cc[1].1 - FRAC_PI_2).abs() < 1e-15);

        // Global phase drops out.
        let y2 = ket(&[c(0.0, h), c(-h, 0.0)]);
        let cc2 = column_coordinates(&y2, &MeasurementBasis::computational(2)).unwrap();
        assert!((cc2[1].1 - FRAC_PI_2).abs() < 1e-15);
        let hb = MeasurementBasis::new(Unitary::hadamard());
        assert!(column_coordinates(&PureKet::basis(3, 0), &hb).is_err());
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(matches!(PureKet::new(vec![c(1.0, 0.0), c(1.0, 0.0)]), Err(Error::NotNormalized { .. })));
    }
}
