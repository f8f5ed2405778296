/// Numerical thresholds shared by validation, classification and the eigensolver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Hermiticity, unit trace, PSD and unitarity checks.
    pub validation: f64,
    /// Purity and surface tests in [`crate::classify`].
    pub classification: f64,
    /// Off-diagonal Frobenius norm at which Jacobi sweeps stop.
    pub eigen: f64,
    pub max_sweeps: usize,
    /// Eigenvalues closer than this are treated as one degenerate cluster.
    pub degeneracy: f64,
    pub max_dim: usize,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        validation: 1e-10,
        classification: 1e-9,
        eigen: 1e-12,
        max_sweeps: 100,
        degeneracy: 1e-9,
        max_dim: 64,
    };

    pub fn with_validation(mut self, tol: f64) -> Self {
        self.validation = tol;
        self
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
