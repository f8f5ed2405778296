//! Geometry of finite-dimensional quantum states.
//!
//! A d-level density matrix is a point ("statepoint") in a real
//! (d²−1)-dimensional Euclidean space with squared distance
//! r²_ab = ½Tr ρ_a² + ½Tr ρ_b² − Tr ρ_aρ_b. This crate computes that
//! embedding and the structures that live in it: probability simplices of
//! diagonal states, decoherence leaves of states sharing a diagonal,
//! barycentric mixtures, pure-state boundary distances, projective
//! measurement and tomography, and the hierarchy of maximally mixed states.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod config;
pub mod density;
pub mod eigen;
pub mod embedding;
pub mod error;
pub mod hierarchy;
pub mod leaves;
pub mod matrix;
pub mod measurement;
pub mod mixtures;
pub mod purestate;
pub mod sample;
pub mod simplex;

pub use config::Tolerances;
pub use density::{
    change_basis, classify, classify_with, eig_hermitian, eig_hermitian_with, entropy_and_w, entropy_of_probabilities,
    frobenius_norm_sq, trace_product, DensityMatrix, Entropy, Spectrum, StateClass,
};
pub use embedding::{
    angle, angle_at, distance, from_statepoint, generator_basis, origin_radius, to_statepoint, GeneratorBasis,
    StatePoint,
};
pub use error::{Error, Result};
pub use hierarchy::{cross_level_distance, embed_padded, hierarchy_metrics, maximally_mixed, HierarchyMetrics};
pub use leaves::{leaf_coordinates, leaf_radius, project_to_simplex, same_leaf, Coherence, LeafCoordinates};
pub use matrix::{CMatrix, ComplexScalar, Unitary};
pub use measurement::{
    decohere, decohere_with_rate, default_bases, forward_simulate, measure_probabilities, reconstruct,
    MeasurementBasis, Reconstruction, TomographyRecord,
};
pub use mixtures::{cut_ratio, mix, mix_pair, CutRatio, WeightedEnsemble};
pub use purestate::{column_coordinates, complete_qubit_basis, pure_distance, PureKet, QubitCompletion};
pub use simplex::{
    build_chart, center_distance, parallel_cut_lengths, simplex_distance, simplex_point, ProbabilityVector,
    SimplexChart,
};
