//! Probability simplices of diagonalized states.
//!
//! Probabilities (p₁, …, p_{d−1}) are Cartesian coordinates of an irregular
//! simplex; the linear map M turns it into the regular simplex with unit
//! edges, with the last basis state at the origin.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods whenever std is linked
use num_traits::Float;

use crate::config::Tolerances;
use crate::error::{check_dims, Error, Result};

/// Largest dimension for which a chart is materialized (d − 1 ≤ 15).
pub const MAX_CHART_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    probs: Vec<f64>,
}

impl ProbabilityVector {
    /// Accepts entries in [−tol, 1 + tol] summing to one within tol; slightly
    /// negative entries are clamped to zero.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        let tol = Tolerances::DEFAULT.validation;
        if probs.len() < 2 {
            return Err(Error::InvalidProbabilities { reason: "need at least two outcomes" });
        }
        if probs.iter().any(|p| !p.is_finite() || *p < -tol || *p > 1.0 + tol) {
            return Err(Error::InvalidProbabilities { reason: "entry outside [0, 1]" });
        }
        if (probs.iter().sum::<f64>() - 1.0).abs() > tol {
            return Err(Error::InvalidProbabilities { reason: "entries do not sum to one" });
        }
        Ok(ProbabilityVector { probs: probs.into_iter().map(|p| p.max(0.0)).collect() })
    }

    pub fn uniform(dim: usize) -> Self {
        ProbabilityVector { probs: vec![1.0 / dim as f64; dim] }
    }

    pub fn vertex(dim: usize, k: usize) -> Self {
        let mut probs = vec![0.0; dim];
        probs[k] = 1.0;
        ProbabilityVector { probs }
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }
}

/// The Cartesian-to-regular-simplex map for one dimension d.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexChart {
    dim: usize,
    /// M, row-major (d−1)×(d−1).
    transform: Vec<f64>,
    /// MᵀM, row-major.
    metric: Vec<f64>,
    /// Vertex i for basis state i; the last vertex is the origin.
    vertices: Vec<Vec<f64>>,
}

pub fn build_chart(dim: usize) -> Result<SimplexChart> {
    if !(2..=MAX_CHART_DIM).contains(&dim) {
        return Err(Error::DimensionOutOfRange { dim, min: 2, max: MAX_CHART_DIM });
    }
    let n = dim - 1;
    let sd = (dim as f64).sqrt();
    let denom = core::f64::consts::SQRT_2 * n as f64;
    let on_diag = (sd + dim as f64 - 2.0) / denom;
    let off_diag = (sd - 1.0) / denom;
    let mut transform = vec![off_diag; n * n];
    for i in 0..n {
        transform[i * n + i] = on_diag;
    }
    let mut metric = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            metric[i * n + j] = (0..n).map(|k| transform[k * n + i] * transform[k * n + j]).sum();
        }
    }
    let mut vertices: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|r| transform[r * n + i]).collect()).collect();
    vertices.push(vec![0.0; n]);
    Ok(SimplexChart { dim, transform, metric, vertices })
}

impl SimplexChart {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Side length of the square matrices M and MᵀM.
    pub fn rank(&self) -> usize {
        self.dim - 1
    }

    pub fn transform(&self) -> &[f64] {
        &self.transform
    }

    pub fn metric(&self) -> &[f64] {
        &self.metric
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// M·x for x ∈ ℝ^(d−1).
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.rank();
        (0..n).map(|r| (0..n).map(|c| self.transform[r * n + c] * x[c]).sum()).collect()
    }

    pub fn centroid(&self) -> Vec<f64> {
        let n = self.rank();
        let mut c = vec![0.0; n];
        for v in &self.vertices {
            for (ci, vi) in c.iter_mut().zip(v) {
                *ci += vi / self.dim as f64;
            }
        }
        c
    }

    /// Orthonormal frame used for scene output: the first axis runs from the
    /// origin vertex toward vertex 0, later axes follow Gram–Schmidt over
    /// vertices 1, 2, … . Rows are the frame axes.
    pub fn scene_frame(&self) -> Vec<Vec<f64>> {
        let n = self.rank();
        let mut axes: Vec<Vec<f64>> = Vec::with_capacity(n);
        for v in self.vertices.iter().take(n) {
            let mut w = v.clone();
            for a in &axes {
                let c: f64 = a.iter().zip(&w).map(|(x, y)| x * y).sum();
                w.iter_mut().zip(a).for_each(|(wi, ai)| *wi -= c * ai);
            }
            let len = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            w.iter_mut().for_each(|x| *x /= len);
            axes.push(w);
        }
        axes
    }

    /// Chart point expressed in the scene frame.
    pub fn to_scene(&self, x: &[f64]) -> Vec<f64> {
        self.scene_frame().iter().map(|a| a.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
    }
}

/// M·(p₁, …, p_{d−1}): the statepoint of diag(p) in the regular unit simplex.
pub fn simplex_point(p: &ProbabilityVector, chart: &SimplexChart) -> Result<Vec<f64>> {
    check_dims(chart.dim, p.dim())?;
    Ok(chart.apply(&p.probs[..p.dim() - 1]))
}

/// √(½ Σ (paᵢ − pbᵢ)²).
pub fn simplex_distance(pa: &ProbabilityVector, pb: &ProbabilityVector) -> Result<f64> {
    check_dims(pa.dim(), pb.dim())?;
    let s: f64 = pa.probs.iter().zip(&pb.probs).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok((0.5 * s).sqrt())
}

/// For each vertex i, the length cut from every edge incident to i by the
/// hyperplane through the statepoint parallel to the facet opposite i,
/// measured from the far end of the edge. These lengths are the
/// probabilities themselves.
pub fn parallel_cut_lengths(p: &ProbabilityVector) -> Vec<f64> {
    p.probs.clone()
}

/// Point on edge (i, j) where the parallel cut for vertex i crosses it:
/// Vⱼ + pᵢ(Vᵢ − Vⱼ).
pub fn cut_point(chart: &SimplexChart, p: &ProbabilityVector, i: usize, j: usize) -> Vec<f64> {
    let vi = &chart.vertices[i];
    let vj = &chart.vertices[j];
    vj.iter().zip(vi).map(|(b, a)| b + p.probs[i] * (a - b)).collect()
}

/// r_d = √(½ Σ (pᵢ − 1/d)²), the distance to the simplex centre.
pub fn center_distance(p: &ProbabilityVector) -> f64 {
    let d = p.dim() as f64;
    (0.5 * p.probs.iter().map(|x| (x - 1.0 / d) * (x - 1.0 / d)).sum::<f64>()).sqrt()
}
