//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statespace::{trace_product, DensityMatrix, SimplexChart};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// r_ab from the three-term trace formula, √(½Tr a² + ½Tr b² − Tr ab).
pub fn trace_formula_distance(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    let aa = trace_product(a, a).unwrap();
    let bb = trace_product(b, b).unwrap();
    let ab = trace_product(a, b).unwrap();
    (0.5 * aa + 0.5 * bb - ab).max(0.0).sqrt()
}

pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Geometric oracle for the parallel cuts: intersect the hyperplane through
/// `point` parallel to the facet opposite vertex i with each edge (j → i),
/// returning the fraction of the edge from vertex j where it crosses.
pub fn geometric_cuts(chart: &SimplexChart, point: &[f64]) -> Vec<Vec<f64>> {
    let v = chart.vertices();
    let d = v.len();
    (0..d)
        .map(|i| {
            // Normal of the facet opposite i: from that facet's centroid to vertex i.
            let n = v[0].len();
            let mut centroid = vec![0.0; n];
            for (j, vj) in v.iter().enumerate() {
                if j != i {
                    for k in 0..n {
                        centroid[k] += vj[k] / (d - 1) as f64;
                    }
                }
            }
            let normal: Vec<f64> = v[i].iter().zip(&centroid).map(|(a, b)| a - b).collect();
            (0..d)
                .filter(|&j| j != i)
                .map(|j| {
                    let edge: Vec<f64> = v[i].iter().zip(&v[j]).map(|(a, b)| a - b).collect();
                    let offset: Vec<f64> = point.iter().zip(&v[j]).map(|(a, b)| a - b).collect();
                    dot(&normal, &offset) / dot(&normal, &edge)
                })
                .collect()
        })
        .collect()
}
