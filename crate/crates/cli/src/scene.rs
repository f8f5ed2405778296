//! Scene documents: serializable geometry for Bloch circles and spheres and
//! for the probability 2- and 3-simplices.
//!
//! Every numeric `value` in a scene is taken directly from the library call
//! that defines it; coordinates are placement only.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use statespace::simplex::cut_point;
use statespace::{
    build_chart, distance, eig_hermitian, leaf_radius, measure_probabilities, parallel_cut_lengths, simplex_distance,
    simplex_point, to_statepoint, DensityMatrix, MeasurementBasis, ProbabilityVector,
};
use thiserror::Error;

use crate::format::{sig12, write_matrix};

pub const SCHEMA_VERSION: u32 = 1;

type Placement = Box<dyn Fn(&[f64]) -> Vec<f64>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SceneKind {
    BlochCircle,
    BlochSphere,
    Simplex2,
    Simplex3,
}

impl SceneKind {
    /// Dimension of every coordinate in a scene of this kind.
    pub fn coord_dim(self) -> usize {
        match self {
            SceneKind::BlochCircle | SceneKind::Simplex2 => 2,
            SceneKind::BlochSphere | SceneKind::Simplex3 => 3,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "blochcircle" | "circle" => Some(SceneKind::BlochCircle),
            "blochsphere" | "sphere" => Some(SceneKind::BlochSphere),
            "simplex2" => Some(SceneKind::Simplex2),
            "simplex3" => Some(SceneKind::Simplex3),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStyle {
    Center,
    Vertex,
    Statepoint,
    Foot,
    Centroid,
    Cut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentStyle {
    Outline,
    Diameter,
    Probability,
    Perpendicular,
    CutLine,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenePoint {
    pub label: String,
    pub coords: Vec<f64>,
    pub style: PointStyle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneSegment {
    pub label: String,
    pub from: Vec<f64>,
    pub to: Vec<f64>,
    pub style: SegmentStyle,
    /// Length or probability the segment stands for.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Annotation {
    pub text: String,
    pub anchor: Vec<f64>,
}

/// A circle. In 3-dimensional scenes a missing normal means a sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneCircle {
    pub label: String,
    pub center: Vec<f64>,
    pub radius: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec<f64>>,
}

/// Planar polygon as a triangle fan over `vertices`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneFace {
    pub label: String,
    pub vertices: Vec<Vec<f64>>,
    pub triangles: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

/// Simplex chart: M row-major and the chart vertices, before the scene frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartExport {
    pub transform: Vec<Vec<f64>>,
    pub vertices: Vec<Vec<f64>>,
    /// Rows map chart coordinates to scene coordinates.
    pub frame: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneMeta {
    /// SHA-256 of the source matrix in its text file format.
    pub source_digest: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    pub probabilities: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<ChartExport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneDocument {
    pub schema_version: u32,
    pub kind: SceneKind,
    pub points: Vec<ScenePoint>,
    pub segments: Vec<SceneSegment>,
    pub annotations: Vec<Annotation>,
    #[serde(default)]
    pub circles: Vec<SceneCircle>,
    #[serde(default)]
    pub faces: Vec<SceneFace>,
    pub meta: SceneMeta,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SceneError {
    #[error("{kind:?} scenes need dimension {expected}, got {got}")]
    WrongDimension { kind: SceneKind, expected: &'static str, got: usize },
    #[error(transparent)]
    Library(#[from] statespace::Error),
    #[error("scene is malformed: {0}")]
    Invalid(String),
}

impl SceneDocument {
    /// Finite coordinates of the dimension the kind requires.
    pub fn validate(&self) -> Result<(), SceneError> {
        let n = self.kind.coord_dim();
        let check = |what: &str, v: &[f64]| {
            if v.len() != n {
                return Err(SceneError::Invalid(format!("{what} has {} coordinates, expected {n}", v.len())));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(SceneError::Invalid(format!("{what} has a non-finite coordinate")));
            }
            Ok(())
        };
        for p in &self.points {
            check(&p.label, &p.coords)?;
        }
        for s in &self.segments {
            check(&s.label, &s.from)?;
            check(&s.label, &s.to)?;
            if s.value.is_some_and(|v| !v.is_finite()) {
                return Err(SceneError::Invalid(format!("{} has a non-finite value", s.label)));
            }
        }
        for a in &self.annotations {
            check(&a.text, &a.anchor)?;
        }
        for c in &self.circles {
            check(&c.label, &c.center)?;
            if let Some(normal) = &c.normal {
                check(&c.label, normal)?;
            }
            if !c.radius.is_finite() || c.radius < 0.0 {
                return Err(SceneError::Invalid(format!("{} has a bad radius", c.label)));
            }
        }
        for f in &self.faces {
            for v in &f.vertices {
                check(&f.label, v)?;
            }
            if f.triangles.iter().flatten().any(|&k| k >= f.vertices.len()) {
                return Err(SceneError::Invalid(format!("{} indexes a missing vertex", f.label)));
            }
        }
        Ok(())
    }
}

pub fn source_digest(rho: &DensityMatrix) -> String {
    let hash = Sha256::digest(write_matrix(rho.matrix()).as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(a: f64, x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(xi, yi)| a * xi + yi).collect()
}

fn midpoint(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect()
}

fn point(label: impl Into<String>, coords: Vec<f64>, style: PointStyle) -> ScenePoint {
    ScenePoint { label: label.into(), coords, style }
}

fn segment(
    label: impl Into<String>,
    from: &[f64],
    to: &[f64],
    style: SegmentStyle,
    value: Option<f64>,
) -> SceneSegment {
    SceneSegment { label: label.into(), from: from.to_vec(), to: to.to_vec(), style, value }
}

/// Qubit measurement picture: the basis diameter, the perpendicular from the
/// statepoint, the two diameter pieces (the outcome probabilities) and the
/// decoherence leaf through the foot.
///
/// `BlochSphere` uses the chart coordinates directly. `BlochCircle` uses the
/// plane through the diameter and the statepoint, with the diameter vertical
/// (basis vector 0 on top) and the statepoint on the right.
pub fn scene_bloch(
    rho: &DensityMatrix,
    basis: &MeasurementBasis,
    basis_label: &str,
    kind: SceneKind,
) -> Result<SceneDocument, SceneError> {
    if rho.dim() != 2 || basis.dim() != 2 {
        return Err(SceneError::WrongDimension { kind, expected: "2", got: rho.dim().max(basis.dim()) });
    }
    if !matches!(kind, SceneKind::BlochCircle | SceneKind::BlochSphere) {
        return Err(SceneError::WrongDimension { kind, expected: "3 or 4", got: 2 });
    }
    let probs = measure_probabilities(rho, basis)?;
    let (p0, p1) = (probs.as_slice()[0], probs.as_slice()[1]);
    let perpendicular = leaf_radius(&basis.represent(rho)?);
    let diameter = distance(&basis.projector(0), &basis.projector(1))?;

    let s = to_statepoint(rho).coords().to_vec();
    let top = to_statepoint(&basis.projector(0)).coords().to_vec();
    let bottom = to_statepoint(&basis.projector(1)).coords().to_vec();
    let axis = sub(&top, &bottom);
    // Outcome 0 is the piece from the foot to the far end.
    let foot = axpy(p0, &axis, &bottom);

    let place: Placement = match kind {
        SceneKind::BlochSphere => Box::new(|q: &[f64]| q.to_vec()),
        _ => {
            let off = sub(&s, &foot);
            let len = dot(&off, &off).sqrt();
            let across = if len > 1e-12 { off.iter().map(|x| x / len).collect() } else { perpendicular_to(&axis) };
            let up = axis.clone();
            Box::new(move |q: &[f64]| vec![dot(q, &across), dot(q, &up)])
        }
    };

    let (c, t, b, f, sp) = (place(&[0.0; 3]), place(&top), place(&bottom), place(&foot), place(&s));
    let normal = match kind {
        SceneKind::BlochSphere => axis.clone(),
        _ => vec![0.0, 1.0],
    };

    let points = vec![
        point("center", c.clone(), PointStyle::Center),
        point("B0", t.clone(), PointStyle::Vertex),
        point("B1", b.clone(), PointStyle::Vertex),
        point("statepoint", sp.clone(), PointStyle::Statepoint),
        point("foot", f.clone(), PointStyle::Foot),
    ];
    let segments = vec![
        segment("diameter", &b, &t, SegmentStyle::Diameter, Some(diameter)),
        segment("p0", &b, &f, SegmentStyle::Probability, Some(p0)),
        segment("p1", &f, &t, SegmentStyle::Probability, Some(p1)),
        segment("perpendicular", &sp, &f, SegmentStyle::Perpendicular, Some(perpendicular)),
    ];
    let annotations = vec![
        Annotation { text: format!("p0 = {}", sig12(p0)), anchor: midpoint(&b, &f) },
        Annotation { text: format!("p1 = {}", sig12(p1)), anchor: midpoint(&f, &t) },
        Annotation { text: format!("r_c = {}", sig12(perpendicular)), anchor: midpoint(&sp, &f) },
    ];
    let circles = vec![
        SceneCircle { label: "boundary".into(), center: c, radius: 0.5, normal: None },
        SceneCircle { label: "leaf".into(), center: f, radius: perpendicular, normal: Some(normal) },
    ];
    let doc = SceneDocument {
        schema_version: SCHEMA_VERSION,
        kind,
        points,
        segments,
        annotations,
        circles,
        faces: Vec::new(),
        meta: SceneMeta {
            source_digest: source_digest(rho),
            dim: 2,
            basis: Some(basis_label.to_string()),
            probabilities: probs.as_slice().to_vec(),
            chart: None,
        },
    };
    doc.validate()?;
    Ok(doc)
}

/// Unit vector orthogonal to `v` (3-dimensional).
fn perpendicular_to(v: &[f64]) -> Vec<f64> {
    let trial = if v[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let w = axpy(-dot(&trial, v) / dot(v, v), v, &trial);
    let len = dot(&w, &w).sqrt();
    w.iter().map(|x| x / len).collect()
}

/// Diagonalized state in the regular probability simplex, with the parallel
/// cut lines (d = 3) or planes (d = 4) through its statepoint. Vertex i is the
/// eigenvector with the i-th largest eigenvalue.
pub fn scene_simplex(rho: &DensityMatrix) -> Result<SceneDocument, SceneError> {
    let d = rho.dim();
    let kind = match d {
        3 => SceneKind::Simplex2,
        4 => SceneKind::Simplex3,
        _ => return Err(SceneError::WrongDimension { kind: SceneKind::Simplex2, expected: "3 or 4", got: d }),
    };
    let spectrum = eig_hermitian(rho)?;
    let p = ProbabilityVector::new(spectrum.probabilities())?;
    let chart = build_chart(d)?;
    let lengths = parallel_cut_lengths(&p);

    let vertices: Vec<Vec<f64>> = chart.vertices().iter().map(|v| chart.to_scene(v)).collect();
    let sp = chart.to_scene(&simplex_point(&p, &chart)?);
    let centroid = chart.to_scene(&chart.centroid());

    let mut points: Vec<ScenePoint> =
        vertices.iter().enumerate().map(|(i, v)| point(format!("e{i}"), v.clone(), PointStyle::Vertex)).collect();
    points.push(point("centroid", centroid, PointStyle::Centroid));
    points.push(point("statepoint", sp.clone(), PointStyle::Statepoint));

    let mut segments = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            let edge = simplex_distance(&ProbabilityVector::vertex(d, i), &ProbabilityVector::vertex(d, j))?;
            segments.push(segment(
                format!("edge {i}-{j}"),
                &vertices[i],
                &vertices[j],
                SegmentStyle::Outline,
                Some(edge),
            ));
        }
    }

    let mut annotations = Vec::new();
    let mut faces = Vec::new();
    for i in 0..d {
        let cuts: Vec<(usize, Vec<f64>)> =
            (0..d).filter(|&j| j != i).map(|j| (j, chart.to_scene(&cut_point(&chart, &p, i, j)))).collect();
        for (j, cut) in &cuts {
            points.push(point(format!("cut {i} on {j}-{i}"), cut.clone(), PointStyle::Cut));
            segments.push(segment(
                format!("p{i} on {j}-{i}"),
                &vertices[*j],
                cut,
                SegmentStyle::Probability,
                Some(lengths[i]),
            ));
        }
        if d == 3 {
            segments.push(segment(format!("cut {i}"), &cuts[0].1, &cuts[1].1, SegmentStyle::CutLine, None));
        } else {
            let polygon: Vec<Vec<f64>> = cuts.into_iter().map(|(_, c)| c).collect();
            let triangles = (1..polygon.len() - 1).map(|k| [0, k, k + 1]).collect();
            faces.push(SceneFace { label: format!("cut {i}"), vertices: polygon, triangles, value: Some(lengths[i]) });
        }
        annotations.push(Annotation { text: format!("p{i} = {}", sig12(lengths[i])), anchor: vertices[i].clone() });
    }

    let n = chart.rank();
    let transform = chart.transform().chunks(n).map(|r| r.to_vec()).collect();
    let doc = SceneDocument {
        schema_version: SCHEMA_VERSION,
        kind,
        points,
        segments,
        annotations,
        circles: Vec::new(),
        faces,
        meta: SceneMeta {
            source_digest: source_digest(rho),
            dim: d,
            basis: None,
            probabilities: p.as_slice().to_vec(),
            chart: Some(ChartExport { transform, vertices: chart.vertices().to_vec(), frame: chart.scene_frame() }),
        },
    };
    doc.validate()?;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use statespace::CMatrix;

    fn worked_example() -> DensityMatrix {
        let s = Complex64::new(1.0 / 6.0, 0.0);
        let h = Complex64::new(0.5, 0.0);
        DensityMatrix::new(CMatrix::from_rows(&[vec![h, s], vec![s, h]]).unwrap()).unwrap()
    }

    fn value(doc: &SceneDocument, label: &str) -> f64 {
        doc.segments.iter().find(|s| s.label == label).and_then(|s| s.value).unwrap()
    }

    fn coords<'a>(doc: &'a SceneDocument, label: &str) -> &'a [f64] {
        &doc.points.iter().find(|p| p.label == label).unwrap().coords
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn worked_example_circle() {
        let doc =
            scene_bloch(&worked_example(), &MeasurementBasis::computational(2), "z", SceneKind::BlochCircle).unwrap();
        assert_eq!(value(&doc, "p0"), 0.5);
        assert_eq!(value(&doc, "p1"), 0.5);
        assert!((value(&doc, "perpendicular") - 1.0 / 6.0).abs() < 1e-15);
        assert!(close(coords(&doc, "foot"), &[0.0, 0.0], 1e-15));
        assert!(close(coords(&doc, "statepoint"), &[1.0 / 6.0, 0.0], 1e-15));
        assert!(close(coords(&doc, "B0"), &[0.0, 0.5], 1e-15));
    }

    #[test]
    fn scene_values_are_the_library_values() {
        let rho = worked_example();
        let basis = MeasurementBasis::pauli_y();
        for kind in [SceneKind::BlochCircle, SceneKind::BlochSphere] {
            let doc = scene_bloch(&rho, &basis, "y", kind).unwrap();
            let probs = measure_probabilities(&rho, &basis).unwrap();
            assert_eq!(value(&doc, "p0").to_bits(), probs.as_slice()[0].to_bits());
            assert_eq!(value(&doc, "p1").to_bits(), probs.as_slice()[1].to_bits());
            let r = leaf_radius(&basis.represent(&rho).unwrap());
            assert_eq!(value(&doc, "perpendicular").to_bits(), r.to_bits());
            // Placement agrees with the values to rounding.
            let sp = coords(&doc, "statepoint");
            let foot = coords(&doc, "foot");
            let len = sp.iter().zip(foot).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            assert!((len - r).abs() < 1e-12);
        }
    }

    #[test]
    fn centre_and_pure_examples() {
        let centre = DensityMatrix::maximally_mixed(2).unwrap();
        let doc = scene_bloch(&centre, &MeasurementBasis::computational(2), "z", SceneKind::BlochSphere).unwrap();
        assert!(close(coords(&doc, "statepoint"), &[0.0; 3], 1e-15));
        assert_eq!((value(&doc, "p0"), value(&doc, "p1")), (0.5, 0.5));

        let plus = DensityMatrix::new(
            CMatrix::from_rows(&[vec![Complex64::new(0.5, 0.0); 2], vec![Complex64::new(0.5, 0.0); 2]]).unwrap(),
        )
        .unwrap();
        let doc = scene_bloch(&plus, &MeasurementBasis::pauli_x(), "x", SceneKind::BlochCircle).unwrap();
        assert!(value(&doc, "perpendicular") < 1e-15);
        assert!(close(coords(&doc, "foot"), coords(&doc, "B0"), 1e-15));
    }

    #[test]
    fn simplex_examples() {
        let doc = scene_simplex(&DensityMatrix::maximally_mixed(3).unwrap()).unwrap();
        assert_eq!(doc.kind, SceneKind::Simplex2);
        assert!(close(coords(&doc, "statepoint"), coords(&doc, "centroid"), 1e-15));
        for s in doc.segments.iter().filter(|s| s.style == SegmentStyle::Probability) {
            assert!((s.value.unwrap() - 1.0 / 3.0).abs() < 1e-15);
        }

        let vertex = DensityMatrix::diagonal(&[1.0, 0.0, 0.0]).unwrap();
        let doc = scene_simplex(&vertex).unwrap();
        assert!(close(coords(&doc, "statepoint"), coords(&doc, "e0"), 1e-15));

        let rho = DensityMatrix::diagonal(&[0.2, 0.5, 0.3]).unwrap();
        let doc = scene_simplex(&rho).unwrap();
        assert_eq!(doc.meta.probabilities, vec![0.5, 0.3, 0.2]);
        for (i, want) in [0.5, 0.3, 0.2].iter().enumerate() {
            for s in doc.segments.iter().filter(|s| s.label.starts_with(&format!("p{i} on"))) {
                assert!((s.value.unwrap() - want).abs() < 1e-15);
                let len = s.from.iter().zip(&s.to).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                assert!((len - want).abs() < 1e-12, "{} has length {len}", s.label);
            }
        }
    }

    #[test]
    fn tetrahedron_planes_are_fans() {
        let rho = DensityMatrix::diagonal(&[0.4, 0.3, 0.2, 0.1]).unwrap();
        let doc = scene_simplex(&rho).unwrap();
        assert_eq!(doc.kind, SceneKind::Simplex3);
        assert_eq!(doc.faces.len(), 4);
        for f in &doc.faces {
            assert_eq!(f.triangles, vec![[0, 1, 2]]);
        }
        // Every plane passes through the statepoint.
        let sp = coords(&doc, "statepoint").to_vec();
        for f in &doc.faces {
            let a = sub(&f.vertices[1], &f.vertices[0]);
            let b = sub(&f.vertices[2], &f.vertices[0]);
            let n = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
            assert!(dot(&n, &sub(&sp, &f.vertices[0])).abs() < 1e-12);
        }
    }

    #[test]
    fn wrong_dimensions() {
        let q = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(matches!(
            scene_bloch(&q, &MeasurementBasis::computational(3), "z", SceneKind::BlochCircle),
            Err(SceneError::WrongDimension { .. })
        ));
        assert!(matches!(scene_simplex(&worked_example()), Err(SceneError::WrongDimension { .. })));
        assert!(matches!(
            scene_simplex(&DensityMatrix::maximally_mixed(5).unwrap()),
            Err(SceneError::WrongDimension { .. })
        ));
    }

    #[test]
    fn validation_rejects_bad_coordinates() {
        let mut doc = scene_simplex(&DensityMatrix::maximally_mixed(3).unwrap()).unwrap();
        doc.points[0].coords = vec![0.0, 0.0, 0.0];
        assert!(doc.validate().is_err());
        doc.points[0].coords = vec![f64::NAN, 0.0];
        assert!(doc.validate().is_err());
    }
}
