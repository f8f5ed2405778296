//! JSON operations shared by `--format json` and the HTTP service.
//!
//! Matrices travel as arrays of rows whose entries are `re+imi` strings (or
//! plain numbers); outputs use full-precision strings so they round-trip.
//! Bases are either a builtin name or a unitary matrix with the basis vectors
//! as columns.

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use statespace::measurement::DEFAULT_DECOHERENCE_RATE;
use statespace::*;
use std::result::Result;

use crate::format::{format_complex, parse_complex};
use crate::scene::{scene_bloch, scene_simplex, SceneError, SceneKind};

pub const OPERATIONS: [&str; 12] = [
    "validate",
    "eig",
    "distance",
    "angle",
    "mix",
    "project",
    "leaf",
    "measure",
    "decohere",
    "tomo",
    "hierarchy",
    "scene",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Unparseable request: 400.
    Malformed,
    /// Well-formed input the library rejects: 422.
    Domain,
    /// Unknown operation: 404.
    NotFound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApiError {
    pub kind: ErrorKind,
    pub code: String,
    pub message: String,
    pub detail: Option<Value>,
}

impl ApiError {
    pub fn malformed(message: impl Into<String>) -> Self {
        ApiError { kind: ErrorKind::Malformed, code: "MalformedRequest".into(), message: message.into(), detail: None }
    }

    pub fn body(&self) -> Value {
        let mut v = json!({ "code": self.code, "message": self.message });
        if let Some(d) = &self.detail {
            v["detail"] = d.clone();
        }
        v
    }
}

impl std::fmt::Display for ApiError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl std::error::Error for ApiError {}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let detail = match &e {
            Error::NotHermitian { residual } | Error::TraceNotOne { residual } | Error::NotUnitary { residual } => {
                Some(json!({ "residual": residual }))
            }
            Error::NotPositiveSemiDefinite { min_eigenvalue } => Some(json!({ "min_eigenvalue": min_eigenvalue })),
            Error::DimensionMismatch { left, right } => Some(json!({ "left": left, "right": right })),
            Error::DimensionOutOfRange { dim, min, max } => Some(json!({ "dim": dim, "min": min, "max": max })),
            _ => None,
        };
        ApiError { kind: ErrorKind::Domain, code: e.code().into(), message: e.to_string(), detail }
    }
}

impl From<SceneError> for ApiError {
    fn from(e: SceneError) -> Self {
        match e {
            SceneError::Library(inner) => inner.into(),
            SceneError::WrongDimension { got, .. } => ApiError {
                kind: ErrorKind::Domain,
                code: "WrongDimension".into(),
                message: e.to_string(),
                detail: Some(json!({ "dim": got })),
            },
            SceneError::Invalid(_) => {
                ApiError { kind: ErrorKind::Domain, code: "InvalidScene".into(), message: e.to_string(), detail: None }
            }
        }
    }
}

/// A matrix entry: `"re+imi"` or a real number.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Text(String),
    Real(f64),
}

pub type MatrixJson = Vec<Vec<Entry>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisJson {
    Named(String),
    Matrix(MatrixJson),
}

pub fn matrix_to_json(m: &CMatrix) -> Value {
    Value::Array(
        m.rows().map(|row| Value::Array(row.iter().map(|z| Value::String(format_complex(*z))).collect())).collect(),
    )
}

pub fn matrix_to_request(m: &CMatrix) -> MatrixJson {
    m.rows().map(|row| row.iter().map(|z| Entry::Text(format_complex(*z))).collect()).collect()
}

fn entry(e: &Entry) -> Result<Complex64, ApiError> {
    match e {
        Entry::Real(x) => Ok(Complex64::new(*x, 0.0)),
        Entry::Text(s) => parse_complex(s).ok_or_else(|| ApiError::malformed(format!("bad matrix entry `{s}`"))),
    }
}

fn parse_cmatrix(m: &MatrixJson) -> Result<CMatrix, ApiError> {
    let rows = m.iter().map(|r| r.iter().map(entry).collect()).collect::<Result<Vec<Vec<_>>, _>>()?;
    Ok(CMatrix::from_rows(&rows)?)
}

/// Operation context: validation tolerances come from the caller.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub tolerances: Tolerances,
}

impl Default for Context {
    fn default() -> Self {
        Context { tolerances: Tolerances::DEFAULT }
    }
}

impl Context {
    fn density(&self, m: &MatrixJson) -> Result<DensityMatrix, ApiError> {
        Ok(DensityMatrix::with_tolerances(parse_cmatrix(m)?, &self.tolerances)?)
    }

    fn unitary(&self, m: &MatrixJson) -> Result<Unitary, ApiError> {
        Ok(Unitary::with_tolerances(parse_cmatrix(m)?, &self.tolerances)?)
    }

    fn basis(&self, b: &BasisJson, dim: usize) -> Result<(MeasurementBasis, String), ApiError> {
        match b {
            BasisJson::Named(name) => Ok((named_basis(name, dim)?, name.clone())),
            BasisJson::Matrix(m) => Ok((MeasurementBasis::new(self.unitary(m)?), "custom".into())),
        }
    }
}

/// `z`/`computational`, `x`, `y` (qubits only) and `fourier`.
pub fn named_basis(name: &str, dim: usize) -> Result<MeasurementBasis, ApiError> {
    let qubit_only = |b: MeasurementBasis| {
        if dim == 2 {
            Ok(b)
        } else {
            Err(ApiError::from(Error::DimensionMismatch { left: dim, right: 2 }))
        }
    };
    match name.to_ascii_lowercase().as_str() {
        "z" | "computational" => Ok(MeasurementBasis::computational(dim)),
        "x" => qubit_only(MeasurementBasis::pauli_x()),
        "y" => qubit_only(MeasurementBasis::pauli_y()),
        "fourier" => Ok(MeasurementBasis::new(Unitary::fourier(dim))),
        other => Err(ApiError::malformed(format!("unknown basis `{other}`"))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RhoReq {
    rho: MatrixJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairReq {
    a: MatrixJson,
    b: MatrixJson,
    /// Basis in which `b` is written; it is rotated back before comparing.
    #[serde(default)]
    basis_b: Option<BasisJson>,
    /// Angle at this state instead of at the origin.
    #[serde(default)]
    vertex: Option<MatrixJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Component {
    weight: f64,
    rho: MatrixJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MixReq {
    components: Vec<Component>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisReq {
    rho: MatrixJson,
    #[serde(default)]
    basis: Option<BasisJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DecohereReq {
    rho: MatrixJson,
    basis: BasisJson,
    t: f64,
    #[serde(default)]
    rate: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordEntry {
    basis: BasisJson,
    probabilities: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TomoReq {
    record: Vec<RecordEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HierarchyReq {
    d: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneReq {
    kind: String,
    rho: MatrixJson,
    #[serde(default)]
    basis: Option<BasisJson>,
}

fn decode<T: DeserializeOwned>(v: &Value) -> Result<T, ApiError> {
    serde_json::from_value(v.clone()).map_err(|e| ApiError::malformed(e.to_string()))
}

fn ket_json(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|z| Value::String(format_complex(*z))).collect())
}

/// Runs one operation. The response is a JSON object whose serialization is
/// the payload for both the CLI and the service.
pub fn execute(op: &str, req: &Value, ctx: &Context) -> Result<Value, ApiError> {
    match op {
        "validate" => {
            let r: RhoReq = decode(req)?;
            let rho = ctx.density(&r.rho)?;
            Ok(json!({
                "dim": rho.dim(),
                "class": classify_with(&rho, &ctx.tolerances)?.as_str(),
                "purity": rho.purity(),
                "statepoint": to_statepoint(&rho).coords(),
            }))
        }
        "eig" => {
            let r: RhoReq = decode(req)?;
            let rho = ctx.density(&r.rho)?;
            let s = eig_hermitian_with(&rho, &ctx.tolerances)?;
            let e = entropy_of_probabilities(&s.probabilities());
            let vectors: Vec<Value> = (0..rho.dim()).map(|k| ket_json(&s.eigenvectors.column(k))).collect();
            Ok(json!({
                "eigenvalues": s.eigenvalues,
                "eigenvectors": vectors,
                "entropy": e.s,
                "w": e.w,
                "purity": rho.purity(),
                "class": classify_with(&rho, &ctx.tolerances)?.as_str(),
            }))
        }
        "distance" => {
            let r: PairReq = decode(req)?;
            if r.vertex.is_some() {
                return Err(ApiError::malformed("`vertex` applies to angle only"));
            }
            let a = ctx.density(&r.a)?;
            let mut b = ctx.density(&r.b)?;
            if let Some(basis) = &r.basis_b {
                let (u, _) = ctx.basis(basis, b.dim())?;
                b = change_basis(&b, u.unitary())?;
            }
            Ok(json!({ "distance": distance(&a, &b)? }))
        }
        "angle" => {
            let r: PairReq = decode(req)?;
            if r.basis_b.is_some() {
                return Err(ApiError::malformed("`basis_b` applies to distance only"));
            }
            let a = ctx.density(&r.a)?;
            let b = ctx.density(&r.b)?;
            let theta = match &r.vertex {
                Some(v) => angle_at(&ctx.density(v)?, &a, &b)?,
                None => angle(&a, &b)?,
            };
            Ok(json!({ "angle": theta, "degrees": theta.to_degrees() }))
        }
        "mix" => {
            let r: MixReq = decode(req)?;
            let comps = r
                .components
                .iter()
                .map(|c| Ok((c.weight, ctx.density(&c.rho)?)))
                .collect::<Result<Vec<_>, ApiError>>()?;
            let m = mix(&WeightedEnsemble::new(comps)?);
            Ok(json!({ "rho": matrix_to_json(m.matrix()), "statepoint": to_statepoint(&m).coords() }))
        }
        "project" => {
            let r: BasisReq = decode(req)?;
            let rho = ctx.density(&r.rho)?;
            let (basis, _) = match &r.basis {
                Some(b) => ctx.basis(b, rho.dim())?,
                None => (MeasurementBasis::computational(rho.dim()), "z".into()),
            };
            let written = basis.represent(&rho)?;
            let projected = change_basis(&project_to_simplex(&written), basis.unitary())?;
            Ok(json!({ "rho": matrix_to_json(projected.matrix()), "leaf_radius": leaf_radius(&written) }))
        }
        "leaf" => {
            let r: BasisReq = decode(req)?;
            let rho = ctx.density(&r.rho)?;
            let written = match &r.basis {
                Some(b) => ctx.basis(b, rho.dim())?.0.represent(&rho)?,
                None => rho,
            };
            let l = leaf_coordinates(&written);
            let off: Vec<Value> =
                l.offdiag.iter().map(|c| json!({ "magnitude": c.magnitude, "phase": c.phase })).collect();
            Ok(json!({ "diag": l.diag.as_slice(), "offdiag": off, "radius": l.radius() }))
        }
        "measure" => {
            let r: BasisReq = decode(req)?;
            let rho = ctx.density(&r.rho)?;
            let basis = r.basis.ok_or_else(|| ApiError::malformed("missing field `basis`"))?;
            let (basis, _) = ctx.basis(&basis, rho.dim())?;
            Ok(json!({ "probabilities": measure_probabilities(&rho, &basis)?.as_slice() }))
        }
        "decohere" => {
            let r: DecohereReq = decode(req)?;
            let rho = ctx.density(&r.rho)?;
            let (basis, _) = ctx.basis(&r.basis, rho.dim())?;
            let rate = r.rate.unwrap_or(DEFAULT_DECOHERENCE_RATE);
            let out = decohere_with_rate(&rho, &basis, r.t, rate)?;
            let end = decohere(&rho, &basis, f64::INFINITY)?;
            let fraction = if distance(&rho, &end)? > 1e-9 { Some(cut_ratio(&rho, &end, &out)?.t) } else { None };
            Ok(json!({ "rho": matrix_to_json(out.matrix()), "t": r.t, "rate": rate, "fraction": fraction }))
        }
        "tomo" => {
            let r: TomoReq = decode(req)?;
            let first = r.record.first().ok_or_else(|| ApiError::from(Error::EmptyRecord))?;
            let dim = first.probabilities.len();
            let entries = r
                .record
                .iter()
                .map(|e| Ok((ctx.basis(&e.basis, dim)?.0, ProbabilityVector::new(e.probabilities.clone())?)))
                .collect::<Result<Vec<_>, ApiError>>()?;
            let out = reconstruct(&TomographyRecord::new(entries)?)?;
            Ok(json!({ "rho": matrix_to_json(out.rho.matrix()), "residual": out.residual }))
        }
        "hierarchy" => {
            let r: HierarchyReq = decode(req)?;
            if r.d > ctx.tolerances.max_dim {
                return Err(Error::DimensionOutOfRange { dim: r.d, min: 2, max: ctx.tolerances.max_dim }.into());
            }
            let m = hierarchy_metrics(r.d)?;
            Ok(json!({
                "d": m.dim,
                "mixed_radius": m.mixed_radius,
                "vertex_distance": m.vertex_distance,
                "successor_distance": m.successor_distance,
                "vertex_angle": m.vertex_angle,
                "vertex_angle_deg": m.vertex_angle.to_degrees(),
                "pure_mixed_angle": m.pure_mixed_angle,
                "pure_mixed_angle_deg": m.pure_mixed_angle.to_degrees(),
                "successor_angle": m.successor_angle,
                "successor_angle_deg": m.successor_angle.to_degrees(),
            }))
        }
        "scene" => {
            let r: SceneReq = decode(req)?;
            let kind = SceneKind::parse(&r.kind)
                .ok_or_else(|| ApiError::malformed(format!("unknown scene kind `{}`", r.kind)))?;
            let rho = ctx.density(&r.rho)?;
            let doc = match kind {
                SceneKind::BlochCircle | SceneKind::BlochSphere => {
                    let (basis, label) = match &r.basis {
                        Some(b) => ctx.basis(b, rho.dim())?,
                        None => (MeasurementBasis::computational(rho.dim()), "z".into()),
                    };
                    scene_bloch(&rho, &basis, &label, kind)?
                }
                SceneKind::Simplex2 | SceneKind::Simplex3 => {
                    let doc = scene_simplex(&rho)?;
                    if doc.kind != kind {
                        return Err(SceneError::WrongDimension {
                            kind,
                            expected: if kind == SceneKind::Simplex2 { "3" } else { "4" },
                            got: rho.dim(),
                        }
                        .into());
                    }
                    doc
                }
            };
            serde_json::to_value(doc).map_err(|e| ApiError::malformed(e.to_string()))
        }
        other => Err(ApiError {
            kind: ErrorKind::NotFound,
            code: "UnknownOperation".into(),
            message: format!("no operation `{other}`"),
            detail: None,
        }),
    }
}

/// Compact serialization used for every payload.
pub fn to_payload(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}
