use axum::body::Body;
use axum::http::{header, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use statespace_cli::cli;
use statespace_cli::service::{router, ServiceConfig, BODY_LIMIT};
use tower::ServiceExt;

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

fn app() -> Router {
    router(&ServiceConfig::default())
}

async fn send(app: Router, req: Request<Body>) -> (StatusCode, String) {
    let resp = app.oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

fn post(op: &str, body: impl Into<Body>) -> Request<Body> {
    Request::post(format!("/v1/{op}")).header(header::CONTENT_TYPE, "application/json").body(body.into()).unwrap()
}

async fn call(op: &str, body: &Value) -> (StatusCode, Value) {
    let (status, text) = send(app(), post(op, body.to_string())).await;
    (status, serde_json::from_str(&text).unwrap_or_else(|e| panic!("non-JSON response {text}: {e}")))
}

#[tokio::test]
async fn health_is_ok() {
    let (status, body) = send(app(), Request::get("/v1/health").body(Body::empty()).unwrap()).await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["status"], "ok");
}

#[tokio::test]
async fn orthogonal_projectors_are_distance_one() {
    let req = json!({ "a": [[1, 0], [0, 0]], "b": [[0, 0], [0, 1]] });
    let (status, text) = send(app(), post("distance", req.to_string())).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(text, r#"{"distance":1.0}"#);
}

#[tokio::test]
async fn non_hermitian_is_422() {
    let (status, v) = call("validate", &json!({ "rho": [["0.5", "0.1"], ["0.3", "0.5"]] })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["code"], "NotHermitian");
    assert!(v["message"].is_string());
}

#[tokio::test]
async fn not_psd_carries_min_eigenvalue() {
    let (status, v) = call("validate", &json!({ "rho": [[1.5, 0], [0, -0.5]] })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["code"], "NotPositiveSemiDefinite");
    assert!(v["detail"]["min_eigenvalue"].as_f64().unwrap() < -0.49);
}

#[tokio::test]
async fn malformed_requests_are_400() {
    let (status, text) = send(app(), post("validate", "{not json")).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(text.contains("\"code\""));
    let (status, _) = call("validate", &json!({ "matrix": [[1]] })).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call("validate", &json!({ "rho": [["one", 0], [0, 0]] })).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, v) = call("validate", &json!({ "rho": [[1, 0], [0]] })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["code"], "NotSquare");
}

#[tokio::test]
async fn unknown_operation_is_404() {
    let (status, v) = call("teleport", &json!({})).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(v["code"], "UnknownOperation");
}

#[tokio::test]
async fn oversized_body_is_413() {
    let body = format!("{{\"pad\":\"{}\"}}", "x".repeat(BODY_LIMIT));
    let (status, _) = send(app(), post("validate", body)).await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE);
}

#[tokio::test]
async fn dimension_cap_is_enforced() {
    let (status, v) = call("hierarchy", &json!({ "d": 65 })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["code"], "DimensionOutOfRange");
}

#[tokio::test]
async fn cors_allows_the_ui_origin() {
    let req = Request::get("/v1/health").header(header::ORIGIN, "http://localhost:5173").body(Body::empty()).unwrap();
    let resp = app().oneshot(req).await.unwrap();
    assert_eq!(resp.headers()[header::ACCESS_CONTROL_ALLOW_ORIGIN], "http://localhost:5173");

    let req = Request::get("/v1/health").header(header::ORIGIN, "http://evil.example").body(Body::empty()).unwrap();
    let resp = app().oneshot(req).await.unwrap();
    assert!(resp.headers().get(header::ACCESS_CONTROL_ALLOW_ORIGIN).is_none());

    let config = ServiceConfig { cors_origins: vec!["*".into()], ..ServiceConfig::default() };
    let req = Request::options("/v1/scene")
        .header(header::ORIGIN, "http://elsewhere.example")
        .header(header::ACCESS_CONTROL_REQUEST_METHOD, "POST")
        .body(Body::empty())
        .unwrap();
    let resp = router(&config).oneshot(req).await.unwrap();
    assert_eq!(resp.headers()[header::ACCESS_CONTROL_ALLOW_ORIGIN], "*");
}

#[tokio::test]
async fn responses_are_json() {
    let resp = app().oneshot(post("hierarchy", json!({ "d": 3 }).to_string())).await.unwrap();
    assert_eq!(resp.headers()[header::CONTENT_TYPE], "application/json");
    let resp = app().oneshot(post("hierarchy", "[]")).await.unwrap();
    assert_eq!(resp.headers()[header::CONTENT_TYPE], "application/json");
}

/// Every operation, driven from the golden input files.
fn cli_invocations() -> Vec<Vec<String>> {
    let g = |f: &str| format!("{GOLDEN}/{f}");
    let lines: Vec<Vec<String>> = vec![
        vec!["validate".into(), "--in".into(), g("worked_z.txt")],
        vec!["eig".into(), "--in".into(), g("centroid.txt")],
        vec![
            "distance".into(),
            "--a".into(),
            g("worked_z.txt"),
            "--b".into(),
            g("worked_x.txt"),
            "--basis-b".into(),
            "x".into(),
        ],
        vec!["angle".into(), "--a".into(), g("up.txt"), "--b".into(), g("right.txt")],
        vec!["angle".into(), "--a".into(), g("up.txt"), "--b".into(), g("down.txt"), "--vertex".into(), g("right.txt")],
        vec!["mix".into(), "--in".into(), g("thirds.ens")],
        vec!["project".into(), "--in".into(), g("worked_z.txt"), "--basis".into(), "x".into()],
        vec!["leaf".into(), "--in".into(), g("worked_z.txt")],
        vec!["measure".into(), "--in".into(), g("worked_z.txt"), "--basis".into(), g("hadamard.txt")],
        vec![
            "decohere".into(),
            "--in".into(),
            g("worked_z.txt"),
            "--basis".into(),
            "z".into(),
            "--t".into(),
            "0.5".into(),
        ],
        vec!["tomo".into(), "--in".into(), g("worked.record")],
        vec!["hierarchy".into(), "--d".into(), "4".into()],
        vec![
            "scene".into(),
            "--kind".into(),
            "bloch-sphere".into(),
            "--in".into(),
            g("worked_z.txt"),
            "--basis".into(),
            "y".into(),
        ],
        vec!["scene".into(), "--kind".into(), "simplex3".into(), "--in".into(), g("tetra.txt")],
    ];
    lines
}

#[tokio::test]
async fn payloads_match_cli_json_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for (k, args) in cli_invocations().into_iter().enumerate() {
        let out = dir.path().join(format!("{k}.json"));
        let mut argv = vec!["statespace".to_string(), "--format".into(), "json".into(), "--out".into()];
        argv.push(out.display().to_string());
        argv.extend(args.iter().cloned());
        let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
        let code = cli::run(&argv, &mut stdout, &mut stderr);
        assert_eq!(code, 0, "{args:?}: {}", String::from_utf8_lossy(&stderr));
        let file = std::fs::read_to_string(&out).unwrap();

        let parsed = <cli::Cli as clap::Parser>::try_parse_from(&argv).unwrap();
        let (op, req) = cli::request(&parsed.command).unwrap_or_else(|f| panic!("{}", f.message));
        seen.insert(op);
        let (status, body) = send(app(), post(op, req.to_string())).await;
        assert_eq!(status, StatusCode::OK, "{op}: {body}");
        assert_eq!(body, file, "{op}");
    }
    assert_eq!(seen.len(), statespace_cli::api::OPERATIONS.len());
}

#[tokio::test]
async fn requests_are_stateless() {
    let reqs = [
        (
            "mix",
            json!({ "components": [{ "weight": 0.5, "rho": [[1, 0], [0, 0]] }, { "weight": 0.5, "rho": [[0.5, 0.5], [0.5, 0.5]] }] }),
        ),
        ("eig", json!({ "rho": [["0.5", "0.2-0.1i"], ["0.2+0.1i", "0.5"]] })),
        ("validate", json!({ "rho": [[1, 2], [3, 4]] })),
        ("hierarchy", json!({ "d": 5 })),
    ];
    let mut first = Vec::new();
    for (op, r) in &reqs {
        first.push(send(app(), post(op, r.to_string())).await);
    }
    // Same router, reversed order, interleaved concurrently.
    let shared = app();
    let mut handles = Vec::new();
    for (op, r) in reqs.iter().rev().cycle().take(reqs.len() * 4) {
        let (app, op, body) = (shared.clone(), op.to_string(), r.to_string());
        handles.push(tokio::spawn(async move { (op.clone(), send(app, post(&op, body)).await) }));
    }
    for h in handles {
        let (op, got) = h.await.unwrap();
        let k = reqs.iter().position(|(o, _)| *o == op).unwrap();
        assert_eq!(got, first[k], "{op}");
    }
}
