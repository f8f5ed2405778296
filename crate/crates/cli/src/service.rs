//! Stateless HTTP facade over [`crate::api::execute`].

use std::net::SocketAddr;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde_json::{json, Value};
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

use crate::api::{execute, to_payload, ApiError, Context, ErrorKind};

/// Request bodies above this size are refused with 413.
pub const BODY_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub context: Context,
    /// Allowed browser origins; `*` allows any.
    pub cors_origins: Vec<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig { context: Context::default(), cors_origins: vec!["http://localhost:5173".into()] }
    }
}

fn json_response(status: StatusCode, payload: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], payload).into_response()
}

fn error_response(e: &ApiError) -> Response {
    let status = match e.kind {
        ErrorKind::Malformed => StatusCode::BAD_REQUEST,
        ErrorKind::Domain => StatusCode::UNPROCESSABLE_ENTITY,
        ErrorKind::NotFound => StatusCode::NOT_FOUND,
    };
    json_response(status, to_payload(&e.body()))
}

async fn health() -> Response {
    json_response(StatusCode::OK, to_payload(&json!({ "status": "ok", "version": env!("CARGO_PKG_VERSION") })))
}

async fn operation(State(ctx): State<Context>, Path(op): Path<String>, body: Bytes) -> Response {
    let req: Value = match serde_json::from_slice(&body) {
        Ok(v) => v,
        Err(e) => return error_response(&ApiError::malformed(format!("invalid JSON: {e}"))),
    };
    let outcome = tokio::task::spawn_blocking(move || execute(&op, &req, &ctx)).await;
    match outcome {
        Ok(Ok(v)) => json_response(StatusCode::OK, to_payload(&v)),
        Ok(Err(e)) => error_response(&e),
        Err(e) => json_response(
            StatusCode::INTERNAL_SERVER_ERROR,
            to_payload(&json!({ "code": "Internal", "message": e.to_string() })),
        ),
    }
}

fn cors(origins: &[String]) -> CorsLayer {
    let layer = CorsLayer::new().allow_methods([Method::GET, Method::POST]).allow_headers([header::CONTENT_TYPE]);
    if origins.iter().any(|o| o == "*") {
        return layer.allow_origin(Any);
    }
    let values: Vec<HeaderValue> = origins.iter().filter_map(|o| HeaderValue::from_str(o).ok()).collect();
    layer.allow_origin(AllowOrigin::list(values))
}

pub fn router(config: &ServiceConfig) -> Router {
    Router::new()
        .route("/v1/health", get(health))
        .route("/v1/{op}", post(operation))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .layer(cors(&config.cors_origins))
        .with_state(config.context)
}

pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(&config))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
