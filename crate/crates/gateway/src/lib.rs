//! JSON-over-HTTP facade for the mutation workbench.

pub mod ops;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tower_http::cors::CorsLayer;

use tiltmut_core::fixtures;
use tiltmut_core::grammar::{parse_presentation, print_presentation};
use tiltmut_core::json::{schemas, ErrorJson, PresentationJson, RepresentationJson};
use tiltmut_core::msob::parse_system;
use tiltmut_core::{Error, FdAlgebra, Presentation};

use ops::{MutateOptions, Side};

pub enum ApiError {
    /// Body does not match the schema.
    BadRequest(String),
    Domain(Error),
    NotFound(String),
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError::Domain(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, body) = match self {
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, ErrorJson { code: "SchemaViolation".into(), message: m }),
            ApiError::Domain(e) => (StatusCode::UNPROCESSABLE_ENTITY, ErrorJson::from(&e)),
            ApiError::NotFound(m) => (StatusCode::NOT_FOUND, ErrorJson { code: "NotFound".into(), message: m }),
        };
        (status, Json(body)).into_response()
    }
}

type ApiResult = std::result::Result<Json<Value>, ApiError>;

fn body<T: DeserializeOwned>(bytes: &Bytes) -> std::result::Result<T, ApiError> {
    serde_json::from_slice(bytes).map_err(|e| ApiError::BadRequest(e.to_string()))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Runs CPU-bound work off the async executor.
async fn blocking<F>(f: F) -> ApiResult
where
    F: FnOnce() -> std::result::Result<Value, ApiError> + Send + 'static,
{
    match tokio::task::spawn_blocking(f).await {
        Ok(r) => r.map(Json),
        Err(e) => Err(ApiError::Domain(Error::Invalid(format!("worker failed: {e}")))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Move {
    pub vertex: String,
    pub side: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Node {
    pub id: usize,
    pub parent: Option<usize>,
    #[serde(rename = "move")]
    pub mv: Option<Move>,
    pub presentation: PresentationJson,
    pub text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Session {
    pub id: String,
    pub head: usize,
    pub nodes: Vec<Node>,
}

#[derive(Default)]
pub struct AppState {
    sessions: Mutex<HashMap<String, Session>>,
    counter: Mutex<u64>,
}

pub fn router() -> Router {
    router_with(Arc::new(AppState::default()))
}

pub fn router_with(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/parse", post(parse))
        .route("/api/validate", post(validate))
        .route("/api/mutate", post(mutate))
        .route("/api/msob/mutate", post(msob_mutate))
        .route("/api/session", post(session_new))
        .route("/api/session/{id}", get(session_get))
        .route("/api/session/{id}/move", post(session_move))
        .route("/api/examples", get(examples))
        .route("/api/schema", get(schema))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

pub async fn serve(port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    axum::serve(listener, router()).await
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParseRequest {
    text: String,
}

async fn parse(bytes: Bytes) -> ApiResult {
    let req: ParseRequest = body(&bytes)?;
    match parse_presentation(&req.text) {
        Ok(p) => Ok(Json(json!({"presentation": PresentationJson::from_presentation(&p), "text": print_presentation(&p)}))),
        Err(e) => Ok(Json(json!({"errors": [ErrorJson::from(&e)]}))),
    }
}

#[derive(Deserialize)]
struct PresentationRequest {
    presentation: PresentationJson,
}

async fn validate(bytes: Bytes) -> ApiResult {
    let req: PresentationRequest = body(&bytes)?;
    blocking(move || {
        let p = req.presentation.to_presentation()?;
        Ok(to_value(&FdAlgebra::validate(&p)))
    })
    .await
}

fn default_true() -> bool {
    true
}

fn default_side() -> String {
    "left".into()
}

#[derive(Deserialize)]
struct MutateRequest {
    presentation: PresentationJson,
    vertex: String,
    #[serde(default = "default_side")]
    side: String,
    #[serde(default = "default_true")]
    reduce: bool,
    #[serde(default = "default_true")]
    checked: bool,
}

async fn mutate(bytes: Bytes) -> ApiResult {
    let req: MutateRequest = body(&bytes)?;
    let side: Side = req.side.parse().map_err(|e: Error| ApiError::BadRequest(e.to_string()))?;
    blocking(move || {
        let p = req.presentation.to_presentation()?;
        let opts = MutateOptions { side, reduce: req.reduce, checked: req.checked };
        Ok(to_value(&ops::mutate_json(&p, &req.vertex, &opts)?))
    })
    .await
}

/// Either explicit bricks or the line format of `.system` files.
#[derive(Deserialize)]
#[serde(untagged)]
enum SystemSpec {
    Bricks { bricks: Vec<RepresentationJson> },
    Text(String),
}

#[derive(Deserialize)]
struct MsobRequest {
    presentation: PresentationJson,
    system: SystemSpec,
    vertex: String,
    #[serde(default = "default_side")]
    side: String,
}

async fn msob_mutate(bytes: Bytes) -> ApiResult {
    let req: MsobRequest = body(&bytes)?;
    let side: Side = req.side.parse().map_err(|e: Error| ApiError::BadRequest(e.to_string()))?;
    blocking(move || {
        let p = req.presentation.to_presentation()?;
        let alg = FdAlgebra::new(&p)?;
        let bricks = match &req.system {
            SystemSpec::Bricks { bricks } => bricks.iter().map(|b| b.to_rep(&alg)).collect::<tiltmut_core::Result<Vec<_>>>()?,
            SystemSpec::Text(t) => parse_system(&alg, t)?,
        };
        Ok(to_value(&ops::msob_mutate(&p, &bricks, &req.vertex, side)?))
    })
    .await
}

fn node(id: usize, parent: Option<usize>, mv: Option<Move>, p: &Presentation) -> Node {
    Node { id, parent, mv, presentation: PresentationJson::from_presentation(p), text: print_presentation(p) }
}

async fn session_new(State(state): State<Arc<AppState>>, bytes: Bytes) -> ApiResult {
    let req: PresentationRequest = body(&bytes)?;
    let p = req.presentation.to_presentation()?;
    let id = {
        let mut c = state.counter.lock().unwrap();
        *c += 1;
        format!("s{}", *c)
    };
    let session = Session { id: id.clone(), head: 0, nodes: vec![node(0, None, None, &p)] };
    let out = to_value(&session);
    state.sessions.lock().unwrap().insert(id, session);
    Ok(Json(out))
}

async fn session_get(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let sessions = state.sessions.lock().unwrap();
    let s = sessions.get(&id).ok_or_else(|| ApiError::NotFound(format!("no session `{id}`")))?;
    Ok(Json(to_value(s)))
}

#[derive(Deserialize)]
struct MoveRequest {
    vertex: String,
    #[serde(default = "default_side")]
    side: String,
    /// Node to branch from; defaults to the head.
    from: Option<usize>,
}

async fn session_move(State(state): State<Arc<AppState>>, Path(id): Path<String>, bytes: Bytes) -> ApiResult {
    let req: MoveRequest = body(&bytes)?;
    let side: Side = req.side.parse().map_err(|e: Error| ApiError::BadRequest(e.to_string()))?;
    let (from, start) = {
        let sessions = state.sessions.lock().unwrap();
        let s = sessions.get(&id).ok_or_else(|| ApiError::NotFound(format!("no session `{id}`")))?;
        let from = req.from.unwrap_or(s.head);
        let n = s.nodes.get(from).ok_or_else(|| ApiError::NotFound(format!("no node {from} in session `{id}`")))?;
        (from, n.presentation.clone())
    };
    let vertex = req.vertex.clone();
    let result = tokio::task::spawn_blocking(move || -> tiltmut_core::Result<Presentation> {
        let p = start.to_presentation()?;
        Ok(ops::mutate(&p, &vertex, &MutateOptions { side, reduce: true, checked: false })?.reduced)
    })
    .await
    .map_err(|e| ApiError::Domain(Error::Invalid(e.to_string())))??;
    let mut sessions = state.sessions.lock().unwrap();
    let s = sessions.get_mut(&id).ok_or_else(|| ApiError::NotFound(format!("no session `{id}`")))?;
    let new_id = s.nodes.len();
    s.nodes.push(node(new_id, Some(from), Some(Move { vertex: req.vertex, side: req.side }), &result));
    s.head = new_id;
    Ok(Json(to_value(s)))
}

async fn examples() -> Json<Value> {
    let list: Vec<Value> = fixtures::catalog()
        .into_iter()
        .map(|(name, p)| json!({"name": name, "text": print_presentation(&p), "presentation": PresentationJson::from_presentation(&p)}))
        .collect();
    Json(Value::Array(list))
}

async fn schema() -> Json<Value> {
    Json(schemas())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_statuses() {
        let r = ApiError::Domain(Error::LoopAtVertex("1".into())).into_response();
        assert_eq!(r.status(), StatusCode::UNPROCESSABLE_ENTITY);
        assert_eq!(ApiError::BadRequest("x".into()).into_response().status(), StatusCode::BAD_REQUEST);
        assert_eq!(ApiError::NotFound("s9".into()).into_response().status(), StatusCode::NOT_FOUND);
    }

    #[test]
    fn bodies_must_match_the_schema() {
        let ok: std::result::Result<ParseRequest, _> = body(&Bytes::from_static(br#"{"text": "vertex 1"}"#));
        assert!(ok.is_ok());
        let bad: std::result::Result<ParseRequest, _> = body(&Bytes::from_static(br#"{"text": 1}"#));
        assert!(matches!(bad, Err(ApiError::BadRequest(_))));
        let extra: std::result::Result<ParseRequest, _> = body(&Bytes::from_static(br#"{"text": "", "x": 1}"#));
        assert!(extra.is_err());
    }
}
