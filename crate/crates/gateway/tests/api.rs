use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use tiltmut_core::fixtures;
use tiltmut_core::json::PresentationJson;
use tiltmut_core::mutation::presentation_iso;

async fn call(app: &axum::Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = match body {
        Some(b) => req.body(Body::from(b.to_string())).unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

fn pres(name: &str) -> Value {
    serde_json::to_value(PresentationJson::from_presentation(&fixtures::by_name(name).unwrap())).unwrap()
}

fn back(v: &Value) -> tiltmut_core::Presentation {
    serde_json::from_value::<PresentationJson>(v.clone()).unwrap().to_presentation().unwrap()
}

#[tokio::test]
async fn mutate_e2_returns_e2() {
    let app = tiltmut_gateway::router();
    let (status, v) = call(&app, "POST", "/api/mutate", Some(json!({"presentation": pres("e2"), "vertex": "1"}))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    let reduced = back(&v["reducedPresentation"]);
    assert!(presentation_iso(&reduced, &fixtures::e2()).unwrap().is_some());
    assert_eq!(v["provenance"]["arrowTags"]["A1"], 2);
    let dims: Vec<Value> = v["simpleImages"].as_array().unwrap().iter().map(|s| s["dims"].clone()).collect();
    assert_eq!(dims, vec![json!([1, 0, 0]), json!([1, 1, 2]), json!([1, 2, 1])]);
}

#[tokio::test]
async fn loop_vertex_is_422() {
    let app = tiltmut_gateway::router();
    let (status, v) = call(&app, "POST", "/api/mutate", Some(json!({"presentation": pres("loop-at-1"), "vertex": "1"}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["code"], "LoopAtVertex");
}

#[tokio::test]
async fn schema_violation_is_400() {
    let app = tiltmut_gateway::router();
    let (status, v) = call(&app, "POST", "/api/mutate", Some(json!({"vertex": 1}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["code"], "SchemaViolation");
    let (status, _) = call(&app, "POST", "/api/mutate", Some(json!({"presentation": pres("e2"), "vertex": "1", "side": "up"}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn parse_and_validate() {
    let app = tiltmut_gateway::router();
    let text = tiltmut_core::grammar::print_presentation(&fixtures::e2());
    let (status, v) = call(&app, "POST", "/api/parse", Some(json!({"text": text}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["text"], text);
    let (_, v) = call(&app, "POST", "/api/parse", Some(json!({"text": "vertex 1\narrow a : 1 -> 9\n"}))).await;
    assert_eq!(v["errors"][0]["code"], "UnknownVertex");
    let (status, v) = call(&app, "POST", "/api/validate", Some(json!({"presentation": pres("e2")}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["weaklySymmetric"], true);
}

#[tokio::test]
async fn session_replay() {
    let app = tiltmut_gateway::router();
    let (status, s) = call(&app, "POST", "/api/session", Some(json!({"presentation": pres("e2")}))).await;
    assert_eq!(status, StatusCode::OK);
    let id = s["id"].as_str().unwrap().to_string();
    let (status, _) = call(&app, "POST", &format!("/api/session/{id}/move"), Some(json!({"vertex": "1", "side": "left"}))).await;
    assert_eq!(status, StatusCode::OK);
    let (_, s) = call(&app, "POST", &format!("/api/session/{id}/move"), Some(json!({"vertex": "1", "side": "right"}))).await;
    assert_eq!(s["head"], 2);
    assert_eq!(s["nodes"][2]["parent"], 1);
    let (_, s) = call(&app, "GET", &format!("/api/session/{id}"), None).await;
    let head = back(&s["nodes"][2]["presentation"]);
    assert!(presentation_iso(&head, &fixtures::e2()).unwrap().is_some());
    let (status, v) = call(&app, "GET", "/api/session/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(v["code"], "NotFound");
}

#[tokio::test]
async fn msob_over_http() {
    let app = tiltmut_gateway::router();
    let body = json!({"presentation": pres("e2"), "system": "simple 1\nsimple 2\nsimple 3\n", "vertex": "1", "side": "left"});
    let (status, v) = call(&app, "POST", "/api/msob/mutate", Some(body)).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["bricks"][1]["dims"], json!([1, 1, 2]));
    assert_eq!(v["flags"]["orthobrick"], true);
    // explicit bricks round-trip into the right mutation
    let body = json!({"presentation": pres("e2"), "system": {"bricks": v["bricks"]}, "vertex": "1", "side": "right"});
    let (status, v) = call(&app, "POST", "/api/msob/mutate", Some(body)).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["bricks"][1]["dims"], json!([0, 1, 0]));
}

#[tokio::test]
async fn examples_and_schema() {
    let app = tiltmut_gateway::router();
    let (_, v) = call(&app, "GET", "/api/examples", None).await;
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for n in ["e1-3", "e1-4", "e1-5", "e2", "loop-at-1"] {
        assert!(names.contains(&n));
    }
    let (_, v) = call(&app, "GET", "/api/schema", None).await;
    assert!(v.get("MutationResult").is_some());
}

#[tokio::test]
async fn cors_headers() {
    let app = tiltmut_gateway::router();
    let req = Request::builder().method("GET").uri("/api/schema").header("origin", "http://localhost:5173").body(Body::empty()).unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert!(resp.headers().contains_key("access-control-allow-origin"));
}
