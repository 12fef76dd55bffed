//! HTTP API. Mutations go through a single writer lane (the store mutex) and
//! publish a fresh snapshot when they succeed; reads and what-if previews use
//! the latest published snapshot and never wait on the writer.

use std::sync::{Arc, RwLock};

use argnet_core::eval::CredibilityConfig;
use argnet_core::interchange::InterchangeDocument;
use argnet_core::{INodeDraft, NetworkSnapshot, NodeId, QuerySpec, SNodeDraft, SchemeDescriptor, Violation};
use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tokio::sync::Mutex;
use tower_http::cors::{AllowOrigin, CorsLayer};

use crate::error::ServiceError;
use crate::ops::{self, RaiseCq, ResolveCq, WhatIfRequest};
use crate::store::Store;

/// What readers see: the last committed network and the active config.
#[derive(Debug, Clone)]
pub struct Published {
    pub snapshot: NetworkSnapshot,
    pub config: CredibilityConfig,
}

pub struct AppState {
    writer: Mutex<Store>,
    published: RwLock<Arc<Published>>,
}

impl AppState {
    pub fn new(store: Store) -> Arc<Self> {
        let published = Published {
            snapshot: store.snapshot(),
            config: store.config().clone(),
        };
        Arc::new(AppState {
            writer: Mutex::new(store),
            published: RwLock::new(Arc::new(published)),
        })
    }

    pub fn current(&self) -> Arc<Published> {
        self.published.read().expect("publish lock").clone()
    }

    fn publish(&self, store: &Store) {
        let next = Published {
            snapshot: store.snapshot(),
            config: store.config().clone(),
        };
        *self.published.write().expect("publish lock") = Arc::new(next);
    }

    /// Runs `f` on the writer lane and publishes the result of a success.
    async fn write<T>(&self, f: impl FnOnce(&mut Store) -> Result<T, ServiceError>) -> Result<T, ServiceError> {
        let mut store = self.writer.lock().await;
        let out = f(&mut store)?;
        self.publish(&store);
        Ok(out)
    }

    /// Writes a checkpoint so the next start does not replay the whole log.
    pub async fn flush(&self) -> Result<(), ServiceError> {
        self.writer.lock().await.checkpoint()
    }
}

#[derive(Debug, Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    violations: Option<&'a [Violation]>,
}

#[derive(Debug)]
pub struct ApiError(ServiceError);

impl<E: Into<ServiceError>> From<E> for ApiError {
    fn from(e: E) -> Self {
        ApiError(e.into())
    }
}

impl From<JsonRejection> for ServiceError {
    fn from(r: JsonRejection) -> Self {
        ServiceError::BadRequest(r.body_text())
    }
}

impl From<QueryRejection> for ServiceError {
    fn from(r: QueryRejection) -> Self {
        ServiceError::BadRequest(r.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (code, family) = self.0.classify();
        let status = StatusCode::from_u16(family.http_status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        if status.is_server_error() {
            log::error!("{}", self.0);
        }
        let body = ErrorBody {
            code,
            message: self.0.to_string(),
            violations: self.0.violations(),
        };
        (status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;
type Shared = State<Arc<AppState>>;

fn node_id(raw: &str) -> Result<NodeId, ServiceError> {
    NodeId::new(raw).map_err(|e| ServiceError::BadRequest(e.to_string()))
}

async fn post_i_node(State(st): Shared, body: Result<Json<INodeDraft>, JsonRejection>) -> ApiResult<impl IntoResponse> {
    let Json(draft) = body.map_err(ServiceError::from)?;
    let node = st.write(|s| ops::add_i_node(s, draft)).await?;
    Ok((StatusCode::CREATED, Json(node)))
}

async fn post_s_node(State(st): Shared, body: Result<Json<SNodeDraft>, JsonRejection>) -> ApiResult<impl IntoResponse> {
    let Json(draft) = body.map_err(ServiceError::from)?;
    let node = st.write(|s| ops::add_s_node(s, draft)).await?;
    Ok((StatusCode::CREATED, Json(node)))
}

async fn get_node(State(st): Shared, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    let p = st.current();
    Ok(Json(ops::node(&p.snapshot, &node_id(&id)?)?))
}

async fn get_credibility(State(st): Shared, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    let p = st.current();
    Ok(Json(ops::credibility(&p.snapshot, &p.config, &node_id(&id)?)?))
}

async fn get_validity(State(st): Shared, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    let p = st.current();
    Ok(Json(ops::validity(&p.snapshot, &p.config, &node_id(&id)?)?))
}

async fn get_explanation(State(st): Shared, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    let p = st.current();
    Ok(Json(ops::explanation(&p.snapshot, &p.config, &node_id(&id)?)?))
}

async fn get_tree_dot(State(st): Shared, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    let p = st.current();
    let dot = ops::tree_dot(&p.snapshot, &p.config, &node_id(&id)?)?;
    Ok(([(header::CONTENT_TYPE, "text/vnd.graphviz; charset=utf-8")], dot))
}

async fn get_schemes(State(st): Shared) -> impl IntoResponse {
    let p = st.current();
    Json(p.snapshot.schemes().iter().cloned().collect::<Vec<SchemeDescriptor>>())
}

async fn post_scheme(State(st): Shared, body: Result<Json<SchemeDescriptor>, JsonRejection>) -> ApiResult<impl IntoResponse> {
    let Json(d) = body.map_err(ServiceError::from)?;
    let d = st.write(|s| ops::add_scheme(s, d)).await?;
    Ok((StatusCode::CREATED, Json(d)))
}

async fn post_cq(State(st): Shared, body: Result<Json<RaiseCq>, JsonRejection>) -> ApiResult<impl IntoResponse> {
    let Json(req) = body.map_err(ServiceError::from)?;
    let cq = st.write(|s| ops::raise_cq(s, req)).await?;
    Ok((StatusCode::CREATED, Json(cq)))
}

async fn post_resolve(
    State(st): Shared,
    Path(id): Path<String>,
    body: Result<Json<ResolveCq>, JsonRejection>,
) -> ApiResult<impl IntoResponse> {
    let Json(req) = body.map_err(ServiceError::from)?;
    Ok(Json(st.write(|s| ops::resolve_cq(s, &id, req)).await?))
}

async fn post_query(State(st): Shared, body: Result<Json<QuerySpec>, JsonRejection>) -> ApiResult<impl IntoResponse> {
    let Json(spec) = body.map_err(ServiceError::from)?;
    let p = st.current();
    Ok(Json(ops::query(&p.snapshot, &p.config, &spec)?))
}

#[derive(Debug, Deserialize)]
struct ContradictionParams {
    topic: Option<String>,
    #[serde(default)]
    weighted: bool,
}

async fn get_contradiction(
    State(st): Shared,
    params: Result<Query<ContradictionParams>, QueryRejection>,
) -> ApiResult<impl IntoResponse> {
    let Query(q) = params.map_err(ServiceError::from)?;
    let p = st.current();
    let topic = q.topic.as_deref().filter(|t| !t.is_empty());
    Ok(Json(ops::contradiction(&p.snapshot, &p.config, topic, q.weighted)?))
}

async fn get_network(State(st): Shared) -> impl IntoResponse {
    let p = st.current();
    Json(ops::document(&p.snapshot, &p.config))
}

#[derive(Debug, Serialize)]
struct Imported {
    imported: usize,
}

async fn post_network(
    State(st): Shared,
    body: Result<Json<InterchangeDocument>, JsonRejection>,
) -> ApiResult<impl IntoResponse> {
    let Json(doc) = body.map_err(ServiceError::from)?;
    let imported = st.write(|s| ops::import(s, doc)).await?;
    Ok(Json(Imported { imported }))
}

async fn get_config(State(st): Shared) -> impl IntoResponse {
    Json(st.current().config.clone())
}

/// A full config, or `{"preset": name}`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ConfigUpdate {
    Preset { preset: String },
    Full(CredibilityConfig),
}

async fn put_config(State(st): Shared, body: Result<Json<ConfigUpdate>, JsonRejection>) -> ApiResult<impl IntoResponse> {
    let Json(update) = body.map_err(ServiceError::from)?;
    let config = match update {
        ConfigUpdate::Full(c) => c,
        ConfigUpdate::Preset { preset } => {
            CredibilityConfig::preset(&preset).ok_or(ServiceError::UnknownPreset(preset))?
        }
    };
    let saved = st
        .write(|s| {
            s.set_config(config)?;
            Ok(s.config().clone())
        })
        .await?;
    Ok(Json(saved))
}

async fn post_whatif(State(st): Shared, body: Result<Json<WhatIfRequest>, JsonRejection>) -> ApiResult<impl IntoResponse> {
    let Json(req) = body.map_err(ServiceError::from)?;
    let p = st.current();
    Ok(Json(ops::what_if(&p.snapshot, &p.config, req)?))
}

fn cors(origins: &[String]) -> Option<CorsLayer> {
    if origins.is_empty() {
        return None;
    }
    let allow = if origins.iter().any(|o| o == "*") {
        AllowOrigin::any()
    } else {
        let list: Vec<HeaderValue> = origins.iter().filter_map(|o| HeaderValue::from_str(o).ok()).collect();
        AllowOrigin::list(list)
    };
    Some(
        CorsLayer::new()
            .allow_origin(allow)
            .allow_methods([Method::GET, Method::POST, Method::PUT])
            .allow_headers([header::CONTENT_TYPE]),
    )
}

pub fn router(state: Arc<AppState>, cors_origins: &[String]) -> Router {
    let r = Router::new()
        .route("/nodes/i", post(post_i_node))
        .route("/nodes/s", post(post_s_node))
        .route("/nodes/{id}", get(get_node))
        .route("/nodes/{id}/credibility", get(get_credibility))
        .route("/nodes/{id}/validity", get(get_validity))
        .route("/nodes/{id}/explanation", get(get_explanation))
        .route("/nodes/{id}/tree.dot", get(get_tree_dot))
        .route("/schemes", get(get_schemes).post(post_scheme))
        .route("/cq", post(post_cq))
        .route("/cq/{id}/resolve", post(post_resolve))
        .route("/query", post(post_query))
        .route("/contradiction", get(get_contradiction))
        .route("/network", get(get_network).post(post_network))
        .route("/config", get(get_config).put(put_config))
        .route("/whatif", post(post_whatif))
        .with_state(state);
    match cors(cors_origins) {
        Some(layer) => r.layer(layer),
        None => r,
    }
}
