//! Axum routes over a [`GameStore`].

use std::sync::Arc;
use std::time::Duration;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};
use url::Url;

use crate::store::{ApiError, GameStore, Notification};
use crate::wire::MoveDoc;

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status()).unwrap_or(StatusCode::BAD_REQUEST);
        let body = json!({"error": self.code(), "message": self.to_string()});
        (status, Json(body)).into_response()
    }
}

#[derive(Clone)]
pub struct AppState {
    pub store: Arc<GameStore>,
    http: reqwest::Client,
}

impl AppState {
    pub fn new(store: Arc<GameStore>) -> Self {
        let http = reqwest::Client::builder()
            .timeout(Duration::from_secs(2))
            .build()
            .expect("http client");
        AppState { store, http }
    }

    /// Fire-and-forget turn notification; failures are only logged.
    fn notify(&self, pending: Option<(Url, Notification)>) {
        let Some((url, note)) = pending else { return };
        let http = self.http.clone();
        tokio::spawn(async move {
            let result = http.post(url.clone()).json(&note).send().await;
            match result {
                Ok(r) if r.status().is_success() => {}
                Ok(r) => tracing::warn!(%url, status = %r.status(), "callback rejected"),
                Err(e) => tracing::warn!(%url, "callback failed: {e}"),
            }
        });
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/games", post(create_game).get(list_games))
        .route("/games/{id}/join", post(join))
        .route("/games/{id}/state", get(game_state))
        .route("/games/{id}/moves", post(post_move))
        .route("/games/{id}/callback", post(register_callback))
        .route("/games/{id}/history", get(history))
        .with_state(state)
}

fn parse_body(body: &Bytes) -> Result<Value, ApiError> {
    if body.iter().all(u8::is_ascii_whitespace) {
        return Ok(json!({}));
    }
    serde_json::from_slice(body).map_err(|e| ApiError::MalformedRequest(e.to_string()))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct CreateRequest {
    num_players: Option<usize>,
    seed: Option<u64>,
}

async fn create_game(
    State(app): State<AppState>,
    body: Bytes,
) -> Result<impl IntoResponse, ApiError> {
    let req: CreateRequest = serde_json::from_value(parse_body(&body)?)
        .map_err(|e| ApiError::MalformedRequest(e.to_string()))?;
    let id = app
        .store
        .create_game(req.num_players.unwrap_or(kdom::PLAYERS), req.seed)?;
    Ok((StatusCode::CREATED, Json(json!({"gameId": id}))))
}

async fn list_games(State(app): State<AppState>) -> impl IntoResponse {
    Json(app.store.list())
}

async fn join(
    State(app): State<AppState>,
    Path(id): Path<String>,
) -> Result<impl IntoResponse, ApiError> {
    let (grant, pending) = app.store.join(&id)?;
    app.notify(pending);
    Ok(Json(grant))
}

async fn game_state(
    State(app): State<AppState>,
    Path(id): Path<String>,
) -> Result<impl IntoResponse, ApiError> {
    Ok(Json(app.store.state(&id)?))
}

fn token_of(body: &Value) -> Result<&str, ApiError> {
    body.get("token")
        .and_then(Value::as_str)
        .ok_or_else(|| ApiError::MalformedRequest("missing string field `token`".into()))
}

async fn post_move(
    State(app): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<impl IntoResponse, ApiError> {
    let body = parse_body(&body).map_err(|e| ApiError::MalformedMove(e.to_string()))?;
    let token = token_of(&body).map_err(|e| ApiError::MalformedMove(e.to_string()))?;
    let doc: MoveDoc = body
        .get("move")
        .cloned()
        .ok_or_else(|| ApiError::MalformedMove("missing field `move`".into()))
        .and_then(|v| {
            serde_json::from_value(v).map_err(|e| ApiError::MalformedMove(e.to_string()))
        })?;
    let (state, pending) = app.store.post_move(&id, token, &doc)?;
    app.notify(pending);
    Ok(Json(state))
}

async fn register_callback(
    State(app): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<impl IntoResponse, ApiError> {
    let body = parse_body(&body)?;
    let token = token_of(&body)?;
    let url = body
        .get("url")
        .and_then(Value::as_str)
        .ok_or_else(|| ApiError::MalformedUrl("missing string field `url`".into()))?;
    app.store.register_callback(&id, token, url)?;
    Ok(Json(json!({"ok": true})))
}

async fn history(
    State(app): State<AppState>,
    Path(id): Path<String>,
) -> Result<impl IntoResponse, ApiError> {
    Ok(Json(app.store.history(&id)?))
}
