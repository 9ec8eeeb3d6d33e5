//! HTTP+JSON routes over a [`Store`].

use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::config::SessionConfig;
use crate::error::ServiceError;
use crate::session::{Answer, ExportFormat, ListEntry, QuestionView, StateView};
use crate::store::Store;

pub struct ApiError(ServiceError);

impl From<ServiceError> for ApiError {
    fn from(e: ServiceError) -> Self {
        ApiError(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let e = self.0;
        let status = match &e {
            ServiceError::InvalidConfig(_)
            | ServiceError::Rejected(_)
            | ServiceError::InvalidAnswer(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ServiceError::NotFound(_) => StatusCode::NOT_FOUND,
            ServiceError::Conflict(_) => StatusCode::CONFLICT,
            ServiceError::UnknownFormat(_) | ServiceError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ServiceError::Log { .. } | ServiceError::Storage(_) | ServiceError::Internal(_) => {
                StatusCode::INTERNAL_SERVER_ERROR
            }
        };
        let detail: Value = match &e {
            ServiceError::InvalidConfig(fields) => json!(fields),
            ServiceError::Rejected(r) => json!({ "condition": r.code(), "message": r.to_string() }),
            other => json!(other.to_string()),
        };
        (status, Json(json!({ "error": e.code(), "detail": detail }))).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

/// Malformed JSON is a bad request; JSON of the wrong shape is reported
/// with `code`.
fn body<T>(payload: Result<Json<T>, JsonRejection>, invalid: fn(String) -> ServiceError) -> ApiResult<T> {
    match payload {
        Ok(Json(v)) => Ok(v),
        Err(JsonRejection::JsonDataError(e)) => Err(invalid(e.body_text()).into()),
        Err(e) => Err(ServiceError::BadRequest(e.body_text()).into()),
    }
}

fn config_error(message: String) -> ServiceError {
    ServiceError::InvalidConfig(vec![crate::error::FieldError::new("body", message)])
}

async fn create_session(
    State(store): State<Arc<Store>>,
    payload: Result<Json<SessionConfig>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<QuestionView>)> {
    let config = body(payload, config_error)?;
    Ok((StatusCode::CREATED, Json(store.create(config)?)))
}

async fn list_sessions(State(store): State<Arc<Store>>) -> Json<Vec<ListEntry>> {
    Json(store.list())
}

async fn get_question(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult<Json<QuestionView>> {
    Ok(Json(store.question(&id)?))
}

async fn post_answer(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    payload: Result<Json<Answer>, JsonRejection>,
) -> ApiResult<Json<QuestionView>> {
    // Unknown sessions are reported before body problems.
    store.question(&id)?;
    let answer = body(payload, ServiceError::InvalidAnswer)?;
    Ok(Json(store.answer(&id, &answer)?))
}

async fn get_state(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult<Json<StateView>> {
    Ok(Json(store.state(&id)?))
}

#[derive(Deserialize)]
struct ExportQuery {
    format: Option<String>,
}

async fn export(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    Query(q): Query<ExportQuery>,
) -> ApiResult<Response> {
    store.question(&id)?;
    let format: ExportFormat = q.format.as_deref().unwrap_or("json").parse()?;
    let text = store.export(&id, format)?;
    let content_type = match format {
        ExportFormat::Cxt => "text/plain; charset=utf-8",
        ExportFormat::Json | ExportFormat::Implications => "application/json",
    };
    Ok(([(header::CONTENT_TYPE, content_type)], text).into_response())
}

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/sessions", post(create_session).get(list_sessions))
        .route("/sessions/{id}/question", get(get_question))
        .route("/sessions/{id}/answer", post(post_answer))
        .route("/sessions/{id}/state", get(get_state))
        .route("/sessions/{id}/export", get(export))
        .with_state(store)
}
