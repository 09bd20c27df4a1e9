//! HTTP backend for the browser viewer.
//!
//! | route                    | body                     | reply                |
//! |--------------------------|--------------------------|----------------------|
//! | `GET /charts`            |                          | chart ids            |
//! | `GET /charts/{id}`       |                          | annotation document  |
//! | `GET /charts/{id}/bitmap`|                          | PNG                  |
//! | `GET /layout?chart_id=&x=&y=[&method=]` |           | layout document      |
//! | `POST /layout`           | [`LayoutRequest`]        | layout document      |
//! | `POST /sessions`         | session log              | stored file, score   |
//! | `POST /traces?id={stem}` | trace lines (text)       | stored file, count   |
//!
//! Errors are `{"error": message}` with a 4xx status.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use chartlens_core::overlay::OverlayState;
use chartlens_core::quiz::{test_duration, QuizSession};
use chartlens_core::trace::TraceId;
use chartlens_core::{Condition, Point, Rect};
use serde::Deserialize;
use serde_json::{json, Value};
use tokio::sync::Mutex;

use crate::bundle::Bundle;
use crate::formats::from_json;
use crate::formats::layout::layout_document;
use crate::formats::session::{session_file_name, session_to_json};
use crate::formats::settings::validate_state;
use crate::formats::trace::{format_line, parse_lines, read_trace, trace_file_name, TraceLine};

pub const SESSIONS_DIR: &str = "sessions";
pub const TRACES_DIR: &str = "traces";

/// Per trace file: the last sample and event times already written.
#[derive(Debug, Default)]
struct FileState {
    loaded: bool,
    last_sample: Option<u64>,
    last_event: Option<u64>,
}

pub struct AppState {
    bundle: Bundle,
    data_dir: PathBuf,
    files: Mutex<HashMap<PathBuf, Arc<Mutex<FileState>>>>,
}

impl AppState {
    /// `data_dir` receives `sessions/` and `traces/`.
    pub fn new(bundle: Bundle, data_dir: impl Into<PathBuf>) -> Arc<Self> {
        Arc::new(Self {
            bundle,
            data_dir: data_dir.into(),
            files: Mutex::new(HashMap::new()),
        })
    }

    pub fn bundle(&self) -> &Bundle {
        &self.bundle
    }
}

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn bad_request(msg: impl ToString) -> ApiError {
    ApiError(StatusCode::BAD_REQUEST, msg.to_string())
}

fn internal(msg: impl ToString) -> ApiError {
    ApiError(StatusCode::INTERNAL_SERVER_ERROR, msg.to_string())
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/charts", get(list_charts))
        .route("/charts/{id}", get(get_chart))
        .route("/charts/{id}/bitmap", get(get_bitmap))
        .route("/layout", get(get_layout).post(post_layout))
        .route("/sessions", axum::routing::post(post_session))
        .route("/traces", axum::routing::post(post_traces))
        .with_state(state)
}

async fn list_charts(State(s): State<Arc<AppState>>) -> Json<Vec<String>> {
    Json(s.bundle.charts.keys().cloned().collect())
}

fn chart<'a>(s: &'a AppState, id: &str) -> ApiResult<&'a crate::bundle::ChartEntry> {
    s.bundle
        .charts
        .get(id)
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("no chart `{id}`")))
}

async fn get_chart(
    State(s): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> ApiResult<Json<Value>> {
    let entry = chart(&s, &id)?;
    Ok(Json(
        serde_json::to_value(&entry.annotation).map_err(internal)?,
    ))
}

async fn get_bitmap(
    State(s): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> ApiResult<Response> {
    let entry = chart(&s, &id)?;
    let bytes = tokio::fs::read(&entry.bitmap_path)
        .await
        .map_err(internal)?;
    Ok(([(header::CONTENT_TYPE, "image/png")], bytes).into_response())
}

/// Body of `POST /layout`. Absent settings mean defaults; an absent
/// `chart_rect` means the chart fills the viewport.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutRequest {
    pub chart_id: String,
    pub pointer: [f64; 2],
    #[serde(default)]
    pub chart_rect: Option<Rect>,
    #[serde(default)]
    pub settings: Option<OverlayState>,
}

#[derive(Debug, Deserialize)]
struct LayoutQuery {
    chart_id: String,
    x: f64,
    y: f64,
    method: Option<String>,
}

fn layout(s: &AppState, req: LayoutRequest) -> ApiResult<Json<Value>> {
    let entry = chart(s, &req.chart_id)?;
    let settings = req.settings.unwrap_or_default();
    validate_state(&settings)
        .map_err(|e| ApiError(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))?;
    let chart_rect = req.chart_rect.unwrap_or(Rect::UNIT);
    if !(chart_rect.is_finite() && chart_rect.is_ordered() && Rect::UNIT.contains_rect(&chart_rect))
    {
        return Err(ApiError(
            StatusCode::UNPROCESSABLE_ENTITY,
            "chart_rect must lie in the unit square".into(),
        ));
    }
    let pointer = Point::new(req.pointer[0], req.pointer[1]);
    let frame = settings.layout(pointer, &entry.annotation, &chart_rect);
    Ok(Json(layout_document(&frame)))
}

async fn get_layout(
    State(s): State<Arc<AppState>>,
    Query(q): Query<LayoutQuery>,
) -> ApiResult<Json<Value>> {
    let method = match q.method.as_deref() {
        None => Condition::DynamicContext,
        Some(m) => {
            Condition::parse(m).ok_or_else(|| bad_request(format!("unknown method `{m}`")))?
        }
    };
    layout(
        &s,
        LayoutRequest {
            chart_id: q.chart_id,
            pointer: [q.x, q.y],
            chart_rect: None,
            settings: Some(OverlayState::new(method)),
        },
    )
}

async fn post_layout(State(s): State<Arc<AppState>>, body: Bytes) -> ApiResult<Json<Value>> {
    layout(&s, from_json(&body).map_err(bad_request)?)
}

/// Ids become file names, so they must not be able to name other paths.
fn safe_component(s: &str) -> bool {
    !s.is_empty() && !s.contains(['/', '\\', '\0']) && !s.contains("..")
}

async fn post_session(
    State(s): State<Arc<AppState>>,
    body: Bytes,
) -> ApiResult<(StatusCode, Json<Value>)> {
    let session: QuizSession = from_json(&body).map_err(bad_request)?;
    if !safe_component(&session.participant_id) {
        return Err(bad_request(
            "participant_id may not contain path separators",
        ));
    }
    let score = session.score().map_err(bad_request)?;
    let duration = test_duration(&session).map_err(bad_request)?;
    let name = session_file_name(&session);
    let path = s.data_dir.join(SESSIONS_DIR).join(&name);
    write_file(&path, session_to_json(&session).as_bytes()).await?;
    Ok((
        StatusCode::CREATED,
        Json(
            json!({ "file": format!("{SESSIONS_DIR}/{name}"), "score": score.to_string(), "duration_s": duration }),
        ),
    ))
}

async fn write_file(path: &Path, bytes: &[u8]) -> ApiResult<()> {
    if let Some(parent) = path.parent() {
        tokio::fs::create_dir_all(parent).await.map_err(internal)?;
    }
    tokio::fs::write(path, bytes).await.map_err(internal)
}

#[derive(Debug, Deserialize)]
struct TraceQuery {
    id: String,
}

async fn post_traces(
    State(s): State<Arc<AppState>>,
    Query(q): Query<TraceQuery>,
    body: Bytes,
) -> ApiResult<(StatusCode, Json<Value>)> {
    let id = TraceId::parse(&q.id)
        .filter(|_| safe_component(&q.id))
        .ok_or_else(|| {
            bad_request(format!(
                "`{}` is not a trace id of the form P{{pid}}_{{condition}}_{{variant}}_{{qid}}",
                q.id
            ))
        })?;
    let text = std::str::from_utf8(&body).map_err(|_| bad_request("trace lines must be UTF-8"))?;
    let lines = parse_lines(text, 1).map_err(bad_request)?;
    let name = trace_file_name(&id);
    let path = s.data_dir.join(TRACES_DIR).join(&name);

    let file = {
        let mut files = s.files.lock().await;
        files.entry(path.clone()).or_default().clone()
    };
    // Appends to one file are serialized; different files proceed in parallel.
    let mut state = file.lock().await;
    if !state.loaded {
        if let Ok(existing) = tokio::fs::read_to_string(&path).await {
            let trace = read_trace(id.clone(), &existing).map_err(internal)?;
            state.last_sample = trace.samples().last().map(|x| x.t);
            state.last_event = trace.events().last().map(|x| x.t);
        }
        state.loaded = true;
    }
    let (mut last_sample, mut last_event) = (state.last_sample, state.last_event);
    let mut out = String::new();
    for (i, line) in lines.iter().enumerate() {
        let in_order = match line {
            TraceLine::Sample(x) => last_sample.is_none_or(|l| x.t > l),
            TraceLine::Event(e) => last_event.is_none_or(|l| e.t >= l),
        };
        if !in_order {
            return Err(ApiError(
                StatusCode::CONFLICT,
                format!("line {}: timestamp {} goes back in time", i + 1, line.t()),
            ));
        }
        match line {
            TraceLine::Sample(x) => last_sample = Some(x.t),
            TraceLine::Event(e) => last_event = Some(e.t),
        }
        out.push_str(&format_line(line));
        out.push('\n');
    }
    if let Some(parent) = path.parent() {
        tokio::fs::create_dir_all(parent).await.map_err(internal)?;
    }
    let mut f = tokio::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&path)
        .await
        .map_err(internal)?;
    tokio::io::AsyncWriteExt::write_all(&mut f, out.as_bytes())
        .await
        .map_err(internal)?;
    state.last_sample = last_sample;
    state.last_event = last_event;
    Ok((
        StatusCode::CREATED,
        Json(json!({ "file": format!("{TRACES_DIR}/{name}"), "appended": lines.len() })),
    ))
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(state: Arc<AppState>, addr: std::net::SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}
