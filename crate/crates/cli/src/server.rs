//! JSON-over-HTTP session service for the browser companion.
//!
//! | route | body | response |
//! |---|---|---|
//! | `GET /api/puzzle` | | [`PuzzleView`] |
//! | `GET /api/state` | | [`StateView`] |
//! | `POST /api/move` | `{"dir":"E"}` | [`StateView`], 400 [`ErrorView`] on illegal moves |
//! | `POST /api/undo` | | [`StateView`] |
//! | `POST /api/reset` | | [`StateView`] |
//! | `POST /api/load` | `{"puzzle":"...","manifest":"..."}` | [`PuzzleView`], 400 on parse errors |
//! | `GET /api/solve?budget=N&seconds=S` | | [`SolveView`], 409 when the budget runs out |
//! | `GET /api/gadgets` | | [`GadgetList`] |
//! | `POST /api/gadgets/{name}/load` | | [`PuzzleView`], 404 for unknown names |

use std::sync::Arc;

use axum::extract::{Path, Query, State as AxState};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use pushpush::format::{render_board, render_state};
use pushpush::gadgets::{harness, HARNESS_LENGTH};
use pushpush::reduce::{Manifest, ManifestEntry};
use pushpush::search::{solve_from, Budget, Verdict};
use pushpush::{is_goal, Board, Coord, Direction, Mode};
use serde::{Deserialize, Serialize};
use tokio::sync::RwLock;

use crate::gadget_source::{self, GadgetLookupError, Source};
use crate::session::Session;
const FORMAT_VERSION: &str = "v1";

pub type Shared = Arc<RwLock<Session>>;

fn xyz(c: Coord) -> [i32; 3] {
    [c.x, c.y, c.z]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetBox {
    pub name: String,
    pub lo: [i32; 3],
    pub hi: [i32; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuzzleView {
    pub format: String,
    pub puzzle: String,
    pub mode: String,
    pub dims: [i32; 3],
    pub start: [i32; 3],
    pub goal: Option<[i32; 3]>,
    pub manifest: Vec<GadgetBox>,
    pub generation: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateView {
    pub format: String,
    pub robot: [i32; 3],
    pub blocks: Vec<[i32; 3]>,
    pub moves: String,
    pub at_goal: bool,
    pub grid: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveView {
    pub format: String,
    pub verdict: String,
    pub moves: Option<String>,
    pub states: usize,
    pub pushes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetInfo {
    pub name: String,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetList {
    pub format: String,
    pub gadgets: Vec<GadgetInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorView {
    pub error: String,
}

#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    pub dir: String,
}

#[derive(Debug, Deserialize)]
pub struct LoadRequest {
    pub puzzle: String,
    #[serde(default)]
    pub manifest: Option<String>,
}

#[derive(Debug, Deserialize)]
pub struct SolveQuery {
    pub budget: Option<usize>,
    pub seconds: Option<f64>,
}

fn error(status: StatusCode, message: impl Into<String>) -> Response {
    (status, Json(ErrorView { error: message.into() })).into_response()
}

pub fn puzzle_view(s: &Session) -> PuzzleView {
    let b = s.board();
    let (w, h, d) = b.dims();
    PuzzleView {
        format: FORMAT_VERSION.into(),
        puzzle: render_board(b),
        mode: match b.mode() {
            Mode::Path => "path".into(),
            Mode::Storage => "storage".into(),
        },
        dims: [w, h, d],
        start: xyz(b.start()),
        goal: b.goal().map(xyz),
        manifest: s
            .manifest()
            .entries
            .iter()
            .map(|e| GadgetBox {
                name: e.name.clone(),
                lo: xyz(e.lo),
                hi: xyz(e.hi),
            })
            .collect(),
        generation: s.generation(),
    }
}

pub fn state_view(s: &Session) -> StateView {
    let st = s.state();
    StateView {
        format: FORMAT_VERSION.into(),
        robot: xyz(st.robot),
        blocks: st.blocks.iter().map(|&c| xyz(c)).collect(),
        moves: s.history().to_string(),
        at_goal: is_goal(s.board(), st),
        grid: render_state(s.board(), st),
    }
}

async fn get_puzzle(AxState(s): AxState<Shared>) -> Json<PuzzleView> {
    Json(puzzle_view(&*s.read().await))
}

async fn get_state(AxState(s): AxState<Shared>) -> Json<StateView> {
    Json(state_view(&*s.read().await))
}

async fn post_move(AxState(s): AxState<Shared>, Json(req): Json<MoveRequest>) -> Response {
    let mut letters = req.dir.trim().chars();
    let dir = match (letters.next(), letters.next()) {
        (Some(c), None) => Direction::from_letter(c),
        _ => None,
    };
    let Some(dir) = dir else {
        return error(StatusCode::BAD_REQUEST, format!("unknown direction {:?}", req.dir));
    };
    let mut guard = s.write().await;
    match guard.apply(dir) {
        Ok(_) => Json(state_view(&guard)).into_response(),
        Err(e) => error(StatusCode::BAD_REQUEST, e.to_string()),
    }
}

async fn post_undo(AxState(s): AxState<Shared>) -> Json<StateView> {
    let mut guard = s.write().await;
    guard.undo();
    Json(state_view(&guard))
}

async fn post_reset(AxState(s): AxState<Shared>) -> Json<StateView> {
    let mut guard = s.write().await;
    guard.reset();
    Json(state_view(&guard))
}

async fn post_load(AxState(s): AxState<Shared>, Json(req): Json<LoadRequest>) -> Response {
    let board = match pushpush::format::parse_board(&req.puzzle) {
        Ok(b) => b,
        Err(e) => return error(StatusCode::BAD_REQUEST, e.to_string()),
    };
    let manifest = match req.manifest.as_deref().map(Manifest::parse).transpose() {
        Ok(m) => m.unwrap_or_default(),
        Err(e) => return error(StatusCode::BAD_REQUEST, e.to_string()),
    };
    let mut guard = s.write().await;
    guard.load(board, manifest);
    Json(puzzle_view(&guard)).into_response()
}

async fn get_solve(AxState(s): AxState<Shared>, Query(q): Query<SolveQuery>) -> Response {
    let mut budget = Budget::default();
    if let Some(n) = q.budget {
        budget.max_states = n;
    }
    if let Some(t) = q.seconds {
        budget.max_seconds = t;
    }
    let (board, from) = {
        let guard = s.read().await;
        (guard.board().clone(), guard.state().clone())
    };
    let r = match tokio::task::spawn_blocking(move || solve_from(&board, &from, budget)).await {
        Ok(r) => r,
        Err(e) => return error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
    };
    let (status, verdict) = match r.verdict {
        Verdict::Solved => (StatusCode::OK, "SOLVED"),
        Verdict::Unsolvable => (StatusCode::OK, "UNSOLVABLE"),
        Verdict::BudgetExceeded => (StatusCode::CONFLICT, "BUDGET_EXCEEDED"),
    };
    let view = SolveView {
        format: FORMAT_VERSION.into(),
        verdict: verdict.into(),
        moves: r.moves.map(|m| m.to_string()),
        states: r.states_explored,
        pushes: r.pushes,
    };
    (status, Json(view)).into_response()
}

fn source_label(s: Source) -> &'static str {
    match s {
        Source::Catalog => "catalog",
        Source::Mutation => "mutation",
        Source::Library => "library",
        Source::File => "file",
    }
}

async fn get_gadgets() -> Json<GadgetList> {
    let gadgets = tokio::task::spawn_blocking(gadget_source::list).await.unwrap_or_default();
    Json(GadgetList {
        format: FORMAT_VERSION.into(),
        gadgets: gadgets
            .into_iter()
            .map(|(name, source)| GadgetInfo {
                name,
                source: source_label(source).into(),
            })
            .collect(),
    })
}

/// Harnessed gadget board with its footprint as the only manifest entry.
pub fn gadget_puzzle(name: &str) -> Result<(Board, Manifest), GadgetLookupError> {
    let g = gadget_source::resolve_named(name)?;
    let h = harness(&g.template);
    let m = HARNESS_LENGTH + 1;
    let (w, ht, d) = g.template.dims;
    let manifest = Manifest {
        entries: vec![ManifestEntry {
            name: g.template.name.clone(),
            lo: Coord::new(m, m, 0),
            hi: Coord::new(m + w - 1, m + ht - 1, d - 1),
        }],
    };
    Ok((h.board, manifest))
}

async fn post_gadget_load(AxState(s): AxState<Shared>, Path(name): Path<String>) -> Response {
    let lookup = name.clone();
    let found = match tokio::task::spawn_blocking(move || gadget_puzzle(&lookup)).await {
        Ok(r) => r,
        Err(e) => return error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
    };
    match found {
        Ok((board, manifest)) => {
            let mut guard = s.write().await;
            guard.load(board, manifest);
            Json(puzzle_view(&guard)).into_response()
        }
        Err(GadgetLookupError::Unknown(_)) => error(StatusCode::NOT_FOUND, format!("unknown gadget {name:?}")),
        Err(e) => error(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()),
    }
}

pub fn router(session: Session) -> Router {
    let shared: Shared = Arc::new(RwLock::new(session));
    Router::new()
        .route("/api/puzzle", get(get_puzzle))
        .route("/api/state", get(get_state))
        .route("/api/move", post(post_move))
        .route("/api/undo", post(post_undo))
        .route("/api/reset", post(post_reset))
        .route("/api/load", post(post_load))
        .route("/api/solve", get(get_solve))
        .route("/api/gadgets", get(get_gadgets))
        .route("/api/gadgets/{name}/load", post(post_gadget_load))
        .with_state(shared)
}

pub async fn serve(session: Session, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(session)).await
}
