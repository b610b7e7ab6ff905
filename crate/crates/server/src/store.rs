//! In-memory game records and the operations on them.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};

use kdom::{GameState, Move, Placement, PlacementChoice, PLAYERS};
use rand::RngCore;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use url::Url;

use crate::wire::{state_doc, waiting_doc, GameStatus, MoveDoc, StateDoc};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApiError {
    #[error("unknown game {0}")]
    UnknownGame(String),
    #[error("only {PLAYERS}-player games are supported, got {0}")]
    UnsupportedPlayerCount(usize),
    #[error("all seats are taken")]
    GameFull,
    #[error("game is {0:?}")]
    NotRunning(GameStatus),
    #[error("token does not belong to this game")]
    BadToken,
    #[error("it is player {current:?}'s turn")]
    NotYourTurn { current: Option<u8> },
    #[error("move is not legal: {0}")]
    IllegalMove(String),
    #[error("malformed move: {0}")]
    MalformedMove(String),
    #[error("malformed request: {0}")]
    MalformedRequest(String),
    #[error("malformed callback url: {0}")]
    MalformedUrl(String),
}

impl ApiError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            ApiError::UnknownGame(_) => "unknown_game",
            ApiError::UnsupportedPlayerCount(_) => "unsupported_player_count",
            ApiError::GameFull => "game_full",
            ApiError::NotRunning(_) => "game_not_running",
            ApiError::BadToken => "bad_token",
            ApiError::NotYourTurn { .. } => "not_your_turn",
            ApiError::IllegalMove(_) => "illegal_move",
            ApiError::MalformedMove(_) => "malformed_move",
            ApiError::MalformedRequest(_) => "malformed_request",
            ApiError::MalformedUrl(_) => "malformed_url",
        }
    }

    pub fn status(&self) -> u16 {
        match self {
            ApiError::UnknownGame(_) => 404,
            ApiError::BadToken => 401,
            ApiError::GameFull | ApiError::NotRunning(_) | ApiError::NotYourTurn { .. } => 409,
            ApiError::IllegalMove(_) => 422,
            ApiError::UnsupportedPlayerCount(_)
            | ApiError::MalformedMove(_)
            | ApiError::MalformedRequest(_)
            | ApiError::MalformedUrl(_) => 400,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JoinGrant {
    pub game_id: String,
    pub token: String,
    pub player_id: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameSummary {
    pub game_id: String,
    pub status: GameStatus,
    pub seats_taken: usize,
    pub round: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HistoryEntry {
    pub player: u8,
    #[serde(rename = "move")]
    pub mv: MoveDoc,
}

/// Everything needed to replay a finished game.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HistoryDoc {
    pub game_id: String,
    pub seed: u64,
    pub moves: Vec<HistoryEntry>,
}

/// Body POSTed to a seat's callback when its turn comes up.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Notification {
    pub game_id: String,
    pub player: u8,
    pub round: u8,
}

pub struct GameRecord {
    pub id: String,
    pub seed: u64,
    pub state: GameState,
    tokens: Vec<String>,
    callbacks: [Option<Url>; PLAYERS],
    pub status: GameStatus,
    pub history: Vec<(u8, Move)>,
    log: Option<File>,
}

impl GameRecord {
    fn seat_of(&self, token: &str) -> Option<u8> {
        self.tokens.iter().position(|t| t == token).map(|p| p as u8)
    }

    pub fn doc(&self) -> StateDoc {
        match self.status {
            GameStatus::Waiting => waiting_doc(&self.id),
            status => state_doc(&self.id, status, &self.state),
        }
    }

    /// The callback due for whoever acts now.
    fn pending_notification(&self) -> Option<(Url, Notification)> {
        let player = self.state.acting_player()?;
        let url = self.callbacks[player].clone()?;
        Some((
            url,
            Notification {
                game_id: self.id.clone(),
                player: player as u8,
                round: self.state.round(),
            },
        ))
    }

    fn log_line(&mut self, value: serde_json::Value) {
        if let Some(f) = self.log.as_mut() {
            if let Err(e) = writeln!(f, "{value}") {
                tracing::warn!(game = %self.id, "game log write failed: {e}");
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct StoreConfig {
    /// Directory for one append-only JSON-lines log per game.
    pub log_dir: Option<PathBuf>,
}

/// All games of the process lifetime, each behind its own lock so moves on
/// one game are applied strictly one at a time.
#[derive(Default)]
pub struct GameStore {
    games: RwLock<HashMap<String, Arc<Mutex<GameRecord>>>>,
    order: Mutex<Vec<String>>,
    config: StoreConfig,
}

fn fresh_token() -> String {
    let mut bytes = [0u8; 16];
    rand::thread_rng().fill_bytes(&mut bytes);
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// The move as listed by the engine; symmetric dominoes may arrive in
/// either orientation.
fn canonical(state: &GameState, mv: Move) -> Option<Move> {
    let legal = state.legal_moves().ok()?;
    if legal.contains(&mv) {
        return Some(mv);
    }
    let symmetric = state.domino_to_place().is_some_and(|d| d.is_symmetric());
    match mv.placement {
        Some(PlacementChoice::Place(pl)) if symmetric => {
            let flipped = Move {
                placement: Some(PlacementChoice::Place(Placement::new(pl.b, pl.a))),
                ..mv
            };
            legal.contains(&flipped).then_some(flipped)
        }
        _ => None,
    }
}

impl GameStore {
    pub fn new(config: StoreConfig) -> Self {
        GameStore {
            config,
            ..Default::default()
        }
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<GameRecord>>, ApiError> {
        self.games
            .read()
            .expect("store lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::UnknownGame(id.to_string()))
    }

    pub fn create_game(&self, num_players: usize, seed: Option<u64>) -> Result<String, ApiError> {
        if num_players != PLAYERS {
            return Err(ApiError::UnsupportedPlayerCount(num_players));
        }
        let seed = seed.unwrap_or_else(rand::random);
        let id = uuid::Uuid::new_v4().to_string();
        let log = self.config.log_dir.as_ref().and_then(|dir| {
            let path = dir.join(format!("{id}.jsonl"));
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(&path)
                .map_err(|e| tracing::warn!("cannot open game log {}: {e}", path.display()))
                .ok()
        });
        let mut record = GameRecord {
            id: id.clone(),
            seed,
            state: GameState::new(seed, num_players).expect("player count checked"),
            tokens: Vec::new(),
            callbacks: Default::default(),
            status: GameStatus::Waiting,
            history: Vec::new(),
            log,
        };
        record.log_line(serde_json::json!({"gameId": id, "seed": seed, "numPlayers": num_players}));
        self.games
            .write()
            .expect("store lock")
            .insert(id.clone(), Arc::new(Mutex::new(record)));
        self.order.lock().expect("store lock").push(id.clone());
        Ok(id)
    }

    pub fn list(&self) -> Vec<GameSummary> {
        let ids = self.order.lock().expect("store lock").clone();
        ids.iter()
            .filter_map(|id| self.get(id).ok())
            .map(|g| {
                let g = g.lock().expect("game lock");
                GameSummary {
                    game_id: g.id.clone(),
                    status: g.status,
                    seats_taken: g.tokens.len(),
                    round: if g.status == GameStatus::Waiting {
                        0
                    } else {
                        g.state.round()
                    },
                }
            })
            .collect()
    }

    /// Grants the next free seat. Returns the grant and, when the last seat
    /// fills, the first turn notification to send.
    pub fn join(&self, id: &str) -> Result<(JoinGrant, Option<(Url, Notification)>), ApiError> {
        let game = self.get(id)?;
        let mut g = game.lock().expect("game lock");
        if g.status != GameStatus::Waiting || g.tokens.len() >= PLAYERS {
            return Err(ApiError::GameFull);
        }
        let token = fresh_token();
        g.tokens.push(token.clone());
        let player_id = (g.tokens.len() - 1) as u8;
        let mut note = None;
        if g.tokens.len() == PLAYERS {
            g.status = GameStatus::Running;
            note = g.pending_notification();
        }
        Ok((
            JoinGrant {
                game_id: g.id.clone(),
                token,
                player_id,
            },
            note,
        ))
    }

    pub fn state(&self, id: &str) -> Result<StateDoc, ApiError> {
        Ok(self.get(id)?.lock().expect("game lock").doc())
    }

    /// Applies a move for the seat holding `token`. The error classes are
    /// checked in order: unknown token, game not running, wrong seat,
    /// illegal move.
    pub fn post_move(
        &self,
        id: &str,
        token: &str,
        doc: &MoveDoc,
    ) -> Result<(StateDoc, Option<(Url, Notification)>), ApiError> {
        let game = self.get(id)?;
        let mut g = game.lock().expect("game lock");
        let seat = g.seat_of(token).ok_or(ApiError::BadToken)?;
        if g.status != GameStatus::Running {
            return Err(ApiError::NotRunning(g.status));
        }
        let current = g.state.acting_player().map(|p| p as u8);
        if current != Some(seat) {
            return Err(ApiError::NotYourTurn { current });
        }
        let mv = canonical(&g.state, Move::from(doc))
            .ok_or_else(|| ApiError::IllegalMove(serde_json::to_string(doc).unwrap_or_default()))?;
        g.state.play(&mv);
        g.history.push((seat, mv));
        g.log_line(serde_json::json!({"player": seat, "move": MoveDoc::from(&mv)}));
        if g.state.is_terminal() {
            g.status = GameStatus::Finished;
            let scores = g.state.scores();
            g.log_line(serde_json::json!({"finalScores": scores}));
        }
        let note = g.pending_notification();
        Ok((g.doc(), note))
    }

    pub fn register_callback(&self, id: &str, token: &str, url: &str) -> Result<(), ApiError> {
        let game = self.get(id)?;
        let mut g = game.lock().expect("game lock");
        let seat = g.seat_of(token).ok_or(ApiError::BadToken)?;
        let url = Url::parse(url).map_err(|e| ApiError::MalformedUrl(format!("{url}: {e}")))?;
        if !matches!(url.scheme(), "http" | "https") {
            return Err(ApiError::MalformedUrl(format!(
                "unsupported scheme {}",
                url.scheme()
            )));
        }
        g.callbacks[seat as usize] = Some(url);
        Ok(())
    }

    /// Seed and move list of a finished game. Withheld while the game runs,
    /// since the seed fixes the hidden deck order.
    pub fn history(&self, id: &str) -> Result<HistoryDoc, ApiError> {
        let game = self.get(id)?;
        let g = game.lock().expect("game lock");
        if g.status != GameStatus::Finished {
            return Err(ApiError::NotRunning(g.status));
        }
        Ok(HistoryDoc {
            game_id: g.id.clone(),
            seed: g.seed,
            moves: g
                .history
                .iter()
                .map(|(p, m)| HistoryEntry {
                    player: *p,
                    mv: MoveDoc::from(m),
                })
                .collect(),
        })
    }
}
