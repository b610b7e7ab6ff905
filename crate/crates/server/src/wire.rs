//! JSON documents exchanged with clients.
//!
//! The state document carries everything a stateless client needs to pick a
//! move: kingdoms, drafts with claims and domino faces, the acting player
//! and the full list of legal moves.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use kdom::{
    domino, Draft, DraftEntry, GameState, Kingdom, Move, Placement, PlacementChoice, Position,
    ScoreBreakdown, Terrain, Tile, PLAYERS, ROUNDS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameStatus {
    Waiting,
    Running,
    Finished,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coord {
    pub x: i8,
    pub y: i8,
}

impl From<Position> for Coord {
    fn from(p: Position) -> Self {
        Coord { x: p.x, y: p.y }
    }
}

impl From<Coord> for Position {
    fn from(c: Coord) -> Self {
        Position::new(c.x, c.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Keyword {
    Discard,
}

/// `{"tile1": .., "tile2": ..}` or the string `"discard"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlacementDoc {
    Place { tile1: Coord, tile2: Coord },
    Keyword(Keyword),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveDoc {
    pub placement: Option<PlacementDoc>,
    pub selection: Option<u8>,
}

impl From<&Move> for MoveDoc {
    fn from(m: &Move) -> Self {
        MoveDoc {
            placement: m.placement.map(|p| match p {
                PlacementChoice::Place(pl) => PlacementDoc::Place {
                    tile1: pl.a.into(),
                    tile2: pl.b.into(),
                },
                PlacementChoice::Discard => PlacementDoc::Keyword(Keyword::Discard),
            }),
            selection: m.selection,
        }
    }
}

impl From<&MoveDoc> for Move {
    fn from(d: &MoveDoc) -> Self {
        Move {
            placement: d.placement.map(|p| match p {
                PlacementDoc::Place { tile1, tile2 } => {
                    PlacementChoice::Place(Placement::new(tile1.into(), tile2.into()))
                }
                PlacementDoc::Keyword(Keyword::Discard) => PlacementChoice::Discard,
            }),
            selection: d.selection,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileDoc {
    pub x: i8,
    pub y: i8,
    pub terrain: Terrain,
    pub crowns: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KingdomDoc {
    pub player: u8,
    pub tiles: Vec<TileDoc>,
    pub discards: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DraftEntryDoc {
    pub domino: u8,
    /// Faces of the domino, first tile then second tile.
    pub tiles: [Tile; 2],
    pub claimed_by: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StateDoc {
    pub game_id: String,
    pub status: GameStatus,
    pub round: u8,
    pub current_player: Option<u8>,
    pub kingdoms: Vec<KingdomDoc>,
    pub scores: Vec<ScoreBreakdown>,
    pub previous_draft: Option<Vec<DraftEntryDoc>>,
    pub current_draft: Option<Vec<DraftEntryDoc>>,
    pub possible_moves: Vec<MoveDoc>,
    pub used_dominoes: Vec<u8>,
}

fn draft_doc(draft: &Draft) -> Vec<DraftEntryDoc> {
    draft
        .entries()
        .iter()
        .map(|e| {
            let d = domino(e.domino);
            DraftEntryDoc {
                domino: e.domino,
                tiles: [d.a, d.b],
                claimed_by: e.claimed_by,
            }
        })
        .collect()
}

fn kingdom_doc(player: usize, k: &Kingdom) -> KingdomDoc {
    KingdomDoc {
        player: player as u8,
        tiles: k
            .tiles()
            .into_iter()
            .map(|(p, t)| TileDoc {
                x: p.x,
                y: p.y,
                terrain: t.terrain,
                crowns: t.crowns,
            })
            .collect(),
        discards: k.discard_count(),
    }
}

/// Document for a game in progress or finished.
pub fn state_doc(game_id: &str, status: GameStatus, state: &GameState) -> StateDoc {
    let possible_moves = if status == GameStatus::Running {
        state
            .legal_moves()
            .map(|ms| ms.iter().map(MoveDoc::from).collect())
            .unwrap_or_default()
    } else {
        Vec::new()
    };
    StateDoc {
        game_id: game_id.to_string(),
        status,
        round: state.round(),
        current_player: state.acting_player().map(|p| p as u8),
        kingdoms: state
            .kingdoms()
            .iter()
            .enumerate()
            .map(|(p, k)| kingdom_doc(p, k))
            .collect(),
        scores: (0..PLAYERS).map(|p| state.score(p)).collect(),
        previous_draft: state.previous_draft().map(draft_doc),
        current_draft: state.current_draft().map(draft_doc),
        possible_moves,
        used_dominoes: state.used_dominoes(),
    }
}

/// Document for a game still filling its seats.
pub fn waiting_doc(game_id: &str) -> StateDoc {
    StateDoc {
        game_id: game_id.to_string(),
        status: GameStatus::Waiting,
        round: 0,
        current_player: None,
        kingdoms: (0..PLAYERS)
            .map(|p| kingdom_doc(p, &Kingdom::new()))
            .collect(),
        scores: vec![Kingdom::new().score(false); PLAYERS],
        previous_draft: None,
        current_draft: None,
        possible_moves: Vec::new(),
        used_dominoes: Vec::new(),
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum WireError {
    #[error("game is not running")]
    NotRunning,
    #[error("expected {PLAYERS} kingdoms, got {0}")]
    KingdomCount(usize),
    #[error("kingdom {0} is not a valid layout")]
    BadKingdom(usize),
    #[error("malformed draft: {0}")]
    BadDraft(String),
    #[error("inconsistent state: {0}")]
    Inconsistent(String),
}

fn parse_draft(entries: &[DraftEntryDoc]) -> Result<Draft, WireError> {
    if entries.len() != PLAYERS {
        return Err(WireError::BadDraft(format!("{} entries", entries.len())));
    }
    let mut out = [DraftEntry {
        domino: 0,
        claimed_by: None,
    }; PLAYERS];
    for (slot, e) in out.iter_mut().zip(entries) {
        if !(1..=48).contains(&e.domino) || e.claimed_by.is_some_and(|p| p as usize >= PLAYERS) {
            return Err(WireError::BadDraft(format!("entry {}", e.domino)));
        }
        *slot = DraftEntry {
            domino: e.domino,
            claimed_by: e.claimed_by,
        };
    }
    if out.windows(2).any(|w| w[0].domino >= w[1].domino) {
        return Err(WireError::BadDraft("entries not ascending".into()));
    }
    Ok(Draft::from_entries(out))
}

/// Rebuilds the engine state a running document describes. The unseen
/// dominoes come back as a sorted draw pile, so only order-independent
/// consumers (the search agents reshuffle it) should rely on it.
pub fn state_from_doc(doc: &StateDoc) -> Result<GameState, WireError> {
    if doc.status != GameStatus::Running {
        return Err(WireError::NotRunning);
    }
    if doc.kingdoms.len() != PLAYERS {
        return Err(WireError::KingdomCount(doc.kingdoms.len()));
    }
    let mut kingdoms = [Kingdom::new(); PLAYERS];
    for (i, kd) in doc.kingdoms.iter().enumerate() {
        let tiles: Vec<(Position, Tile)> = kd
            .tiles
            .iter()
            .map(|t| {
                (
                    Position::new(t.x, t.y),
                    Tile {
                        terrain: t.terrain,
                        crowns: t.crowns,
                    },
                )
            })
            .collect();
        let slot = kd.player as usize;
        if slot >= PLAYERS {
            return Err(WireError::BadKingdom(i));
        }
        kingdoms[slot] =
            Kingdom::from_tiles(&tiles, kd.discards).ok_or(WireError::BadKingdom(i))?;
    }
    let current = doc.current_draft.as_deref().map(parse_draft).transpose()?;
    let previous = doc.previous_draft.as_deref().map(parse_draft).transpose()?;
    if !(1..=ROUNDS).contains(&doc.round) {
        return Err(WireError::Inconsistent(format!("round {}", doc.round)));
    }
    let turn = if doc.round == 1 {
        current.map_or(0, |d| d.claims())
    } else {
        previous.map_or(0, |d| {
            d.entries()
                .iter()
                .filter(|e| doc.used_dominoes.contains(&e.domino))
                .count()
        })
    };
    let state = GameState::from_parts(
        kingdoms,
        current,
        previous,
        doc.round,
        turn as u8,
        &doc.used_dominoes,
    )
    .map_err(|e| WireError::Inconsistent(e.to_string()))?;
    if state.acting_player().map(|p| p as u8) != doc.current_player {
        return Err(WireError::Inconsistent("current player mismatch".into()));
    }
    Ok(state)
}
