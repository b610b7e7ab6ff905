//! Hand-built two-round endgames and an exhaustive continuation oracle.
//!
//! In both positions the draw pile is already empty, so the game tree below
//! the root is finite and small enough to enumerate completely.

#![allow(dead_code)]

use kdom::mce::{score_playout, ScoringFunction};
use kdom::{Draft, DraftEntry, GameState, Kingdom, Move, Position, Terrain, Tile, PLAYERS};

const SCORINGS: [ScoringFunction; 3] = [
    ScoringFunction::WinDrawLoss,
    ScoringFunction::Relative,
    ScoringFunction::Player,
];

fn t(terrain: Terrain, crowns: u8) -> Tile {
    Tile { terrain, crowns }
}

/// Fills the 5x5 square around the castle with `fill`, applies `special`,
/// and leaves `free` empty.
fn square(fill: Tile, special: &[((i8, i8), Tile)], free: &[(i8, i8)]) -> Kingdom {
    let mut tiles = Vec::new();
    for y in -2..=2i8 {
        for x in -2..=2i8 {
            if (x, y) == (0, 0) || free.contains(&(x, y)) {
                continue;
            }
            let tile = special
                .iter()
                .find(|(c, _)| *c == (x, y))
                .map_or(fill, |(_, t)| *t);
            tiles.push((Position::new(x, y), tile));
        }
    }
    Kingdom::from_tiles(&tiles, 0).expect("valid layout")
}

/// Root layout: a two-tile mine area with two crowns next to the free pair
/// on the east edge, a lone swamp next to the free pair on the west edge.
fn root_kingdom(east_swamp: bool) -> Kingdom {
    use Terrain::*;
    let east = if east_swamp {
        t(Swamp, 0)
    } else {
        t(Grassland, 0)
    };
    square(
        t(Forest, 0),
        &[
            ((1, 1), t(Mine, 1)),
            ((1, 0), t(Mine, 1)),
            ((2, 0), east),
            ((1, 2), t(Grassland, 0)),
            ((-1, -2), t(Swamp, 0)),
            ((-1, -1), t(Grassland, 0)),
            ((-2, 0), t(Grassland, 0)),
        ],
        &[(2, 2), (2, 1), (-2, -2), (-2, -1)],
    )
}

/// Opponent layout worth 9 area + 10 middle kingdom, forest everywhere
/// else, with the given cells left free.
fn opponent_kingdom(free: &[(i8, i8)]) -> Kingdom {
    use Terrain::*;
    square(
        t(Forest, 0),
        &[
            ((1, 0), t(Wheat, 1)),
            ((2, 0), t(Wheat, 1)),
            ((2, 1), t(Wheat, 1)),
        ],
        free,
    )
}

fn draft(entries: [(u8, Option<u8>); 4]) -> Draft {
    Draft::from_entries(entries.map(|(domino, claimed_by)| DraftEntry { domino, claimed_by }))
}

fn used_except(keep: &[u8]) -> Vec<u8> {
    (1..=48).filter(|n| !keep.contains(n)).collect()
}

/// Player 0 acts last in round 12 and must place 46 (swamp / mine with two
/// crowns). Only one orientation joins the mine area.
pub fn placement_endgame() -> GameState {
    let opp = opponent_kingdom(&[(-2, 2), (-1, 2)]);
    let kingdoms = [root_kingdom(true), opp, opp, opp];
    let previous = draft([(9, Some(1)), (10, Some(2)), (11, Some(3)), (46, Some(0))]);
    let current = draft([(3, Some(1)), (4, Some(2)), (5, Some(3)), (12, None)]);
    GameState::from_parts(
        kingdoms,
        Some(current),
        Some(previous),
        12,
        3,
        &used_except(&[46, 3, 4, 5, 12]),
    )
    .expect("consistent endgame")
}

/// Player 0 acts third in round 12 and chooses between 46 and a plain
/// forest domino for the final round; only 46 fits next to the mine area.
pub fn selection_endgame() -> GameState {
    let opp = opponent_kingdom(&[(-2, 2), (-1, 2)]);
    let last = opponent_kingdom(&[(-2, 2), (-1, 2), (1, -2), (2, -2)]);
    let kingdoms = [root_kingdom(false), opp, opp, last];
    let previous = draft([(7, Some(1)), (8, Some(2)), (12, Some(0)), (13, Some(3))]);
    let current = draft([(3, Some(1)), (4, Some(2)), (5, None), (46, None)]);
    GameState::from_parts(
        kingdoms,
        Some(current),
        Some(previous),
        12,
        2,
        &used_except(&[12, 13, 3, 4, 5, 46]),
    )
    .expect("consistent endgame")
}

/// Reward bounds and uniform-continuation expectation of one root move.
#[derive(Clone, Debug)]
pub struct MoveOutcome {
    pub mv: Move,
    pub min: [f64; 3],
    pub max: [f64; 3],
    /// Expected reward when every later move is drawn uniformly.
    pub expected: [f64; 3],
}

fn walk(state: &GameState, root: usize) -> ([f64; 3], [f64; 3], [f64; 3]) {
    if state.is_terminal() {
        let scores: [i32; PLAYERS] = state.scores();
        let r = SCORINGS.map(|f| score_playout(&scores, root, f));
        return (r, r, r);
    }
    let moves = state.legal_moves().expect("not terminal");
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    let mut mean = [0.0; 3];
    for mv in &moves {
        let (a, b, e) = walk(&state.apply_move(mv).expect("legal"), root);
        for i in 0..3 {
            lo[i] = lo[i].min(a[i]);
            hi[i] = hi[i].max(b[i]);
            mean[i] += e[i] / moves.len() as f64;
        }
    }
    (lo, hi, mean)
}

/// Enumerates every continuation after every root move.
pub fn enumerate(state: &GameState) -> Vec<MoveOutcome> {
    let root = state.acting_player().expect("not terminal");
    state
        .legal_moves()
        .expect("not terminal")
        .into_iter()
        .map(|mv| {
            let (min, max, expected) = walk(&state.apply_move(&mv).expect("legal"), root);
            MoveOutcome {
                mv,
                min,
                max,
                expected,
            }
        })
        .collect()
}

/// The move whose worst outcome beats every other move's best outcome
/// under all three scoring functions, if one exists.
pub fn dominant_move(outcomes: &[MoveOutcome]) -> Option<Move> {
    outcomes
        .iter()
        .find(|m| {
            outcomes
                .iter()
                .filter(|o| o.mv != m.mv)
                .all(|o| (0..3).all(|i| m.min[i] > o.max[i]))
        })
        .map(|m| m.mv)
}
