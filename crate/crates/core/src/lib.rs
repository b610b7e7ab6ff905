//! Kingdomino for four players: rules engine, greedy reference agents,
//! flat Monte Carlo evaluation and UCT tree search.
//!
//! Everything operates on [`GameState`] values. Randomness is always passed
//! in explicitly; seeded games and agents use [`GameRng`] (ChaCha8), so a
//! seed reproduces the same game on any platform.

pub mod deck;
pub mod draws;
mod error;
pub mod greedy;
mod grid;
pub mod kingdom;
pub mod mce;
pub mod state;
pub mod uct;

pub use deck::{domino, Deck, Domino, Terrain, Tile};
pub use draws::count_deck_draws;
pub use error::{DeckError, EngineError};
pub use grid::Position;
pub use kingdom::{Kingdom, Placement, PlacementEval, ScoreBreakdown};
pub use state::{new_game, Draft, DraftEntry, GameState, Move, PlacementChoice, PLAYERS, ROUNDS};

/// Portable seeded generator used for deck shuffles and agent streams.
pub type GameRng = rand_chacha::ChaCha8Rng;

/// Legal placements of `domino` in `kingdom`; empty means it must be
/// discarded.
pub fn placements_for(kingdom: &Kingdom, domino: &Domino) -> Vec<Placement> {
    kingdom.placements_for(domino)
}

pub fn score_kingdom(kingdom: &Kingdom, terminal: bool) -> ScoreBreakdown {
    kingdom.score(terminal)
}
