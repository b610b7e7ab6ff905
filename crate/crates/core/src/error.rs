use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeckError {
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("unknown terrain `{0}`")]
    UnknownTerrain(String),
    #[error("domino {0} listed twice")]
    Duplicate(u8),
    #[error("domino {0} missing from deck")]
    Missing(u8),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("unsupported player count {0}; only 4-player games are implemented")]
    UnsupportedPlayerCount(usize),
    #[error("game is already over")]
    Terminal,
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("player {player} is not the acting player")]
    NotActing { player: usize },
}
