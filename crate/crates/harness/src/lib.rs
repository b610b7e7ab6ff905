//! Game running, series statistics and experiments.

pub mod agent;
pub mod branching;
pub mod game;
pub mod series;
pub mod stats;
pub mod sweep;

pub use agent::{Agent, AgentConfig, Strategy};
pub use game::{run_game, victory_margin, GameResult, HarnessError};
pub use series::{run_series, SeriesConfig, SeriesReport, SeriesStats};
