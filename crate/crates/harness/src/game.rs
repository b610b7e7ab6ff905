//! Plays single games, in process or through a game server.

use std::time::Duration;

use kdom::mce::SearchBudget;
use kdom::{GameState, Move, PlacementChoice, PLAYERS, ROUNDS};
use kdom_server::{state_from_doc, Client, ClientError, MoveDoc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agent::{Agent, AgentConfig};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Engine(#[from] kdom::EngineError),
    #[error(transparent)]
    Client(#[from] ClientError),
    #[error("server sent an unusable state: {0}")]
    Wire(#[from] kdom_server::wire::WireError),
    #[error("server game ended unexpectedly")]
    Protocol,
}

/// Size of the move list one player faced at one decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingSample {
    pub player: u8,
    pub round: u8,
    pub branching: u32,
    /// `branching` with both orientations of an identical-tile domino
    /// counted as separate placements.
    pub oriented: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SeatUsage {
    pub plies: u32,
    pub playouts: u64,
    pub think_time: Duration,
    /// Decisions that ran more than 50% over a time budget.
    pub budget_violations: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameResult {
    pub seed: u64,
    pub final_scores: [i32; PLAYERS],
    /// Scores after each round; the last row includes end-of-game bonuses.
    pub round_scores: Vec<[i32; PLAYERS]>,
    pub branching: Vec<BranchingSample>,
    pub moves: Vec<(u8, Move)>,
    pub usage: [SeatUsage; PLAYERS],
}

impl GameResult {
    /// Copy with wall-clock times zeroed, for comparing replays.
    pub fn without_timing(&self) -> GameResult {
        let mut r = self.clone();
        for u in &mut r.usage {
            u.think_time = Duration::ZERO;
        }
        r
    }
}

/// RNG seed of the agent in `seat` for the game seeded `game_seed`.
pub fn agent_seed(game_seed: u64, seat: usize) -> u64 {
    game_seed
        .wrapping_mul(PLAYERS as u64)
        .wrapping_add(seat as u64)
}

fn over_budget(config: &AgentConfig, elapsed: Duration) -> bool {
    match config.budget {
        SearchBudget::Time(limit) if config.is_search() => {
            elapsed.as_secs_f64() > 1.5 * limit.as_secs_f64()
        }
        _ => false,
    }
}

struct Recorder {
    agents: Vec<Agent>,
    result: GameResult,
}

impl Recorder {
    fn new(configs: &[AgentConfig; PLAYERS], seed: u64) -> Self {
        Recorder {
            agents: configs
                .iter()
                .enumerate()
                .map(|(seat, c)| Agent::new(*c, agent_seed(seed, seat)))
                .collect(),
            result: GameResult {
                seed,
                final_scores: [0; PLAYERS],
                round_scores: Vec::with_capacity(ROUNDS as usize),
                branching: Vec::new(),
                moves: Vec::new(),
                usage: [SeatUsage::default(); PLAYERS],
            },
        }
    }

    /// Asks the acting agent for a move and books the decision.
    fn decide(&mut self, state: &GameState) -> Result<(usize, Move), HarnessError> {
        let player = state.acting_player().ok_or(HarnessError::Protocol)?;
        let moves = state.legal_moves()?;
        let branching = moves.len() as u32;
        let doubled = state.domino_to_place().is_some_and(|d| d.a == d.b)
            && matches!(moves[0].placement, Some(PlacementChoice::Place(_)));
        let oriented = if doubled { 2 * branching } else { branching };
        let d = self.agents[player].choose(state)?;
        let u = &mut self.result.usage[player];
        u.plies += 1;
        u.playouts += d.playouts;
        u.think_time += d.elapsed;
        if over_budget(&self.agents[player].config, d.elapsed) {
            u.budget_violations += 1;
        }
        self.result.branching.push(BranchingSample {
            player: player as u8,
            round: state.round(),
            branching,
            oriented,
        });
        self.result.moves.push((player as u8, d.mv));
        Ok((player, d.mv))
    }

    fn observe(&mut self, before_round: u8, after: &GameState) {
        if after.is_terminal() || after.round() != before_round {
            self.result.round_scores.push(after.scores());
        }
    }
}

/// Plays one game with `configs[seat]` in each seat, dealt from `seed`.
/// With a client, the game is created on the server with the same seed and
/// every move travels over HTTP.
pub fn run_game(
    configs: &[AgentConfig; PLAYERS],
    seed: u64,
    server: Option<&Client>,
) -> Result<GameResult, HarnessError> {
    let mut rec = Recorder::new(configs, seed);
    match server {
        None => {
            let mut state = GameState::new(seed, PLAYERS)?;
            while !state.is_terminal() {
                let (_, mv) = rec.decide(&state)?;
                let round = state.round();
                state = state.apply_move(&mv)?;
                rec.observe(round, &state);
            }
            rec.result.final_scores = state.scores();
        }
        Some(client) => {
            let id = client.create_game(Some(seed))?;
            let grants: Vec<_> = (0..PLAYERS)
                .map(|_| client.join(&id))
                .collect::<Result<_, _>>()?;
            let mut doc = client.state(&id)?;
            while doc.current_player.is_some() {
                let state = state_from_doc(&doc)?;
                let (player, mv) = rec.decide(&state)?;
                doc = client.post_move(&id, &grants[player].token, &MoveDoc::from(&mv))?;
                let after = if doc.current_player.is_some() {
                    state_from_doc(&doc)?
                } else {
                    state.apply_move(&mv)?
                };
                rec.observe(state.round(), &after);
            }
            let finals: Vec<i32> = doc.scores.iter().map(|s| s.total).collect();
            rec.result.final_scores = finals.try_into().map_err(|_| HarnessError::Protocol)?;
        }
    }
    Ok(rec.result)
}

/// Final score minus the best opponent's.
pub fn victory_margin(scores: &[i32; PLAYERS], player: usize) -> i32 {
    let best_other = (0..PLAYERS)
        .filter(|&q| q != player)
        .map(|q| scores[q])
        .max()
        .expect("opponents");
    scores[player] - best_other
}
