//! Flat Monte Carlo evaluation.
//!
//! Each root move is sampled uniformly, a playout is run to the end of the
//! game under a playout policy, and the terminal scores are folded into a
//! reward by a scoring function. The move with the best mean reward wins.
//! Unseen dominoes are reshuffled before every playout.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::greedy::{full_greedy_move, random_move};
use crate::state::{GameState, Move, PLAYERS};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PlayoutPolicy {
    TrueRandom,
    /// Random with probability `epsilon`, otherwise full greedy.
    EpsilonGreedy(f64),
    /// Full greedy for the searching player, random for everyone else.
    PlayerGreedy,
    FullGreedy,
}

impl PlayoutPolicy {
    /// The epsilon used throughout the experiments: one greedy move in four.
    pub const DEFAULT_EPSILON: f64 = 0.75;

    pub fn label(&self) -> String {
        match self {
            PlayoutPolicy::TrueRandom => "TR".into(),
            PlayoutPolicy::EpsilonGreedy(e) if *e == Self::DEFAULT_EPSILON => "eG".into(),
            PlayoutPolicy::EpsilonGreedy(e) => format!("eG{e}"),
            PlayoutPolicy::PlayerGreedy => "PG".into(),
            PlayoutPolicy::FullGreedy => "FG".into(),
        }
    }

    fn next_move<R: Rng + ?Sized>(&self, state: &GameState, root: usize, rng: &mut R) -> Move {
        let greedy = match *self {
            PlayoutPolicy::TrueRandom => false,
            PlayoutPolicy::FullGreedy => true,
            PlayoutPolicy::PlayerGreedy => state.acting_player() == Some(root),
            // The boundary values draw nothing, so they replay exactly like
            // the pure policies on the same stream.
            PlayoutPolicy::EpsilonGreedy(e) if e >= 1.0 => false,
            PlayoutPolicy::EpsilonGreedy(e) if e <= 0.0 => true,
            PlayoutPolicy::EpsilonGreedy(e) => rng.gen::<f64>() >= e,
        };
        if greedy {
            full_greedy_move(state, rng)
        } else {
            random_move(state, rng)
        }
    }
}

impl fmt::Display for PlayoutPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for PlayoutPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "TR" => Ok(PlayoutPolicy::TrueRandom),
            "PG" => Ok(PlayoutPolicy::PlayerGreedy),
            "FG" => Ok(PlayoutPolicy::FullGreedy),
            "eG" | "εG" => Ok(PlayoutPolicy::EpsilonGreedy(Self::DEFAULT_EPSILON)),
            other => {
                let eps = other
                    .strip_prefix("eG")
                    .or_else(|| other.strip_prefix("εG"))
                    .and_then(|e| e.parse::<f64>().ok())
                    .filter(|e| (0.0..=1.0).contains(e))
                    .ok_or_else(|| format!("unknown playout policy `{other}`"))?;
                Ok(PlayoutPolicy::EpsilonGreedy(eps))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScoringFunction {
    WinDrawLoss,
    Relative,
    Player,
}

impl ScoringFunction {
    pub fn label(&self) -> &'static str {
        match self {
            ScoringFunction::WinDrawLoss => "WDL",
            ScoringFunction::Relative => "R",
            ScoringFunction::Player => "P",
        }
    }
}

impl FromStr for ScoringFunction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "WDL" => Ok(ScoringFunction::WinDrawLoss),
            "R" => Ok(ScoringFunction::Relative),
            "P" => Ok(ScoringFunction::Player),
            other => Err(format!("unknown scoring function `{other}`")),
        }
    }
}

/// How long a search may run for one decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchBudget {
    Time(Duration),
    Playouts(u64),
}

impl SearchBudget {
    pub fn millis(ms: u64) -> SearchBudget {
        SearchBudget::Time(Duration::from_millis(ms))
    }

    pub(crate) fn exhausted(&self, playouts: u64, started: Instant) -> bool {
        match *self {
            SearchBudget::Time(limit) => started.elapsed() >= limit,
            SearchBudget::Playouts(max) => playouts >= max,
        }
    }
}

/// Accumulated playout results for one root move.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChildStats {
    pub mv: Move,
    pub playouts: u64,
    pub reward_sum: f64,
}

impl ChildStats {
    pub fn new(mv: Move) -> Self {
        ChildStats {
            mv,
            playouts: 0,
            reward_sum: 0.0,
        }
    }

    pub fn mean(&self) -> Option<f64> {
        (self.playouts > 0).then(|| self.reward_sum / self.playouts as f64)
    }

    /// Merges results gathered elsewhere for the same move.
    pub fn absorb(&mut self, other: &ChildStats) {
        debug_assert_eq!(self.mv, other.mv);
        self.playouts += other.playouts;
        self.reward_sum += other.reward_sum;
    }
}

/// Win/draw/loss reward of every player: 1 for a sole leader, 0.5 for a
/// shared lead, 0 otherwise.
pub fn wdl_rewards(scores: &[i32; PLAYERS]) -> [f64; PLAYERS] {
    let top = *scores.iter().max().expect("non-empty");
    let leaders = scores.iter().filter(|&&s| s == top).count();
    std::array::from_fn(|p| match (scores[p] == top, leaders) {
        (false, _) => 0.0,
        (true, 1) => 1.0,
        (true, _) => 0.5,
    })
}

pub fn score_playout(
    final_scores: &[i32; PLAYERS],
    player: usize,
    scoring: ScoringFunction,
) -> f64 {
    match scoring {
        ScoringFunction::WinDrawLoss => wdl_rewards(final_scores)[player],
        ScoringFunction::Relative => {
            let own = f64::from(final_scores[player]);
            let best_other = (0..PLAYERS)
                .filter(|&q| q != player)
                .map(|q| final_scores[q])
                .max()
                .map_or(0.0, f64::from);
            if own + best_other == 0.0 {
                0.5
            } else {
                own / (own + best_other)
            }
        }
        ScoringFunction::Player => f64::from(final_scores[player]),
    }
}

/// Plays `state` to the end in place and returns the final scores.
pub(crate) fn run_playout<R: Rng + ?Sized>(
    state: &mut GameState,
    policy: PlayoutPolicy,
    root: usize,
    rng: &mut R,
) -> [i32; PLAYERS] {
    while !state.is_terminal() {
        let mv = policy.next_move(state, root, rng);
        state.play(&mv);
    }
    state.scores()
}

/// Simulates the rest of the game from `state` under `policy`.
///
/// The draw pile is used as it stands; callers that must not see the true
/// order reshuffle it first with [`GameState::determinize`].
pub fn playout<R: Rng + ?Sized>(
    state: &GameState,
    policy: PlayoutPolicy,
    root_player: usize,
    rng: &mut R,
) -> [i32; PLAYERS] {
    let mut s = state.clone();
    run_playout(&mut s, policy, root_player, rng)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MceConfig {
    pub policy: PlayoutPolicy,
    pub scoring: ScoringFunction,
    pub budget: SearchBudget,
}

/// Outcome of one search decision.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub chosen: Move,
    pub playouts: u64,
    pub elapsed: Duration,
    pub children: Vec<ChildStats>,
}

/// Picks a move by flat Monte Carlo evaluation.
///
/// The first pass visits every root move once in random order; after that
/// moves are drawn uniformly. A single legal move is returned after one
/// playout.
pub fn mce_choose<R: Rng + ?Sized>(
    state: &GameState,
    config: &MceConfig,
    rng: &mut R,
) -> Result<SearchReport, EngineError> {
    let started = Instant::now();
    let root = state.acting_player().ok_or(EngineError::Terminal)?;
    let moves = state.legal_moves()?;
    let mut children: Vec<ChildStats> = moves.iter().copied().map(ChildStats::new).collect();
    let mut first_pass: Vec<usize> = (0..moves.len()).collect();
    first_pass.shuffle(rng);

    let mut playouts = 0u64;
    loop {
        let done = playouts > 0 && (moves.len() == 1 || config.budget.exhausted(playouts, started));
        if done {
            break;
        }
        let child = match first_pass.get(playouts as usize) {
            Some(&c) => c,
            None => rng.gen_range(0..moves.len()),
        };
        let mut sim = state.clone();
        sim.determinize(rng);
        sim.play(&moves[child]);
        let scores = run_playout(&mut sim, config.policy, root, rng);
        let stats = &mut children[child];
        stats.playouts += 1;
        stats.reward_sum += score_playout(&scores, root, config.scoring);
        playouts += 1;
    }

    let chosen = best_by_mean(&children, rng);
    Ok(SearchReport {
        chosen,
        playouts,
        elapsed: started.elapsed(),
        children,
    })
}

fn best_by_mean<R: Rng + ?Sized>(children: &[ChildStats], rng: &mut R) -> Move {
    let best = children
        .iter()
        .filter_map(ChildStats::mean)
        .fold(f64::NEG_INFINITY, f64::max);
    let top: Vec<&ChildStats> = children.iter().filter(|c| c.mean() == Some(best)).collect();
    top.choose(rng).expect("at least one sampled child").mv
}
