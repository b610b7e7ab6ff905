//! Series of games between one evaluated agent and three opponents.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use kdom::{PLAYERS, ROUNDS};
use kdom_server::Client;
use serde::{Deserialize, Serialize};

use crate::agent::AgentConfig;
use crate::game::{run_game, victory_margin, GameResult, HarnessError};
use crate::stats::{ci95, mean};

#[derive(Clone, Debug)]
pub struct SeriesConfig {
    pub player: AgentConfig,
    pub opponents: [AgentConfig; 3],
    pub games: usize,
    /// Game `i` is dealt from `base_seed + i`.
    pub base_seed: u64,
    /// Games run concurrently. Keep at 1 for timed agents unless every game
    /// gets a core of its own, or per-ply budgets stop meaning anything.
    pub parallelism: usize,
    /// Play through this server instead of in process.
    pub server: Option<String>,
}

impl SeriesConfig {
    pub fn new(player: AgentConfig, opponent: AgentConfig, games: usize, base_seed: u64) -> Self {
        SeriesConfig {
            player,
            opponents: [opponent; 3],
            games,
            base_seed,
            parallelism: 1,
            server: None,
        }
    }

    /// Seat of the evaluated player in game `index`; it visits every seat
    /// equally often.
    pub fn seat(index: usize) -> usize {
        index % PLAYERS
    }

    pub fn lineup(&self, index: usize) -> [AgentConfig; PLAYERS] {
        let seat = Self::seat(index);
        let mut others = self.opponents.iter();
        std::array::from_fn(|s| {
            if s == seat {
                self.player
            } else {
                *others.next().expect("three opponents")
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Win,
    Draw,
    Loss,
}

/// Outcome for `player`: a draw is a shared top score.
pub fn outcome(scores: &[i32; PLAYERS], player: usize) -> Outcome {
    match victory_margin(scores, player) {
        m if m > 0 => Outcome::Win,
        0 => Outcome::Draw,
        _ => Outcome::Loss,
    }
}

/// One game from the evaluated player's point of view.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesGame {
    pub index: usize,
    pub seat: usize,
    pub result: GameResult,
}

impl SeriesGame {
    pub fn score(&self) -> i32 {
        self.result.final_scores[self.seat]
    }

    pub fn margin(&self) -> i32 {
        victory_margin(&self.result.final_scores, self.seat)
    }

    pub fn outcome(&self) -> Outcome {
        outcome(&self.result.final_scores, self.seat)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesStats {
    pub games: usize,
    pub wins: usize,
    pub draws: usize,
    pub losses: usize,
    pub mean_score: f64,
    pub score_ci95: Option<f64>,
    pub mean_victory_margin: f64,
    /// Half-width of the 95% interval of the mean victory margin.
    pub ci95_half_width: Option<f64>,
    pub per_round_mean_scores: Vec<f64>,
    pub per_round_mean_branching: Vec<f64>,
    /// Evaluated player's playouts over its thinking time.
    pub mean_playouts_per_second: f64,
    pub mean_playouts_per_ply: f64,
    pub budget_violations: u32,
}

impl SeriesStats {
    pub fn from_games(games: &[SeriesGame]) -> SeriesStats {
        let count = |o| games.iter().filter(|g| g.outcome() == o).count();
        let scores: Vec<f64> = games.iter().map(|g| f64::from(g.score())).collect();
        let margins: Vec<f64> = games.iter().map(|g| f64::from(g.margin())).collect();
        let per_round_mean_scores = (0..ROUNDS as usize)
            .map(|r| {
                let xs: Vec<f64> = games
                    .iter()
                    .map(|g| f64::from(g.result.round_scores[r][g.seat]))
                    .collect();
                mean(&xs)
            })
            .collect();
        let per_round_mean_branching = (1..=ROUNDS)
            .map(|r| {
                let xs: Vec<f64> = games
                    .iter()
                    .flat_map(|g| {
                        g.result
                            .branching
                            .iter()
                            .filter(move |b| b.round == r && b.player as usize == g.seat)
                            .map(|b| f64::from(b.branching))
                    })
                    .collect();
                mean(&xs)
            })
            .collect();
        let (mut playouts, mut secs, mut plies, mut violations) = (0u64, 0.0, 0u64, 0u32);
        for g in games {
            let u = &g.result.usage[g.seat];
            playouts += u.playouts;
            secs += u.think_time.as_secs_f64();
            plies += u64::from(u.plies);
            violations += u.budget_violations;
        }
        SeriesStats {
            games: games.len(),
            wins: count(Outcome::Win),
            draws: count(Outcome::Draw),
            losses: count(Outcome::Loss),
            mean_score: mean(&scores),
            score_ci95: ci95(&scores),
            mean_victory_margin: mean(&margins),
            ci95_half_width: ci95(&margins),
            per_round_mean_scores,
            per_round_mean_branching,
            mean_playouts_per_second: if secs > 0.0 {
                playouts as f64 / secs
            } else {
                0.0
            },
            mean_playouts_per_ply: if plies > 0 {
                playouts as f64 / plies as f64
            } else {
                0.0
            },
            budget_violations: violations,
        }
    }

    pub fn win_rate(&self) -> f64 {
        self.wins as f64 / self.games as f64
    }

    pub fn draw_rate(&self) -> f64 {
        self.draws as f64 / self.games as f64
    }
}

#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub label: String,
    pub stats: SeriesStats,
    pub games: Vec<SeriesGame>,
}

/// Runs the series; `progress` sees every finished game (in completion
/// order when parallel).
pub fn run_series(
    config: &SeriesConfig,
    mut progress: impl FnMut(&SeriesGame) + Send,
) -> Result<SeriesReport, HarnessError> {
    assert!(config.games >= 1, "a series needs at least one game");
    let client = config.server.as_deref().map(Client::new).transpose()?;
    let next = AtomicUsize::new(0);
    let done: Mutex<Vec<SeriesGame>> = Mutex::new(Vec::with_capacity(config.games));
    let failure: Mutex<Option<HarnessError>> = Mutex::new(None);
    let progress = Mutex::new(&mut progress);
    let worker = || loop {
        let index = next.fetch_add(1, Ordering::SeqCst);
        if index >= config.games || failure.lock().expect("lock").is_some() {
            return;
        }
        let seed = config.base_seed.wrapping_add(index as u64);
        match run_game(&config.lineup(index), seed, client.as_ref()) {
            Ok(result) => {
                let g = SeriesGame {
                    index,
                    seat: SeriesConfig::seat(index),
                    result,
                };
                (progress.lock().expect("lock"))(&g);
                done.lock().expect("lock").push(g);
            }
            Err(e) => {
                failure.lock().expect("lock").get_or_insert(e);
            }
        }
    };
    let threads = config.parallelism.clamp(1, config.games);
    if threads == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(worker);
            }
        });
    }
    if let Some(e) = failure.into_inner().expect("lock") {
        return Err(e);
    }
    let mut games = done.into_inner().expect("lock");
    games.sort_by_key(|g| g.index);
    Ok(SeriesReport {
        label: config.player.label(),
        stats: SeriesStats::from_games(&games),
        games,
    })
}
