//! UCT tree search with win/draw/loss rewards.
//!
//! Every node keeps one reward sum per player and selection at a node uses
//! the mean of the player acting there (max^n backup). Hidden draws are
//! handled by reshuffling the draw pile every iteration; children whose
//! move is illegal under the current shuffle are skipped for that
//! iteration. Optional progressive bias terms steer early selection toward
//! moves with a high immediate score gain.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::mce::{run_playout, wdl_rewards, PlayoutPolicy, SearchBudget};
use crate::state::{GameState, Move, PlacementChoice, PLAYERS};

/// Exploration constant that worked best with many playouts per ply.
pub const DEFAULT_EXPLORATION: f64 = 0.6;
/// Bias weight used for the biased UCT variants.
pub const DEFAULT_BIAS_WEIGHT: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum BiasMode {
    None,
    /// `W * H / (T_i + 1)`: decays with visits.
    Progressive {
        weight: f64,
    },
    /// `W * H / (T_i * (1 - mean) + 1)`: decays with losses.
    ProgressiveWin {
        weight: f64,
    },
}

impl BiasMode {
    pub fn weight(&self) -> f64 {
        match *self {
            BiasMode::None => 0.0,
            BiasMode::Progressive { weight } | BiasMode::ProgressiveWin { weight } => weight,
        }
    }
}

/// `mean + c * sqrt(ln(parent) / child)`; unvisited children score +inf.
pub fn ucb_value(mean: f64, parent_visits: u64, child_visits: u64, c: f64) -> f64 {
    if child_visits == 0 {
        return f64::INFINITY;
    }
    mean + c * ((parent_visits as f64).ln() / child_visits as f64).sqrt()
}

pub fn bias_term(mode: BiasMode, heuristic: f64, child_visits: u64, mean: f64) -> f64 {
    let visits = child_visits as f64;
    match mode {
        BiasMode::None => 0.0,
        BiasMode::Progressive { weight } => weight * heuristic / (visits + 1.0),
        BiasMode::ProgressiveWin { weight } => weight * heuristic / (visits * (1.0 - mean) + 1.0),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UctConfig {
    pub policy: PlayoutPolicy,
    pub exploration: f64,
    pub bias: BiasMode,
    pub budget: SearchBudget,
}

#[derive(Clone, Debug)]
pub struct UctNode {
    /// Move leading here; `None` at the root.
    pub mv: Option<Move>,
    /// Player who made `mv`.
    pub actor: usize,
    pub visits: u64,
    pub reward_sums: [f64; PLAYERS],
    /// Immediate score gain of `mv` for `actor`.
    pub heuristic: f64,
    pub children: Vec<usize>,
    by_move: HashMap<Move, usize>,
}

impl UctNode {
    fn new(mv: Option<Move>, actor: usize, heuristic: f64) -> Self {
        UctNode {
            mv,
            actor,
            visits: 0,
            reward_sums: [0.0; PLAYERS],
            heuristic,
            children: Vec::new(),
            by_move: HashMap::new(),
        }
    }

    pub fn mean(&self, player: usize) -> f64 {
        if self.visits == 0 {
            0.0
        } else {
            self.reward_sums[player] / self.visits as f64
        }
    }
}

/// Search tree arena; node 0 is the root.
#[derive(Clone, Debug)]
pub struct UctTree {
    pub nodes: Vec<UctNode>,
}

impl UctTree {
    pub fn root(&self) -> &UctNode {
        &self.nodes[0]
    }
}

#[derive(Clone, Debug)]
pub struct UctReport {
    pub chosen: Move,
    pub iterations: u64,
    pub elapsed: Duration,
    pub tree: UctTree,
}

/// Immediate score gain of a move for the acting player.
fn move_heuristic(state: &GameState, mv: &Move) -> f64 {
    match (mv.placement, state.domino_to_place(), state.acting_player()) {
        (Some(PlacementChoice::Place(pl)), Some(d), Some(p)) => {
            f64::from(state.kingdom(p).evaluate(d, pl).gain)
        }
        _ => 0.0,
    }
}

pub fn uct_choose<R: Rng + ?Sized>(
    state: &GameState,
    config: &UctConfig,
    rng: &mut R,
) -> Result<UctReport, EngineError> {
    let started = Instant::now();
    let root_player = state.acting_player().ok_or(EngineError::Terminal)?;
    let root_moves = state.legal_moves()?;
    let mut tree = UctTree {
        nodes: vec![UctNode::new(None, root_player, 0.0)],
    };
    let mut iterations = 0u64;
    let mut path = Vec::with_capacity(64);
    loop {
        let done = iterations > 0
            && (root_moves.len() == 1 || config.budget.exhausted(iterations, started));
        if done {
            break;
        }
        path.clear();
        path.push(0usize);
        let mut sim = state.clone();
        sim.determinize(rng);
        let mut node = 0usize;
        while !sim.is_terminal() {
            let actor = sim.acting_player().expect("not terminal");
            let moves = sim.legal_moves().expect("not terminal");
            if let Some(mv) = moves
                .iter()
                .find(|m| !tree.nodes[node].by_move.contains_key(m))
            {
                let child = tree.nodes.len();
                tree.nodes
                    .push(UctNode::new(Some(*mv), actor, move_heuristic(&sim, mv)));
                let parent = &mut tree.nodes[node];
                parent.children.push(child);
                parent.by_move.insert(*mv, child);
                sim.play(mv);
                path.push(child);
                break;
            }
            let parent_visits = tree.nodes[node].visits;
            let mut best = (f64::NEG_INFINITY, usize::MAX, None);
            for mv in &moves {
                let child = tree.nodes[node].by_move[mv];
                let c = &tree.nodes[child];
                let mean = c.mean(actor);
                let value = ucb_value(mean, parent_visits, c.visits, config.exploration)
                    + bias_term(config.bias, c.heuristic, c.visits, mean);
                if value > best.0 {
                    best = (value, child, Some(*mv));
                }
            }
            let (_, child, mv) = best;
            sim.play(&mv.expect("legal moves are non-empty"));
            path.push(child);
            node = child;
        }
        let scores = run_playout(&mut sim, config.policy, root_player, rng);
        let rewards = wdl_rewards(&scores);
        for &n in &path {
            let node = &mut tree.nodes[n];
            node.visits += 1;
            for (sum, r) in node.reward_sums.iter_mut().zip(rewards) {
                *sum += r;
            }
        }
        iterations += 1;
    }

    let chosen = best_root_child(&tree, root_player, rng);
    Ok(UctReport {
        chosen,
        iterations,
        elapsed: started.elapsed(),
        tree,
    })
}

/// Highest mean reward for the root player, then highest immediate gain,
/// then uniform.
fn best_root_child<R: Rng + ?Sized>(tree: &UctTree, player: usize, rng: &mut R) -> Move {
    let children: Vec<&UctNode> = tree
        .root()
        .children
        .iter()
        .map(|&c| &tree.nodes[c])
        .filter(|c| c.visits > 0)
        .collect();
    let best_mean = children
        .iter()
        .map(|c| c.mean(player))
        .fold(f64::NEG_INFINITY, f64::max);
    let best_h = children
        .iter()
        .filter(|c| c.mean(player) == best_mean)
        .map(|c| c.heuristic)
        .fold(f64::NEG_INFINITY, f64::max);
    let top: Vec<&&UctNode> = children
        .iter()
        .filter(|c| c.mean(player) == best_mean && c.heuristic == best_h)
        .collect();
    top.choose(rng)
        .and_then(|c| c.mv)
        .expect("root has a visited child")
}
