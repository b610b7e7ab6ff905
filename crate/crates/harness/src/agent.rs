//! Agent configurations and their spec strings.
//!
//! | Spec | Agent |
//! |---|---|
//! | `TR`, `GPRD`, `FG` | static evaluators |
//! | `MCE-X/Y` | flat Monte Carlo, playout policy `X`, scoring `Y` |
//! | `UCT-X`, `UCT_B-X`, `UCT_W-X` | UCT without bias, with progressive bias, with progressive win bias |
//!
//! Playout policies are `TR`, `eG` (epsilon 0.75), `eG<eps>`, `PG` and `FG`;
//! scoring functions `WDL`, `R` and `P`.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use kdom::greedy::{choose_static, StaticStrategy};
use kdom::mce::{mce_choose, MceConfig, PlayoutPolicy, ScoringFunction, SearchBudget};
use kdom::uct::{uct_choose, BiasMode, UctConfig, DEFAULT_BIAS_WEIGHT, DEFAULT_EXPLORATION};
use kdom::{EngineError, GameRng, GameState, Move};
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    TrueRandom,
    Gprd,
    FullGreedy,
    Mce,
    Uct,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgentConfig {
    pub strategy: Strategy,
    /// MCE and UCT only.
    pub policy: PlayoutPolicy,
    /// MCE only; UCT always backs up win/draw/loss.
    pub scoring: ScoringFunction,
    /// UCT only.
    pub exploration: f64,
    /// UCT only.
    pub bias: BiasMode,
    pub budget: SearchBudget,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bad agent spec `{spec}`: {reason}")]
pub struct SpecError {
    pub spec: String,
    pub reason: String,
}

impl AgentConfig {
    pub const DEFAULT_BUDGET: SearchBudget = SearchBudget::Time(Duration::from_secs(1));

    fn with_strategy(strategy: Strategy) -> Self {
        AgentConfig {
            strategy,
            policy: PlayoutPolicy::TrueRandom,
            scoring: ScoringFunction::Relative,
            exploration: DEFAULT_EXPLORATION,
            bias: BiasMode::None,
            budget: Self::DEFAULT_BUDGET,
        }
    }

    pub fn true_random() -> Self {
        Self::with_strategy(Strategy::TrueRandom)
    }

    pub fn gprd() -> Self {
        Self::with_strategy(Strategy::Gprd)
    }

    pub fn full_greedy() -> Self {
        Self::with_strategy(Strategy::FullGreedy)
    }

    pub fn mce(policy: PlayoutPolicy, scoring: ScoringFunction, budget: SearchBudget) -> Self {
        AgentConfig {
            policy,
            scoring,
            budget,
            ..Self::with_strategy(Strategy::Mce)
        }
    }

    pub fn uct(policy: PlayoutPolicy, bias: BiasMode, budget: SearchBudget) -> Self {
        AgentConfig {
            policy,
            bias,
            budget,
            scoring: ScoringFunction::WinDrawLoss,
            ..Self::with_strategy(Strategy::Uct)
        }
    }

    pub fn with_budget(self, budget: SearchBudget) -> Self {
        AgentConfig { budget, ..self }
    }

    pub fn with_exploration(self, exploration: f64) -> Self {
        AgentConfig {
            exploration,
            ..self
        }
    }

    /// Replaces the bias weight, keeping the bias kind.
    pub fn with_bias_weight(self, weight: f64) -> Self {
        let bias = match self.bias {
            BiasMode::None => BiasMode::None,
            BiasMode::Progressive { .. } => BiasMode::Progressive { weight },
            BiasMode::ProgressiveWin { .. } => BiasMode::ProgressiveWin { weight },
        };
        AgentConfig { bias, ..self }
    }

    pub fn is_search(&self) -> bool {
        matches!(self.strategy, Strategy::Mce | Strategy::Uct)
    }

    /// Spec string without budget or tuning constants.
    pub fn label(&self) -> String {
        match self.strategy {
            Strategy::TrueRandom => "TR".into(),
            Strategy::Gprd => "GPRD".into(),
            Strategy::FullGreedy => "FG".into(),
            Strategy::Mce => format!("MCE-{}/{}", self.policy.label(), self.scoring.label()),
            Strategy::Uct => {
                let prefix = match self.bias {
                    BiasMode::None => "UCT",
                    BiasMode::Progressive { .. } => "UCT_B",
                    BiasMode::ProgressiveWin { .. } => "UCT_W",
                };
                format!("{prefix}-{}", self.policy.label())
            }
        }
    }
}

impl fmt::Display for AgentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for AgentConfig {
    type Err = SpecError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| SpecError {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let policy = |s: &str| {
            s.parse::<PlayoutPolicy>()
                .map_err(|_| err("unknown playout policy"))
        };
        match spec {
            "TR" => return Ok(Self::true_random()),
            "GPRD" => return Ok(Self::gprd()),
            "FG" => return Ok(Self::full_greedy()),
            _ => {}
        }
        if let Some(rest) = spec.strip_prefix("MCE-") {
            let (p, s) = rest
                .split_once('/')
                .ok_or_else(|| err("expected MCE-<policy>/<scoring>"))?;
            let scoring = s
                .parse::<ScoringFunction>()
                .map_err(|_| err("unknown scoring function"))?;
            return Ok(Self::mce(policy(p)?, scoring, Self::DEFAULT_BUDGET));
        }
        let (head, p) = spec
            .split_once('-')
            .ok_or_else(|| err("unknown strategy"))?;
        let bias = match head {
            "UCT" => BiasMode::None,
            "UCT_B" => BiasMode::Progressive {
                weight: DEFAULT_BIAS_WEIGHT,
            },
            "UCT_W" => BiasMode::ProgressiveWin {
                weight: DEFAULT_BIAS_WEIGHT,
            },
            _ => return Err(err("unknown strategy")),
        };
        Ok(Self::uct(policy(p)?, bias, Self::DEFAULT_BUDGET))
    }
}

/// One decision and what it cost.
#[derive(Clone, Copy, Debug)]
pub struct Decision {
    pub mv: Move,
    pub playouts: u64,
    pub elapsed: Duration,
}

/// A configured agent with its own random stream.
pub struct Agent {
    pub config: AgentConfig,
    rng: GameRng,
}

impl Agent {
    pub fn new(config: AgentConfig, seed: u64) -> Self {
        Agent {
            config,
            rng: GameRng::seed_from_u64(seed),
        }
    }

    /// Picks a move for the acting player. Time is measured from the call
    /// to the return.
    pub fn choose(&mut self, state: &GameState) -> Result<Decision, EngineError> {
        let started = Instant::now();
        let c = &self.config;
        let (mv, playouts) = match c.strategy {
            Strategy::TrueRandom => (
                choose_static(StaticStrategy::TrueRandom, state, &mut self.rng)?,
                0,
            ),
            Strategy::Gprd => (
                choose_static(
                    StaticStrategy::GreedyPlacementRandomDraft,
                    state,
                    &mut self.rng,
                )?,
                0,
            ),
            Strategy::FullGreedy => (
                choose_static(StaticStrategy::FullGreedy, state, &mut self.rng)?,
                0,
            ),
            Strategy::Mce => {
                let cfg = MceConfig {
                    policy: c.policy,
                    scoring: c.scoring,
                    budget: c.budget,
                };
                let r = mce_choose(state, &cfg, &mut self.rng)?;
                (r.chosen, r.playouts)
            }
            Strategy::Uct => {
                let cfg = UctConfig {
                    policy: c.policy,
                    exploration: c.exploration,
                    bias: c.bias,
                    budget: c.budget,
                };
                let r = uct_choose(state, &cfg, &mut self.rng)?;
                (r.chosen, r.iterations)
            }
        };
        Ok(Decision {
            mv,
            playouts,
            elapsed: started.elapsed(),
        })
    }
}
