//! Parameter sweeps against three full-greedy opponents, written as CSV.

use std::io;
use std::time::Duration;

use kdom::mce::SearchBudget;
use serde::{Deserialize, Serialize};

use crate::agent::AgentConfig;
use crate::game::HarnessError;
use crate::series::{run_series, SeriesConfig, SeriesStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Series,
    SweepTime,
    SweepC,
    SweepW,
    GrandTable,
}

/// One grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub experiment: Experiment,
    pub agent: String,
    pub opponents: String,
    /// Empty for playout budgets and static agents.
    pub time_per_ply: Option<f64>,
    pub max_playouts: Option<u64>,
    pub exploration: f64,
    pub bias_weight: f64,
    pub base_seed: u64,
    pub games: usize,
    pub wins: usize,
    pub draws: usize,
    pub losses: usize,
    pub mean_score: f64,
    pub score_ci95: Option<f64>,
    pub mean_victory_margin: f64,
    pub ci95_half_width: Option<f64>,
    pub mean_playouts_per_second: f64,
    pub mean_playouts_per_ply: f64,
    pub budget_violations: u32,
}

impl SweepRow {
    pub fn new(experiment: Experiment, config: &SeriesConfig, stats: &SeriesStats) -> Self {
        let (time_per_ply, max_playouts) = match config.player.budget {
            _ if !config.player.is_search() => (None, None),
            SearchBudget::Time(d) => (Some(d.as_secs_f64()), None),
            SearchBudget::Playouts(n) => (None, Some(n)),
        };
        SweepRow {
            experiment,
            agent: config.player.label(),
            opponents: config.opponents[0].label(),
            time_per_ply,
            max_playouts,
            exploration: config.player.exploration,
            bias_weight: config.player.bias.weight(),
            base_seed: config.base_seed,
            games: stats.games,
            wins: stats.wins,
            draws: stats.draws,
            losses: stats.losses,
            mean_score: stats.mean_score,
            score_ci95: stats.score_ci95,
            mean_victory_margin: stats.mean_victory_margin,
            ci95_half_width: stats.ci95_half_width,
            mean_playouts_per_second: stats.mean_playouts_per_second,
            mean_playouts_per_ply: stats.mean_playouts_per_ply,
            budget_violations: stats.budget_violations,
        }
    }
}

pub fn write_csv<W: io::Write>(out: W, rows: &[SweepRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> csv::Result<Vec<SweepRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

/// Common settings of a sweep.
#[derive(Clone, Debug)]
pub struct SweepSettings {
    pub games: usize,
    pub base_seed: u64,
    pub parallelism: usize,
    pub opponent: AgentConfig,
}

impl SweepSettings {
    pub fn new(games: usize, base_seed: u64) -> Self {
        SweepSettings {
            games,
            base_seed,
            parallelism: 1,
            opponent: AgentConfig::full_greedy(),
        }
    }

    fn run(
        &self,
        experiment: Experiment,
        player: AgentConfig,
        progress: &mut dyn FnMut(&SweepRow),
    ) -> Result<SweepRow, HarnessError> {
        let mut config = SeriesConfig::new(player, self.opponent, self.games, self.base_seed);
        config.parallelism = self.parallelism;
        let report = run_series(&config, |_| {})?;
        let row = SweepRow::new(experiment, &config, &report.stats);
        progress(&row);
        Ok(row)
    }
}

fn non_empty<T>(grid: &[T]) {
    assert!(!grid.is_empty(), "empty sweep grid");
}

/// `player` at each time budget.
pub fn time_sweep(
    settings: &SweepSettings,
    player: AgentConfig,
    times: &[Duration],
    progress: &mut dyn FnMut(&SweepRow),
) -> Result<Vec<SweepRow>, HarnessError> {
    non_empty(times);
    times
        .iter()
        .map(|&t| {
            settings.run(
                Experiment::SweepTime,
                player.with_budget(SearchBudget::Time(t)),
                progress,
            )
        })
        .collect()
}

/// `player` (a UCT agent) at each exploration constant.
pub fn c_sweep(
    settings: &SweepSettings,
    player: AgentConfig,
    values: &[f64],
    progress: &mut dyn FnMut(&SweepRow),
) -> Result<Vec<SweepRow>, HarnessError> {
    non_empty(values);
    values
        .iter()
        .map(|&c| settings.run(Experiment::SweepC, player.with_exploration(c), progress))
        .collect()
}

/// `player` (a biased UCT agent) at each bias weight.
pub fn w_sweep(
    settings: &SweepSettings,
    player: AgentConfig,
    values: &[f64],
    progress: &mut dyn FnMut(&SweepRow),
) -> Result<Vec<SweepRow>, HarnessError> {
    non_empty(values);
    values
        .iter()
        .map(|&w| settings.run(Experiment::SweepW, player.with_bias_weight(w), progress))
        .collect()
}

/// Every agent at every time budget, agent-major.
pub fn grand_table(
    settings: &SweepSettings,
    agents: &[AgentConfig],
    times: &[Duration],
    progress: &mut dyn FnMut(&SweepRow),
) -> Result<Vec<SweepRow>, HarnessError> {
    non_empty(agents);
    non_empty(times);
    let mut rows = Vec::new();
    for a in agents {
        if a.is_search() {
            for &t in times {
                rows.push(settings.run(
                    Experiment::GrandTable,
                    a.with_budget(SearchBudget::Time(t)),
                    progress,
                )?);
            }
        } else {
            rows.push(settings.run(Experiment::GrandTable, *a, progress)?);
        }
    }
    Ok(rows)
}

/// The agents of the full comparison table.
pub fn grand_table_agents() -> Vec<AgentConfig> {
    [
        "FG", "MCE-TR/R", "MCE-eG/R", "MCE-PG/R", "MCE-FG/R", "UCT-TR", "UCT-FG", "UCT_B-TR",
        "UCT_B-FG", "UCT_W-TR", "UCT_W-FG",
    ]
    .iter()
    .map(|s| s.parse().expect("built-in spec"))
    .collect()
}
