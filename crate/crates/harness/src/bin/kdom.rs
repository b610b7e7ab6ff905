use std::fs::File;
use std::io::{self, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use kdom::mce::SearchBudget;
use kdom::{count_deck_draws, PLAYERS};
use kdom_harness::branching::{
    all_shuffles_estimate, branching_experiment, game_tree_size_estimate,
};
use kdom_harness::stats::Estimate;
use kdom_harness::sweep::{self, Experiment, SweepRow, SweepSettings};
use kdom_harness::{run_game, run_series, AgentConfig, SeriesConfig};
use kdom_server::{spawn_background, Client, StoreConfig};

#[derive(Parser)]
#[command(
    name = "kdom",
    version,
    about = "Kingdomino agents, experiments and game server"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game and print the move list and scores.
    Play(PlayArgs),
    /// Play a series of games against three opponents.
    Series(Common),
    /// Mean branching factor per round under random self-play.
    Branching {
        #[arg(long, default_value_t = 1000)]
        games: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Victory margin over a grid of time budgets (seconds).
    SweepTime(GridArgs),
    /// Victory margin over a grid of UCT exploration constants.
    SweepC(GridArgs),
    /// Victory margin over a grid of UCT bias weights.
    SweepW(GridArgs),
    /// All agents over a grid of time budgets (seconds).
    GrandTable(GridArgs),
    /// Number of ways the deck can be drawn into drafts.
    CountDraws,
    /// Run the game server.
    Serve {
        #[arg(long, env = "KDOM_ADDR", default_value = "127.0.0.1:8080")]
        addr: SocketAddr,
        /// Directory for per-game JSON-lines logs.
        #[arg(long, env = "KDOM_LOG_DIR")]
        log_dir: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Evaluated agent, e.g. `MCE-PG/R` or `UCT_W-FG`.
    #[arg(long, default_value = "FG")]
    agent: String,
    /// One spec for all three opponents, or three comma-separated specs.
    #[arg(long, default_value = "FG")]
    opponents: String,
    #[arg(long, default_value_t = 200)]
    games: usize,
    /// Seconds per ply for search agents.
    #[arg(long, default_value_t = 1.0)]
    time_per_ply: f64,
    /// Playout budget per ply; replaces the time budget.
    #[arg(long)]
    max_playouts: Option<u64>,
    #[arg(long)]
    exploration: Option<f64>,
    #[arg(long)]
    bias_weight: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Concurrent games. Timed agents need one core per game or their
    /// budgets are meaningless.
    #[arg(long, default_value_t = 1)]
    parallelism: usize,
}

#[derive(Args)]
struct PlayArgs {
    #[command(flatten)]
    common: Common,
    /// Play through this server instead of in process.
    #[arg(long)]
    server: Option<String>,
}

#[derive(Args)]
struct GridArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated grid values.
    #[arg(long, value_delimiter = ',')]
    grid: Vec<f64>,
}

type Res<T> = Result<T, Box<dyn std::error::Error>>;

impl Common {
    fn budget(&self) -> SearchBudget {
        match self.max_playouts {
            Some(n) => SearchBudget::Playouts(n),
            None => SearchBudget::Time(Duration::from_secs_f64(self.time_per_ply)),
        }
    }

    fn parse_agent(&self, spec: &str) -> Res<AgentConfig> {
        let mut a: AgentConfig = spec.parse()?;
        a = a.with_budget(self.budget());
        if let Some(c) = self.exploration {
            a = a.with_exploration(c);
        }
        if let Some(w) = self.bias_weight {
            a = a.with_bias_weight(w);
        }
        Ok(a)
    }

    fn agent(&self) -> Res<AgentConfig> {
        self.parse_agent(&self.agent)
    }

    fn opponents(&self) -> Res<[AgentConfig; 3]> {
        let specs: Vec<&str> = self.opponents.split(',').map(str::trim).collect();
        let parsed = specs
            .iter()
            .map(|s| self.parse_agent(s))
            .collect::<Res<Vec<_>>>()?;
        match parsed.len() {
            1 => Ok([parsed[0]; 3]),
            3 => Ok([parsed[0], parsed[1], parsed[2]]),
            _ => Err("--opponents takes one spec or three".into()),
        }
    }

    fn warn_parallel(&self, agents: &[AgentConfig]) {
        if self.parallelism > 1
            && agents
                .iter()
                .any(|a| a.is_search() && self.max_playouts.is_none())
        {
            let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
            eprintln!(
                "warning: {} concurrent games with timed search agents on {cores} cores; \
                 per-ply budgets only hold with one core per game",
                self.parallelism
            );
        }
    }

    fn settings(&self) -> SweepSettings {
        let mut s = SweepSettings::new(self.games, self.seed);
        s.parallelism = self.parallelism;
        s
    }
}

fn emit(rows: &[SweepRow], out: &Option<PathBuf>) -> Res<()> {
    match out {
        Some(path) => sweep::write_csv(File::create(path)?, rows)?,
        None => sweep::write_csv(io::stdout().lock(), rows)?,
    }
    Ok(())
}

fn progress(row: &SweepRow) {
    let ci = row
        .ci95_half_width
        .map_or("n/a".to_string(), |c| format!("{c:.2}"));
    eprintln!(
        "{} t={:?} C={} W={}: margin {:+.2} ± {ci}, score {:.2}, {:.0} playouts/s",
        row.agent,
        row.time_per_ply,
        row.exploration,
        row.bias_weight,
        row.mean_victory_margin,
        row.mean_score,
        row.mean_playouts_per_second
    );
}

fn run(cli: Cli) -> Res<()> {
    match cli.command {
        Command::Play(args) => {
            let c = &args.common;
            let player = c.agent()?;
            let opp = c.opponents()?;
            let lineup = [player, opp[0], opp[1], opp[2]];
            let client = args.server.as_deref().map(Client::new).transpose()?;
            let result = run_game(&lineup, c.seed, client.as_ref())?;
            let mut out = io::stdout().lock();
            for (seat, mv) in &result.moves {
                writeln!(out, "p{seat} {mv:?}")?;
            }
            for (seat, a) in lineup.iter().enumerate() {
                writeln!(
                    out,
                    "seat {seat} {:<10} {}",
                    a.label(),
                    result.final_scores[seat]
                )?;
            }
        }
        Command::Series(c) => {
            let player = c.agent()?;
            let opponents = c.opponents()?;
            c.warn_parallel(&[player]);
            let mut config = SeriesConfig::new(player, opponents[0], c.games, c.seed);
            config.opponents = opponents;
            config.parallelism = c.parallelism;
            let report = run_series(&config, |g| {
                eprintln!(
                    "game {:>4} seat {} scores {:?}",
                    g.index, g.seat, g.result.final_scores
                )
            })?;
            let s = &report.stats;
            eprintln!(
                "{}: {} wins, {} draws, {} losses; mean score {:.2}; margin {:+.2} ± {}",
                report.label,
                s.wins,
                s.draws,
                s.losses,
                s.mean_score,
                s.mean_victory_margin,
                s.ci95_half_width
                    .map_or("n/a".into(), |c| format!("{c:.2}"))
            );
            emit(&[SweepRow::new(Experiment::Series, &config, s)], &c.out)?;
        }
        Command::Branching { games, seed, out } => {
            let report = branching_experiment(games, seed)?;
            let mut w: Box<dyn Write> = match out {
                Some(p) => Box::new(File::create(p)?),
                None => Box::new(io::stdout().lock()),
            };
            let ci = |e: &Estimate| e.ci95.map_or(String::new(), |c| c.to_string());
            writeln!(w, "player,round,mean,ci95,oriented_mean,oriented_ci95")?;
            for p in 0..PLAYERS {
                for (r, (e, o)) in report.per_player[p]
                    .iter()
                    .zip(&report.oriented[p])
                    .enumerate()
                {
                    writeln!(w, "{p},{},{},{},{},{}", r + 1, e.mean, ci(e), o.mean, ci(o))?;
                }
            }
            for (name, means) in [
                ("distinct layouts", report.means()),
                ("both orientations", report.oriented_means()),
            ] {
                let size = game_tree_size_estimate(&means);
                eprintln!(
                    "{name}: game tree size {size:.3e}; over all deck draws {:.3e}",
                    all_shuffles_estimate(size)
                );
            }
        }
        Command::SweepTime(g) => {
            let c = &g.common;
            c.warn_parallel(&[c.agent()?]);
            let times: Vec<Duration> = g.grid.iter().map(|&s| Duration::from_secs_f64(s)).collect();
            let rows = sweep::time_sweep(&c.settings(), c.agent()?, &times, &mut progress)?;
            emit(&rows, &c.out)?;
        }
        Command::SweepC(g) => {
            let c = &g.common;
            c.warn_parallel(&[c.agent()?]);
            let rows = sweep::c_sweep(&c.settings(), c.agent()?, &g.grid, &mut progress)?;
            emit(&rows, &c.out)?;
        }
        Command::SweepW(g) => {
            let c = &g.common;
            c.warn_parallel(&[c.agent()?]);
            let rows = sweep::w_sweep(&c.settings(), c.agent()?, &g.grid, &mut progress)?;
            emit(&rows, &c.out)?;
        }
        Command::GrandTable(g) => {
            let c = &g.common;
            let agents = sweep::grand_table_agents();
            c.warn_parallel(&agents);
            let times: Vec<Duration> = g.grid.iter().map(|&s| Duration::from_secs_f64(s)).collect();
            let rows = sweep::grand_table(&c.settings(), &agents, &times, &mut progress)?;
            emit(&rows, &c.out)?;
        }
        Command::CountDraws => {
            let n = count_deck_draws();
            let approx: f64 = n.to_string().parse()?;
            println!("{n}");
            println!("{approx:.1e}");
        }
        Command::Serve { addr, log_dir } => {
            tracing_subscriber::fmt().with_writer(io::stderr).init();
            let handle = spawn_background(addr, StoreConfig { log_dir })?;
            eprintln!("serving on {}", handle.base_url());
            loop {
                std::thread::park();
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
