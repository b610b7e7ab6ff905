//! Win rates of the static evaluators against three random opponents.
//!
//! ```bash
//! cargo run --release -p kdom-harness --example static_series -- 200
//! ```

use kdom_harness::{run_series, AgentConfig, SeriesConfig};

fn main() {
    let games = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(200);
    let tr = AgentConfig::true_random();
    for player in [tr, AgentConfig::gprd(), AgentConfig::full_greedy()] {
        let report = run_series(&SeriesConfig::new(player, tr, games, 0), |_| {}).expect("series");
        let s = &report.stats;
        println!(
            "{:<5} wins {:>5.1}%  draws {:>4.1}%  mean score {:>5.1}  per-round {:?}",
            report.label,
            100.0 * s.win_rate(),
            100.0 * s.draw_rate(),
            s.mean_score,
            s.per_round_mean_scores
                .iter()
                .map(|x| x.round() as i32)
                .collect::<Vec<_>>()
        );
    }
}
