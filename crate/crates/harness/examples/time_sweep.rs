//! Victory margin of MCE-TR/R and MCE-FG/R against three full-greedy
//! opponents over a few time budgets, as CSV on stdout.
//!
//! ```bash
//! cargo run --release -p kdom-harness --example time_sweep -- 20
//! ```

use std::time::Duration;

use kdom_harness::sweep::{time_sweep, write_csv, SweepSettings};
use kdom_harness::AgentConfig;

fn main() {
    let games = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(20);
    let settings = SweepSettings::new(games, 0);
    let times = [10, 30, 100].map(Duration::from_millis);
    let mut rows = Vec::new();
    for spec in ["MCE-TR/R", "MCE-FG/R"] {
        let agent: AgentConfig = spec.parse().expect("spec");
        rows.extend(
            time_sweep(&settings, agent, &times, &mut |r| {
                eprintln!(
                    "{} {:?}: {:+.2}",
                    r.agent, r.time_per_ply, r.mean_victory_margin
                )
            })
            .expect("sweep"),
        );
    }
    write_csv(std::io::stdout().lock(), &rows).expect("stdout");
}
