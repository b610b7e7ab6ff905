//! Mean branching factor per round under random play and the game tree size
//! it implies.
//!
//! ```bash
//! cargo run --release -p kdom-harness --example tree_size -- 1000
//! ```

use kdom_harness::branching::{
    all_shuffles_estimate, branching_experiment, game_tree_size_estimate,
};

fn main() {
    let games = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1000);
    let report = branching_experiment(games, 0).expect("games");
    println!("round  seat0   seat1   seat2   seat3");
    for r in 0..13 {
        let row: Vec<String> = report
            .per_player
            .iter()
            .map(|p| format!("{:>7.1}", p[r].mean))
            .collect();
        println!("{:>5} {}", r + 1, row.join(" "));
    }
    for (name, means) in [
        ("distinct layouts", report.means()),
        ("both orientations", report.oriented_means()),
    ] {
        let size = game_tree_size_estimate(&means);
        println!(
            "{name}: tree size {size:.2e}, over all deck draws {:.2e}",
            all_shuffles_estimate(size)
        );
    }
}
