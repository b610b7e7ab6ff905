//! A single flat Monte Carlo decision in the second round, showing how the
//! playouts were spread over the candidate moves.
//!
//! ```bash
//! cargo run --release -p kdom --example mce_decision
//! ```

use std::time::Duration;

use kdom::greedy::random_move;
use kdom::mce::{mce_choose, MceConfig, PlayoutPolicy, ScoringFunction, SearchBudget};
use kdom::{GameRng, GameState};
use rand::SeedableRng;

fn main() {
    let mut rng = GameRng::seed_from_u64(3);
    let mut state = GameState::new(3, 4).expect("4 players");
    while state.round() < 2 {
        let mv = random_move(&state, &mut rng);
        state.play(&mv);
    }
    for policy in [PlayoutPolicy::TrueRandom, PlayoutPolicy::FullGreedy] {
        let config = MceConfig {
            policy,
            scoring: ScoringFunction::Relative,
            budget: SearchBudget::Time(Duration::from_millis(250)),
        };
        let report = mce_choose(&state, &config, &mut rng).expect("live game");
        let mut children = report.children.clone();
        children.sort_by(|a, b| b.mean().partial_cmp(&a.mean()).expect("finite"));
        println!(
            "MCE-{policy}/R: {} playouts over {} moves in {:.0?}",
            report.playouts,
            children.len(),
            report.elapsed
        );
        for c in children.iter().take(5) {
            println!(
                "  {:>5} playouts  mean {:.4}  {:?}",
                c.playouts,
                c.mean().unwrap_or(0.0),
                c.mv
            );
        }
    }
}
