//! Grows UCT trees with and without progressive bias from the same position
//! and prints the most visited root children.
//!
//! ```bash
//! cargo run --release -p kdom --example uct_tree
//! ```

use kdom::greedy::random_move;
use kdom::mce::{PlayoutPolicy, SearchBudget};
use kdom::uct::{uct_choose, BiasMode, UctConfig, DEFAULT_BIAS_WEIGHT, DEFAULT_EXPLORATION};
use kdom::{GameRng, GameState};
use rand::SeedableRng;

fn main() {
    let mut rng = GameRng::seed_from_u64(11);
    let mut state = GameState::new(11, 4).expect("4 players");
    for _ in 0..12 {
        let mv = random_move(&state, &mut rng);
        state.play(&mv);
    }
    let root = state.acting_player().expect("live game");
    for bias in [
        BiasMode::None,
        BiasMode::Progressive {
            weight: DEFAULT_BIAS_WEIGHT,
        },
        BiasMode::ProgressiveWin {
            weight: DEFAULT_BIAS_WEIGHT,
        },
    ] {
        let config = UctConfig {
            policy: PlayoutPolicy::TrueRandom,
            exploration: DEFAULT_EXPLORATION,
            bias,
            budget: SearchBudget::Playouts(20_000),
        };
        let report = uct_choose(&state, &config, &mut rng).expect("live game");
        let tree = &report.tree;
        let mut kids: Vec<_> = tree
            .root()
            .children
            .iter()
            .map(|&i| &tree.nodes[i])
            .collect();
        kids.sort_by_key(|n| std::cmp::Reverse(n.visits));
        println!(
            "{bias:?}: {} iterations, {} nodes, {:.0?}",
            report.iterations,
            tree.nodes.len(),
            report.elapsed
        );
        for n in kids.iter().take(4) {
            println!(
                "  {:>6} visits  mean {:.3}  H {:>3}  {:?}",
                n.visits,
                n.mean(root),
                n.heuristic,
                n.mv.expect("child")
            );
        }
        println!("  chosen {:?}", report.chosen);
    }
}
