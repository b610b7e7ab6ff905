//! Measures playouts per second for each playout policy from the opening
//! position.
//!
//! ```bash
//! cargo run --release -p kdom --example playout_throughput
//! ```

use std::time::{Duration, Instant};

use kdom::mce::{playout, PlayoutPolicy};
use kdom::{new_game, GameRng};
use rand::SeedableRng;

fn main() {
    let window = Duration::from_secs(2);
    for policy in [
        PlayoutPolicy::TrueRandom,
        PlayoutPolicy::EpsilonGreedy(PlayoutPolicy::DEFAULT_EPSILON),
        PlayoutPolicy::PlayerGreedy,
        PlayoutPolicy::FullGreedy,
    ] {
        let mut rng = GameRng::seed_from_u64(1);
        let started = Instant::now();
        let mut n = 0u64;
        let mut total = 0i64;
        while started.elapsed() < window {
            let mut state = new_game(n, 4).expect("4 players");
            state.determinize(&mut rng);
            let scores = playout(&state, policy, 0, &mut rng);
            total += i64::from(scores[0]);
            n += 1;
        }
        let secs = started.elapsed().as_secs_f64();
        println!(
            "{:>4}: {:>9.1} playouts/s  (mean seat-0 score {:.1})",
            policy.label(),
            n as f64 / secs,
            total as f64 / n as f64
        );
    }
}
