//! Branching factors under random self-play and the tree size they imply.

use kdom::{count_deck_draws, PLAYERS, ROUNDS};

use crate::agent::AgentConfig;
use crate::game::{run_game, HarnessError};
use crate::stats::Estimate;

const R: usize = ROUNDS as usize;

#[derive(Clone, Debug)]
pub struct BranchingReport {
    pub games: usize,
    /// `per_player[p][r - 1]`: branching faced by seat `p` in round `r`.
    pub per_player: [[Estimate; R]; PLAYERS],
    /// The same with mirrored placements of identical-tile dominoes counted
    /// twice.
    pub oriented: [[Estimate; R]; PLAYERS],
}

fn means_of(e: &[[Estimate; R]; PLAYERS]) -> [[f64; R]; PLAYERS] {
    e.map(|rounds| rounds.map(|e| e.mean))
}

impl BranchingReport {
    pub fn means(&self) -> [[f64; R]; PLAYERS] {
        means_of(&self.per_player)
    }

    pub fn oriented_means(&self) -> [[f64; R]; PLAYERS] {
        means_of(&self.oriented)
    }
}

/// Plays `games` games of four true-random agents, seeds `seed..`.
pub fn branching_experiment(games: usize, seed: u64) -> Result<BranchingReport, HarnessError> {
    assert!(games >= 1, "need at least one game");
    let mut samples: Vec<Vec<Vec<f64>>> = vec![vec![Vec::new(); R]; PLAYERS];
    let mut oriented = samples.clone();
    let lineup = [AgentConfig::true_random(); PLAYERS];
    for i in 0..games {
        let result = run_game(&lineup, seed.wrapping_add(i as u64), None)?;
        for b in result.branching {
            let (p, r) = (b.player as usize, b.round as usize - 1);
            samples[p][r].push(f64::from(b.branching));
            oriented[p][r].push(f64::from(b.oriented));
        }
    }
    Ok(BranchingReport {
        games,
        per_player: std::array::from_fn(|p| std::array::from_fn(|r| Estimate::of(&samples[p][r]))),
        oriented: std::array::from_fn(|p| std::array::from_fn(|r| Estimate::of(&oriented[p][r]))),
    })
}

/// Product of all per-player, per-round mean branching factors.
pub fn game_tree_size_estimate(means: &[[f64; R]; PLAYERS]) -> f64 {
    means.iter().flatten().product()
}

/// The estimate multiplied by the number of distinct deck draw sequences.
pub fn all_shuffles_estimate(tree_size: f64) -> f64 {
    let draws: f64 = count_deck_draws().to_string().parse().expect("decimal");
    tree_size * draws
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        assert_eq!(game_tree_size_estimate(&[[1.0; R]; PLAYERS]), 1.0);
        assert_eq!(game_tree_size_estimate(&[[2.0; R]; PLAYERS]), 2f64.powi(52));
    }

    #[test]
    fn round_one_is_selection_only() {
        let r = branching_experiment(4, 3).unwrap();
        for p in 0..PLAYERS {
            let m = r.per_player[p][0].mean;
            assert!((1.0..=4.0).contains(&m), "{m}");
        }
        // one game per seat position: each player once picks first, ..., last
        let total: f64 = (0..PLAYERS).map(|p| r.per_player[p][0].mean).sum();
        assert_eq!(total * 4.0, 40.0);
    }
}
