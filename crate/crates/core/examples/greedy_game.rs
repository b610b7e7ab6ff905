//! One game between the three static evaluators and a second full-greedy
//! seat, with the final kingdoms drawn as text.
//!
//! ```bash
//! cargo run --release -p kdom --example greedy_game -- 17
//! ```

use kdom::greedy::{choose_static, StaticStrategy};
use kdom::{GameRng, GameState, Kingdom, Position};
use rand::SeedableRng;

fn draw(k: &Kingdom) -> String {
    let tiles = k.tiles();
    let xs = tiles.iter().map(|(p, _)| p.x).chain([0]);
    let ys = tiles.iter().map(|(p, _)| p.y).chain([0]);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let mut out = String::new();
    for y in (y0..=y1).rev() {
        for x in x0..=x1 {
            let cell = match k.tile_at(Position::new(x, y)) {
                _ if (x, y) == (0, 0) => "[##]".to_string(),
                Some(t) => format!("[{}{}]", &t.terrain.to_string()[..1], t.crowns),
                None => "[  ]".to_string(),
            };
            out.push_str(&cell);
        }
        out.push('\n');
    }
    out
}

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(17);
    let seats = [
        StaticStrategy::TrueRandom,
        StaticStrategy::GreedyPlacementRandomDraft,
        StaticStrategy::FullGreedy,
        StaticStrategy::FullGreedy,
    ];
    let mut state = GameState::new(seed, 4).expect("4 players");
    let mut rng = GameRng::seed_from_u64(seed);
    while let Some(p) = state.acting_player() {
        let mv = choose_static(seats[p], &state, &mut rng).expect("live game");
        state.play(&mv);
    }
    for (p, strategy) in seats.iter().enumerate() {
        let s = state.score(p);
        println!(
            "seat {p} {strategy:?}: {} (area {}, middle {}, harmony {})",
            s.total, s.area_total, s.middle_kingdom_bonus, s.harmony_bonus
        );
        println!("{}", draw(state.kingdom(p)));
    }
}
