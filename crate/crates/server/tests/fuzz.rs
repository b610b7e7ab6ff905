//! Random request sequences against the store: whatever clients send, the
//! hosted game stays a legal engine state and only token holders move.

use kdom::greedy::random_move;
use kdom::{GameRng, GameState, Move, Placement, PlacementChoice, Position};
use kdom_server::state_from_doc;
use kdom_server::store::{GameStore, StoreConfig};
use kdom_server::wire::MoveDoc;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn junk_move(rng: &mut GameRng) -> Move {
    let p = |rng: &mut GameRng| Position::new(rng.gen_range(-5..=5), rng.gen_range(-5..=5));
    Move {
        placement: match rng.gen_range(0..3) {
            0 => None,
            1 => Some(PlacementChoice::Discard),
            _ => Some(PlacementChoice::Place(Placement::new(p(rng), p(rng)))),
        },
        selection: if rng.gen() {
            Some(rng.gen_range(0..=50))
        } else {
            None
        },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn requests_never_corrupt_games(seed in any::<u64>(), steps in 50usize..400) {
        let store = GameStore::new(StoreConfig::default());
        let id = store.create_game(4, Some(seed)).unwrap();
        let mut rng = GameRng::seed_from_u64(seed);
        let mut tokens = Vec::new();
        let mut mirror = GameState::new(seed, 4).unwrap();
        for _ in 0..steps {
            match rng.gen_range(0..10) {
                0 => {
                    if let Ok((g, _)) = store.join(&id) {
                        tokens.push(g.token);
                    }
                }
                1..=3 => {
                    let token = if tokens.is_empty() || rng.gen_bool(0.2) {
                        format!("{:032x}", rng.gen::<u128>())
                    } else {
                        tokens[rng.gen_range(0..tokens.len())].clone()
                    };
                    let seat = tokens.iter().position(|t| *t == token);
                    let mv = junk_move(&mut rng);
                    let before = store.state(&id).unwrap();
                    match store.post_move(&id, &token, &MoveDoc::from(&mv)) {
                        Ok(_) => {
                            prop_assert_eq!(seat, mirror.acting_player());
                            mirror = mirror.apply_move(&mv).unwrap();
                        }
                        Err(_) => prop_assert_eq!(store.state(&id).unwrap(), before),
                    }
                }
                _ => {
                    let doc = store.state(&id).unwrap();
                    if let Some(p) = doc.current_player {
                        if tokens.len() == 4 {
                            let s = state_from_doc(&doc).unwrap();
                            let mv = random_move(&s, &mut rng);
                            store.post_move(&id, &tokens[p as usize], &MoveDoc::from(&mv)).unwrap();
                            mirror = mirror.apply_move(&mv).unwrap();
                        }
                    }
                }
            }
            let doc = store.state(&id).unwrap();
            if doc.current_player.is_some() {
                let s = state_from_doc(&doc).unwrap();
                prop_assert_eq!(s.kingdoms(), mirror.kingdoms());
                prop_assert_eq!(s.domino_count(), 48);
                prop_assert_eq!(s.legal_moves().unwrap(), mirror.legal_moves().unwrap());
            }
        }
    }
}
