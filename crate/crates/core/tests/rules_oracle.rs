mod common;

use std::collections::BTreeSet;

use common::*;
use kdom::greedy::{greedy_best_moves, placement_value, GreedyConstraints, SelectionScoring};
use kdom::{domino, Move, PlacementChoice, PLAYERS};

#[test]
fn scoring_matches_flood_fill_oracle() {
    let states = sampled_states(84, 12, 1);
    let mut checked = 0;
    for s in &states {
        for p in 0..PLAYERS {
            let k = s.kingdom(p);
            let grid = grid_of(k);
            for terminal in [false, true] {
                let expected = naive_score(&grid, k.dominoes_placed(), k.discard_count(), terminal);
                assert_eq!(k.score(terminal).total, expected, "{grid:?}");
            }
            checked += 1;
        }
    }
    assert!(checked >= 1000);
}

#[test]
fn placements_match_brute_force() {
    let states = sampled_states(40, 6, 2);
    for s in &states {
        for p in 0..PLAYERS {
            let k = s.kingdom(p);
            let grid = grid_of(k);
            for n in [1u8, 13, 19, 29, 40, 48] {
                let d = domino(n);
                let got: BTreeSet<_> = k
                    .placements_for(d)
                    .iter()
                    .map(|pl| key_of(pl, d.is_symmetric()))
                    .collect();
                assert_eq!(got.len(), k.placements_for(d).len(), "duplicate placements");
                assert_eq!(got, naive_placements(&grid, d), "domino {n} in {grid:?}");
            }
        }
    }
}

#[test]
fn legal_moves_match_brute_force() {
    let states = sampled_states(84, 12, 3);
    assert!(states.len() >= 1000);
    for s in &states {
        let moves = s.legal_moves().unwrap();
        let got = normalise(s, moves.iter().copied());
        assert_eq!(got.len(), moves.len());
        assert_eq!(
            got,
            naive_legal_moves(s),
            "round {} turn {}",
            s.round(),
            s.turn()
        );
        let discards = moves
            .iter()
            .filter(|m| m.placement == Some(PlacementChoice::Discard))
            .count();
        if discards > 0 {
            assert_eq!(discards, moves.len(), "discard offered next to placements");
        }
    }
}

#[test]
fn evaluation_matches_rescoring() {
    let states = sampled_states(30, 8, 4);
    for s in &states {
        let (Some(d), Some(p)) = (s.domino_to_place(), s.acting_player()) else {
            continue;
        };
        let k = s.kingdom(p);
        let grid = grid_of(k);
        for pl in k.placements_for(d) {
            let e = k.evaluate(d, pl);
            let (gain, breaks, hole) = naive_eval(&grid, d, &pl);
            assert_eq!(
                (e.gain, e.breaks_middle_kingdom, e.creates_hole),
                (gain, breaks, hole),
                "{pl:?} {grid:?}"
            );
        }
    }
}

/// Joint greedy value by rescoring every (placement, selection) pair.
fn naive_full_greedy(s: &kdom::GameState) -> BTreeSet<Move> {
    let p = s.acting_player().unwrap();
    let grid = grid_of(s.kingdom(p));
    let selections: Vec<Option<u8>> = s.selection_choices();
    let mut options: Vec<(Option<PlacementChoice>, i32, Grid)> = Vec::new();
    match s.domino_to_place() {
        None => options.push((None, 0, grid.clone())),
        Some(d) => {
            let mut evals = Vec::new();
            for (a, b) in naive_placements(&grid, d) {
                let pl = kdom::Placement::new(pos(a), pos(b));
                let (gain, breaks, hole) = naive_eval(&grid, d, &pl);
                evals.push((pl, gain, !breaks && !hole));
            }
            let any_ok = evals.iter().any(|e| e.2);
            for (pl, gain, ok) in evals {
                if ok || !any_ok {
                    options.push((
                        Some(PlacementChoice::Place(pl)),
                        gain,
                        placed(&grid, d, &pl),
                    ));
                }
            }
            if options.is_empty() {
                options.push((Some(PlacementChoice::Discard), 0, grid.clone()));
            }
        }
    }
    let mut scored = Vec::new();
    for (choice, gain, after) in &options {
        for sel in &selections {
            let extra = sel.map_or(0, |n| naive_placement_value(after, domino(n)));
            scored.push((
                gain + extra,
                Move {
                    placement: *choice,
                    selection: *sel,
                },
            ));
        }
    }
    let best = scored.iter().map(|x| x.0).max().unwrap();
    scored
        .into_iter()
        .filter(|x| x.0 == best)
        .map(|x| x.1)
        .collect()
}

#[test]
fn full_greedy_matches_oracle() {
    let states = sampled_states(12, 6, 5);
    for s in &states {
        let p = s.acting_player().unwrap();
        let got =
            greedy_best_moves(s, p, GreedyConstraints::STANDARD, SelectionScoring::Greedy).unwrap();
        let got = normalise(s, got);
        assert_eq!(
            got,
            normalise(s, naive_full_greedy(s)),
            "round {}",
            s.round()
        );
    }
}

#[test]
fn placement_value_matches_oracle() {
    let states = sampled_states(20, 6, 6);
    for s in &states {
        for p in 0..PLAYERS {
            let k = s.kingdom(p);
            let grid = grid_of(k);
            for n in [2u8, 24, 37, 46] {
                let d = domino(n);
                assert_eq!(
                    placement_value(k, d, GreedyConstraints::STANDARD),
                    naive_placement_value(&grid, d)
                );
            }
        }
    }
}
