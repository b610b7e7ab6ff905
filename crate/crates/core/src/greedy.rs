//! Static reference agents: true random (TR), greedy placement with random
//! draft (GPRD) and full greedy (FG).
//!
//! Greedy play maximises the immediate change in area score plus
//! middle-kingdom bonus. Both greedy agents avoid placements that break the
//! middle kingdom or leave single-tile holes, falling back to unrestricted
//! play when every option violates a constraint.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::deck::{domino, Domino};
use crate::error::EngineError;
use crate::kingdom::Kingdom;
use crate::state::{GameState, Move, PlacementChoice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GreedyConstraints {
    pub avoid_breaking_middle_kingdom: bool,
    pub avoid_single_tile_holes: bool,
}

impl GreedyConstraints {
    pub const STANDARD: GreedyConstraints = GreedyConstraints {
        avoid_breaking_middle_kingdom: true,
        avoid_single_tile_holes: true,
    };
    pub const NONE: GreedyConstraints = GreedyConstraints {
        avoid_breaking_middle_kingdom: false,
        avoid_single_tile_holes: false,
    };

    fn allows(self, breaks_middle: bool, creates_hole: bool) -> bool {
        !(self.avoid_breaking_middle_kingdom && breaks_middle
            || self.avoid_single_tile_holes && creates_hole)
    }
}

impl Default for GreedyConstraints {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// How the draft selection contributes to a move's greedy value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SelectionScoring {
    /// Selection is worth nothing; every selection ties.
    Ignore,
    /// Selection is worth the best greedy placement of the chosen domino
    /// in the kingdom as it stands after this move's placement.
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StaticStrategy {
    TrueRandom,
    GreedyPlacementRandomDraft,
    FullGreedy,
}

#[derive(Clone, Copy, Debug)]
struct PlacementOption {
    choice: Option<PlacementChoice>,
    gain: i32,
}

/// Placement options for the acting player after applying the constraint
/// fallback rule. Round 1 yields a single `None` option, a forced discard a
/// single `Discard` option.
fn placement_options(
    state: &GameState,
    player: usize,
    constraints: GreedyConstraints,
) -> Vec<PlacementOption> {
    let Some(d) = state.domino_to_place() else {
        return vec![PlacementOption {
            choice: None,
            gain: 0,
        }];
    };
    let kingdom = state.kingdom(player);
    let mut allowed = Vec::new();
    let mut all = Vec::new();
    let holes = kingdom.single_tile_holes();
    kingdom.for_each_placement(d, |pl| {
        let eval = kingdom.evaluate_with(d, pl, holes);
        let opt = PlacementOption {
            choice: Some(PlacementChoice::Place(pl)),
            gain: eval.gain,
        };
        if constraints.allows(eval.breaks_middle_kingdom, eval.creates_hole) {
            allowed.push(opt);
        } else if allowed.is_empty() {
            all.push(opt);
        }
    });
    if !allowed.is_empty() {
        allowed
    } else if !all.is_empty() {
        all
    } else {
        vec![PlacementOption {
            choice: Some(PlacementChoice::Discard),
            gain: 0,
        }]
    }
}

/// Best constrained placement gain for `d` in `kingdom`, with the same
/// fallback rule; 0 when the domino fits nowhere.
pub fn placement_value(kingdom: &Kingdom, d: &Domino, constraints: GreedyConstraints) -> i32 {
    let mut best_allowed = None::<i32>;
    let mut best_any = None::<i32>;
    let holes = kingdom.single_tile_holes();
    kingdom.for_each_placement(d, |pl| {
        let eval = kingdom.evaluate_with(d, pl, holes);
        best_any = Some(best_any.map_or(eval.gain, |b| b.max(eval.gain)));
        if constraints.allows(eval.breaks_middle_kingdom, eval.creates_hole) {
            best_allowed = Some(best_allowed.map_or(eval.gain, |b| b.max(eval.gain)));
        }
    });
    best_allowed.or(best_any).unwrap_or(0)
}

fn kingdom_after(
    kingdom: &Kingdom,
    d: Option<&Domino>,
    choice: Option<PlacementChoice>,
) -> Kingdom {
    let mut next = *kingdom;
    if let (Some(d), Some(PlacementChoice::Place(pl))) = (d, choice) {
        next.place(d, pl);
    }
    next
}

/// All moves of maximal greedy value for the acting `player`.
pub fn greedy_best_moves(
    state: &GameState,
    player: usize,
    constraints: GreedyConstraints,
    selection: SelectionScoring,
) -> Result<Vec<Move>, EngineError> {
    if state.is_terminal() {
        return Err(EngineError::Terminal);
    }
    if state.acting_player() != Some(player) {
        return Err(EngineError::NotActing { player });
    }
    let options = placement_options(state, player, constraints);
    let selections = state.selection_choices();
    let placing = state.domino_to_place();
    let mut best = i32::MIN;
    let mut moves = Vec::new();
    let mut consider = |value: i32, mv: Move| {
        if value > best {
            best = value;
            moves.clear();
        }
        if value == best {
            moves.push(mv);
        }
    };
    match selection {
        SelectionScoring::Ignore => {
            for opt in &options {
                for &sel in &selections {
                    consider(
                        opt.gain,
                        Move {
                            placement: opt.choice,
                            selection: sel,
                        },
                    );
                }
            }
        }
        SelectionScoring::Greedy => {
            for opt in &options {
                let after = kingdom_after(state.kingdom(player), placing, opt.choice);
                for &sel in &selections {
                    let extra = sel.map_or(0, |n| placement_value(&after, domino(n), constraints));
                    consider(
                        opt.gain + extra,
                        Move {
                            placement: opt.choice,
                            selection: sel,
                        },
                    );
                }
            }
        }
    }
    Ok(moves)
}

/// Uniform draw from the legal moves, without materialising the full list.
///
/// The move set is a cross product of placement and selection options, so
/// drawing each factor uniformly is uniform over moves.
pub fn random_move<R: Rng + ?Sized>(state: &GameState, rng: &mut R) -> Move {
    let player = state.acting_player().expect("game not over");
    let placement = match state.domino_to_place() {
        None => None,
        Some(d) => {
            let kingdom = state.kingdom(player);
            let count = kingdom.placement_count(d);
            if count == 0 {
                Some(PlacementChoice::Discard)
            } else {
                let pick = rng.gen_range(0..count);
                let mut i = 0;
                let mut chosen = None;
                kingdom.for_each_placement(d, |pl| {
                    if i == pick {
                        chosen = Some(pl);
                    }
                    i += 1;
                });
                chosen.map(PlacementChoice::Place)
            }
        }
    };
    let selection = state.current_draft().and_then(|draft| {
        let free: Vec<u8> = draft.unclaimed().collect();
        free.choose(rng).copied()
    });
    Move {
        placement,
        selection,
    }
}

/// Full-greedy move with uniform tie-breaking.
pub fn full_greedy_move<R: Rng + ?Sized>(state: &GameState, rng: &mut R) -> Move {
    let player = state.acting_player().expect("game not over");
    let moves = greedy_best_moves(
        state,
        player,
        GreedyConstraints::STANDARD,
        SelectionScoring::Greedy,
    )
    .expect("acting player");
    *moves.choose(rng).expect("at least one move")
}

/// Greedy placement, uniformly random selection.
pub fn greedy_placement_move<R: Rng + ?Sized>(state: &GameState, rng: &mut R) -> Move {
    let player = state.acting_player().expect("game not over");
    let options = placement_options(state, player, GreedyConstraints::STANDARD);
    let best = options.iter().map(|o| o.gain).max().expect("non-empty");
    let top: Vec<_> = options.iter().filter(|o| o.gain == best).collect();
    let placement = top.choose(rng).expect("non-empty").choice;
    let selection = state.current_draft().and_then(|draft| {
        let free: Vec<u8> = draft.unclaimed().collect();
        free.choose(rng).copied()
    });
    Move {
        placement,
        selection,
    }
}

pub fn choose_static<R: Rng + ?Sized>(
    strategy: StaticStrategy,
    state: &GameState,
    rng: &mut R,
) -> Result<Move, EngineError> {
    if state.is_terminal() {
        return Err(EngineError::Terminal);
    }
    Ok(match strategy {
        StaticStrategy::TrueRandom => random_move(state, rng),
        StaticStrategy::GreedyPlacementRandomDraft => greedy_placement_move(state, rng),
        StaticStrategy::FullGreedy => full_greedy_move(state, rng),
    })
}
