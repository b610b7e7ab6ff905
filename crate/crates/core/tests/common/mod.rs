//! Naive reference implementations used as oracles. Everything here works
//! on plain coordinate maps and shares no code with the engine beyond the
//! public data types.

#![allow(dead_code)]

pub mod endgame;

use std::collections::{BTreeSet, HashMap, HashSet};

use kdom::greedy::random_move;
use kdom::{
    Domino, GameRng, GameState, Kingdom, Move, Placement, PlacementChoice, Position, Terrain, Tile,
};
use rand::SeedableRng;

pub type Grid = HashMap<(i32, i32), Tile>;

pub fn grid_of(k: &Kingdom) -> Grid {
    k.tiles()
        .into_iter()
        .map(|(p, t)| ((i32::from(p.x), i32::from(p.y)), t))
        .collect()
}

const DIRS: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Breadth-first component areas: sum of size times crowns.
pub fn naive_area(grid: &Grid) -> i32 {
    let mut seen = HashSet::new();
    let mut total = 0;
    for (&start, tile) in grid {
        if !seen.insert(start) {
            continue;
        }
        let mut queue = vec![start];
        let (mut size, mut crowns) = (0, 0);
        while let Some(c) = queue.pop() {
            size += 1;
            crowns += i32::from(grid[&c].crowns);
            for (dx, dy) in DIRS {
                let n = (c.0 + dx, c.1 + dy);
                if let Some(t) = grid.get(&n) {
                    if t.terrain == tile.terrain && seen.insert(n) {
                        queue.push(n);
                    }
                }
            }
        }
        total += size * crowns;
    }
    total
}

pub fn naive_middle(grid: &Grid) -> bool {
    grid.keys().all(|&(x, y)| x.abs() <= 2 && y.abs() <= 2)
}

/// Area plus middle-kingdom bonus.
pub fn naive_points(grid: &Grid) -> i32 {
    naive_area(grid) + if naive_middle(grid) { 10 } else { 0 }
}

pub fn naive_score(grid: &Grid, dominoes: u8, discards: u8, terminal: bool) -> i32 {
    naive_points(grid)
        + if terminal && dominoes == 12 && discards == 0 {
            5
        } else {
            0
        }
}

/// Bounding box of castle plus tiles plus `extra` fits in 5x5.
fn fits(grid: &Grid, extra: &[(i32, i32)]) -> bool {
    let cells = grid
        .keys()
        .chain(extra.iter())
        .chain(std::iter::once(&(0, 0)));
    let (mut x0, mut x1, mut y0, mut y1) = (0, 0, 0, 0);
    for &(x, y) in cells {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    x1 - x0 < 5 && y1 - y0 < 5
}

fn free(grid: &Grid, c: (i32, i32)) -> bool {
    c != (0, 0) && !grid.contains_key(&c)
}

fn touches(grid: &Grid, c: (i32, i32), terrain: Terrain) -> bool {
    DIRS.iter().any(|(dx, dy)| {
        let n = (c.0 + dx, c.1 + dy);
        n == (0, 0) || grid.get(&n).is_some_and(|t| t.terrain == terrain)
    })
}

/// Legal placements as (cell of tile a, cell of tile b); symmetric
/// dominoes collapse to unordered pairs.
pub fn naive_placements(grid: &Grid, d: &Domino) -> BTreeSet<((i32, i32), (i32, i32))> {
    let mut out = BTreeSet::new();
    for x in -6..=6 {
        for y in -6..=6 {
            for (dx, dy) in DIRS {
                let a = (x, y);
                let b = (x + dx, y + dy);
                if !free(grid, a) || !free(grid, b) || !fits(grid, &[a, b]) {
                    continue;
                }
                if !(touches(grid, a, d.a.terrain) || touches(grid, b, d.b.terrain)) {
                    continue;
                }
                if d.a == d.b {
                    out.insert((a.min(b), a.max(b)));
                } else {
                    out.insert((a, b));
                }
            }
        }
    }
    out
}

pub fn key_of(pl: &Placement, symmetric: bool) -> ((i32, i32), (i32, i32)) {
    let a = (i32::from(pl.a.x), i32::from(pl.a.y));
    let b = (i32::from(pl.b.x), i32::from(pl.b.y));
    if symmetric {
        (a.min(b), a.max(b))
    } else {
        (a, b)
    }
}

pub fn placed(grid: &Grid, d: &Domino, pl: &Placement) -> Grid {
    let mut g = grid.clone();
    g.insert((i32::from(pl.a.x), i32::from(pl.a.y)), d.a);
    g.insert((i32::from(pl.b.x), i32::from(pl.b.y)), d.b);
    g
}

/// Empty cells that could still be covered but whose four neighbours are
/// all occupied, the castle, or out of reach.
pub fn naive_holes(grid: &Grid) -> BTreeSet<(i32, i32)> {
    let reachable = |c: (i32, i32)| free(grid, c) && fits(grid, &[c]);
    let mut out = BTreeSet::new();
    for x in -4..=4 {
        for y in -4..=4 {
            let c = (x, y);
            if reachable(c) && DIRS.iter().all(|(dx, dy)| !reachable((x + dx, y + dy))) {
                out.insert(c);
            }
        }
    }
    out
}

/// (gain, breaks middle kingdom, creates hole) computed by rescoring.
pub fn naive_eval(grid: &Grid, d: &Domino, pl: &Placement) -> (i32, bool, bool) {
    let after = placed(grid, d, pl);
    let gain = naive_points(&after) - naive_points(grid);
    let breaks = naive_middle(grid) && !naive_middle(&after);
    let before_holes = naive_holes(grid);
    let creates = naive_holes(&after)
        .iter()
        .any(|h| !before_holes.contains(h));
    (gain, breaks, creates)
}

/// Best value of `d` in `grid` under the standard constraints with the
/// unconstrained fallback; 0 if it fits nowhere.
pub fn naive_placement_value(grid: &Grid, d: &Domino) -> i32 {
    let evals: Vec<(i32, bool, bool)> = naive_placements(grid, d)
        .into_iter()
        .map(|(a, b)| {
            let pl = Placement::new(pos(a), pos(b));
            naive_eval(grid, d, &pl)
        })
        .collect();
    let allowed: Vec<i32> = evals.iter().filter(|e| !e.1 && !e.2).map(|e| e.0).collect();
    let pool: Vec<i32> = if allowed.is_empty() {
        evals.iter().map(|e| e.0).collect()
    } else {
        allowed
    };
    pool.into_iter().max().unwrap_or(0)
}

pub fn pos(c: (i32, i32)) -> Position {
    Position::new(c.0 as i8, c.1 as i8)
}

/// Legal moves derived straight from the rules.
pub fn naive_legal_moves(state: &GameState) -> BTreeSet<Move> {
    let player = state.acting_player().expect("not terminal");
    let placements: Vec<Option<PlacementChoice>> = match state.domino_to_place() {
        None => vec![None],
        Some(d) => {
            let grid = grid_of(state.kingdom(player));
            let spots = naive_placements(&grid, d);
            if spots.is_empty() {
                vec![Some(PlacementChoice::Discard)]
            } else {
                spots
                    .into_iter()
                    .map(|(a, b)| Some(PlacementChoice::Place(Placement::new(pos(a), pos(b)))))
                    .collect()
            }
        }
    };
    let selections: Vec<Option<u8>> = match state.current_draft() {
        None => vec![None],
        Some(d) => d
            .entries()
            .iter()
            .filter(|e| e.claimed_by.is_none())
            .map(|e| Some(e.domino))
            .collect(),
    };
    let mut out = BTreeSet::new();
    for p in &placements {
        for s in &selections {
            out.insert(Move {
                placement: *p,
                selection: *s,
            });
        }
    }
    out
}

/// Normalises symmetric placements so move sets compare as sets.
pub fn normalise(state: &GameState, moves: impl IntoIterator<Item = Move>) -> BTreeSet<Move> {
    let symmetric = state.domino_to_place().is_some_and(|d| d.a == d.b);
    moves
        .into_iter()
        .map(|mut m| {
            if let Some(PlacementChoice::Place(pl)) = m.placement {
                let (a, b) = key_of(&pl, symmetric);
                m.placement = Some(PlacementChoice::Place(Placement::new(pos(a), pos(b))));
            }
            m
        })
        .collect()
}

/// States sampled along uniformly random games.
pub fn sampled_states(games: u64, per_game: usize, seed: u64) -> Vec<GameState> {
    let mut rng = GameRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for g in 0..games {
        let mut s = GameState::new(seed.wrapping_mul(1000) + g, 4).unwrap();
        let mut all = Vec::new();
        while !s.is_terminal() {
            all.push(s.clone());
            let m = random_move(&s, &mut rng);
            s.play(&m);
        }
        let stride = (all.len() / per_game).max(1);
        out.extend(all.into_iter().step_by(stride).take(per_game));
    }
    out
}
