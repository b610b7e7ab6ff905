//! A player's territory: placement legality and scoring.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::deck::{Domino, Terrain, Tile};
use crate::grid::{self, bits, flood, neighbours, Position, CASTLE, CENTER, COLUMNS, ROWS, VALID};

/// Bonus for keeping the castle centred in the 5x5 square.
pub const MIDDLE_KINGDOM_BONUS: i32 = 10;
/// Bonus for a complete territory without discards.
pub const HARMONY_BONUS: i32 = 5;
/// Dominoes each player places over a 4-player game.
pub const DOMINOES_PER_PLAYER: u8 = 12;

/// Where the two halves of a domino go. `a` receives the domino's first
/// tile, `b` its second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Placement {
    pub a: Position,
    pub b: Position,
}

impl Placement {
    pub const fn new(a: Position, b: Position) -> Self {
        Placement { a, b }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScoreBreakdown {
    pub area_total: i32,
    pub middle_kingdom_bonus: i32,
    pub harmony_bonus: i32,
    pub total: i32,
}

/// Result of trying one placement against a kingdom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlacementEval {
    pub placement: Placement,
    /// Change in area score plus middle-kingdom bonus.
    pub gain: i32,
    pub breaks_middle_kingdom: bool,
    pub creates_hole: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Bounds {
    min_x: i8,
    max_x: i8,
    min_y: i8,
    max_y: i8,
}

impl Bounds {
    const CASTLE: Bounds = Bounds {
        min_x: 0,
        max_x: 0,
        min_y: 0,
        max_y: 0,
    };

    fn include(mut self, p: Position) -> Bounds {
        self.min_x = self.min_x.min(p.x);
        self.max_x = self.max_x.max(p.x);
        self.min_y = self.min_y.min(p.y);
        self.max_y = self.max_y.max(p.y);
        self
    }

    /// Cells that can still be covered without the kingdom (castle
    /// included) outgrowing 5x5.
    fn feasible(self) -> u128 {
        let span = grid::MAX_SPAN as i8 - 1;
        let (x0, x1) = ((self.max_x - span).max(-4), (self.min_x + span).min(4));
        let (y0, y1) = ((self.max_y - span).max(-4), (self.min_y + span).min(4));
        let t = spans();
        t.cols[(x0 + 4) as usize][(x1 + 4) as usize] & t.rows[(y0 + 4) as usize][(y1 + 4) as usize]
    }
}

struct Spans {
    cols: [[u128; 9]; 9],
    rows: [[u128; 9]; 9],
}

/// Unions of board columns and rows over every index range.
fn spans() -> &'static Spans {
    static SPANS: OnceLock<Spans> = OnceLock::new();
    SPANS.get_or_init(|| {
        let mut t = Spans {
            cols: [[0; 9]; 9],
            rows: [[0; 9]; 9],
        };
        for lo in 0..9 {
            for hi in lo..9 {
                t.cols[lo][hi] = (lo..=hi).fold(0, |m, i| m | COLUMNS[i]);
                t.rows[lo][hi] = (lo..=hi).fold(0, |m, i| m | ROWS[i]);
            }
        }
        t
    })
}

/// Sparse grid of tiles around a castle at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Kingdom {
    terrain: [u128; 6],
    /// `crowns[c - 1]` marks tiles carrying exactly `c` crowns.
    crowns: [u128; 3],
    occupied: u128,
    bounds: Bounds,
    dominoes: u8,
    discards: u8,
}

impl Default for Kingdom {
    fn default() -> Self {
        Self::new()
    }
}

impl Kingdom {
    pub fn new() -> Self {
        Kingdom {
            terrain: [0; 6],
            crowns: [0; 3],
            occupied: 0,
            bounds: Bounds::CASTLE,
            dominoes: 0,
            discards: 0,
        }
    }

    /// Rebuilds a kingdom from a tile list. Returns `None` when tiles overlap,
    /// sit on the castle, fall outside the 5x5 limit, or come in an odd count.
    pub fn from_tiles(tiles: &[(Position, Tile)], discards: u8) -> Option<Kingdom> {
        if !tiles.len().is_multiple_of(2) {
            return None;
        }
        let mut k = Kingdom::new();
        for &(pos, tile) in tiles {
            let bit = pos.bit();
            if bit == 0 || bit & (k.occupied | CASTLE) != 0 || tile.crowns > 3 {
                return None;
            }
            k.bounds = k.bounds.include(pos);
            k.set(bit, tile);
        }
        let b = k.bounds;
        if b.max_x - b.min_x >= grid::MAX_SPAN as i8 || b.max_y - b.min_y >= grid::MAX_SPAN as i8 {
            return None;
        }
        k.dominoes = (tiles.len() / 2) as u8;
        k.discards = discards;
        Some(k)
    }

    fn set(&mut self, bit: u128, tile: Tile) {
        self.occupied |= bit;
        self.terrain[tile.terrain.index()] |= bit;
        if tile.crowns > 0 {
            self.crowns[tile.crowns as usize - 1] |= bit;
        }
    }

    pub fn tile_at(&self, pos: Position) -> Option<Tile> {
        let bit = pos.bit();
        if bit & self.occupied == 0 {
            return None;
        }
        let terrain = Terrain::ALL
            .into_iter()
            .find(|t| self.terrain[t.index()] & bit != 0)?;
        let crowns = (1..=3u8)
            .find(|&c| self.crowns[c as usize - 1] & bit != 0)
            .unwrap_or(0);
        Some(Tile::new(terrain, crowns))
    }

    /// All tiles ordered by row, then column.
    pub fn tiles(&self) -> Vec<(Position, Tile)> {
        bits(self.occupied)
            .map(|i| {
                let pos = Position::from_index(i);
                (pos, self.tile_at(pos).expect("occupied bit has a tile"))
            })
            .collect()
    }

    pub fn tile_count(&self) -> usize {
        self.occupied.count_ones() as usize
    }

    pub fn dominoes_placed(&self) -> u8 {
        self.dominoes
    }

    pub fn discard_count(&self) -> u8 {
        self.discards
    }

    pub fn is_empty_at(&self, pos: Position) -> bool {
        let bit = pos.bit();
        bit != 0 && bit & (self.occupied | CASTLE) == 0
    }

    /// Width and height of the bounding box, castle included.
    pub fn extent(&self) -> (i32, i32) {
        let b = self.bounds;
        (
            i32::from(b.max_x - b.min_x) + 1,
            i32::from(b.max_y - b.min_y) + 1,
        )
    }

    fn empty_feasible(&self) -> u128 {
        self.bounds.feasible() & VALID & !self.occupied & !CASTLE
    }

    #[inline]
    fn connects(&self, bit: u128, tile: Tile) -> bool {
        neighbours(bit) & (CASTLE | self.terrain[tile.terrain.index()]) != 0
    }

    /// Legal placements for `domino`. Symmetric dominoes are listed in one
    /// orientation only. An empty result means the domino must be discarded.
    pub fn placements_for(&self, domino: &Domino) -> Vec<Placement> {
        let mut out = Vec::new();
        self.for_each_placement(domino, |p| out.push(p));
        out
    }

    /// Number of legal placements without allocating.
    pub fn placement_count(&self, domino: &Domino) -> usize {
        let mut n = 0;
        self.for_each_placement(domino, |_| n += 1);
        n
    }

    #[inline]
    pub(crate) fn for_each_placement(&self, domino: &Domino, mut f: impl FnMut(Placement)) {
        let free = self.empty_feasible();
        let symmetric = domino.is_symmetric();
        // Pairs are enumerated once each, from the lower cell eastward or
        // northward.
        let east = free & (free >> 1);
        let north = free & (free >> grid::WIDTH);
        for (starts, step) in [(east, 1u32), (north, grid::WIDTH as u32)] {
            for lo in bits(starts) {
                let hi = lo + step;
                let (lo_bit, hi_bit) = (1u128 << lo, 1u128 << hi);
                let (lo_pos, hi_pos) = (Position::from_index(lo), Position::from_index(hi));
                if self.connects(lo_bit, domino.a) || self.connects(hi_bit, domino.b) {
                    f(Placement::new(lo_pos, hi_pos));
                }
                if !symmetric
                    && (self.connects(hi_bit, domino.a) || self.connects(lo_bit, domino.b))
                {
                    f(Placement::new(hi_pos, lo_pos));
                }
            }
        }
    }

    /// Whether `placement` is legal for `domino`, in either orientation for
    /// symmetric dominoes.
    pub fn is_legal_placement(&self, domino: &Domino, placement: Placement) -> bool {
        if !placement.a.is_adjacent(placement.b) {
            return false;
        }
        let free = self.empty_feasible();
        let (a, b) = (placement.a.bit(), placement.b.bit());
        if a & free == 0 || b & free == 0 {
            return false;
        }
        self.connects(a, domino.a) || self.connects(b, domino.b)
    }

    /// Places a domino without checking legality.
    pub fn place(&mut self, domino: &Domino, placement: Placement) {
        self.set(placement.a.bit(), domino.a);
        self.set(placement.b.bit(), domino.b);
        self.bounds = self.bounds.include(placement.a).include(placement.b);
        self.dominoes += 1;
    }

    pub fn discard(&mut self) {
        self.discards += 1;
    }

    fn crowns_in(&self, mask: u128) -> i32 {
        (mask & self.crowns[0]).count_ones() as i32
            + 2 * (mask & self.crowns[1]).count_ones() as i32
            + 3 * (mask & self.crowns[2]).count_ones() as i32
    }

    /// Sum over 4-connected same-terrain areas of size times crowns.
    pub fn area_total(&self) -> i32 {
        let crowned = self.crowns[0] | self.crowns[1] | self.crowns[2];
        let mut total = 0;
        for &mask in &self.terrain {
            // Components without crowns score nothing, so only seed from
            // crowned tiles.
            let mut seeds = mask & crowned;
            while seeds != 0 {
                let comp = flood(seeds & seeds.wrapping_neg(), mask);
                total += comp.count_ones() as i32 * self.crowns_in(comp);
                seeds &= !comp;
            }
        }
        total
    }

    /// Every tile lies within two cells of the castle along both axes.
    pub fn is_middle_kingdom(&self) -> bool {
        self.occupied & !CENTER == 0
    }

    pub fn score(&self, terminal: bool) -> ScoreBreakdown {
        let area_total = self.area_total();
        let middle_kingdom_bonus = if self.is_middle_kingdom() {
            MIDDLE_KINGDOM_BONUS
        } else {
            0
        };
        let harmony_bonus =
            if terminal && self.dominoes == DOMINOES_PER_PLAYER && self.discards == 0 {
                HARMONY_BONUS
            } else {
                0
            };
        ScoreBreakdown {
            area_total,
            middle_kingdom_bonus,
            harmony_bonus,
            total: area_total + middle_kingdom_bonus + harmony_bonus,
        }
    }

    /// Area score plus middle-kingdom bonus; the quantity greedy play
    /// maximises.
    pub fn points(&self) -> i32 {
        self.area_total()
            + if self.is_middle_kingdom() {
                MIDDLE_KINGDOM_BONUS
            } else {
                0
            }
    }

    /// Empty cells that no domino can ever cover: inside the feasible
    /// region, with every neighbour occupied or infeasible.
    pub fn single_tile_holes(&self) -> u128 {
        holes(self.occupied, self.bounds)
    }

    /// Score change from area growth as `domino` lands on `placement`.
    fn area_gain(&self, domino: &Domino, placement: Placement) -> i32 {
        let (a, b) = (placement.a.bit(), placement.b.bit());
        if domino.a.terrain == domino.b.terrain {
            self.merge_gain(
                domino.a.terrain,
                a | b,
                i32::from(domino.a.crowns + domino.b.crowns),
            )
        } else {
            self.merge_gain(domino.a.terrain, a, i32::from(domino.a.crowns))
                + self.merge_gain(domino.b.terrain, b, i32::from(domino.b.crowns))
        }
    }

    fn merge_gain(&self, terrain: Terrain, cells: u128, added_crowns: i32) -> i32 {
        let existing = self.terrain[terrain.index()];
        let merged = flood(cells, existing | cells);
        let absorbed = merged & !cells;
        let absorbed_crowns = self.crowns_in(absorbed);
        if absorbed_crowns + added_crowns == 0 {
            return 0;
        }
        let after = merged.count_ones() as i32 * (absorbed_crowns + added_crowns);
        let mut before = 0;
        let mut rest = absorbed;
        while rest != 0 {
            let comp = flood(rest & rest.wrapping_neg(), existing);
            before += comp.count_ones() as i32 * self.crowns_in(comp);
            rest &= !comp;
        }
        after - before
    }

    /// Evaluates a legal placement without materialising the new kingdom.
    pub fn evaluate(&self, domino: &Domino, placement: Placement) -> PlacementEval {
        self.evaluate_with(domino, placement, self.single_tile_holes())
    }

    /// `evaluate` with the current hole mask supplied by the caller.
    pub(crate) fn evaluate_with(
        &self,
        domino: &Domino,
        placement: Placement,
        holes_before: u128,
    ) -> PlacementEval {
        let cells = placement.a.bit() | placement.b.bit();
        let was_middle = self.is_middle_kingdom();
        let breaks_middle_kingdom = was_middle && cells & !CENTER != 0;
        let bounds = self.bounds.include(placement.a).include(placement.b);
        let holes_after = holes(self.occupied | cells, bounds);
        let creates_hole = holes_after & !holes_before != 0;
        let gain = self.area_gain(domino, placement)
            - if breaks_middle_kingdom {
                MIDDLE_KINGDOM_BONUS
            } else {
                0
            };
        PlacementEval {
            placement,
            gain,
            breaks_middle_kingdom,
            creates_hole,
        }
    }
}

fn holes(occupied: u128, bounds: Bounds) -> u128 {
    let empty = bounds.feasible() & VALID & !occupied & !CASTLE;
    let blocked = !empty;
    empty & (blocked >> 1) & (blocked << 1) & (blocked >> grid::WIDTH) & (blocked << grid::WIDTH)
}
