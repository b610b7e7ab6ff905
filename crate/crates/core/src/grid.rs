//! Bitboard geometry for kingdoms.
//!
//! Cells live on an 11x11 board stored row-major in a `u128`, with the
//! castle at the centre. Tiles can only ever occupy the inner 9x9 area
//! (`|x| <= 4`, `|y| <= 4`), so the outer ring stays empty and single-step
//! shifts never wrap between rows.

use serde::{Deserialize, Serialize};

pub(crate) const WIDTH: i32 = 11;
pub(crate) const HALF: i32 = 5;
/// Maximum extent of a kingdom (castle included) along each axis.
pub const MAX_SPAN: i32 = 5;

pub(crate) const CASTLE: u128 = 1 << index_of(0, 0);

/// Cells a tile could ever occupy.
pub(crate) const VALID: u128 = rect(-4, 4, -4, 4);

/// The 5x5 window centred on the castle.
pub(crate) const CENTER: u128 = rect(-2, 2, -2, 2);

/// Column masks restricted to `VALID`, indexed by `x + 4`.
pub(crate) const COLUMNS: [u128; 9] = {
    let mut cols = [0u128; 9];
    let mut i = 0;
    while i < 9 {
        cols[i] = rect(i as i32 - 4, i as i32 - 4, -4, 4);
        i += 1;
    }
    cols
};

/// Row masks restricted to `VALID`, indexed by `y + 4`.
pub(crate) const ROWS: [u128; 9] = {
    let mut rows = [0u128; 9];
    let mut i = 0;
    while i < 9 {
        rows[i] = rect(-4, 4, i as i32 - 4, i as i32 - 4);
        i += 1;
    }
    rows
};

/// Cell coordinates relative to the castle at `(0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub x: i8,
    pub y: i8,
}

impl Position {
    pub const ORIGIN: Position = Position { x: 0, y: 0 };

    pub const fn new(x: i8, y: i8) -> Self {
        Position { x, y }
    }

    pub fn is_adjacent(self, other: Position) -> bool {
        (i32::from(self.x) - i32::from(other.x)).abs()
            + (i32::from(self.y) - i32::from(other.y)).abs()
            == 1
    }

    /// Bit index on the board, or `None` outside the reachable 9x9 area.
    pub(crate) fn index(self) -> Option<u32> {
        if self.x.abs() <= 4 && self.y.abs() <= 4 {
            Some(index_of(self.x as i32, self.y as i32))
        } else {
            None
        }
    }

    pub(crate) fn from_index(idx: u32) -> Position {
        let idx = idx as i32;
        Position {
            x: (idx % WIDTH - HALF) as i8,
            y: (idx / WIDTH - HALF) as i8,
        }
    }

    pub(crate) fn bit(self) -> u128 {
        self.index().map_or(0, |i| 1u128 << i)
    }
}

pub(crate) const fn index_of(x: i32, y: i32) -> u32 {
    ((y + HALF) * WIDTH + x + HALF) as u32
}

pub(crate) const fn rect(x0: i32, x1: i32, y0: i32, y1: i32) -> u128 {
    let mut mask = 0u128;
    let mut y = y0;
    while y <= y1 {
        let mut x = x0;
        while x <= x1 {
            mask |= 1u128 << index_of(x, y);
            x += 1;
        }
        y += 1;
    }
    mask
}

/// Orthogonal neighbours of every cell in `mask` (not including `mask`).
#[inline]
pub(crate) fn neighbours(mask: u128) -> u128 {
    (mask << 1) | (mask >> 1) | (mask << WIDTH) | (mask >> WIDTH)
}

/// 4-connected component of `within` reachable from `seed`.
/// `seed` must be a subset of `within`.
#[inline]
pub(crate) fn flood(seed: u128, within: u128) -> u128 {
    let mut comp = seed;
    loop {
        let grown = (comp | neighbours(comp)) & within;
        if grown == comp {
            return comp;
        }
        comp = grown;
    }
}

/// Iterates the set bits of a mask from lowest to highest.
pub(crate) fn bits(mut mask: u128) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros();
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for y in -4..=4 {
            for x in -4..=4 {
                let p = Position::new(x, y);
                assert_eq!(Position::from_index(p.index().unwrap()), p);
            }
        }
        assert_eq!(Position::new(5, 0).index(), None);
    }

    #[test]
    fn masks_have_expected_sizes() {
        assert_eq!(VALID.count_ones(), 81);
        assert_eq!(CENTER.count_ones(), 25);
        assert_eq!(neighbours(CASTLE).count_ones(), 4);
        assert!(COLUMNS.iter().all(|c| c.count_ones() == 9));
        assert_eq!(COLUMNS.iter().fold(0, |a, c| a | c), VALID);
        assert_eq!(ROWS.iter().fold(0, |a, r| a | r), VALID);
    }

    #[test]
    fn flood_stays_inside() {
        let line = rect(-4, 4, 0, 0);
        assert_eq!(flood(Position::new(-4, 0).bit(), line), line);
        let gap = line & !Position::new(0, 0).bit();
        assert_eq!(flood(Position::new(-4, 0).bit(), gap).count_ones(), 4);
    }
}
