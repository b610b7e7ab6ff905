//! Domino definitions and the canonical 48-domino deck.
//!
//! The deck is stored as a line-oriented text file (`data/deck-v1.txt`),
//! one domino per line: `number terrainA crownsA terrainB crownsB`.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::DeckError;

/// Number of dominoes in a complete deck.
pub const DECK_SIZE: usize = 48;

const DECK_V1: &str = include_str!("../data/deck-v1.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Terrain {
    Wheat,
    Water,
    Forest,
    Grassland,
    Swamp,
    Mine,
}

impl Terrain {
    pub const ALL: [Terrain; 6] = [
        Terrain::Wheat,
        Terrain::Water,
        Terrain::Forest,
        Terrain::Grassland,
        Terrain::Swamp,
        Terrain::Mine,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Terrain::Wheat => "wheat",
            Terrain::Water => "water",
            Terrain::Forest => "forest",
            Terrain::Grassland => "grassland",
            Terrain::Swamp => "swamp",
            Terrain::Mine => "mine",
        }
    }
}

impl fmt::Display for Terrain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Terrain {
    type Err = DeckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Terrain::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| DeckError::UnknownTerrain(s.to_string()))
    }
}

/// One half of a domino.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tile {
    pub terrain: Terrain,
    pub crowns: u8,
}

impl Tile {
    pub const fn new(terrain: Terrain, crowns: u8) -> Self {
        Tile { terrain, crowns }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Domino {
    pub number: u8,
    pub a: Tile,
    pub b: Tile,
}

impl Domino {
    /// Both halves carry the same terrain and crown count, so swapping
    /// them yields the same layout.
    pub fn is_symmetric(&self) -> bool {
        self.a == self.b
    }

    pub fn crowns(&self) -> u8 {
        self.a.crowns + self.b.crowns
    }
}

/// A full deck indexed by domino number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deck {
    dominoes: Vec<Domino>,
}

impl Deck {
    /// Parses a deck file. All numbers `1..=48` must appear exactly once.
    pub fn parse(text: &str) -> Result<Deck, DeckError> {
        let mut slots: Vec<Option<Domino>> = vec![None; DECK_SIZE];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let line_err = |reason: &str| DeckError::Line {
                line: lineno + 1,
                reason: reason.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(line_err("expected 5 fields"));
            }
            let number: u8 = fields[0].parse().map_err(|_| line_err("bad number"))?;
            if !(1..=DECK_SIZE as u8).contains(&number) {
                return Err(line_err("domino number out of range"));
            }
            let tile = |t: &str, c: &str| -> Result<Tile, DeckError> {
                let terrain = t.parse()?;
                let crowns: u8 = c.parse().map_err(|_| line_err("bad crown count"))?;
                if crowns > 3 {
                    return Err(line_err("at most 3 crowns per tile"));
                }
                Ok(Tile::new(terrain, crowns))
            };
            let domino = Domino {
                number,
                a: tile(fields[1], fields[2])?,
                b: tile(fields[3], fields[4])?,
            };
            let slot = &mut slots[number as usize - 1];
            if slot.is_some() {
                return Err(DeckError::Duplicate(number));
            }
            *slot = Some(domino);
        }
        let dominoes = slots
            .into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or(DeckError::Missing(i as u8 + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Deck { dominoes })
    }

    /// The official base-game deck.
    pub fn standard() -> &'static Deck {
        static DECK: OnceLock<Deck> = OnceLock::new();
        DECK.get_or_init(|| Deck::parse(DECK_V1).expect("embedded deck file is valid"))
    }

    pub fn get(&self, number: u8) -> Option<&Domino> {
        self.dominoes.get((number as usize).wrapping_sub(1))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Domino> {
        self.dominoes.iter()
    }
}

/// Looks up a domino of the standard deck.
///
/// Panics when `number` is outside `1..=48`.
#[inline]
pub fn domino(number: u8) -> &'static Domino {
    &Deck::standard().dominoes[number as usize - 1]
}
