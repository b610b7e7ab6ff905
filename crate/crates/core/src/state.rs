//! Game flow: drafting, turn order, move generation and application.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::deck::{domino, Domino, DECK_SIZE};
use crate::error::EngineError;
use crate::kingdom::{Kingdom, Placement, ScoreBreakdown};
use crate::GameRng;

pub const PLAYERS: usize = 4;
pub const ROUNDS: u8 = 13;

/// The placement half of a move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PlacementChoice {
    Place(Placement),
    /// Only legal when the domino fits nowhere.
    Discard,
}

/// One ply: place the previously claimed domino (rounds 2..=13) and claim a
/// domino from the current draft (rounds 1..=12).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub placement: Option<PlacementChoice>,
    pub selection: Option<u8>,
}

impl Move {
    pub fn select(number: u8) -> Move {
        Move {
            placement: None,
            selection: Some(number),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DraftEntry {
    pub domino: u8,
    pub claimed_by: Option<u8>,
}

/// Four revealed dominoes in ascending number order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Draft {
    entries: [DraftEntry; PLAYERS],
}

impl Draft {
    pub fn new(mut numbers: [u8; PLAYERS]) -> Draft {
        numbers.sort_unstable();
        Draft {
            entries: numbers.map(|domino| DraftEntry {
                domino,
                claimed_by: None,
            }),
        }
    }

    pub fn from_entries(entries: [DraftEntry; PLAYERS]) -> Draft {
        Draft { entries }
    }

    pub fn entries(&self) -> &[DraftEntry; PLAYERS] {
        &self.entries
    }

    pub fn unclaimed(&self) -> impl Iterator<Item = u8> + '_ {
        self.entries
            .iter()
            .filter(|e| e.claimed_by.is_none())
            .map(|e| e.domino)
    }

    fn claim(&mut self, number: u8, player: usize) -> bool {
        match self
            .entries
            .iter_mut()
            .find(|e| e.domino == number && e.claimed_by.is_none())
        {
            Some(e) => {
                e.claimed_by = Some(player as u8);
                true
            }
            None => false,
        }
    }

    pub fn claims(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.claimed_by.is_some())
            .count()
    }
}

/// Remaining draw pile; `cards[next..]` in draw order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct DrawPile {
    cards: [u8; DECK_SIZE],
    next: u8,
}

impl DrawPile {
    fn remaining(&self) -> &[u8] {
        &self.cards[self.next as usize..]
    }

    fn draw(&mut self) -> Option<[u8; PLAYERS]> {
        let start = self.next as usize;
        if start + PLAYERS > DECK_SIZE {
            return None;
        }
        self.next += PLAYERS as u8;
        let mut out = [0; PLAYERS];
        out.copy_from_slice(&self.cards[start..start + PLAYERS]);
        Some(out)
    }
}

/// Complete public game situation. Cheap to clone; all transitions are
/// value-semantic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    kingdoms: [Kingdom; PLAYERS],
    current: Option<Draft>,
    previous: Option<Draft>,
    pile: DrawPile,
    round: u8,
    /// Index of the acting player within the round's order.
    turn: u8,
    finished: bool,
    /// Bit `n` set once domino `n` has been placed or discarded.
    used: u64,
    seed: u64,
}

/// Creates the initial state for a seeded game.
pub fn new_game(seed: u64, num_players: usize) -> Result<GameState, EngineError> {
    GameState::new(seed, num_players)
}

impl GameState {
    pub fn new(seed: u64, num_players: usize) -> Result<GameState, EngineError> {
        if num_players != PLAYERS {
            return Err(EngineError::UnsupportedPlayerCount(num_players));
        }
        let mut rng = GameRng::seed_from_u64(seed);
        let mut cards: [u8; DECK_SIZE] = std::array::from_fn(|i| i as u8 + 1);
        cards.shuffle(&mut rng);
        let mut pile = DrawPile { cards, next: 0 };
        let first = pile.draw().expect("full deck");
        Ok(GameState {
            kingdoms: [Kingdom::new(); PLAYERS],
            current: Some(Draft::new(first)),
            previous: None,
            pile,
            round: 1,
            turn: 0,
            finished: false,
            used: 0,
            seed,
        })
    }

    /// Assembles a state from visible components. The draw pile is the set
    /// of dominoes not accounted for elsewhere, in ascending order. `turn`
    /// is the number of players who already acted this round.
    pub fn from_parts(
        kingdoms: [Kingdom; PLAYERS],
        current: Option<Draft>,
        previous: Option<Draft>,
        round: u8,
        turn: u8,
        used: &[u8],
    ) -> Result<GameState, EngineError> {
        let bad = |why: &str| EngineError::IllegalMove(format!("inconsistent state: {why}"));
        if !(1..=ROUNDS).contains(&round) || turn as usize > PLAYERS {
            return Err(bad("round or turn out of range"));
        }
        let mut seen = 0u64;
        let mut mark = |n: u8| -> Result<(), EngineError> {
            if !(1..=DECK_SIZE as u8).contains(&n) || seen & (1 << n) != 0 {
                return Err(bad("domino listed twice or out of range"));
            }
            seen |= 1 << n;
            Ok(())
        };
        let mut used_mask = 0u64;
        for &n in used {
            mark(n)?;
            used_mask |= 1 << n;
        }
        for draft in current.iter().chain(previous.iter()) {
            for e in draft.entries() {
                if used_mask & (1 << e.domino) == 0 {
                    mark(e.domino)?;
                }
            }
        }
        let mut rest: Vec<u8> = (1..=DECK_SIZE as u8)
            .filter(|n| seen & (1 << n) == 0)
            .collect();
        rest.sort_unstable();
        let mut cards = [0u8; DECK_SIZE];
        let next = DECK_SIZE - rest.len();
        cards[next..].copy_from_slice(&rest);
        let finished = round == ROUNDS && turn as usize == PLAYERS;
        Ok(GameState {
            kingdoms,
            current,
            previous,
            pile: DrawPile {
                cards,
                next: next as u8,
            },
            round,
            turn,
            finished,
            used: used_mask,
            seed: 0,
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn round(&self) -> u8 {
        self.round
    }

    /// Number of players who have already acted in this round.
    pub fn turn(&self) -> u8 {
        self.turn
    }

    pub fn is_terminal(&self) -> bool {
        self.finished
    }

    pub fn kingdom(&self, player: usize) -> &Kingdom {
        &self.kingdoms[player]
    }

    pub fn kingdoms(&self) -> &[Kingdom; PLAYERS] {
        &self.kingdoms
    }

    pub fn current_draft(&self) -> Option<&Draft> {
        self.current.as_ref()
    }

    pub fn previous_draft(&self) -> Option<&Draft> {
        self.previous.as_ref()
    }

    /// Dominoes still face down, in draw order.
    pub fn draw_pile(&self) -> &[u8] {
        self.pile.remaining()
    }

    /// Dominoes already placed or discarded, ascending.
    pub fn used_dominoes(&self) -> Vec<u8> {
        (1..=DECK_SIZE as u8)
            .filter(|n| self.used & (1 << n) != 0)
            .collect()
    }

    /// Whose move it is; `None` once the game is over.
    pub fn acting_player(&self) -> Option<usize> {
        if self.finished {
            return None;
        }
        if self.round == 1 {
            return Some(self.turn as usize);
        }
        self.previous
            .as_ref()
            .and_then(|d| d.entries[self.turn as usize].claimed_by)
            .map(usize::from)
    }

    /// The domino the acting player must place this turn, if any.
    pub fn domino_to_place(&self) -> Option<&'static Domino> {
        if self.finished || self.round == 1 {
            return None;
        }
        self.previous
            .as_ref()
            .map(|d| domino(d.entries[self.turn as usize].domino))
    }

    pub fn score(&self, player: usize) -> ScoreBreakdown {
        self.kingdoms[player].score(self.finished)
    }

    pub fn scores(&self) -> [i32; PLAYERS] {
        std::array::from_fn(|p| self.score(p).total)
    }

    /// Placement options for the acting player: legal placements, or a
    /// single forced discard, or nothing in round 1.
    pub fn placement_choices(&self) -> Vec<Option<PlacementChoice>> {
        match (self.acting_player(), self.domino_to_place()) {
            (Some(p), Some(d)) => {
                let places = self.kingdoms[p].placements_for(d);
                if places.is_empty() {
                    vec![Some(PlacementChoice::Discard)]
                } else {
                    places
                        .into_iter()
                        .map(|pl| Some(PlacementChoice::Place(pl)))
                        .collect()
                }
            }
            _ => vec![None],
        }
    }

    /// Selection options: unclaimed current-draft dominoes, or nothing in
    /// the final round.
    pub fn selection_choices(&self) -> Vec<Option<u8>> {
        match &self.current {
            Some(d) => d.unclaimed().map(Some).collect(),
            None => vec![None],
        }
    }

    pub fn legal_moves(&self) -> Result<Vec<Move>, EngineError> {
        if self.finished {
            return Err(EngineError::Terminal);
        }
        let selections = self.selection_choices();
        let mut moves = Vec::new();
        for placement in self.placement_choices() {
            for &selection in &selections {
                moves.push(Move {
                    placement,
                    selection,
                });
            }
        }
        Ok(moves)
    }

    /// Validated transition; the receiver is left untouched.
    pub fn apply_move(&self, mv: &Move) -> Result<GameState, EngineError> {
        if self.finished {
            return Err(EngineError::Terminal);
        }
        if !self.legal_moves()?.contains(mv) {
            return Err(EngineError::IllegalMove(format!("{mv:?}")));
        }
        let mut next = self.clone();
        next.play(mv);
        Ok(next)
    }

    /// In-place transition without legality checks. Used by search code
    /// that draws moves from the legal set itself.
    pub fn play(&mut self, mv: &Move) {
        let player = self.acting_player().expect("game not over");
        if self.round > 1 {
            let number =
                self.previous.as_ref().expect("previous draft").entries[self.turn as usize].domino;
            match mv.placement {
                Some(PlacementChoice::Place(pl)) => self.kingdoms[player].place(domino(number), pl),
                Some(PlacementChoice::Discard) | None => self.kingdoms[player].discard(),
            }
            self.used |= 1 << number;
        }
        if let (Some(sel), Some(draft)) = (mv.selection, self.current.as_mut()) {
            let claimed = draft.claim(sel, player);
            debug_assert!(claimed, "selection {sel} not available");
        }
        self.turn += 1;
        if self.turn as usize == PLAYERS {
            self.end_round();
        }
    }

    fn end_round(&mut self) {
        if self.round == ROUNDS {
            self.finished = true;
            return;
        }
        self.previous = self.current.take();
        self.current = self.pile.draw().map(Draft::new);
        self.round += 1;
        self.turn = 0;
    }

    /// Replaces the hidden pile order with a fresh uniform shuffle. The
    /// result depends only on the set of unseen dominoes and the RNG.
    pub fn determinize<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let start = self.pile.next as usize;
        let rest = &mut self.pile.cards[start..];
        rest.sort_unstable();
        rest.shuffle(rng);
    }

    /// `|pile| + |unresolved draft dominoes| + placed + discarded`; always 48.
    pub fn domino_count(&self) -> usize {
        let pending_previous = match &self.previous {
            Some(_) if !self.finished => PLAYERS - self.turn as usize,
            _ => 0,
        };
        let current = self.current.map_or(0, |_| PLAYERS);
        let placed: usize = self
            .kingdoms
            .iter()
            .map(|k| (k.dominoes_placed() + k.discard_count()) as usize)
            .sum();
        self.draw_pile().len() + current + pending_previous + placed
    }
}
