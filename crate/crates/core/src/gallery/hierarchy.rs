//! The three-phase alternating automaton for `L_ℓ`.
//!
//! `L_ℓ = { ◊^p u #u₁ # … #u_k | k ≤ p^ℓ, ∃j ≤ k. u = u_j }` over `{0,1,◊,#}`.
//!
//! 1. While reading `◊^p` the automaton only counts. At the first other
//!    letter it guesses `j ∈ {1, …, p^ℓ}` (a disjunction) and also starts a
//!    copy that checks `k ≤ p^ℓ`.
//! 2. While reading `u` it launches one universal copy per position,
//!    remembering the position, its letter and `j`, plus one copy that
//!    measures `|u|`.
//! 3. Every copy counts `#`s down to block `j` and then checks its letter
//!    (or the block length) deterministically.

use crate::automaton::Automaton;
use crate::formula::Formula;
use crate::word::Alphabet;

pub const DIAMOND: char = '◊';

/// What a phase-3 copy verifies once it reaches block `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    /// `u_j(pos) = letter`.
    Letter { pos: u64, letter: char },
    /// `|u_j| = len`.
    Length { len: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HierState {
    /// Phase 1: `p` diamonds read so far.
    Diamonds(u64),
    /// At most `left` more `#` may follow.
    Allow(u64),
    /// Phase 2: `read` letters of `u` seen, block `block` guessed.
    Scan { read: u64, block: u64 },
    /// Phase 2 copy for one position of `u`.
    Hold { pos: u64, letter: char, block: u64 },
    /// Phase 3: `blocks` more `#` before block `j` starts.
    Skip { blocks: u64, target: Target },
    /// Inside block `j`, `left` letters before the checked position.
    Seek { left: u64, letter: char },
    /// Inside block `j`, exactly `left` more letters before `#` or the end.
    Length { left: u64 },
    Good,
}

#[derive(Debug, Clone)]
pub struct HierarchyAutomaton {
    alphabet: Alphabet,
    exponent: u32,
}

impl HierarchyAutomaton {
    /// Panics if `exponent < 2`; use [`super::l_hierarchy`] for a checked
    /// constructor.
    pub fn new(exponent: u32) -> Self {
        assert!(exponent >= 2);
        Self {
            alphabet: Alphabet::from_str_letters("01◊#"),
            exponent,
        }
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    fn bound(&self, p: u64) -> u64 {
        p.saturating_pow(self.exponent)
    }
}

/// Entering block 1 with `blocks` more `#` to cross.
fn enter(blocks: u64, target: Target) -> HierState {
    match (blocks, target) {
        (0, Target::Letter { pos, letter }) => HierState::Seek { left: pos, letter },
        (0, Target::Length { len }) => HierState::Length { left: len },
        _ => HierState::Skip { blocks, target },
    }
}

impl Automaton for HierarchyAutomaton {
    type State = HierState;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn initial(&self) -> HierState {
        HierState::Diamonds(0)
    }

    fn transition(&self, q: &HierState, letter: char) -> Option<Formula<HierState>> {
        use HierState::*;
        if !self.alphabet.contains(letter) {
            return None;
        }
        let atom = Formula::Atom;
        let bit = letter == '0' || letter == '1';
        Some(match *q {
            Diamonds(p) if letter == DIAMOND => atom(Diamonds(p + 1)),
            Diamonds(0) => Formula::False,
            Diamonds(p) => {
                let bound = self.bound(p);
                let allow = self.transition(&Allow(bound), letter)?;
                let guesses = (1..=bound)
                    .map(|j| {
                        let scan = self.transition(&Scan { read: 0, block: j }, letter)?;
                        Some(Formula::and(vec![allow.clone(), scan]))
                    })
                    .collect::<Option<Vec<_>>>()?;
                Formula::or(guesses)
            }
            _ if letter == DIAMOND => Formula::False,
            Allow(left) if letter == '#' => match left {
                0 => Formula::False,
                _ => atom(Allow(left - 1)),
            },
            Allow(_) => atom(*q),
            Scan { read, block } if bit => Formula::And(vec![
                atom(Scan { read: read + 1, block }),
                atom(Hold { pos: read, letter, block }),
            ]),
            Scan { read, block } => atom(enter(block - 1, Target::Length { len: read })),
            Hold { pos, letter: a, block } if letter == '#' => {
                atom(enter(block - 1, Target::Letter { pos, letter: a }))
            }
            Hold { .. } => atom(*q),
            Skip { blocks, target } if letter == '#' => atom(enter(blocks - 1, target)),
            Skip { .. } => atom(*q),
            Seek { .. } if letter == '#' => Formula::False,
            Seek { left: 0, letter: a } => {
                if a == letter {
                    atom(Good)
                } else {
                    Formula::False
                }
            }
            Seek { left, letter: a } => atom(Seek { left: left - 1, letter: a }),
            Length { left: 0 } if letter == '#' => atom(Good),
            Length { .. } if letter == '#' => Formula::False,
            Length { left: 0 } => Formula::False,
            Length { left } => atom(Length { left: left - 1 }),
            Good => atom(Good),
        })
    }

    fn is_accepting(&self, q: &HierState) -> bool {
        matches!(q, HierState::Allow(_) | HierState::Good | HierState::Length { left: 0 })
    }
}
