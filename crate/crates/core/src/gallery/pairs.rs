//! Automata for the two-block languages `u#v` over `{0,1}`.
//!
//! Both automata verify a single letter of `v` by remembering a position `i`
//! of `u` and counting it down after the `#`. A copy that meets a second `#`
//! rejects, so every accepting play certifies the `u#v` shape.

use crate::automaton::Automaton;
use crate::formula::Formula;
use crate::word::Alphabet;

/// Requirement on the letter of `v` at a remembered position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Need {
    /// `v(i)` must be this letter.
    Is(char),
    /// `v(i)` must differ from this letter.
    Not(char),
    /// `v(i)` must exist.
    Any,
}

impl Need {
    fn accepts(self, c: char) -> bool {
        match self {
            Need::Is(a) => a == c,
            Need::Not(a) => a != c,
            Need::Any => true,
        }
    }
}

/// States shared by the `v`-side checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// Still inside `u`, remembering position `pos`.
    Hold { pos: usize, need: Need },
    /// Inside `v`, `left` letters before the checked position.
    Seek { left: usize, need: Need },
    /// `v` must end within `left` more letters, with at least one to spare.
    Shorter { left: usize },
    /// Check succeeded; only the rest of the shape is verified.
    Good,
}

fn is_bit(c: char) -> bool {
    c == '0' || c == '1'
}

fn check_step(q: Check, letter: char) -> Formula<Check> {
    use Check::*;
    match (q, letter) {
        (Hold { pos, need }, '#') => Formula::Atom(Seek { left: pos, need }),
        (Hold { .. }, _) => Formula::Atom(q),
        (_, '#') => Formula::False,
        (Seek { left: 0, need }, c) => {
            if need.accepts(c) {
                Formula::Atom(Good)
            } else {
                Formula::False
            }
        }
        (Seek { left, need }, _) => Formula::Atom(Seek { left: left - 1, need }),
        (Shorter { left: 0 }, _) => Formula::False,
        (Shorter { left }, _) => Formula::Atom(Shorter { left: left - 1 }),
        (Good, _) => Formula::Atom(Good),
    }
}

fn check_accepting(q: &Check) -> bool {
    matches!(q, Check::Good | Check::Shorter { left: 1.. })
}

/// States of [`NotEqAutomaton`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NotEqState {
    /// No guess made yet after `read` letters of `u`.
    Pre(usize),
    Check(Check),
}

/// Nondeterministic automaton for `{u#v | u ≠ v}`.
///
/// While reading `u` it may commit to a position whose letter must differ
/// in `v`; at the `#` it may instead guess that `v` is longer or shorter.
#[derive(Debug, Clone)]
pub struct NotEqAutomaton {
    alphabet: Alphabet,
}

impl NotEqAutomaton {
    pub fn new() -> Self {
        Self {
            alphabet: Alphabet::from_str_letters("01#"),
        }
    }
}

impl Default for NotEqAutomaton {
    fn default() -> Self {
        Self::new()
    }
}

impl Automaton for NotEqAutomaton {
    type State = NotEqState;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn initial(&self) -> NotEqState {
        NotEqState::Pre(0)
    }

    fn transition(&self, q: &NotEqState, letter: char) -> Option<Formula<NotEqState>> {
        if !self.alphabet.contains(letter) {
            return None;
        }
        Some(match *q {
            NotEqState::Pre(i) if is_bit(letter) => Formula::Or(vec![
                Formula::Atom(NotEqState::Pre(i + 1)),
                Formula::Atom(NotEqState::Check(Check::Hold {
                    pos: i,
                    need: Need::Not(letter),
                })),
            ]),
            NotEqState::Pre(i) => Formula::Or(vec![
                Formula::Atom(NotEqState::Check(Check::Seek {
                    left: i,
                    need: Need::Any,
                })),
                Formula::Atom(NotEqState::Check(Check::Shorter { left: i })),
            ]),
            NotEqState::Check(c) => check_step(c, letter).map_atoms(&mut NotEqState::Check),
        })
    }

    fn is_accepting(&self, q: &NotEqState) -> bool {
        match q {
            NotEqState::Pre(_) => false,
            NotEqState::Check(c) => check_accepting(c),
        }
    }
}

/// States of [`LexAutomaton`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LexState {
    /// Comparing `u(≥i)` with `v(≥i)`.
    Scan(usize),
    Check(Check),
}

/// Alternating automaton for `{u#v | u <_lex v}`.
///
/// On `u(i) = 0` it chooses between "`v(i) = 1`" and "`v(i) = 0` and the
/// tails compare"; the second option splits into two conjunctive copies.
/// On `#` the remaining `u` is empty, so `v` must have a letter at `i`.
#[derive(Debug, Clone)]
pub struct LexAutomaton {
    alphabet: Alphabet,
}

impl LexAutomaton {
    pub fn new() -> Self {
        Self {
            alphabet: Alphabet::from_str_letters("01#"),
        }
    }
}

impl Default for LexAutomaton {
    fn default() -> Self {
        Self::new()
    }
}

impl Automaton for LexAutomaton {
    type State = LexState;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn initial(&self) -> LexState {
        LexState::Scan(0)
    }

    fn transition(&self, q: &LexState, letter: char) -> Option<Formula<LexState>> {
        let hold = |pos, need| Formula::Atom(LexState::Check(Check::Hold { pos, need }));
        Some(match (*q, letter) {
            (LexState::Scan(i), '0') => Formula::Or(vec![
                hold(i, Need::Is('1')),
                Formula::And(vec![hold(i, Need::Is('0')), Formula::Atom(LexState::Scan(i + 1))]),
            ]),
            (LexState::Scan(i), '1') => {
                Formula::And(vec![hold(i, Need::Is('1')), Formula::Atom(LexState::Scan(i + 1))])
            }
            (LexState::Scan(i), '#') => Formula::Atom(LexState::Check(Check::Seek {
                left: i,
                need: Need::Any,
            })),
            (LexState::Check(c), '0' | '1' | '#') => check_step(c, letter).map_atoms(&mut LexState::Check),
            _ => return None,
        })
    }

    fn is_accepting(&self, q: &LexState) -> bool {
        match q {
            LexState::Scan(_) => false,
            LexState::Check(c) => check_accepting(c),
        }
    }
}
