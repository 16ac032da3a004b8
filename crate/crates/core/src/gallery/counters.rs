//! Deterministic counter automata over `ℤ^d`.

use crate::automaton::Automaton;
use crate::formula::Formula;
use crate::word::Alphabet;

/// Tracks `(|w|_a − |w|_b, |w|_a − |w|_c)`; accepts at the origin.
#[derive(Debug, Clone)]
pub struct CountEq3Automaton {
    alphabet: Alphabet,
}

impl CountEq3Automaton {
    pub fn new() -> Self {
        Self {
            alphabet: Alphabet::from_str_letters("abc"),
        }
    }
}

impl Default for CountEq3Automaton {
    fn default() -> Self {
        Self::new()
    }
}

impl Automaton for CountEq3Automaton {
    type State = (i64, i64);

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn initial(&self) -> (i64, i64) {
        (0, 0)
    }

    fn transition(&self, &(x, y): &(i64, i64), letter: char) -> Option<Formula<(i64, i64)>> {
        let next = match letter {
            'a' => (x + 1, y + 1),
            'b' => (x - 1, y),
            'c' => (x, y - 1),
            _ => return None,
        };
        Some(Formula::Atom(next))
    }

    fn is_accepting(&self, q: &(i64, i64)) -> bool {
        *q == (0, 0)
    }

    fn state_label(&self, (x, y): &(i64, i64)) -> String {
        format!("({x},{y})")
    }
}

/// Tracks `|w|_a − |w|_b`; accepts when positive.
#[derive(Debug, Clone)]
pub struct Maj2Automaton {
    alphabet: Alphabet,
}

impl Maj2Automaton {
    pub fn new() -> Self {
        Self {
            alphabet: Alphabet::from_str_letters("ab"),
        }
    }
}

impl Default for Maj2Automaton {
    fn default() -> Self {
        Self::new()
    }
}

impl Automaton for Maj2Automaton {
    type State = i64;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn initial(&self) -> i64 {
        0
    }

    fn transition(&self, &q: &i64, letter: char) -> Option<Formula<i64>> {
        match letter {
            'a' => Some(Formula::Atom(q + 1)),
            'b' => Some(Formula::Atom(q - 1)),
            _ => None,
        }
    }

    fn is_accepting(&self, q: &i64) -> bool {
        *q > 0
    }

    fn state_label(&self, q: &i64) -> String {
        q.to_string()
    }
}
