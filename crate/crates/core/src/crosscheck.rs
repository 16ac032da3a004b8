//! Randomised cross-checks of the core semantics against independent
//! reference procedures.
//!
//! The reference for acceptance is the unmemoised game tree: Eve picks a
//! disjunct, Adam picks a conjunct, and every play is expanded explicitly.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::automaton::{accepts, Automaton};
use crate::finite::{determinize_finite, FiniteAutomaton};
use crate::formula::Formula;
use crate::quotient::{quotient_member, Language, Oracle};
use crate::word::Alphabet;

/// Value of the acceptance game from `state` at `pos`, by full expansion.
pub fn game_tree_value(aut: &FiniteAutomaton, state: usize, word: &[char], pos: usize) -> bool {
    if pos == word.len() {
        return aut.is_accepting(&state);
    }
    let phi = aut
        .transition(&state, word[pos])
        .expect("random automata are total");
    play(aut, &phi, word, pos)
}

fn play(aut: &FiniteAutomaton, phi: &Formula<usize>, word: &[char], pos: usize) -> bool {
    match phi {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(p) => game_tree_value(aut, *p, word, pos + 1),
        // Eve wins a disjunction if some move wins
        Formula::Or(cs) => {
            let mut best = false;
            for c in cs {
                best = best.max(play(aut, c, word, pos));
            }
            best
        }
        // Adam wins a conjunction if some move refutes
        Formula::And(cs) => {
            let mut worst = true;
            for c in cs {
                worst = worst.min(play(aut, c, word, pos));
            }
            worst
        }
    }
}

/// Random formula over atoms `0..atoms`, for monotonicity checks.
pub fn random_formula(rng: &mut impl Rng, atoms: usize, depth: usize) -> Formula<usize> {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::Atom(rng.gen_range(0..atoms)),
        };
    }
    let children = (0..rng.gen_range(1..=3))
        .map(|_| random_formula(rng, atoms, depth - 1))
        .collect();
    if rng.gen_bool(0.5) {
        Formula::And(children)
    } else {
        Formula::Or(children)
    }
}

/// Parameters of [`run`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrosscheckConfig {
    pub seed: u64,
    pub automata: usize,
    pub max_states: usize,
    pub max_word_len: usize,
    pub formula_pairs: usize,
}

impl Default for CrosscheckConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            automata: 1000,
            max_states: 5,
            max_word_len: 6,
            formula_pairs: 10_000,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub automata: usize,
    pub words_checked: usize,
    pub game_mismatches: usize,
    pub determinization_mismatches: usize,
    pub lattice_checks: usize,
    pub lattice_mismatches: usize,
    pub formula_pairs: usize,
    pub monotonicity_violations: usize,
}

impl CrosscheckReport {
    pub fn clean(&self) -> bool {
        self.game_mismatches == 0
            && self.determinization_mismatches == 0
            && self.lattice_mismatches == 0
            && self.monotonicity_violations == 0
    }
}

/// Runs the three property suites, deterministically in `config.seed`.
///
/// 1. memoised acceptance against the game tree and the determinized
///    automaton, on every word up to `max_word_len`;
/// 2. quotients by single letters against unions and intersections of
///    consecutive automata;
/// 3. raising one atom from false to true never falsifies a formula.
pub fn run(config: &CrosscheckConfig) -> CrosscheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let alphabet = Alphabet::from_str_letters("ab");
    let words: Vec<Vec<char>> = alphabet
        .words_up_to(config.max_word_len)
        .map(|w| w.chars().collect())
        .collect();
    let mut report = CrosscheckReport::default();
    let mut previous: Option<Arc<dyn Language>> = None;

    for _ in 0..config.automata {
        let n = rng.gen_range(1..=config.max_states);
        let aut = FiniteAutomaton::random(&mut rng, n, &alphabet);
        let det = determinize_finite(&aut, 1 << 20).expect("2^(2^5) bound");
        report.automata += 1;
        for w in &words {
            let text: String = w.iter().collect();
            let fast = accepts(&aut, &text).expect("total");
            let slow = game_tree_value(&aut, aut.initial_state(), w, 0);
            let via_det = accepts(&det, &text).expect("total");
            report.words_checked += 1;
            report.game_mismatches += usize::from(fast != slow);
            report.determinization_mismatches += usize::from(fast != via_det);
        }

        let current: Arc<dyn Language> = Arc::new(Oracle::from_automaton("A", Arc::new(aut)));
        if let Some(prev) = previous.take() {
            let union = Oracle::union(prev.clone(), current.clone());
            let inter = Oracle::intersection(prev.clone(), current.clone());
            for &a in alphabet.letters() {
                let a = a.to_string();
                for w in &words {
                    let text: String = w.iter().collect();
                    let x = quotient_member(&*prev, &a, &text).expect("valid");
                    let y = quotient_member(&*current, &a, &text).expect("valid");
                    let u = quotient_member(&union, &a, &text).expect("valid");
                    let i = quotient_member(&inter, &a, &text).expect("valid");
                    report.lattice_checks += 1;
                    report.lattice_mismatches += usize::from(u != (x || y) || i != (x && y));
                }
            }
        }
        previous = Some(current);
    }

    for _ in 0..config.formula_pairs {
        let phi = random_formula(&mut rng, 6, 4);
        let bits: u8 = rng.gen_range(0..64);
        let flip = rng.gen_range(0..6);
        let before = phi.eval_with(&mut |&s| bits >> s & 1 == 1);
        let raised = bits | 1 << flip;
        let after = phi.eval_with(&mut |&s| raised >> s & 1 == 1);
        report.formula_pairs += 1;
        report.monotonicity_violations += usize::from(before && !after);
    }
    report
}
