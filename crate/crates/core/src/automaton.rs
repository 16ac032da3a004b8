//! Symbolic alternating automata over lazily generated state spaces.
//!
//! An automaton only has to answer three questions: where it starts, which
//! positive formula a state emits on a letter, and whether a state accepts.
//! States are produced on demand, so the state domain may be infinite.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::{self, Debug};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::AutomatonError;
use crate::formula::Formula;
use crate::word::Alphabet;

/// An alternating automaton `(Q, q0, δ, F)` over an alphabet.
///
/// The `Ord` bound on states is the canonical order used for every report.
pub trait Automaton {
    type State: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn alphabet(&self) -> &Alphabet;

    fn initial(&self) -> Self::State;

    /// `δ(q, a)`, or `None` when the automaton has no transition there.
    fn transition(&self, state: &Self::State, letter: char) -> Option<Formula<Self::State>>;

    fn is_accepting(&self, state: &Self::State) -> bool;

    /// Human-readable rendering of a state, used in error messages.
    fn state_label(&self, state: &Self::State) -> String {
        format!("{state:?}")
    }
}

/// The most restrictive syntactic class an automaton was observed to fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutomatonKind {
    Deterministic,
    Universal,
    Nondeterministic,
    Alternating,
}

impl fmt::Display for AutomatonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AutomatonKind::Deterministic => "deterministic",
            AutomatonKind::Universal => "universal",
            AutomatonKind::Nondeterministic => "nondeterministic",
            AutomatonKind::Alternating => "alternating",
        })
    }
}

fn step<A: Automaton + ?Sized>(
    aut: &A,
    state: &A::State,
    letter: char,
) -> Result<Formula<A::State>, AutomatonError> {
    aut.transition(state, letter)
        .ok_or_else(|| AutomatonError::MissingTransition {
            state: aut.state_label(state),
            letter,
        })
}

fn letters_of<A: Automaton + ?Sized>(aut: &A, word: &str) -> Result<Vec<char>, AutomatonError> {
    word.chars()
        .map(|c| {
            if aut.alphabet().contains(c) {
                Ok(c)
            } else {
                Err(AutomatonError::UnknownLetter {
                    letter: c,
                    alphabet: aut.alphabet().to_string(),
                })
            }
        })
        .collect()
}

/// Decides whether Eve wins the acceptance game on `word`.
///
/// Computes the positional value `value(q, i)` backwards: at the end of the
/// word a state wins iff it accepts, and before that it wins iff its formula
/// on the next letter holds when every atom is replaced by its value one
/// position later. Only states occurring at each position are visited.
pub fn accepts<A: Automaton + ?Sized>(aut: &A, word: &str) -> Result<bool, AutomatonError> {
    let letters = letters_of(aut, word)?;
    let initial = aut.initial();

    // forward sweep: the formulas emitted at each position
    let mut layers: Vec<Vec<(A::State, Formula<A::State>)>> = Vec::with_capacity(letters.len());
    let mut frontier = vec![initial.clone()];
    for &letter in &letters {
        let mut layer = Vec::with_capacity(frontier.len());
        let mut next = HashSet::new();
        let mut next_order = Vec::new();
        for q in frontier {
            let phi = step(aut, &q, letter)?;
            phi.for_each_atom(&mut |p| {
                if next.insert(p.clone()) {
                    next_order.push(p.clone());
                }
            });
            layer.push((q, phi));
        }
        layers.push(layer);
        frontier = next_order;
    }

    // backward sweep
    let mut values: HashMap<A::State, bool> = frontier
        .into_iter()
        .map(|q| {
            let v = aut.is_accepting(&q);
            (q, v)
        })
        .collect();
    for layer in layers.into_iter().rev() {
        let mut current = HashMap::with_capacity(layer.len());
        for (q, phi) in layer {
            let v = phi.eval_with(&mut |p| values[p]);
            current.insert(q, v);
        }
        values = current;
    }
    Ok(values[&initial])
}

/// Runs a deterministic automaton and returns the state reached.
pub fn run_det<A: Automaton + ?Sized>(aut: &A, word: &str) -> Result<A::State, AutomatonError> {
    let mut q = aut.initial();
    for letter in letters_of(aut, word)? {
        match step(aut, &q, letter)? {
            Formula::Atom(p) => q = p,
            _ => {
                return Err(AutomatonError::NotDeterministic {
                    state: aut.state_label(&q),
                    letter,
                })
            }
        }
    }
    Ok(q)
}

/// Breadth-first exploration of the states reachable within a number of
/// letters. `layers()[k]` is the number of states reachable within `k`
/// letters.
pub struct Exploration<S> {
    pub seen: HashSet<S>,
    pub layers: Vec<usize>,
}

/// Explores `R(0) ⊆ R(1) ⊆ … ⊆ R(depth)`, failing once more than `cap`
/// states are discovered.
pub fn explore<A: Automaton + ?Sized>(
    aut: &A,
    depth: usize,
    cap: usize,
) -> Result<Exploration<A::State>, AutomatonError> {
    let initial = aut.initial();
    let mut seen = HashSet::from([initial.clone()]);
    let mut frontier = vec![initial];
    let mut layers = vec![1];
    for _ in 0..depth {
        let mut next = Vec::new();
        for q in &frontier {
            for &a in aut.alphabet().letters() {
                let phi = step(aut, q, a)?;
                phi.for_each_atom(&mut |p| {
                    if !seen.contains(p) {
                        seen.insert(p.clone());
                        next.push(p.clone());
                    }
                });
                if seen.len() > cap {
                    return Err(AutomatonError::StateBudget(cap));
                }
            }
        }
        layers.push(seen.len());
        frontier = next;
    }
    Ok(Exploration { seen, layers })
}

/// `R(n)`: every state occurring in some play on some word of length at most
/// `n`, in canonical order.
pub fn reachable<A: Automaton + ?Sized>(
    aut: &A,
    n: usize,
) -> Result<BTreeSet<A::State>, AutomatonError> {
    Ok(explore(aut, n, usize::MAX)?.seen.into_iter().collect())
}

/// Classifies the transitions leaving `R(n)`.
pub fn kind<A: Automaton + ?Sized>(aut: &A, n: usize) -> Result<AutomatonKind, AutomatonError> {
    let (mut atomic, mut conjunctive, mut disjunctive) = (true, true, true);
    for q in reachable(aut, n)? {
        for &a in aut.alphabet().letters() {
            let phi = step(aut, &q, a)?;
            atomic &= phi.is_atomic();
            conjunctive &= phi.is_conjunctive();
            disjunctive &= phi.is_disjunctive();
        }
    }
    Ok(if atomic {
        AutomatonKind::Deterministic
    } else if conjunctive {
        AutomatonKind::Universal
    } else if disjunctive {
        AutomatonKind::Nondeterministic
    } else {
        AutomatonKind::Alternating
    })
}

/// Object-safe view of an automaton, used where automata with different
/// state types have to live side by side.
pub trait DynAutomaton: Send + Sync {
    fn alphabet(&self) -> &Alphabet;
    fn accepts(&self, word: &str) -> Result<bool, AutomatonError>;
    /// Reachable-state counts for depths `0..=n_max`.
    fn reachable_counts(&self, n_max: usize, cap: usize) -> Result<Vec<usize>, AutomatonError>;
    fn kind(&self, n: usize) -> Result<AutomatonKind, AutomatonError>;
    /// Rendered state after a deterministic run.
    fn run_det_label(&self, word: &str) -> Result<String, AutomatonError>;
}

impl<A> DynAutomaton for A
where
    A: Automaton + Send + Sync,
{
    fn alphabet(&self) -> &Alphabet {
        Automaton::alphabet(self)
    }

    fn accepts(&self, word: &str) -> Result<bool, AutomatonError> {
        accepts(self, word)
    }

    fn reachable_counts(&self, n_max: usize, cap: usize) -> Result<Vec<usize>, AutomatonError> {
        Ok(explore(self, n_max, cap)?.layers)
    }

    fn kind(&self, n: usize) -> Result<AutomatonKind, AutomatonError> {
        kind(self, n)
    }

    fn run_det_label(&self, word: &str) -> Result<String, AutomatonError> {
        let q = run_det(self, word)?;
        Ok(self.state_label(&q))
    }
}
