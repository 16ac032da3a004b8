//! Table-driven finite alternating automata and their determinization.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::Rng;

use crate::automaton::Automaton;
use crate::error::AutomatonError;
use crate::formula::Formula;
use crate::word::Alphabet;

/// A finite alternating automaton with named states and an explicit
/// transition table. States are indices into `states`; their canonical order
/// is the declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAutomaton {
    pub(crate) alphabet: Alphabet,
    pub(crate) states: Vec<String>,
    pub(crate) initial: usize,
    pub(crate) accepting: Vec<bool>,
    /// `table[q][i]` is `δ(q, alphabet[i])`.
    pub(crate) table: Vec<Vec<Formula<usize>>>,
}

impl FiniteAutomaton {
    /// Assembles an automaton; the table must be `states × letters` and
    /// every atom must name a state.
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        initial: usize,
        accepting: Vec<bool>,
        table: Vec<Vec<Formula<usize>>>,
    ) -> Option<Self> {
        let n = states.len();
        let shape_ok = initial < n
            && accepting.len() == n
            && table.len() == n
            && table.iter().all(|row| row.len() == alphabet.len());
        let atoms_ok = table
            .iter()
            .flatten()
            .all(|phi| phi.atoms().into_iter().all(|&q| q < n));
        (shape_ok && atoms_ok).then_some(Self {
            alphabet,
            states,
            initial,
            accepting,
            table,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial_state(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn table(&self) -> &[Vec<Formula<usize>>] {
        &self.table
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    /// A random automaton with `n` states whose formulas have nesting depth
    /// at most two. Constants appear occasionally.
    pub fn random(rng: &mut impl Rng, n: usize, alphabet: &Alphabet) -> Self {
        assert!(n > 0);
        let states = (0..n).map(|i| format!("q{i}")).collect();
        let accepting = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let table = (0..n)
            .map(|_| {
                (0..alphabet.len())
                    .map(|_| random_formula(rng, n, 2))
                    .collect()
            })
            .collect();
        Self {
            alphabet: alphabet.clone(),
            states,
            initial: 0,
            accepting,
            table,
        }
    }
}

fn random_formula(rng: &mut impl Rng, n: usize, depth: usize) -> Formula<usize> {
    let roll = rng.gen_range(0..20);
    if depth == 0 || roll < 8 {
        return match roll {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::Atom(rng.gen_range(0..n)),
        };
    }
    let width = rng.gen_range(2..=3);
    let children = (0..width)
        .map(|_| random_formula(rng, n, depth - 1))
        .collect();
    if roll < 14 {
        Formula::And(children)
    } else {
        Formula::Or(children)
    }
}

impl Automaton for FiniteAutomaton {
    type State = usize;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn initial(&self) -> usize {
        self.initial
    }

    fn transition(&self, state: &usize, letter: char) -> Option<Formula<usize>> {
        let i = self.alphabet.index_of(letter)?;
        self.table.get(*state)?.get(i).cloned()
    }

    fn is_accepting(&self, state: &usize) -> bool {
        self.accepting.get(*state).copied().unwrap_or(false)
    }

    fn state_label(&self, state: &usize) -> String {
        self.states
            .get(*state)
            .cloned()
            .unwrap_or_else(|| format!("#{state}"))
    }
}

type Clause = BTreeSet<usize>;
type Dnf = BTreeSet<Clause>;

/// Disjunctive normal form, kept as an antichain of clauses.
fn dnf(phi: &Formula<usize>) -> Dnf {
    match phi {
        Formula::True => Dnf::from([Clause::new()]),
        Formula::False => Dnf::new(),
        Formula::Atom(q) => Dnf::from([Clause::from([*q])]),
        Formula::Or(cs) => minimize(cs.iter().flat_map(dnf).collect()),
        Formula::And(cs) => cs
            .iter()
            .fold(Dnf::from([Clause::new()]), |acc, c| product(&acc, &dnf(c))),
    }
}

fn product(left: &Dnf, right: &Dnf) -> Dnf {
    let mut out = Dnf::new();
    for l in left {
        for r in right {
            out.insert(l.union(r).copied().collect());
        }
    }
    minimize(out)
}

/// Drops every clause that strictly contains another one.
fn minimize(clauses: Dnf) -> Dnf {
    let all: Vec<&Clause> = clauses.iter().collect();
    all.iter()
        .filter(|c| !all.iter().any(|d| d.len() < c.len() && d.is_subset(c)))
        .map(|c| (*c).clone())
        .collect()
}

/// Subset construction for alternating automata.
///
/// A deterministic state is the set of minimal configurations (sets of
/// states that must all accept the rest of the word) the game can be in.
/// There are at most `2^(2^|Q|)` of them. Fails once more than `cap`
/// deterministic states are built.
pub fn determinize_finite(
    aut: &FiniteAutomaton,
    cap: usize,
) -> Result<FiniteAutomaton, AutomatonError> {
    let letters = aut.alphabet.letters();
    let start: Dnf = Dnf::from([Clause::from([aut.initial])]);
    let mut index: HashMap<Dnf, usize> = HashMap::from([(start.clone(), 0)]);
    let mut configs = vec![start.clone()];
    let mut table: Vec<Vec<Formula<usize>>> = Vec::new();
    let mut queue = VecDeque::from([start]);

    while let Some(config) = queue.pop_front() {
        let mut row = Vec::with_capacity(letters.len());
        for (li, _) in letters.iter().enumerate() {
            let mut next = Dnf::new();
            for clause in &config {
                let expanded = clause.iter().fold(Dnf::from([Clause::new()]), |acc, &q| {
                    product(&acc, &dnf(&aut.table[q][li]))
                });
                next.extend(expanded);
            }
            let next = minimize(next);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = configs.len();
                    if id >= cap {
                        return Err(AutomatonError::StateBudget(cap));
                    }
                    index.insert(next.clone(), id);
                    configs.push(next.clone());
                    queue.push_back(next);
                    id
                }
            };
            row.push(Formula::Atom(id));
        }
        table.push(row);
    }

    let accepting = configs
        .iter()
        .map(|c| c.iter().any(|clause| clause.iter().all(|&q| aut.accepting[q])))
        .collect();
    Ok(FiniteAutomaton {
        alphabet: aut.alphabet.clone(),
        states: (0..configs.len()).map(|i| format!("d{i}")).collect(),
        initial: 0,
        accepting,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{accepts, kind, AutomatonKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn universal_pair() -> FiniteAutomaton {
        // q0 splits into both states on 'a'; q1 dies on 'b'
        let ab = Alphabet::from_str_letters("ab");
        let table = vec![
            vec![
                Formula::And(vec![Formula::Atom(0), Formula::Atom(1)]),
                Formula::Atom(0),
            ],
            vec![Formula::Atom(1), Formula::And(vec![Formula::Atom(0), Formula::Atom(0)])],
        ];
        FiniteAutomaton::new(ab, vec!["q0".into(), "q1".into()], 0, vec![true, false], table)
            .unwrap()
    }

    #[test]
    fn accept_all_single_state() {
        let a = Alphabet::from_str_letters("01");
        let aut = FiniteAutomaton::new(
            a,
            vec!["s".into()],
            0,
            vec![true],
            vec![vec![Formula::Atom(0), Formula::Atom(0)]],
        )
        .unwrap();
        let det = determinize_finite(&aut, 16).unwrap();
        assert_eq!(det.states().len(), 1);
        assert!(accepts(&det, "0110").unwrap());
    }

    #[test]
    fn universal_bound() {
        let aut = universal_pair();
        assert_eq!(kind(&aut, 3).unwrap(), AutomatonKind::Universal);
        let det = determinize_finite(&aut, 1 << 10).unwrap();
        assert!(det.states().len() <= 16);
        assert_eq!(kind(&det, 4).unwrap(), AutomatonKind::Deterministic);
        for w in aut.alphabet.words_up_to(6) {
            assert_eq!(accepts(&aut, &w).unwrap(), accepts(&det, &w).unwrap(), "{w}");
        }
    }

    #[test]
    fn random_three_state_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ab = Alphabet::from_str_letters("ab");
        for _ in 0..50 {
            let aut = FiniteAutomaton::random(&mut rng, 3, &ab);
            let det = determinize_finite(&aut, 1 << 12).unwrap();
            assert!(det.states().len() <= 256);
            for w in ab.words_up_to(6) {
                assert_eq!(accepts(&aut, &w).unwrap(), accepts(&det, &w).unwrap());
            }
        }
    }

    #[test]
    fn new_rejects_dangling_atom() {
        let a = Alphabet::from_str_letters("a");
        assert!(FiniteAutomaton::new(a, vec!["s".into()], 0, vec![true], vec![vec![Formula::Atom(3)]])
            .is_none());
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            determinize_finite(&universal_pair(), 1).err(),
            Some(AutomatonError::StateBudget(1))
        );
    }
}
