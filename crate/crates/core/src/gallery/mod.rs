//! Every language of the workbench, with its oracle and, where one exists,
//! an explicit automaton.

mod counters;
mod hierarchy;
mod pairs;
pub mod primes;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use counters::{CountEq3Automaton, Maj2Automaton};
pub use hierarchy::{HierState, HierarchyAutomaton, Target, DIAMOND};
pub use pairs::{Check, LexAutomaton, LexState, Need, NotEqAutomaton, NotEqState};
pub use primes::{find_isolated_prime, is_isolated_prime, is_prime};

use crate::automaton::DynAutomaton;
use crate::error::LanguageError;
use crate::prob::{bin_int, ThresholdLanguage};
use crate::profiler::Growth;
use crate::quotient::{Language, Oracle};
use crate::word::Alphabet;

/// A sampled state-complexity claim: `|R(n)| ≤ constant · f(n)` for
/// `n ≤ max_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeclaredClass {
    pub growth: Growth,
    pub constant: u64,
    pub max_n: usize,
}

/// A named language: oracle, optional automaton, optional declared class.
#[derive(Clone)]
pub struct LanguageSpec {
    pub name: String,
    pub oracle: Arc<dyn Language>,
    pub automaton: Option<Arc<dyn DynAutomaton>>,
    pub class: Option<DeclaredClass>,
    /// Oracle and automaton must agree on all words up to this length.
    pub validation_bound: usize,
}

impl LanguageSpec {
    pub fn alphabet(&self) -> &Alphabet {
        self.oracle.alphabet()
    }
}

impl fmt::Debug for LanguageSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LanguageSpec")
            .field("name", &self.name)
            .field("has_automaton", &self.automaton.is_some())
            .field("class", &self.class)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GalleryError {
    #[error("unknown language {0:?}")]
    Unknown(String),
    #[error("L_ℓ needs ℓ ≥ 2, got {0}")]
    Exponent(u32),
}

/// Names accepted by [`by_name`]; `l-hier` takes an exponent as `l-hier:<ℓ>`.
pub const NAMES: [&str; 9] = [
    "count-eq3", "not-eq", "lex", "l-exp", "l-hier:2", "primes", "l-log", "maj2", "rabin-half",
];

/// Looks up a gallery entry by its CLI name.
pub fn by_name(name: &str) -> Result<LanguageSpec, GalleryError> {
    Ok(match name {
        "count-eq3" => count_eq3(),
        "not-eq" => not_eq(),
        "lex" => lexicographic(),
        "l-exp" => l_exp(),
        "primes" => primes(),
        "l-log" => l_log(),
        "maj2" => maj2(),
        "rabin-half" => rabin_half(),
        _ => match name.strip_prefix("l-hier:").map(str::parse::<u32>) {
            Some(Ok(l)) => l_hierarchy(l)?,
            _ => return Err(GalleryError::Unknown(name.to_string())),
        },
    })
}

fn count(word: &str, letter: char) -> usize {
    word.chars().filter(|&c| c == letter).count()
}

/// `{w ∈ {a,b,c}* | |w|_a = |w|_b = |w|_c}`.
pub fn count_eq3() -> LanguageSpec {
    let oracle = Oracle::from_predicate("count-eq3", Alphabet::from_str_letters("abc"), |w| {
        let a = count(w, 'a');
        a == count(w, 'b') && a == count(w, 'c')
    });
    LanguageSpec {
        name: "count-eq3".into(),
        oracle: Arc::new(oracle),
        automaton: Some(Arc::new(CountEq3Automaton::new())),
        class: Some(DeclaredClass {
            growth: Growth::Quadratic,
            constant: 4,
            max_n: 40,
        }),
        validation_bound: 10,
    }
}

/// Splits `u#v` with exactly one `#`.
fn two_blocks(word: &str) -> Option<(&str, &str)> {
    let (u, v) = word.split_once('#')?;
    (!v.contains('#')).then_some((u, v))
}

/// `{u#v | u, v ∈ {0,1}*, u ≠ v}`.
pub fn not_eq() -> LanguageSpec {
    let oracle = Oracle::from_predicate("not-eq", Alphabet::from_str_letters("01#"), |w| {
        two_blocks(w).is_some_and(|(u, v)| u != v)
    });
    LanguageSpec {
        name: "not-eq".into(),
        oracle: Arc::new(oracle),
        automaton: Some(Arc::new(NotEqAutomaton::new())),
        class: Some(DeclaredClass {
            growth: Growth::Linear,
            constant: 7,
            max_n: 40,
        }),
        validation_bound: 9,
    }
}

/// Strict lexicographic order where a proper prefix comes first.
pub fn lex_less(u: &str, v: &str) -> bool {
    u < v
}

/// `{u#v | u, v ∈ {0,1}*, u <_lex v}`.
pub fn lexicographic() -> LanguageSpec {
    let oracle = Oracle::from_predicate("lex", Alphabet::from_str_letters("01#"), |w| {
        two_blocks(w).is_some_and(|(u, v)| lex_less(u, v))
    });
    LanguageSpec {
        name: "lex".into(),
        oracle: Arc::new(oracle),
        automaton: Some(Arc::new(LexAutomaton::new())),
        class: Some(DeclaredClass {
            growth: Growth::Linear,
            constant: 6,
            max_n: 40,
        }),
        validation_bound: 9,
    }
}

/// `{u#u₁#…#u_k | ∃j. u = reverse(u_j)}` over `{0,1,#}`.
pub fn l_exp() -> LanguageSpec {
    let oracle = Oracle::from_predicate("l-exp", Alphabet::from_str_letters("01#"), |w| {
        let mut blocks = w.split('#');
        let u = blocks.next().unwrap_or("");
        blocks.any(|b| b.chars().rev().eq(u.chars()))
    });
    LanguageSpec {
        name: "l-exp".into(),
        oracle: Arc::new(oracle),
        automaton: None,
        class: None,
        validation_bound: 0,
    }
}

/// Oracle for `L_ℓ`: `◊^p u #u₁ # … #u_k` with `k ≤ p^ℓ` and some `u_j = u`.
pub fn hierarchy_member(word: &str, exponent: u32) -> bool {
    let p = word.chars().take_while(|&c| c == DIAMOND).count();
    let rest: &str = &word[p * DIAMOND.len_utf8()..];
    if rest.contains(DIAMOND) {
        return false;
    }
    let mut blocks = rest.split('#');
    let u = blocks.next().unwrap_or("");
    let blocks: Vec<&str> = blocks.collect();
    let k = blocks.len() as u64;
    k <= (p as u64).saturating_pow(exponent) && blocks.contains(&u)
}

/// The hierarchy language `L_ℓ` with its three-phase automaton.
pub fn l_hierarchy(exponent: u32) -> Result<LanguageSpec, GalleryError> {
    if exponent < 2 {
        return Err(GalleryError::Exponent(exponent));
    }
    let name = format!("l-hier:{exponent}");
    let oracle = Oracle::from_predicate(name.clone(), Alphabet::from_str_letters("01◊#"), move |w| {
        hierarchy_member(w, exponent)
    });
    Ok(LanguageSpec {
        name,
        oracle: Arc::new(oracle),
        automaton: Some(Arc::new(HierarchyAutomaton::new(exponent))),
        class: Some(DeclaredClass {
            growth: Growth::Poly(exponent),
            // measured: the reachable count grows like n^(ℓ+1), so these
            // only hold on the sampled range
            constant: if exponent == 2 { 56 } else { 11 },
            max_n: if exponent == 2 { 30 } else { 10 },
        }),
        validation_bound: if exponent == 2 { 8 } else { 7 },
    })
}

/// Binary words whose least-significant-first value is prime.
pub fn primes() -> LanguageSpec {
    let oracle = Oracle::new("primes", Alphabet::from_str_letters("01"), |w| Ok(is_prime(bin_int(w)?)));
    LanguageSpec {
        name: "primes".into(),
        oracle: Arc::new(oracle),
        automaton: None,
        class: None,
        validation_bound: 0,
    }
}

/// `⌊log₂ n⌋` for `n ≥ 1`.
fn floor_log2(n: usize) -> usize {
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

/// `{uv#u | u, v ∈ {a,b}*, |u| = ⌊log₂|w|⌋}`.
pub fn l_log() -> LanguageSpec {
    let oracle = Oracle::from_predicate("l-log", Alphabet::from_str_letters("ab#"), |w| {
        let Some((left, right)) = two_blocks(w) else {
            return false;
        };
        let m = floor_log2(w.chars().count());
        right.len() == m && left.len() >= m && left[..m] == *right
    });
    LanguageSpec {
        name: "l-log".into(),
        oracle: Arc::new(oracle),
        automaton: None,
        class: None,
        validation_bound: 0,
    }
}

/// `{w ∈ {a,b}* | |w|_a > |w|_b}` with its integer-counter automaton.
pub fn maj2() -> LanguageSpec {
    let oracle = Oracle::from_predicate("maj2", Alphabet::from_str_letters("ab"), |w| {
        count(w, 'a') > count(w, 'b')
    });
    LanguageSpec {
        name: "maj2".into(),
        oracle: Arc::new(oracle),
        automaton: Some(Arc::new(Maj2Automaton::new())),
        class: Some(DeclaredClass {
            growth: Growth::Linear,
            constant: 3,
            max_n: 40,
        }),
        validation_bound: 14,
    }
}

/// `L_{1/2}` of Rabin's automaton with the `#` reset.
pub fn rabin_half() -> LanguageSpec {
    LanguageSpec {
        name: "rabin-half".into(),
        oracle: Arc::new(ThresholdLanguage::rabin_half()),
        automaton: None,
        class: None,
        validation_bound: 0,
    }
}

/// Words of the alphabet on which oracle and automaton disagree, up to the
/// validation bound.
pub fn mismatches(spec: &LanguageSpec, bound: usize) -> Result<Vec<String>, LanguageError> {
    let Some(aut) = &spec.automaton else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for w in spec.alphabet().words_up_to(bound) {
        if aut.accepts(&w)? != spec.oracle.contains(&w)? {
            out.push(w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{kind, run_det, AutomatonKind};

    fn member(spec: &LanguageSpec, w: &str) -> bool {
        spec.oracle.contains(w).unwrap()
    }

    #[test]
    fn count_eq3_examples() {
        let l = count_eq3();
        assert!(member(&l, "abc"));
        assert!(member(&l, ""));
        assert!(!member(&l, "aab"));
        let aut = CountEq3Automaton::new();
        assert_eq!(run_det(&aut, "ab").unwrap(), (0, 1));
        assert_eq!(run_det(&aut, "").unwrap(), (0, 0));
        assert_eq!(run_det(&aut, "abc").unwrap(), (0, 0));
        assert_eq!(kind(&aut, 4).unwrap(), AutomatonKind::Deterministic);
    }

    #[test]
    fn not_eq_examples() {
        let l = not_eq();
        assert!(member(&l, "0#1"));
        assert!(!member(&l, "0#0"));
        assert!(member(&l, "01#0"));
        assert!(!member(&l, "0#1#0"));
        for n in 1..4 {
            assert_eq!(kind(&NotEqAutomaton::new(), n).unwrap(), AutomatonKind::Nondeterministic);
        }
    }

    #[test]
    fn lex_examples() {
        let l = lexicographic();
        assert!(member(&l, "0#1"));
        assert!(!member(&l, "1#1"));
        assert!(member(&l, "0#01"));
        assert!(member(&l, "#0"));
        assert!(!member(&l, "01#0"));
        for n in 2..5 {
            assert_eq!(kind(&LexAutomaton::new(), n).unwrap(), AutomatonKind::Alternating);
        }
    }

    #[test]
    fn l_exp_examples() {
        let l = l_exp();
        assert!(member(&l, "01#10"));
        assert!(!member(&l, "01#01"));
        assert!(member(&l, "#"));
        assert!(!member(&l, "01"));
        assert!(member(&l, "1#0#1"));
    }

    #[test]
    fn hierarchy_examples() {
        let l = l_hierarchy(2).unwrap();
        assert!(member(&l, "◊◊01#00#01"));
        assert!(member(&l, "◊0#0"));
        // k = 2 > 1 = p^ℓ, though u₁ matches
        assert!(!member(&l, "◊0#0#1"));
        assert!(!member(&l, "0#0"));
        assert!(!member(&l, "◊0"));
        assert!(!member(&l, "◊0#0◊"));
        assert!(!member(&l, "◊01#0"));
        assert!(matches!(l_hierarchy(1), Err(GalleryError::Exponent(1))));
        assert_eq!(kind(&HierarchyAutomaton::new(2), 3).unwrap(), AutomatonKind::Alternating);
    }

    #[test]
    fn maj2_and_log_examples() {
        let m = maj2();
        assert!(member(&m, "aab"));
        assert!(!member(&m, ""));
        assert!(!member(&m, "ab"));
        let l = l_log();
        // |w| = 5, ⌊log₂ 5⌋ = 2
        assert!(member(&l, "ab#ab"));
        assert!(!member(&l, "ab#a"));
        // |w| = 3, ⌊log₂ 3⌋ = 1
        assert!(member(&l, "a#a"));
        assert!(!member(&l, "a#b"));
        // |w| = 8, ⌊log₂ 8⌋ = 3
        assert!(member(&l, "abaa#aba"));
        assert!(!member(&l, "abaab#ab"));
        assert!(member(&l, "#"));
    }

    #[test]
    fn primes_language() {
        let l = primes();
        assert!(member(&l, "11"));
        assert!(!member(&l, "10"));
        assert!(member(&l, "101"));
        assert!(!member(&l, ""));
    }

    #[test]
    fn lookup_by_name() {
        for name in NAMES {
            assert_eq!(by_name(name).unwrap().name, name);
        }
        assert!(by_name("l-hier:3").is_ok());
        assert!(matches!(by_name("nope"), Err(GalleryError::Unknown(_))));
        assert!(matches!(by_name("l-hier:1"), Err(GalleryError::Exponent(1))));
    }

    #[test]
    fn small_agreement() {
        for name in ["count-eq3", "not-eq", "lex", "maj2", "l-hier:2"] {
            let spec = by_name(name).unwrap();
            assert_eq!(mismatches(&spec, 5).unwrap(), Vec::<String>::new(), "{name}");
        }
    }
}
