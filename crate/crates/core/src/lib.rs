//! Alternating, probabilistic and lazily generated automata, with tools
//! that measure state complexity from below.
//!
//! The crate is organised bottom-up:
//!
//! - [`word`], [`formula`], [`automaton`], [`finite`] and [`format`]: words,
//!   positive formulas, symbolic alternating automata and their acceptance
//!   games, finite tables and the text interchange format;
//! - [`quotient`]: left quotients, bounded quotient counting and query
//!   tables over any membership oracle;
//! - [`prob`]: exact-rational probabilistic automata and cut-point languages;
//! - [`gallery`]: named languages with oracles and automata;
//! - [`profiler`]: reachable-state counts against declared growth classes;
//! - [`experiments`]: the registry of reproducible lower-bound experiments.

pub mod automaton;
pub mod crosscheck;
pub mod error;
pub mod experiments;
pub mod finite;
pub mod format;
pub mod formula;
pub mod gallery;
pub mod prob;
pub mod profiler;
pub mod quotient;
pub mod word;

pub use automaton::{accepts, kind, reachable, run_det, Automaton, AutomatonKind, DynAutomaton};
pub use error::{AutomatonError, FormatError, LanguageError, ProbError};
pub use finite::{determinize_finite, FiniteAutomaton};
pub use format::{load_automaton, load_prob_automaton, parse_formula, serialize_automaton};
pub use formula::Formula;
pub use prob::{bin_frac, bin_int, rabin_automaton, ProbAutomaton, Rational, ThresholdLanguage};
pub use profiler::{check_bound, profile, BoundCheck, ComplexityProfile, Growth};
pub use quotient::{
    count_quotients, distinguish, query_table, quotient_member, Language, Oracle, QueryTableReport,
    QuotientCountReport, RowSpec,
};
pub use word::Alphabet;
