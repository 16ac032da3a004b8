use thiserror::Error;

/// Failures raised while evaluating or exploring an automaton.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("letter {letter:?} is not in the alphabet {alphabet}")]
    UnknownLetter { letter: char, alphabet: String },
    #[error("transition undefined for state {state} on letter {letter:?}")]
    MissingTransition { state: String, letter: char },
    #[error("formula for state {state} on letter {letter:?} is not a single atom")]
    NotDeterministic { state: String, letter: char },
    #[error("truth assignment has no value for atom {0}")]
    MissingAtom(String),
    #[error("state budget exceeded: more than {0} states")]
    StateBudget(usize),
    #[error("operation requires a finite automaton")]
    Unsupported,
}

/// Failures raised by language oracles and the quotient machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LanguageError {
    #[error("letter {letter:?} is not in the alphabet {alphabet}")]
    UnknownLetter { letter: char, alphabet: String },
    #[error("value of {0:?} does not fit in 64 bits")]
    Overflow(String),
    #[error("query budget exceeded: {needed} membership queries requested, budget is {budget}")]
    Budget { needed: u128, budget: u64 },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// Failures from the exact probabilistic machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbError {
    #[error("expected a binary word, found letter {0:?}")]
    NotBinary(char),
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("interval ({lo}, {hi}) is empty or outside [0, 1]")]
    DegenerateInterval { lo: String, hi: String },
    #[error("words must be distinct and of equal length")]
    BadPair,
    #[error("automaton is not stochastic: {0}")]
    NotStochastic(String),
    #[error("separator {0:?} failed exact re-verification")]
    Unverified(String),
}

/// Errors from the text interchange formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}: {symbol}")]
    Semantic {
        line: usize,
        message: String,
        symbol: String,
    },
    #[error("missing transition for state {state} on letter {letter:?}")]
    MissingTransition { state: String, letter: char },
    #[error("missing `{0}` declaration")]
    MissingSection(&'static str),
    #[error(transparent)]
    Prob(#[from] ProbError),
}
