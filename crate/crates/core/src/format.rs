//! Line-oriented text interchange formats for finite and probabilistic
//! automata.
//!
//! ```text
//! # comment
//! alphabet: 0 1 #
//! states: q0 q1 q2
//! initial: q0
//! accepting: q1
//! trans q0 1 -> q1 & (q0 | q2)
//! ```
//!
//! Probabilistic automata use `ptrans <state> <letter> -> <state>:<num>/<den> …`
//! instead of `trans`; omitted targets have probability zero.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::FormatError;
use crate::finite::FiniteAutomaton;
use crate::formula::Formula;
use crate::prob::{ProbAutomaton, Rational};
use crate::word::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    And,
    Or,
    Open,
    Close,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    column_offset: usize,
    text: &'a str,
}

impl<'a> Lexer<'a> {
    fn tokens(mut self) -> Result<Vec<(Token, usize)>, FormatError> {
        let mut out = Vec::new();
        while let Some(&(byte, c)) = self.chars.peek() {
            let column = self.column_offset + self.text[..byte].chars().count() + 1;
            match c {
                c if c.is_whitespace() => {
                    self.chars.next();
                }
                '&' | '|' | '(' | ')' => {
                    self.chars.next();
                    let t = match c {
                        '&' => Token::And,
                        '|' => Token::Or,
                        '(' => Token::Open,
                        _ => Token::Close,
                    };
                    out.push((t, column));
                }
                _ => {
                    let mut ident = String::new();
                    while let Some(&(_, c)) = self.chars.peek() {
                        if c.is_whitespace() || "&|()".contains(c) {
                            break;
                        }
                        ident.push(c);
                        self.chars.next();
                    }
                    out.push((Token::Ident(ident), column));
                }
            }
        }
        let _ = self.line;
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> FormatError {
        let column = self
            .tokens
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_column);
        FormatError::Syntax {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn disjunction(&mut self) -> Result<Formula<String>, FormatError> {
        let mut children = vec![self.conjunction()?];
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            children.push(self.conjunction()?);
        }
        Ok(Formula::or(children))
    }

    fn conjunction(&mut self) -> Result<Formula<String>, FormatError> {
        let mut children = vec![self.primary()?];
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            children.push(self.primary()?);
        }
        Ok(Formula::and(children))
    }

    fn primary(&mut self) -> Result<Formula<String>, FormatError> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(match name.as_str() {
                    "T" => Formula::True,
                    "F" => Formula::False,
                    _ => Formula::Atom(name),
                })
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.disjunction()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.error("expected a state, `T`, `F` or `(`")),
            None => Err(self.error("unexpected end of formula")),
        }
    }
}

fn parse_formula_at(text: &str, line: usize, column_offset: usize) -> Result<Formula<String>, FormatError> {
    let tokens = Lexer {
        chars: text.char_indices().peekable(),
        line,
        column_offset,
        text,
    }
    .tokens()?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        line,
        end_column: column_offset + text.chars().count() + 1,
    };
    let phi = parser.disjunction()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(phi)
}

/// Parses a positive formula. `&` binds tighter than `|`; `T` and `F` are
/// the constants.
pub fn parse_formula(text: &str) -> Result<Formula<String>, FormatError> {
    parse_formula_at(text, 1, 0)
}

/// Header lines shared by both formats.
#[derive(Default)]
struct Header {
    alphabet: Option<Alphabet>,
    states: Option<Vec<String>>,
    initial: Option<(usize, String)>,
    accepting: Option<(usize, Vec<String>)>,
}

/// A body line `<kw> <state> <letter> -> <rest>` with its position data.
struct Rule<'a> {
    line: usize,
    state: &'a str,
    letter: char,
    rest: &'a str,
    rest_column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn semantic(line: usize, message: &str, symbol: impl Into<String>) -> FormatError {
    FormatError::Semantic {
        line,
        message: message.into(),
        symbol: symbol.into(),
    }
}

/// Splits a text into header declarations and rule lines for `keyword`.
fn scan<'a>(text: &'a str, keyword: &str) -> Result<(Header, Vec<Rule<'a>>), FormatError> {
    let mut header = Header::default();
    let mut rules = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - raw.trim_start().len();
        if let Some((key, value)) = trimmed.split_once(':') {
            let items = || value.split_whitespace().map(str::to_string).collect::<Vec<_>>();
            let handled = match key.trim() {
                "alphabet" => {
                    let mut letters = Vec::new();
                    for item in items() {
                        let mut cs = item.chars();
                        match (cs.next(), cs.next()) {
                            (Some(c), None) => letters.push(c),
                            _ => return Err(semantic(line, "letters must be single characters", item)),
                        }
                    }
                    header.alphabet = Some(
                        Alphabet::new(letters)
                            .ok_or_else(|| semantic(line, "alphabet must be non-empty and duplicate-free", value.trim()))?,
                    );
                    true
                }
                "states" => {
                    let states = items();
                    for (k, s) in states.iter().enumerate() {
                        if s == "T" || s == "F" {
                            return Err(semantic(line, "reserved state name", s.clone()));
                        }
                        if s.contains(':') {
                            return Err(semantic(line, "state names may not contain `:`", s.clone()));
                        }
                        if states[..k].contains(s) {
                            return Err(semantic(line, "duplicate state", s.clone()));
                        }
                    }
                    header.states = Some(states);
                    true
                }
                "initial" => {
                    let v = items();
                    if v.len() != 1 {
                        return Err(syntax(line, indent + 1, "expected exactly one initial state"));
                    }
                    header.initial = Some((line, v[0].clone()));
                    true
                }
                "accepting" => {
                    header.accepting = Some((line, items()));
                    true
                }
                _ => false,
            };
            if handled {
                continue;
            }
        }
        let rest_of = trimmed.strip_prefix(keyword).filter(|r| r.starts_with(char::is_whitespace));
        let Some(after_kw) = rest_of else {
            return Err(syntax(line, indent + 1, format!("unrecognised line, expected `{keyword}` or a declaration")));
        };
        let Some((lhs, rhs)) = after_kw.split_once("->") else {
            return Err(syntax(line, indent + 1, "expected `->`"));
        };
        let parts: Vec<&str> = lhs.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(syntax(line, indent + keyword.len() + 1, "expected `<state> <letter>` before `->`"));
        }
        let mut lc = parts[1].chars();
        let letter = match (lc.next(), lc.next()) {
            (Some(c), None) => c,
            _ => return Err(semantic(line, "letters must be single characters", parts[1])),
        };
        let rest_column = indent + keyword.len() + lhs.chars().count() + 2;
        rules.push(Rule {
            line,
            state: parts[0],
            letter,
            rest: rhs,
            rest_column,
        });
    }
    Ok((header, rules))
}

struct Resolved {
    alphabet: Alphabet,
    states: Vec<String>,
    index: HashMap<String, usize>,
    initial: usize,
    accepting: Vec<bool>,
}

fn resolve(header: Header) -> Result<Resolved, FormatError> {
    let alphabet = header.alphabet.ok_or(FormatError::MissingSection("alphabet"))?;
    let states = header.states.ok_or(FormatError::MissingSection("states"))?;
    let index: HashMap<String, usize> = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let (line, init) = header.initial.ok_or(FormatError::MissingSection("initial"))?;
    let initial = *index.get(&init).ok_or_else(|| semantic(line, "undeclared state", init.clone()))?;
    let mut accepting = vec![false; states.len()];
    if let Some((line, acc)) = header.accepting {
        for s in acc {
            let &q = index.get(&s).ok_or_else(|| semantic(line, "undeclared state", s.clone()))?;
            accepting[q] = true;
        }
    }
    Ok(Resolved {
        alphabet,
        states,
        index,
        initial,
        accepting,
    })
}

fn locate(r: &Resolved, rule: &Rule<'_>) -> Result<(usize, usize), FormatError> {
    let &q = r
        .index
        .get(rule.state)
        .ok_or_else(|| semantic(rule.line, "undeclared state", rule.state))?;
    let li = r
        .alphabet
        .index_of(rule.letter)
        .ok_or_else(|| semantic(rule.line, "undeclared letter", rule.letter.to_string()))?;
    Ok((q, li))
}

/// Loads a finite alternating automaton. Every declared `(state, letter)`
/// pair needs exactly one `trans` line.
pub fn load_automaton(text: &str) -> Result<FiniteAutomaton, FormatError> {
    let (header, rules) = scan(text, "trans")?;
    let r = resolve(header)?;
    let mut table: Vec<Vec<Option<Formula<usize>>>> = vec![vec![None; r.alphabet.len()]; r.states.len()];
    for rule in &rules {
        let (q, li) = locate(&r, rule)?;
        if table[q][li].is_some() {
            return Err(semantic(rule.line, "duplicate transition", format!("{} {}", rule.state, rule.letter)));
        }
        let phi = parse_formula_at(rule.rest, rule.line, rule.rest_column)?;
        let mut undeclared = None;
        let phi = phi.map_atoms(&mut |s: String| match r.index.get(&s) {
            Some(&i) => i,
            None => {
                undeclared.get_or_insert(s);
                0
            }
        });
        if let Some(s) = undeclared {
            return Err(semantic(rule.line, "undeclared state", s));
        }
        table[q][li] = Some(phi);
    }
    let mut full = Vec::with_capacity(r.states.len());
    for (q, row) in table.into_iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (li, phi) in row.into_iter().enumerate() {
            out.push(phi.ok_or_else(|| FormatError::MissingTransition {
                state: r.states[q].clone(),
                letter: r.alphabet.letters()[li],
            })?);
        }
        full.push(out);
    }
    Ok(FiniteAutomaton::new(r.alphabet, r.states, r.initial, r.accepting, full)
        .expect("loader produced a well-formed table"))
}

fn write_header(out: &mut String, alphabet: &Alphabet, states: &[String], initial: usize, accepting: &[bool]) {
    let letters: Vec<String> = alphabet.letters().iter().map(char::to_string).collect();
    let acc: Vec<&str> = states
        .iter()
        .zip(accepting)
        .filter(|(_, &a)| a)
        .map(|(s, _)| s.as_str())
        .collect();
    let _ = writeln!(out, "alphabet: {}", letters.join(" "));
    let _ = writeln!(out, "states: {}", states.join(" "));
    let _ = writeln!(out, "initial: {}", states[initial]);
    let _ = writeln!(out, "accepting: {}", acc.join(" ")).map(|_| ());
}

/// Canonical text form: declarations, then one `trans` line per state and
/// letter in declaration order.
pub fn serialize_automaton(aut: &FiniteAutomaton) -> String {
    let mut out = String::new();
    write_header(&mut out, &aut.alphabet, &aut.states, aut.initial, &aut.accepting);
    for (q, row) in aut.table.iter().enumerate() {
        for (li, phi) in row.iter().enumerate() {
            let named = phi.clone().map_atoms(&mut |p| aut.states[p].clone());
            let _ = writeln!(out, "trans {} {} -> {}", aut.states[q], aut.alphabet.letters()[li], named);
        }
    }
    out.lines().map(|l| l.trim_end().to_string() + "\n").collect()
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Loads a probabilistic automaton and checks that it is stochastic.
pub fn load_prob_automaton(text: &str) -> Result<ProbAutomaton, FormatError> {
    let (header, rules) = scan(text, "ptrans")?;
    let r = resolve(header)?;
    let n = r.states.len();
    let mut seen = vec![vec![false; r.alphabet.len()]; n];
    let mut matrices = vec![vec![vec![Rational::zero(); n]; n]; r.alphabet.len()];
    for rule in &rules {
        let (q, li) = locate(&r, rule)?;
        if std::mem::replace(&mut seen[q][li], true) {
            return Err(semantic(rule.line, "duplicate transition", format!("{} {}", rule.state, rule.letter)));
        }
        for item in rule.rest.split_whitespace() {
            let Some((target, prob)) = item.rsplit_once(':') else {
                return Err(syntax(rule.line, rule.rest_column, format!("expected `<state>:<num>/<den>`, found {item:?}")));
            };
            let &t = r.index.get(target).ok_or_else(|| semantic(rule.line, "undeclared state", target))?;
            let p = parse_rational(prob).ok_or_else(|| syntax(rule.line, rule.rest_column, format!("malformed probability {prob:?}")))?;
            matrices[li][q][t] += p;
        }
    }
    Ok(ProbAutomaton::new(r.alphabet, r.states, r.initial, r.accepting, matrices)?)
}

/// Canonical text form of a probabilistic automaton; zero entries omitted.
pub fn serialize_prob_automaton(aut: &ProbAutomaton) -> String {
    let mut out = String::new();
    write_header(&mut out, aut.alphabet(), aut.states(), aut.initial_state(), aut.accepting());
    for q in 0..aut.states().len() {
        for (li, &a) in aut.alphabet().letters().iter().enumerate() {
            let row = &aut.matrices()[li][q];
            let targets: Vec<String> = row
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(t, p)| format!("{}:{}/{}", aut.states()[t], p.numer(), p.denom()))
                .collect();
            let _ = writeln!(out, "ptrans {} {} -> {}", aut.states()[q], a, targets.join(" "));
        }
    }
    out.lines().map(|l| l.trim_end().to_string() + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{accepts, Automaton};

    fn a(s: &str) -> Formula<String> {
        Formula::Atom(s.into())
    }

    const SAMPLE: &str = "\
# three-state sample
alphabet: 0 1 #
states: q0 q1 q2
initial: q0
accepting: q1

trans q0 0 -> q0
trans q0 1 -> q1 & (q0 | q2)
trans q0 # -> T
trans q1 0 -> q1
trans q1 1 -> q2 | q1
trans q1 # -> F
trans q2 0 -> q2
trans q2 1 -> q2
trans q2 # -> q0
";

    #[test]
    fn grammar_case() {
        let phi = parse_formula("q1 & (q0 | q2)").unwrap();
        assert_eq!(phi, Formula::And(vec![a("q1"), Formula::Or(vec![a("q0"), a("q2")])]));
    }

    #[test]
    fn and_binds_tighter() {
        let phi = parse_formula("q1 | q2 & q3").unwrap();
        assert_eq!(phi, Formula::Or(vec![a("q1"), Formula::And(vec![a("q2"), a("q3")])]));
    }

    #[test]
    fn constants_and_whitespace() {
        assert_eq!(parse_formula("  T ").unwrap(), Formula::True);
        assert_eq!(parse_formula("(F)|x").unwrap(), Formula::Or(vec![Formula::False, a("x")]));
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_formula("q1 & (q2 | ") {
            Err(FormatError::Syntax { line: 1, column, .. }) => assert_eq!(column, 12),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_formula("q1 q2"), Err(FormatError::Syntax { column: 4, .. })));
    }

    #[test]
    fn hash_letter_is_literal() {
        let aut = load_automaton(SAMPLE).unwrap();
        assert_eq!(aut.alphabet().letters(), &['0', '1', '#']);
        assert!(!accepts(&aut, "1").unwrap());
        assert!(accepts(&aut, "00#").unwrap());
        assert!(accepts(&aut, "#").unwrap());
    }

    #[test]
    fn serialization_is_canonical() {
        let aut = load_automaton(SAMPLE).unwrap();
        let text = serialize_automaton(&aut);
        let again = load_automaton(&text).unwrap();
        assert_eq!(aut, again);
        assert_eq!(serialize_automaton(&again), text);
        assert!(text.contains("trans q0 1 -> q1 & (q0 | q2)\n"));
    }

    #[test]
    fn missing_transition() {
        let text = SAMPLE.replace("trans q2 # -> q0\n", "");
        assert_eq!(
            load_automaton(&text).unwrap_err(),
            FormatError::MissingTransition { state: "q2".into(), letter: '#' }
        );
    }

    #[test]
    fn undeclared_symbols_are_named() {
        let text = SAMPLE.replace("trans q2 # -> q0", "trans q2 # -> q9");
        match load_automaton(&text) {
            Err(FormatError::Semantic { line: 15, symbol, .. }) => assert_eq!(symbol, "q9"),
            other => panic!("unexpected {other:?}"),
        }
        let text = SAMPLE.replace("trans q2 # -> q0", "trans q2 x -> q0");
        assert!(matches!(load_automaton(&text), Err(FormatError::Semantic { symbol, .. }) if symbol == "x"));
    }

    #[test]
    fn duplicate_transition() {
        let text = format!("{SAMPLE}trans q2 # -> q1\n");
        assert!(matches!(load_automaton(&text), Err(FormatError::Semantic { .. })));
    }

    #[test]
    fn prob_round_trip() {
        let text = "\
alphabet: a
states: s t
initial: s
accepting: t
ptrans s a -> s:1/3 t:2/3
ptrans t a -> t:1
";
        let aut = load_prob_automaton(text).unwrap();
        let out = serialize_prob_automaton(&aut);
        assert_eq!(load_prob_automaton(&out).unwrap(), aut);
        assert!(out.contains("ptrans s a -> s:1/3 t:2/3\n"));
    }

    #[test]
    fn prob_loader_validates() {
        let text = "\
alphabet: a
states: s
initial: s
accepting: s
ptrans s a -> s:9/10
";
        assert!(matches!(load_prob_automaton(text), Err(FormatError::Prob(_))));
    }
}
