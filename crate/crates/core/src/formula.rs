//! Positive boolean formulas over state atoms.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::AutomatonError;

/// A positive boolean combination of atoms.
///
/// `True` and `False` stand for accepting and rejecting sinks. `And` and `Or`
/// always carry at least one child when built through [`Formula::and`] and
/// [`Formula::or`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula<S> {
    True,
    False,
    Atom(S),
    And(Vec<Formula<S>>),
    Or(Vec<Formula<S>>),
}

impl<S> Formula<S> {
    pub fn atom(state: S) -> Self {
        Formula::Atom(state)
    }

    /// Conjunction; an empty list is `True`, a singleton collapses.
    pub fn and(children: Vec<Formula<S>>) -> Self {
        match children.len() {
            0 => Formula::True,
            1 => children.into_iter().next().unwrap(),
            _ => Formula::And(children),
        }
    }

    /// Disjunction; an empty list is `False`, a singleton collapses.
    pub fn or(children: Vec<Formula<S>>) -> Self {
        match children.len() {
            0 => Formula::False,
            1 => children.into_iter().next().unwrap(),
            _ => Formula::Or(children),
        }
    }

    /// Evaluates under the valuation `value`, short-circuiting.
    pub fn eval_with(&self, value: &mut impl FnMut(&S) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(s) => value(s),
            Formula::And(cs) => cs.iter().all(|c| c.eval_with(value)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval_with(value)),
        }
    }

    /// Like [`Formula::eval_with`] with a fallible valuation.
    pub fn try_eval_with<E>(
        &self,
        value: &mut impl FnMut(&S) -> Result<bool, E>,
    ) -> Result<bool, E> {
        Ok(match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(s) => value(s)?,
            Formula::And(cs) => {
                for c in cs {
                    if !c.try_eval_with(value)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(cs) => {
                for c in cs {
                    if c.try_eval_with(value)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    /// Calls `f` on every atom, left to right.
    pub fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(&'a S)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(s) => f(s),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().for_each(|c| c.for_each_atom(f)),
        }
    }

    pub fn atoms(&self) -> Vec<&S> {
        let mut out = Vec::new();
        self.for_each_atom(&mut |s| out.push(s));
        out
    }

    /// Replaces every atom by a formula.
    pub fn substitute<T>(self, f: &mut impl FnMut(S) -> Formula<T>) -> Formula<T> {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(s) => f(s),
            Formula::And(cs) => Formula::and(cs.into_iter().map(|c| c.substitute(f)).collect()),
            Formula::Or(cs) => Formula::or(cs.into_iter().map(|c| c.substitute(f)).collect()),
        }
    }

    pub fn map_atoms<T>(self, f: &mut impl FnMut(S) -> T) -> Formula<T> {
        self.substitute(&mut |s| Formula::Atom(f(s)))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// Uses no disjunction (`True` counts as the empty conjunction).
    pub fn is_conjunctive(&self) -> bool {
        match self {
            Formula::True | Formula::Atom(_) => true,
            Formula::False | Formula::Or(_) => false,
            Formula::And(cs) => cs.iter().all(Formula::is_conjunctive),
        }
    }

    /// Uses no conjunction (`False` counts as the empty disjunction).
    pub fn is_disjunctive(&self) -> bool {
        match self {
            Formula::False | Formula::Atom(_) => true,
            Formula::True | Formula::And(_) => false,
            Formula::Or(cs) => cs.iter().all(Formula::is_disjunctive),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 1,
            Formula::And(cs) | Formula::Or(cs) => 1 + cs.iter().map(Formula::size).sum::<usize>(),
        }
    }
}

impl<S: Eq + Hash + fmt::Display> Formula<S> {
    /// Evaluates against an explicit truth table; every atom must be assigned.
    pub fn eval(&self, truth: &HashMap<S, bool>) -> Result<bool, AutomatonError> {
        // check totality first so the error does not depend on short-circuiting
        let mut missing = None;
        self.for_each_atom(&mut |s| {
            if missing.is_none() && !truth.contains_key(s) {
                missing = Some(s.to_string());
            }
        });
        if let Some(atom) = missing {
            return Err(AutomatonError::MissingAtom(atom));
        }
        Ok(self.eval_with(&mut |s| truth[s]))
    }
}

/// Prints in the interchange grammar: `&` binds tighter than `|`, and nested
/// operators keep their structure through parentheses.
impl<S: fmt::Display> fmt::Display for Formula<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "T"),
            Formula::False => write!(f, "F"),
            Formula::Atom(s) => write!(f, "{s}"),
            Formula::And(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    match c {
                        Formula::And(_) | Formula::Or(_) => write!(f, "({c})")?,
                        _ => write!(f, "{c}")?,
                    }
                }
                Ok(())
            }
            Formula::Or(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    match c {
                        Formula::Or(_) => write!(f, "({c})")?,
                        _ => write!(f, "{c}")?,
                    }
                }
                Ok(())
            }
        }
    }
}
