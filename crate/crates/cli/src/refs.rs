//! Resolving command-line references: a gallery name or a path to an
//! automaton file in the text interchange format.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use altsc_core::format::{load_automaton, load_prob_automaton, parse_rational};
use altsc_core::gallery::{self, DeclaredClass};
use altsc_core::prob::ThresholdLanguage;
use altsc_core::quotient::{Language, Oracle};
use altsc_core::DynAutomaton;

use crate::Failure;

pub enum Target {
    Automaton(Arc<dyn DynAutomaton>),
    Oracle(Arc<dyn Language>),
    Threshold(Arc<ThresholdLanguage>),
}

pub struct Resolved {
    pub name: String,
    pub target: Target,
    /// The oracle, when the reference came from the gallery.
    oracle: Option<Arc<dyn Language>>,
    pub class: Option<DeclaredClass>,
}

impl Resolved {
    /// Membership, preferring the automaton when there is one.
    pub fn member(&self, word: &str) -> Result<bool, Failure> {
        Ok(match &self.target {
            Target::Automaton(aut) => aut.accepts(word)?,
            Target::Oracle(lang) => lang.contains(word)?,
            Target::Threshold(lang) => lang.contains(word)?,
        })
    }

    pub fn language(&self) -> Result<Arc<dyn Language>, Failure> {
        if let Some(oracle) = &self.oracle {
            return Ok(oracle.clone());
        }
        Ok(match &self.target {
            Target::Automaton(aut) => Arc::new(Oracle::from_automaton(self.name.clone(), aut.clone())),
            Target::Oracle(lang) => lang.clone(),
            Target::Threshold(lang) => lang.clone(),
        })
    }
}

pub fn resolve(reference: &str, threshold: &str) -> Result<Resolved, Failure> {
    let path = Path::new(reference);
    if path.is_file() {
        return from_file(path, threshold);
    }
    if reference == "rabin-half" {
        return Ok(Resolved {
            name: reference.to_string(),
            target: Target::Threshold(Arc::new(ThresholdLanguage::rabin_half())),
            oracle: None,
            class: None,
        });
    }
    let spec = gallery::by_name(reference)
        .map_err(|_| Failure(format!("unknown reference {reference:?}: not a file or gallery name")))?;
    Ok(Resolved {
        name: spec.name.clone(),
        target: match &spec.automaton {
            Some(aut) => Target::Automaton(aut.clone()),
            None => Target::Oracle(spec.oracle.clone()),
        },
        oracle: Some(spec.oracle.clone()),
        class: spec.class,
    })
}

fn from_file(path: &Path, threshold: &str) -> Result<Resolved, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map_or_else(|| "file".to_string(), |s| s.to_string_lossy().into_owned());
    let probabilistic = text.lines().any(|l| l.trim_start().starts_with("ptrans "));
    let target = if probabilistic {
        let cut = parse_rational(threshold).ok_or_else(|| Failure(format!("bad threshold {threshold:?}")))?;
        let aut = load_prob_automaton(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        Target::Threshold(Arc::new(ThresholdLanguage::new(name.clone(), aut, cut)))
    } else {
        let aut = load_automaton(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        Target::Automaton(Arc::new(aut))
    };
    Ok(Resolved {
        name,
        target,
        oracle: None,
        class: None,
    })
}
