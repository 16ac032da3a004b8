//! Left quotients, bounded-witness quotient counting and query tables.
//!
//! Every count produced here is a lower bound: a finite witness set can only
//! merge quotients that differ on longer words, never split equal ones.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automaton::DynAutomaton;
use crate::error::LanguageError;
use crate::word::Alphabet;

/// Default cap on membership queries per invocation.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A membership oracle. Implementations must be pure.
pub trait Language: Send + Sync {
    fn name(&self) -> &str;
    fn alphabet(&self) -> &Alphabet;
    fn contains(&self, word: &str) -> Result<bool, LanguageError>;

    /// Membership of `prefix · w` as a function of `w`. Implementations may
    /// process the prefix once and share that work across suffixes.
    fn residual<'a>(&'a self, prefix: &str) -> Result<Residual<'a>, LanguageError> {
        let prefix = prefix.to_string();
        Ok(Box::new(move |w: &str| {
            let mut uw = String::with_capacity(prefix.len() + w.len());
            uw.push_str(&prefix);
            uw.push_str(w);
            self.contains(&uw)
        }))
    }
}

type Membership = dyn Fn(&str) -> Result<bool, LanguageError> + Send + Sync;

/// Membership test for suffixes of a fixed prefix, see [`Language::residual`].
pub type Residual<'a> = Box<dyn Fn(&str) -> Result<bool, LanguageError> + Send + Sync + 'a>;

/// A language given by a closure.
#[derive(Clone)]
pub struct Oracle {
    name: String,
    alphabet: Alphabet,
    membership: Arc<Membership>,
}

impl Oracle {
    /// Wraps a fallible membership function. Words are checked against the
    /// alphabet before `membership` sees them.
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        membership: impl Fn(&str) -> Result<bool, LanguageError> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            alphabet,
            membership: Arc::new(membership),
        }
    }

    pub fn from_predicate(
        name: impl Into<String>,
        alphabet: Alphabet,
        membership: impl Fn(&str) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self::new(name, alphabet, move |w| Ok(membership(w)))
    }

    /// The language recognised by an automaton.
    pub fn from_automaton(name: impl Into<String>, automaton: Arc<dyn DynAutomaton>) -> Self {
        let alphabet = automaton.alphabet().clone();
        Self::new(name, alphabet, move |w| Ok(automaton.accepts(w)?))
    }

    pub fn union(left: Arc<dyn Language>, right: Arc<dyn Language>) -> Self {
        let name = format!("({} ∪ {})", left.name(), right.name());
        let alphabet = left.alphabet().clone();
        Self::new(name, alphabet, move |w| Ok(left.contains(w)? || right.contains(w)?))
    }

    pub fn intersection(left: Arc<dyn Language>, right: Arc<dyn Language>) -> Self {
        let name = format!("({} ∩ {})", left.name(), right.name());
        let alphabet = left.alphabet().clone();
        Self::new(name, alphabet, move |w| Ok(left.contains(w)? && right.contains(w)?))
    }

    /// `u⁻¹L` as a language of its own.
    pub fn quotient(inner: Arc<dyn Language>, prefix: impl Into<String>) -> Self {
        let prefix = prefix.into();
        let name = format!("{}⁻¹{}", prefix, inner.name());
        let alphabet = inner.alphabet().clone();
        Self::new(name, alphabet, move |w| inner.contains(&format!("{prefix}{w}")))
    }
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oracle")
            .field("name", &self.name)
            .field("alphabet", &self.alphabet)
            .finish()
    }
}

impl Language for Oracle {
    fn name(&self) -> &str {
        &self.name
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn contains(&self, word: &str) -> Result<bool, LanguageError> {
        self.alphabet.validate(word)?;
        (self.membership)(word)
    }
}

/// Is `w ∈ u⁻¹L`?
pub fn quotient_member(lang: &dyn Language, prefix: &str, word: &str) -> Result<bool, LanguageError> {
    let mut uw = String::with_capacity(prefix.len() + word.len());
    uw.push_str(prefix);
    uw.push_str(word);
    lang.contains(&uw)
}

fn check_budget(rows: usize, columns: usize, budget: u64) -> Result<(), LanguageError> {
    let needed = rows as u128 * columns as u128;
    if needed > budget as u128 {
        Err(LanguageError::Budget { needed, budget })
    } else {
        Ok(())
    }
}

/// Packed membership bits of `prefix · w` over a list of suffixes.
fn signature(lang: &dyn Language, prefix: &str, suffixes: &[String]) -> Result<Vec<u64>, LanguageError> {
    let member = lang.residual(prefix)?;
    let mut bits = vec![0u64; suffixes.len().div_ceil(64)];
    for (i, w) in suffixes.iter().enumerate() {
        if member(w)? {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
    Ok(bits)
}

fn signatures(lang: &dyn Language, prefixes: &[String], suffixes: &[String]) -> Result<Vec<Vec<u64>>, LanguageError> {
    prefixes
        .par_iter()
        .map(|u| signature(lang, u, suffixes))
        .collect()
}

/// Groups items by signature in input order; the first member of each group
/// is its representative.
fn group(sigs: &[Vec<u64>]) -> Vec<Vec<usize>> {
    let mut index: HashMap<&[u64], usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, sig) in sigs.iter().enumerate() {
        match index.get(sig.as_slice()) {
            Some(&c) => classes[c].push(i),
            None => {
                index.insert(sig, classes.len());
                classes.push(vec![i]);
            }
        }
    }
    classes
}

/// Result of [`count_quotients`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientCountReport {
    pub language: String,
    pub order: usize,
    pub witness_bound: usize,
    /// Witnesses added on top of `A^{≤witness_bound}`.
    pub extra_witnesses: usize,
    pub prefixes: usize,
    pub witnesses: usize,
    /// Number of signature classes: a lower bound on `f_L(order)`.
    #[serde(rename = "count")]
    pub class_count_lower_bound: usize,
    pub bound: String,
    /// Canonically smallest prefix of each class, in canonical order.
    pub representatives: Vec<String>,
    pub class_sizes: Vec<usize>,
}

impl QuotientCountReport {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["class", "representative", "members"]).unwrap();
        for (i, (rep, size)) in self.representatives.iter().zip(&self.class_sizes).enumerate() {
            w.write_record([i.to_string(), rep.clone(), size.to_string()]).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

/// Partitions `A^{≤order}` by membership signatures over `A^{≤witness_bound}`.
pub fn count_quotients(
    lang: &dyn Language,
    order: usize,
    witness_bound: usize,
    budget: u64,
) -> Result<QuotientCountReport, LanguageError> {
    count_quotients_with(lang, order, witness_bound, &[], budget)
}

/// Like [`count_quotients`], with extra witnesses appended after
/// `A^{≤witness_bound}`.
pub fn count_quotients_with(
    lang: &dyn Language,
    order: usize,
    witness_bound: usize,
    extra: &[String],
    budget: u64,
) -> Result<QuotientCountReport, LanguageError> {
    let alphabet = lang.alphabet();
    for w in extra {
        alphabet.validate(w)?;
    }
    let rows = alphabet.count_up_to(order);
    let cols = alphabet.count_up_to(witness_bound).saturating_add(extra.len() as u128);
    let needed = rows.saturating_mul(cols);
    if needed > budget as u128 {
        return Err(LanguageError::Budget { needed, budget });
    }
    let prefixes: Vec<String> = alphabet.words_up_to(order).collect();
    let mut witnesses: Vec<String> = alphabet.words_up_to(witness_bound).collect();
    witnesses.extend(extra.iter().cloned());
    check_budget(prefixes.len(), witnesses.len(), budget)?;

    let sigs = signatures(lang, &prefixes, &witnesses)?;
    let classes = group(&sigs);
    Ok(QuotientCountReport {
        language: lang.name().to_string(),
        order,
        witness_bound,
        extra_witnesses: extra.len(),
        prefixes: prefixes.len(),
        witnesses: witnesses.len(),
        class_count_lower_bound: classes.len(),
        bound: "lower".into(),
        representatives: classes.iter().map(|c| prefixes[c[0]].clone()).collect(),
        class_sizes: classes.iter().map(Vec::len).collect(),
    })
}

/// Shortest witness `w` with `|w| ≤ max_len` on which `u⁻¹L` and `v⁻¹L`
/// disagree, earliest in canonical order.
pub fn distinguish(
    lang: &dyn Language,
    u: &str,
    v: &str,
    max_len: usize,
) -> Result<Option<String>, LanguageError> {
    if u == v {
        return Ok(None);
    }
    for w in lang.alphabet().words_up_to(max_len) {
        if quotient_member(lang, u, &w)? != quotient_member(lang, v, &w)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Which rows of a query table to materialise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowSpec {
    /// Every word of length at most the bound.
    Exhaustive(usize),
    /// An explicit list of row words.
    Explicit(Vec<String>),
}

impl RowSpec {
    fn rows(&self, alphabet: &Alphabet) -> Result<Vec<String>, LanguageError> {
        match self {
            RowSpec::Exhaustive(m) => Ok(alphabet.words_up_to(*m).collect()),
            RowSpec::Explicit(words) => {
                for w in words {
                    alphabet.validate(w)?;
                }
                Ok(words.clone())
            }
        }
    }

    fn row_count(&self, alphabet: &Alphabet) -> u128 {
        match self {
            RowSpec::Exhaustive(m) => alphabet.count_up_to(*m),
            RowSpec::Explicit(words) => words.len() as u128,
        }
    }
}

/// Result of [`query_table`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryTableReport {
    pub language: String,
    pub order: usize,
    pub row_spec: RowSpec,
    /// Columns are all prefixes of length at most `order`.
    pub columns: usize,
    pub rows: usize,
    /// Distinct row profiles: a lower bound on the query table size.
    #[serde(rename = "count")]
    pub distinct_row_count: usize,
    pub bound: String,
    /// First row word of each distinct profile.
    pub representatives: Vec<String>,
    /// Every row word with its profile over the columns in canonical order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profiles: Option<Vec<(String, String)>>,
}

impl QueryTableReport {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.profiles {
            Some(profiles) => {
                w.write_record(["row", "word", "profile"]).unwrap();
                for (i, (word, bits)) in profiles.iter().enumerate() {
                    w.write_record([i.to_string(), word.clone(), bits.clone()]).unwrap();
                }
            }
            None => {
                w.write_record(["profile", "representative"]).unwrap();
                for (i, word) in self.representatives.iter().enumerate() {
                    w.write_record([i.to_string(), word.clone()]).unwrap();
                }
            }
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

/// Profile of `word` over the left quotients `u⁻¹L`, `u ∈ columns`.
pub fn profile(lang: &dyn Language, columns: &[String], word: &str) -> Result<Vec<bool>, LanguageError> {
    columns.iter().map(|u| quotient_member(lang, u, word)).collect()
}

/// Counts distinct rows of the query table of order `order` restricted to
/// the rows in `rows`. When `dump` is set every row profile is included.
pub fn query_table(
    lang: &dyn Language,
    order: usize,
    rows: &RowSpec,
    budget: u64,
    dump: bool,
) -> Result<QueryTableReport, LanguageError> {
    let alphabet = lang.alphabet();
    let needed = alphabet.count_up_to(order).saturating_mul(rows.row_count(alphabet));
    if needed > budget as u128 {
        return Err(LanguageError::Budget { needed, budget });
    }
    let columns: Vec<String> = alphabet.words_up_to(order).collect();
    let row_words = rows.rows(alphabet)?;

    // column-major: one residual per prefix, evaluated on every row
    let by_column: Vec<Vec<bool>> = columns
        .par_iter()
        .map(|u| {
            let member = lang.residual(u)?;
            row_words.iter().map(|w| member(w)).collect()
        })
        .collect::<Result<_, LanguageError>>()?;
    let profiles: Vec<Vec<bool>> = (0..row_words.len())
        .map(|r| by_column.iter().map(|col| col[r]).collect())
        .collect();
    let packed: Vec<Vec<u64>> = profiles
        .iter()
        .map(|p| {
            let mut bits = vec![0u64; p.len().div_ceil(64)];
            for (i, &b) in p.iter().enumerate() {
                if b {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            bits
        })
        .collect();
    let classes = group(&packed);
    let dumped = dump.then(|| {
        row_words
            .iter()
            .zip(&profiles)
            .map(|(w, p)| (w.clone(), p.iter().map(|&b| if b { '1' } else { '0' }).collect()))
            .collect()
    });
    Ok(QueryTableReport {
        language: lang.name().to_string(),
        order,
        row_spec: rows.clone(),
        columns: columns.len(),
        rows: row_words.len(),
        distinct_row_count: classes.len(),
        bound: "lower".into(),
        representatives: classes.iter().map(|c| row_words[c[0]].clone()).collect(),
        profiles: dumped,
    })
}
