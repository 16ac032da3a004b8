//! Named, reproducible experiments. Each one rebuilds a finite instance of
//! a lower- or upper-bound construction from the library operations and
//! reports whether the measured values meet the claimed bound.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::crosscheck::{self, CrosscheckConfig};
use crate::error::{AutomatonError, LanguageError, ProbError};
use crate::gallery::{self, find_isolated_prime, GalleryError};
use crate::prob::{bin_frac, int_word, rabin_automaton, separate_quotients, Rational};
use crate::profiler::{check_bound, profile, DEFAULT_STATE_CAP};
use crate::quotient::{count_quotients, distinguish, query_table, RowSpec, DEFAULT_BUDGET};
use crate::word::Alphabet;

/// Experiment ids accepted by [`run`]. `hierarchy` takes `:<ℓ>`.
pub const REGISTRY: [&str; 10] = [
    "rabin-bin",
    "rabin-product",
    "rabin-claim",
    "gallery-equiv",
    "gallery-classes",
    "exp-alt",
    "hierarchy:2",
    "primes-hs",
    "primes-linear",
    "core-crosscheck",
];

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("unknown experiment {0:?}")]
    Unknown(String),
    #[error("bad parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error(transparent)]
    Prob(#[from] ProbError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Gallery(#[from] GalleryError),
}

/// Overrides shared by every experiment. `n` is the experiment's size
/// parameter; each experiment documents its default and its ceiling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: Option<usize>,
    pub seed: u64,
    pub budget: u64,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            n: None,
            seed: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Outcome of one experiment. The duration is informational and left out
/// of the serialized form so reports stay byte-identical across runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub id: String,
    pub anchor: String,
    pub parameters: BTreeMap<String, Value>,
    pub measured: BTreeMap<String, Value>,
    pub claimed: String,
    pub verdict: Verdict,
    #[serde(skip)]
    pub duration: Duration,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} [{}]\n  {}\n  claimed: {}\n", self.id, self.verdict, self.anchor, self.claimed);
        for (k, v) in &self.parameters {
            out.push_str(&format!("  param {k} = {v}\n"));
        }
        for (k, v) in &self.measured {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        out
    }

    /// `id,section,key,value` rows; nested values are written as JSON.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "section", "key", "value"]).unwrap();
        let row = |w: &mut csv::Writer<Vec<u8>>, section: &str, key: &str, value: String| {
            w.write_record([self.id.as_str(), section, key, &value]).unwrap();
        };
        row(&mut w, "report", "anchor", self.anchor.clone());
        row(&mut w, "report", "claimed", self.claimed.clone());
        row(&mut w, "report", "verdict", self.verdict.to_string());
        for (k, v) in &self.parameters {
            row(&mut w, "parameter", k, plain(v));
        }
        for (k, v) in &self.measured {
            row(&mut w, "measured", k, plain(v));
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

struct Draft {
    anchor: &'static str,
    parameters: BTreeMap<String, Value>,
    measured: BTreeMap<String, Value>,
    claimed: String,
    ok: bool,
}

impl Draft {
    fn new(anchor: &'static str, claimed: impl Into<String>) -> Self {
        Self {
            anchor,
            parameters: BTreeMap::new(),
            measured: BTreeMap::new(),
            claimed: claimed.into(),
            ok: true,
        }
    }

    fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    fn measure(&mut self, key: &str, value: impl Into<Value>) {
        self.measured.insert(key.to_string(), value.into());
    }

    fn require(&mut self, ok: bool) {
        self.ok &= ok;
    }
}

/// Runs one experiment by id.
pub fn run(id: &str, params: &Params) -> Result<ExperimentReport, ExperimentError> {
    let start = Instant::now();
    let draft = match id {
        "rabin-bin" => rabin_bin(params)?,
        "rabin-product" => rabin_product(params)?,
        "rabin-claim" => rabin_claim(params)?,
        "gallery-equiv" => gallery_equiv()?,
        "gallery-classes" => gallery_classes()?,
        "exp-alt" => exp_alt(params)?,
        "primes-hs" => primes_hs(params)?,
        "primes-linear" => primes_linear(params)?,
        "core-crosscheck" => core_crosscheck(params),
        _ => match id.strip_prefix("hierarchy:").map(str::parse::<u32>) {
            Some(Ok(l)) => hierarchy(l, params)?,
            _ => return Err(ExperimentError::Unknown(id.to_string())),
        },
    };
    Ok(ExperimentReport {
        id: id.to_string(),
        anchor: draft.anchor.to_string(),
        parameters: draft.parameters,
        measured: draft.measured,
        claimed: draft.claimed,
        verdict: Verdict::from_bool(draft.ok),
        duration: start.elapsed(),
    })
}

fn size(params: &Params, default: usize, min: usize, max: usize) -> Result<usize, ExperimentError> {
    let n = params.n.unwrap_or(default);
    if n < min || n > max {
        return Err(ExperimentError::Parameter(format!("n = {n} outside {min}..={max}")));
    }
    Ok(n)
}

fn binary() -> Alphabet {
    Alphabet::from_str_letters("01")
}

/// `P(u) = bin(u)` for every binary `u` with `|u| ≤ n` (default 12, max 16).
fn rabin_bin(params: &Params) -> Result<Draft, ExperimentError> {
    let n = size(params, 12, 0, 16)?;
    let mut d = Draft::new(
        "Rabin's automaton accepts u with probability bin(u)",
        "P(u) = bin(u) exactly for all u ∈ {0,1}^{≤n}",
    );
    d.param("n", n);
    let aut = rabin_automaton();
    let (mut words, mut mismatches) = (0usize, 0usize);
    for u in binary().words_up_to(n) {
        words += 1;
        mismatches += usize::from(aut.acceptance_probability(&u)? != bin_frac(&u)?);
    }
    d.measure("words", words);
    d.measure("mismatches", mismatches);
    d.require(mismatches == 0);
    Ok(d)
}

/// `P(u₁#…#u_k) = Π bin(u_i)` on `{0,1,#}^{≤n}` (default 8, max 10).
fn rabin_product(params: &Params) -> Result<Draft, ExperimentError> {
    let n = size(params, 8, 0, 10)?;
    let mut d = Draft::new(
        "the # reset multiplies the block values",
        "P(u1#u2#...#uk) = bin(u1)·bin(u2)···bin(uk) exactly for all words of length ≤ n",
    );
    d.param("n", n);
    let aut = rabin_automaton();
    let (mut words, mut mismatches) = (0usize, 0usize);
    for w in aut.alphabet().words_up_to(n) {
        let mut product = Rational::one();
        for block in w.split('#') {
            product *= bin_frac(block)?;
        }
        words += 1;
        mismatches += usize::from(aut.acceptance_probability(&w)? != product);
    }
    d.measure("words", words);
    d.measure("mismatches", mismatches);
    d.require(mismatches == 0);
    Ok(d)
}

/// For `k = 1..=n` (default 8, max 10), every pair of distinct `u, v ∈ {0,1}^k`
/// gets a separating suffix for `u1` and `v1`.
fn rabin_claim(params: &Params) -> Result<Draft, ExperimentError> {
    let n = size(params, 8, 1, 10)?;
    let mut d = Draft::new(
        "exponentially many words with pairwise distinct left quotients of L_{1/2}",
        "2^k pairwise distinct quotients of order k+1, for every k ≤ n",
    );
    d.param("n", n);
    let mut per_length = Vec::new();
    let mut longest = 0usize;
    for k in 1..=n {
        let words: Vec<String> = binary().words_of_length(k).collect();
        let (mut separated, mut failed) = (0usize, 0usize);
        for (i, u) in words.iter().enumerate() {
            for v in &words[i + 1..] {
                match separate_quotients(u, v) {
                    Ok(s) => {
                        separated += 1;
                        longest = longest.max(s.chars().count());
                    }
                    Err(ProbError::Unverified(_)) => failed += 1,
                    Err(e) => return Err(e.into()),
                }
            }
        }
        let certified = if failed == 0 { words.len() } else { 0 };
        d.require(failed == 0);
        per_length.push(json!({
            "k": k,
            "pairs": separated + failed,
            "separated": separated,
            "certified_classes": certified,
        }));
    }
    d.measure("lengths", per_length);
    d.measure("longest_suffix", longest);
    Ok(d)
}

/// Oracle/automaton agreement for every gallery entry with an automaton.
fn gallery_equiv() -> Result<Draft, ExperimentError> {
    let mut d = Draft::new(
        "the gallery automata recognise their languages",
        "zero mismatches up to each validation bound",
    );
    for name in ["count-eq3", "not-eq", "lex", "l-hier:2", "maj2"] {
        let spec = gallery::by_name(name)?;
        let bad = gallery::mismatches(&spec, spec.validation_bound)?;
        d.require(bad.is_empty());
        d.measure(
            name,
            json!({
                "bound": spec.validation_bound,
                "words": spec.alphabet().count_up_to(spec.validation_bound) as u64,
                "mismatches": bad.len(),
                "first_mismatch": bad.first(),
            }),
        );
    }
    Ok(d)
}

/// Sampled declared classes, plus `(2n+1)²` for CountEq₃.
fn gallery_classes() -> Result<Draft, ExperimentError> {
    let mut d = Draft::new(
        "declared state-complexity classes of the gallery automata",
        "|R(n)| ≤ C·f(n) on each sampled range; CountEq3 also ≤ (2n+1)^2",
    );
    for name in ["count-eq3", "not-eq", "lex", "l-hier:2", "maj2"] {
        let spec = gallery::by_name(name)?;
        let (Some(aut), Some(class)) = (&spec.automaton, spec.class) else {
            continue;
        };
        let prof = profile(name, aut.as_ref(), class.max_n, DEFAULT_STATE_CAP)?;
        let check = check_bound(&prof, class.growth, class.constant);
        d.require(check.pass);
        let mut entry = json!({
            "class": class.growth.to_string(),
            "constant": class.constant,
            "max_n": class.max_n,
            "max_ratio": check.max_ratio,
            "final_count": prof.counts.last().map(|c| c.1),
            "pass": check.pass,
        });
        if name == "count-eq3" {
            let square = prof.counts.iter().all(|&(n, c)| c <= (2 * n + 1) * (2 * n + 1));
            d.require(square);
            entry["within_2n_plus_1_squared"] = json!(square);
        }
        d.measure(name, entry);
    }
    Ok(d)
}

/// Every subset of `{0,1}^n` as a suffix: `#s₁#s₂…` with `transform`
/// applied to each member, in bitmask order.
fn subset_rows(n: usize, transform: impl Fn(&str) -> String) -> Vec<String> {
    let members: Vec<String> = binary().words_of_length(n).collect();
    (0u64..1 << members.len())
        .map(|mask| {
            members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, m)| format!("#{}", transform(m)))
                .collect()
        })
        .collect()
}

/// Query table of `L_exp` at order `n` (default 2, max 3) on the `2^{2^n}`
/// subset witnesses.
fn exp_alt(params: &Params) -> Result<Draft, ExperimentError> {
    let n = size(params, 2, 1, 3)?;
    let mut d = Draft::new(
        "the query table of L_exp of order n has at least 2^(2^n) rows",
        "2^(2^n) distinct profiles",
    );
    d.param("n", n);
    let spec = gallery::l_exp();
    let rows = subset_rows(n, |s| s.chars().rev().collect());
    let report = query_table(spec.oracle.as_ref(), n, &RowSpec::Explicit(rows), params.budget, false)?;
    let claimed = 1usize << (1 << n);
    d.measure("rows", report.rows);
    d.measure("columns", report.columns);
    d.measure("distinct_profiles", report.distinct_row_count);
    d.require(report.distinct_row_count >= claimed);
    Ok(d)
}

/// `L_ℓ`: query table of order `n + 2^{n/ℓ}` on the subset witnesses
/// (default `n = ℓ`; `ℓ` must divide `n`), and the sampled profile bound.
fn hierarchy(exponent: u32, params: &Params) -> Result<Draft, ExperimentError> {
    let spec = gallery::l_hierarchy(exponent)?;
    let l = exponent as usize;
    let n = size(params, l, 1, 2 * l)?;
    if n % l != 0 {
        return Err(ExperimentError::Parameter(format!("ℓ = {l} must divide n = {n}")));
    }
    let mut d = Draft::new(
        "L_ℓ has an O(n^ℓ) alternating automaton and query tables of order n + 2^(n/ℓ) with 2^(2^n) rows",
        "2^(2^n) distinct profiles; |R(m)| ≤ C·m^ℓ on the sampled range",
    );
    d.param("l", exponent);
    d.param("n", n);
    let diamonds = 1usize << (n / l);
    let order = n + diamonds;
    let rows = subset_rows(n, str::to_string);
    let report = query_table(spec.oracle.as_ref(), order, &RowSpec::Explicit(rows), params.budget, false)?;
    let claimed = 1usize << (1 << n);
    d.measure("order", order);
    d.measure("diamonds", diamonds);
    d.measure("columns", report.columns);
    d.measure("distinct_profiles", report.distinct_row_count);
    d.require(report.distinct_row_count >= claimed);

    let class = spec.class.expect("L_ℓ declares a class");
    let aut = spec.automaton.as_ref().expect("L_ℓ has an automaton");
    let prof = profile(&spec.name, aut.as_ref(), class.max_n, DEFAULT_STATE_CAP)?;
    let check = check_bound(&prof, class.growth, class.constant);
    d.measure(
        "profile",
        json!({
            "class": class.growth.to_string(),
            "constant": class.constant,
            "max_n": class.max_n,
            "max_ratio": check.max_ratio,
            "pass": check.pass,
        }),
    );
    d.require(check.pass);
    Ok(d)
}

/// Odd binary words of length `n`, least significant bit first.
fn odd_words(n: usize) -> Vec<String> {
    binary().words_of_length(n).filter(|w| w.starts_with('1')).collect()
}

/// Pairwise distinct quotients of `Primes` for odd words of length `n`
/// (default 8, min 2, max 12). Witnesses are searched up to `24 − n` letters.
fn primes_hs(params: &Params) -> Result<Draft, ExperimentError> {
    let n = size(params, 8, 2, 12)?;
    let cap = 24 - n;
    let mut d = Draft::new(
        "left quotients of Primes by distinct odd words are different",
        "all pairs distinguished; at least 2^(n-1) quotient classes of order n",
    );
    d.param("n", n);
    d.param("witness_cap", cap);
    let spec = gallery::primes();
    let lang = spec.oracle.as_ref();
    let words = odd_words(n);
    let (mut pairs, mut undistinguished, mut longest) = (0usize, 0usize, 0usize);
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            pairs += 1;
            match distinguish(lang, u, v, cap)? {
                Some(w) => longest = longest.max(w.len()),
                None => undistinguished += 1,
            }
        }
    }
    d.measure("pairs", pairs);
    d.measure("undistinguished", undistinguished);
    d.measure("longest_witness", longest);
    let report = count_quotients(lang, n, longest, params.budget)?;
    d.measure("classes", report.class_count_lower_bound);
    d.require(undistinguished == 0 && report.class_count_lower_bound >= words.len());
    Ok(d)
}

/// Isolated primes `a + 2^n k` for every odd `a < 2^n` (default n = 4, max 6),
/// searched up to `k ≤ 10^7`; their rows have singleton odd profiles.
fn primes_linear(params: &Params) -> Result<Draft, ExperimentError> {
    const LIMIT: u64 = 10_000_000;
    let n = size(params, 4, 1, 6)?;
    let mut d = Draft::new(
        "Primes has query tables of order n with at least 2^(n-1) rows",
        "2^(n-1) pairwise distinct rows, each with exactly one odd column set",
    );
    d.param("n", n);
    d.param("limit", LIMIT);
    let bits = n as u32;
    let mut rows = Vec::new();
    let mut found = BTreeMap::new();
    for a in (1..1u64 << n).step_by(2) {
        match find_isolated_prime(a, bits, LIMIT) {
            Some(k) => {
                found.insert(a.to_string(), json!({ "k": k, "p": a + (k << n) }));
                rows.push(int_word(k));
            }
            None => {
                found.insert(a.to_string(), Value::Null);
                d.require(false);
            }
        }
    }
    d.measure("isolated", json!(found));
    if rows.len() != 1 << (n - 1) {
        return Ok(d);
    }
    let spec = gallery::primes();
    let lang = spec.oracle.as_ref();
    let report = query_table(lang, n, &RowSpec::Explicit(rows.clone()), params.budget, true)?;
    let columns: Vec<String> = spec.alphabet().words_up_to(n).collect();
    let odd: Vec<usize> = columns
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() == n && c.starts_with('1'))
        .map(|(i, _)| i)
        .collect();
    let singletons = report
        .profiles
        .as_ref()
        .expect("dumped")
        .iter()
        .filter(|(_, bits)| odd.iter().filter(|&&i| bits.as_bytes()[i] == b'1').count() == 1)
        .count();
    d.measure("distinct_profiles", report.distinct_row_count);
    d.measure("singleton_rows", singletons);
    d.require(report.distinct_row_count == rows.len() && singletons == rows.len());
    Ok(d)
}

/// The seeded property suites of [`crosscheck::run`].
fn core_crosscheck(params: &Params) -> Draft {
    let config = CrosscheckConfig {
        seed: params.seed,
        automata: params.n.unwrap_or(1000),
        ..CrosscheckConfig::default()
    };
    let mut d = Draft::new(
        "acceptance games, determinization, quotient lattice laws and formula monotonicity agree",
        "zero disagreements",
    );
    d.param("seed", params.seed);
    d.param("automata", config.automata);
    d.param("max_states", config.max_states);
    d.param("max_word_len", config.max_word_len);
    d.param("formula_pairs", config.formula_pairs);
    let report = crosscheck::run(&config);
    d.require(report.clean());
    d.measure("report", serde_json::to_value(&report).expect("plain data"));
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(n: usize) -> Params {
        Params {
            n: Some(n),
            ..Params::default()
        }
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(run("nope", &Params::default()), Err(ExperimentError::Unknown(_))));
        assert!(matches!(run("hierarchy:x", &Params::default()), Err(ExperimentError::Unknown(_))));
    }

    #[test]
    fn exp_alt_order_one() {
        let r = run("exp-alt", &small(1)).unwrap();
        assert!(r.passed());
        assert_eq!(r.measured["distinct_profiles"], json!(4));
    }

    #[test]
    fn rabin_claim_small() {
        let r = run("rabin-claim", &small(4)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn primes_hs_four() {
        let r = run("primes-hs", &small(4)).unwrap();
        assert!(r.passed());
        assert_eq!(r.measured["pairs"], json!(28));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run("primes-linear", &small(2)).unwrap();
        let b = run("primes-linear", &small(2)).unwrap();
        assert!(a.passed());
        assert_eq!(a.to_json(), b.to_json());
        assert!(!a.to_json().contains("duration"));
        assert!(a.to_csv().starts_with("id,section,key,value\n"));
    }

    #[test]
    fn parameter_ceiling() {
        assert!(matches!(run("exp-alt", &small(9)), Err(ExperimentError::Parameter(_))));
        assert!(matches!(run("hierarchy:2", &small(3)), Err(ExperimentError::Parameter(_))));
    }
}
