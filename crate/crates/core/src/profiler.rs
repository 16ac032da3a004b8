//! Empirical state complexity: reachable-state counts against sampled bounds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automaton::DynAutomaton;
use crate::error::AutomatonError;

/// Default cap on explored states per profile.
pub const DEFAULT_STATE_CAP: usize = 5_000_000;

/// Growth functions for declared classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Growth {
    Const,
    Linear,
    Quadratic,
    /// `n^ℓ`
    Poly(u32),
    /// `2^n`
    Exp2,
}

impl Growth {
    /// `max(1, f(n))`, saturating. The floor at one lets linear and
    /// polynomial classes hold at `n = 0`, where one state is always
    /// reachable.
    pub fn eval(self, n: usize) -> u128 {
        let n = n as u128;
        let raw = match self {
            Growth::Const => 1,
            Growth::Linear => n,
            Growth::Quadratic => n.saturating_mul(n),
            Growth::Poly(k) => n.saturating_pow(k),
            Growth::Exp2 => {
                if n >= 127 {
                    u128::MAX
                } else {
                    1 << n
                }
            }
        };
        raw.max(1)
    }
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Growth::Const => f.write_str("1"),
            Growth::Linear => f.write_str("n"),
            Growth::Quadratic => f.write_str("n^2"),
            Growth::Poly(k) => write!(f, "n^{k}"),
            Growth::Exp2 => f.write_str("2^n"),
        }
    }
}

impl FromStr for Growth {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "1" | "const" => Ok(Growth::Const),
            "n" | "linear" => Ok(Growth::Linear),
            "n^2" | "n2" | "quadratic" => Ok(Growth::Quadratic),
            "2^n" | "exp" => Ok(Growth::Exp2),
            _ => s
                .strip_prefix("n^")
                .and_then(|k| k.parse().ok())
                .map(Growth::Poly)
                .ok_or_else(|| format!("unknown growth class {s:?}")),
        }
    }
}

/// `|R(n)|` for `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub automaton: String,
    pub counts: Vec<(usize, usize)>,
}

impl ComplexityProfile {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in &self.counts {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }

    /// Whitespace-separated columns with a comment header, for gnuplot.
    pub fn to_columns(&self) -> String {
        let mut out = format!("# {}\n# n count\n", self.automaton);
        for (n, c) in &self.counts {
            out.push_str(&format!("{n} {c}\n"));
        }
        out
    }
}

/// Measures the reachable-state counts of an automaton.
pub fn profile(
    name: &str,
    automaton: &dyn DynAutomaton,
    n_max: usize,
    state_cap: usize,
) -> Result<ComplexityProfile, AutomatonError> {
    let layers = automaton.reachable_counts(n_max, state_cap)?;
    Ok(ComplexityProfile {
        automaton: name.to_string(),
        counts: layers.into_iter().enumerate().collect(),
    })
}

/// Verdict of a sampled bound at one depth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSample {
    pub n: usize,
    pub count: usize,
    pub limit: u128,
    pub pass: bool,
}

/// Result of [`check_bound`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub class: Growth,
    pub constant: u64,
    pub samples: Vec<BoundSample>,
    /// Largest `count / f(n)` observed.
    pub max_ratio: f64,
    pub pass: bool,
}

/// Checks `count(n) ≤ constant · max(1, f(n))` at every sampled depth.
pub fn check_bound(profile: &ComplexityProfile, class: Growth, constant: u64) -> BoundCheck {
    let mut max_ratio: f64 = 0.0;
    let samples: Vec<BoundSample> = profile
        .counts
        .iter()
        .map(|&(n, count)| {
            let f = class.eval(n);
            let limit = f.saturating_mul(constant as u128);
            max_ratio = max_ratio.max(count as f64 / f as f64);
            BoundSample {
                n,
                count,
                limit,
                pass: count as u128 <= limit,
            }
        })
        .collect();
    BoundCheck {
        class,
        constant,
        pass: samples.iter().all(|s| s.pass),
        samples,
        max_ratio,
    }
}
