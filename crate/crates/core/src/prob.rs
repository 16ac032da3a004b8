//! Exact-rational probabilistic automata and cut-point languages.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{LanguageError, ProbError};
use crate::quotient::{Language, Residual};
use crate::word::Alphabet;

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

type Matrix = Vec<Vec<Rational>>;

/// A finite probabilistic automaton. `matrices[i][s][t]` is the probability
/// of moving from `s` to `t` on the `i`-th letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbAutomaton {
    alphabet: Alphabet,
    states: Vec<String>,
    initial: usize,
    accepting: Vec<bool>,
    matrices: Vec<Matrix>,
}

/// A row of a transition matrix that is not a distribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    RowSum { state: String, letter: char, sum: String },
    OutOfRange { state: String, letter: char, target: String, value: String },
}

impl ProbAutomaton {
    /// Builds and validates a probabilistic automaton.
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        initial: usize,
        accepting: Vec<bool>,
        matrices: Vec<Matrix>,
    ) -> Result<Self, ProbError> {
        let aut = Self::new_unchecked(alphabet, states, initial, accepting, matrices);
        let violations = aut.validate_stochastic();
        if let Some(v) = violations.first() {
            return Err(ProbError::NotStochastic(format!("{v:?}")));
        }
        Ok(aut)
    }

    /// Builds without checking stochasticity. Panics on shape mismatches.
    pub fn new_unchecked(
        alphabet: Alphabet,
        states: Vec<String>,
        initial: usize,
        accepting: Vec<bool>,
        matrices: Vec<Matrix>,
    ) -> Self {
        let n = states.len();
        assert!(initial < n && accepting.len() == n && matrices.len() == alphabet.len());
        assert!(matrices.iter().all(|m| m.len() == n && m.iter().all(|r| r.len() == n)));
        Self {
            alphabet,
            states,
            initial,
            accepting,
            matrices,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
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

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// Lists every row that is not a probability distribution.
    pub fn validate_stochastic(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (li, m) in self.matrices.iter().enumerate() {
            let letter = self.alphabet.letters()[li];
            for (s, row) in m.iter().enumerate() {
                for (t, p) in row.iter().enumerate() {
                    if p.is_negative() || *p > Rational::one() {
                        out.push(Violation::OutOfRange {
                            state: self.states[s].clone(),
                            letter,
                            target: self.states[t].clone(),
                            value: p.to_string(),
                        });
                    }
                }
                let sum: Rational = row.iter().sum();
                if !sum.is_one() {
                    out.push(Violation::RowSum {
                        state: self.states[s].clone(),
                        letter,
                        sum: sum.to_string(),
                    });
                }
            }
        }
        out
    }

    fn letter_index(&self, letter: char) -> Result<usize, ProbError> {
        self.alphabet.index_of(letter).ok_or(ProbError::UnknownLetter(letter))
    }

    /// The distribution over states after reading `word` from the initial
    /// state.
    pub fn distribution(&self, word: &str) -> Result<Vec<Rational>, ProbError> {
        let mut row = vec![Rational::zero(); self.states.len()];
        row[self.initial] = Rational::one();
        self.advance(row, word)
    }

    /// Pushes a distribution through the matrices of `word`.
    pub fn advance(&self, mut row: Vec<Rational>, word: &str) -> Result<Vec<Rational>, ProbError> {
        let n = self.states.len();
        for letter in word.chars() {
            let m = &self.matrices[self.letter_index(letter)?];
            let mut next = vec![Rational::zero(); n];
            for (s, mass) in row.iter().enumerate() {
                if mass.is_zero() {
                    continue;
                }
                for (t, p) in m[s].iter().enumerate() {
                    if !p.is_zero() {
                        next[t] += mass * p;
                    }
                }
            }
            row = next;
        }
        Ok(row)
    }

    /// `P_A(w)`: the mass on accepting states after reading `w`.
    pub fn acceptance_probability(&self, word: &str) -> Result<Rational, ProbError> {
        Ok(self.accepted_mass(&self.distribution(word)?))
    }

    /// Mass of a distribution on the accepting states.
    pub fn accepted_mass(&self, row: &[Rational]) -> Rational {
        row.iter()
            .zip(&self.accepting)
            .filter(|(_, &acc)| acc)
            .map(|(p, _)| p)
            .sum()
    }

    /// `φ(w)` as a full matrix, the image of `w` under the word morphism.
    pub fn word_matrix(&self, word: &str) -> Result<Vec<Vec<Rational>>, ProbError> {
        let n = self.states.len();
        let mut acc: Matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        for letter in word.chars() {
            acc = mat_mul(&acc, &self.matrices[self.letter_index(letter)?]);
        }
        Ok(acc)
    }
}

/// Plain dense product of square rational matrices.
pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Rabin's binary-expansion automaton with the extra `#` transition from
/// the accepting state back to the initial one.
///
/// States are `q0` (initial), `q1` (accepting) and the sink `dead`.
pub fn rabin_automaton() -> ProbAutomaton {
    let (z, one, half) = (rational(0, 1), rational(1, 1), rational(1, 2));
    // rows: q0, q1, dead
    let on0 = vec![
        vec![one.clone(), z.clone(), z.clone()],
        vec![half.clone(), half.clone(), z.clone()],
        vec![z.clone(), z.clone(), one.clone()],
    ];
    let on1 = vec![
        vec![half.clone(), half.clone(), z.clone()],
        vec![z.clone(), one.clone(), z.clone()],
        vec![z.clone(), z.clone(), one.clone()],
    ];
    let on_hash = vec![
        vec![z.clone(), z.clone(), one.clone()],
        vec![one.clone(), z.clone(), z.clone()],
        vec![z.clone(), z, one],
    ];
    ProbAutomaton::new(
        Alphabet::from_str_letters("01#"),
        vec!["q0".into(), "q1".into(), "dead".into()],
        0,
        vec![false, true, false],
        vec![on0, on1, on_hash],
    )
    .expect("reference matrices are stochastic")
}

/// The cut-point language `{w | P_A(w) > threshold}`.
#[derive(Debug, Clone)]
pub struct ThresholdLanguage {
    name: String,
    automaton: ProbAutomaton,
    threshold: Rational,
}

impl ThresholdLanguage {
    pub fn new(name: impl Into<String>, automaton: ProbAutomaton, threshold: Rational) -> Self {
        Self {
            name: name.into(),
            automaton,
            threshold,
        }
    }

    /// `L_{1/2}` of [`rabin_automaton`].
    pub fn rabin_half() -> Self {
        Self::new("rabin-half", rabin_automaton(), rational(1, 2))
    }

    pub fn automaton(&self) -> &ProbAutomaton {
        &self.automaton
    }

    pub fn threshold(&self) -> &Rational {
        &self.threshold
    }

    /// Strict comparison of the exact acceptance probability with the cut point.
    pub fn member(&self, word: &str) -> Result<bool, ProbError> {
        Ok(self.automaton.acceptance_probability(word)? > self.threshold)
    }
}

impl Language for ThresholdLanguage {
    fn name(&self) -> &str {
        &self.name
    }

    fn alphabet(&self) -> &Alphabet {
        self.automaton.alphabet()
    }

    fn contains(&self, word: &str) -> Result<bool, LanguageError> {
        self.automaton.alphabet().validate(word)?;
        Ok(self.member(word).expect("letters validated"))
    }

    fn residual<'a>(&'a self, prefix: &str) -> Result<Residual<'a>, LanguageError> {
        self.automaton.alphabet().validate(prefix)?;
        let start = self.automaton.distribution(prefix).expect("letters validated");
        Ok(Box::new(move |w: &str| {
            self.automaton.alphabet().validate(w)?;
            let row = self.automaton.advance(start.clone(), w).expect("letters validated");
            Ok(self.automaton.accepted_mass(&row) > self.threshold)
        }))
    }
}

fn binary_digits(word: &str) -> Result<Vec<bool>, ProbError> {
    word.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(ProbError::NotBinary(other)),
        })
        .collect()
}

/// `bin(a₁…aₙ) = a₁/2ⁿ + … + aₙ/2`: the last letter is the most significant
/// binary digit after the point.
pub fn bin_frac(word: &str) -> Result<Rational, ProbError> {
    let digits = binary_digits(word)?;
    let mut num = BigInt::zero();
    for (i, &d) in digits.iter().enumerate() {
        if d {
            num += BigInt::one() << i;
        }
    }
    Ok(Rational::new(num, BigInt::one() << digits.len()))
}

/// `Σ w(i)·2^i`: least significant digit first. Fails beyond 64 bits.
pub fn bin_int(word: &str) -> Result<u64, LanguageError> {
    let mut value: u64 = 0;
    for (i, c) in word.chars().enumerate() {
        match c {
            '0' => {}
            '1' if i < 64 => value |= 1 << i,
            '1' => return Err(LanguageError::Overflow(word.to_string())),
            other => {
                return Err(LanguageError::UnknownLetter {
                    letter: other,
                    alphabet: "{0,1}".into(),
                })
            }
        }
    }
    Ok(value)
}

/// LSB-first binary word of `k`, without trailing zeros (`0` is `ε`).
pub fn int_word(mut k: u64) -> String {
    let mut out = String::new();
    while k > 0 {
        out.push(if k & 1 == 1 { '1' } else { '0' });
        k >>= 1;
    }
    out
}

/// LSB-first binary word of `value`, padded to exactly `len` letters.
fn padded_word(value: &BigInt, len: usize) -> String {
    (0..len).map(|i| if value.bit(i as u64) { '1' } else { '0' }).collect()
}

/// The shortest binary word `w` with `lo < bin_frac(w) < hi`, canonically
/// smallest among the shortest.
pub fn dyadic_witness(lo: &Rational, hi: &Rational) -> Result<String, ProbError> {
    if lo >= hi || lo.is_negative() || *hi > Rational::one() {
        return Err(ProbError::DegenerateInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    // bin_frac of a length-k word is a/2^k with a its LSB-first value
    let mut k = 0usize;
    loop {
        let scale = BigInt::one() << k;
        let lo_scaled = lo * Rational::from_integer(scale.clone());
        let hi_scaled = hi * Rational::from_integer(scale);
        // smallest integer > lo·2^k
        let first: BigInt = lo_scaled.floor().to_integer() + 1;
        let mut candidates = Vec::new();
        let mut a = first;
        while Rational::from_integer(a.clone()) < hi_scaled {
            candidates.push(padded_word(&a, k));
            a += 1;
        }
        if !candidates.is_empty() {
            return Ok(candidates.into_iter().min().expect("non-empty"));
        }
        k += 1;
    }
}

/// A suffix separating the quotients of `u·1` and `v·1` in `L_{1/2}` of
/// [`rabin_automaton`]. The separation is re-verified exactly.
pub fn separate_quotients(u: &str, v: &str) -> Result<String, ProbError> {
    if u == v || u.chars().count() != v.chars().count() {
        return Err(ProbError::BadPair);
    }
    let (u1, v1) = (format!("{u}1"), format!("{v}1"));
    let (bu, bv) = (bin_frac(&u1)?, bin_frac(&v1)?);
    let (lo1, hi1) = if bu < bv { (bu, bv) } else { (bv, bu) };
    let two = rational(2, 1);
    let lo = (&two * &hi1).recip();
    let hi = (&two * &lo1).recip();
    let suffix = format!("#{}", dyadic_witness(&lo, &hi)?);

    let lang = ThresholdLanguage::rabin_half();
    if lang.member(&format!("{u1}{suffix}"))? == lang.member(&format!("{v1}{suffix}"))? {
        return Err(ProbError::Unverified(suffix));
    }
    Ok(suffix)
}
