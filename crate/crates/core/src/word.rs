//! Letters, alphabets and the canonical enumeration of words.
//!
//! Words are plain strings whose `char`s are letters. The canonical order on
//! words is length first, then lexicographic according to the alphabet's
//! declared letter order (not Unicode order).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::LanguageError;

/// A finite, duplicate-free, ordered list of letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from letters in their declared order.
    ///
    /// Returns `None` if the list is empty or contains duplicates.
    pub fn new(letters: impl IntoIterator<Item = char>) -> Option<Self> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return None;
        }
        for (i, a) in letters.iter().enumerate() {
            if letters[..i].contains(a) {
                return None;
            }
        }
        Some(Self { letters })
    }

    /// Convenience constructor for the literal alphabets used throughout the
    /// crate. Panics on an invalid literal.
    pub fn from_str_letters(letters: &str) -> Self {
        Self::new(letters.chars()).expect("invalid alphabet literal")
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, letter: char) -> bool {
        self.letters.contains(&letter)
    }

    /// Position of `letter` in the declared order.
    pub fn index_of(&self, letter: char) -> Option<usize> {
        self.letters.iter().position(|&a| a == letter)
    }

    /// Checks that every letter of `word` belongs to the alphabet.
    pub fn validate(&self, word: &str) -> Result<(), LanguageError> {
        match word.chars().find(|&c| !self.contains(c)) {
            Some(letter) => Err(LanguageError::UnknownLetter {
                letter,
                alphabet: self.to_string(),
            }),
            None => Ok(()),
        }
    }

    /// Compares two words in canonical (length, then declared-letter) order.
    ///
    /// Letters outside the alphabet sort after every declared letter.
    pub fn cmp_words(&self, u: &str, v: &str) -> Ordering {
        let key = |c: char| self.index_of(c).unwrap_or(usize::MAX);
        u.chars()
            .count()
            .cmp(&v.chars().count())
            .then_with(|| u.chars().map(key).cmp(v.chars().map(key)))
    }

    /// All words of length exactly `n`, in canonical order.
    pub fn words_of_length(&self, n: usize) -> WordsOfLength<'_> {
        WordsOfLength {
            alphabet: self,
            digits: vec![0; n],
            done: false,
        }
    }

    /// All words of length at most `n`, in canonical order.
    pub fn words_up_to(&self, n: usize) -> impl Iterator<Item = String> + '_ {
        (0..=n).flat_map(move |k| self.words_of_length(k))
    }

    /// `|A^{≤n}|`, saturating at `u128::MAX`.
    pub fn count_up_to(&self, n: usize) -> u128 {
        let k = self.len() as u128;
        let mut total: u128 = 0;
        let mut layer: u128 = 1;
        for _ in 0..=n {
            total = total.saturating_add(layer);
            layer = layer.saturating_mul(k);
        }
        total
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over `A^n` in canonical order, see [`Alphabet::words_of_length`].
pub struct WordsOfLength<'a> {
    alphabet: &'a Alphabet,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for WordsOfLength<'_> {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        if self.done {
            return None;
        }
        let letters = self.alphabet.letters();
        let word = self.digits.iter().map(|&d| letters[d]).collect();
        // odometer increment, last position fastest
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < letters.len() {
                break;
            }
            self.digits[i] = 0;
        }
        Some(word)
    }
}

/// Length of a word in letters.
pub fn word_len(word: &str) -> usize {
    word.chars().count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_duplicates() {
        assert!(Alphabet::new([]).is_none());
        assert!(Alphabet::new(['a', 'b', 'a']).is_none());
        assert!(Alphabet::new(['#', '0']).is_some());
    }

    #[test]
    fn enumeration_follows_declared_order() {
        let a = Alphabet::from_str_letters("ba");
        let words: Vec<String> = a.words_up_to(2).collect();
        assert_eq!(words, ["", "b", "a", "bb", "ba", "ab", "aa"]);
        assert_eq!(a.count_up_to(2), 7);
    }

    #[test]
    fn canonical_comparison() {
        let a = Alphabet::from_str_letters("01#");
        assert_eq!(a.cmp_words("#", "00"), Ordering::Less);
        assert_eq!(a.cmp_words("1#", "10"), Ordering::Greater);
        assert_eq!(a.cmp_words("", ""), Ordering::Equal);
    }

    #[test]
    fn validate_reports_letter() {
        let a = Alphabet::from_str_letters("01");
        assert!(a.validate("0110").is_ok());
        assert!(matches!(
            a.validate("012"),
            Err(LanguageError::UnknownLetter { letter: '2', .. })
        ));
    }

    #[test]
    fn multibyte_letters() {
        let a = Alphabet::from_str_letters("01◊#");
        assert_eq!(a.words_of_length(1).collect::<Vec<_>>(), ["0", "1", "◊", "#"]);
        assert_eq!(word_len("◊◊0"), 3);
    }
}
