//! Finite words over the binary alphabet `{1, 2}` and their run-length encodings.
//!
//! The textual form of a word is a string of the characters `1` and `2`.
//! The empty word is displayed as `ε`; both `""` and `"ε"` parse to it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Display form of the empty word.
pub const EPSILON: &str = "ε";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Symbol {
    One = 1,
    Two = 2,
}

impl Symbol {
    pub const ALL: [Symbol; 2] = [Symbol::One, Symbol::Two];

    #[inline]
    pub fn flip(self) -> Symbol {
        match self {
            Symbol::One => Symbol::Two,
            Symbol::Two => Symbol::One,
        }
    }

    #[inline]
    pub fn value(self) -> u8 {
        self as u8
    }

    /// Index into two-element tables: `One -> 0`, `Two -> 1`.
    #[inline]
    pub fn index(self) -> usize {
        self as usize - 1
    }

    pub fn from_value(v: usize) -> Option<Symbol> {
        match v {
            1 => Some(Symbol::One),
            2 => Some(Symbol::Two),
            _ => None,
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            '1' => Some(Symbol::One),
            '2' => Some(Symbol::Two),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::One => '1',
            Symbol::Two => '2',
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.value())
    }
}

/// A finite word over `{1, 2}`.
///
/// `Ord` is the plain lexicographic order (a proper prefix sorts first);
/// use [`Word::shortlex_cmp`] for length-then-lexicographic order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    /// Parses a word, panicking on invalid input. Intended for literals.
    pub fn lit(s: &str) -> Self {
        s.parse()
            .unwrap_or_else(|e| panic!("invalid word literal {s:?}: {e}"))
    }

    /// Builds the word starting with `first` whose run lengths are `runs`.
    pub fn from_runs(first: Symbol, runs: &[usize]) -> Self {
        let mut out = Vec::with_capacity(runs.iter().sum());
        let mut current = first;
        for &r in runs {
            out.extend(std::iter::repeat_n(current, r));
            current = current.flip();
        }
        Word(out)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Symbol> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Symbol> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Symbol> {
        self.0.last().copied()
    }

    pub fn get(&self, i: usize) -> Option<Symbol> {
        self.0.get(i).copied()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn pop(&mut self) -> Option<Symbol> {
        self.0.pop()
    }

    pub fn with(&self, s: Symbol) -> Word {
        let mut w = self.clone();
        w.push(s);
        w
    }

    pub fn prepended(&self, s: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(s);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The factor `self[start..end]`.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.factor(0, len)
    }

    pub fn suffix(&self, len: usize) -> Word {
        self.factor(self.len() - len, self.len())
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.0.starts_with(&other.0)
    }

    pub fn ends_with(&self, other: &Word) -> bool {
        self.0.ends_with(&other.0)
    }

    pub fn contains_factor(&self, other: &Word) -> bool {
        other.is_empty() || self.0.windows(other.len()).any(|w| w == other.symbols())
    }

    /// Swaps every `1` with `2`.
    pub fn complement(&self) -> Word {
        Word(self.0.iter().map(|s| s.flip()).collect())
    }

    pub fn reversal(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Number of occurrences of `s`.
    pub fn count(&self, s: Symbol) -> usize {
        self.0.iter().filter(|&&x| x == s).count()
    }

    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// All words of length `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        assert!(n < usize::BITS as usize, "length {n} too large to enumerate");
        (0..1usize << n).map(move |bits| {
            Word(
                (0..n)
                    .map(|i| {
                        if bits >> (n - 1 - i) & 1 == 0 {
                            Symbol::One
                        } else {
                            Symbol::Two
                        }
                    })
                    .collect(),
            )
        })
    }

    /// Text without the `ε` convention (empty word renders as `""`).
    pub fn to_plain_string(&self) -> String {
        self.0.iter().map(|s| s.as_char()).collect()
    }
}

impl Index<usize> for Word {
    type Output = Symbol;

    fn index(&self, i: usize) -> &Symbol {
        &self.0[i]
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == EPSILON {
            return Ok(Word::new());
        }
        s.chars()
            .enumerate()
            .map(|(position, c)| {
                Symbol::from_char(c).ok_or(Error::InvalidSymbol {
                    found: c,
                    position,
                    expected: "'1' or '2'",
                })
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str(EPSILON);
        }
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

// Serialized as the plain `1`/`2` string; the empty word is `""`.
impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_plain_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Run-length encoding: the lengths of the maximal blocks of a word, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RunSequence(Vec<usize>);

impl RunSequence {
    pub fn runs(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total length of the encoded word.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max_run(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// The runs read as a word over `{1, 2}`; `None` if some run exceeds 2.
    pub fn as_word(&self) -> Option<Word> {
        self.0.iter().map(|&r| Symbol::from_value(r)).collect()
    }
}

impl fmt::Display for RunSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// The run-length encoding of `w`; `rle(ε)` is empty.
pub fn rle(w: &Word) -> RunSequence {
    let mut runs = Vec::new();
    let mut iter = w.iter();
    if let Some(mut prev) = iter.next() {
        let mut count = 1;
        for s in iter {
            if s == prev {
                count += 1;
            } else {
                runs.push(count);
                prev = s;
                count = 1;
            }
        }
        runs.push(count);
    }
    RunSequence(runs)
}
