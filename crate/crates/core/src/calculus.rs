//! The derivative calculus on words over `{1, 2}`.
//!
//! The derivative `D(w)` discards a leading and/or trailing run of length one
//! and takes the run-length encoding of what remains. A word is in `C^k` when
//! `D^j(w)` is differentiable (no run of length three) for every `j < k`, and
//! in `C∞` when its derivative chain reaches `ε`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{rle, Symbol, Word};

/// `D(w)`, or `NotDifferentiable` when some run of `w` is longer than two.
pub fn derivative(w: &Word) -> Result<Word> {
    let runs = rle(w);
    let max_run = runs.max_run();
    if max_run > 2 {
        return Err(Error::NotDifferentiable { run_length: max_run });
    }
    Ok(trimmed_encoding(runs.runs()))
}

// Drops unit end runs and reads the rest as a word; the single-run cases
// (Δ = 1 gives ε, Δ = 2 gives 2) fall out of the same rule.
fn trimmed_encoding(runs: &[usize]) -> Word {
    if runs.len() == 1 {
        return if runs[0] == 1 { Word::new() } else { Word::lit("2") };
    }
    let start = usize::from(runs.first() == Some(&1));
    let end = runs.len() - usize::from(runs.last() == Some(&1));
    runs[start..end.max(start)]
        .iter()
        .map(|&r| Symbol::from_value(r).expect("runs checked to be at most 2"))
        .collect()
}

/// `w, D(w), D²(w), …, ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivativeChain {
    levels: Vec<Word>,
}

impl DerivativeChain {
    pub fn levels(&self) -> &[Word] {
        &self.levels
    }

    pub fn word(&self) -> &Word {
        &self.levels[0]
    }

    pub fn height(&self) -> usize {
        self.levels.len() - 1
    }

    /// `D^(height-1)(w)`; `None` for the empty word.
    pub fn root(&self) -> Option<&Word> {
        self.levels.len().checked_sub(2).map(|i| &self.levels[i])
    }

    /// Levels above `ε`.
    pub fn nonempty_levels(&self) -> &[Word] {
        &self.levels[..self.levels.len() - 1]
    }
}

impl fmt::Display for DerivativeChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, level) in self.levels.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{level}")?;
        }
        Ok(())
    }
}

pub fn derivative_chain(w: &Word) -> Result<DerivativeChain> {
    let mut levels = vec![w.clone()];
    let mut current = w.clone();
    while !current.is_empty() {
        current = derivative(&current).map_err(|_| Error::NotCInfinity {
            level: levels.len() - 1,
        })?;
        levels.push(current.clone());
    }
    Ok(DerivativeChain { levels })
}

/// True iff `D^j(w)` has no run of length three for every `0 <= j < k`.
pub fn is_k_differentiable(w: &Word, k: usize) -> bool {
    let mut current = w.clone();
    for _ in 0..k {
        if current.is_empty() {
            return true;
        }
        match derivative(&current) {
            Ok(next) => current = next,
            Err(_) => return false,
        }
    }
    true
}

pub fn is_cinf(w: &Word) -> bool {
    derivative_chain(w).is_ok()
}

pub fn height(w: &Word) -> Result<usize> {
    derivative_chain(w).map(|c| c.height())
}

pub fn root(w: &Word) -> Result<Word> {
    let chain = derivative_chain(w)?;
    chain.root().cloned().ok_or(Error::RootOfEmpty)
}

/// Every word `p` with `D(p) = w`, for an arbitrary word `w` (membership in
/// `C∞` is not required). `Δ(p)` is one of `w`, `1w`, `w1`, `1w1`; a wrap on
/// a side where `w` begins (ends) with `1` is mandatory, since a unit end run
/// would otherwise be trimmed away.
pub(crate) fn primitive_candidates(w: &Word) -> Vec<Word> {
    if w.is_empty() {
        // Δ(p) = 1 or 11.
        return vec![
            Word::lit("1"),
            Word::lit("2"),
            Word::lit("12"),
            Word::lit("21"),
        ];
    }
    let body: Vec<usize> = w.iter().map(|s| s.value() as usize).collect();
    let left_forced = w.first() == Some(Symbol::One);
    let right_forced = w.last() == Some(Symbol::One);
    let mut out = Vec::with_capacity(8);
    for left in [false, true] {
        if left_forced && !left {
            continue;
        }
        for right in [false, true] {
            if right_forced && !right {
                continue;
            }
            let mut runs = Vec::with_capacity(body.len() + 2);
            if left {
                runs.push(1);
            }
            runs.extend_from_slice(&body);
            if right {
                runs.push(1);
            }
            for first in Symbol::ALL {
                out.push(Word::from_runs(first, &runs));
            }
        }
    }
    out
}

/// The two shortest primitives of an arbitrary word (complements of each other).
pub(crate) fn minimal_primitives_unchecked(w: &Word) -> [Word; 2] {
    let candidates = primitive_candidates(w);
    let shortest = candidates.iter().map(Word::len).min().expect("non-empty");
    let mut pair: Vec<Word> = candidates.into_iter().filter(|p| p.len() == shortest).collect();
    pair.sort();
    pair.dedup();
    debug_assert_eq!(pair.len(), 2);
    [pair[0].clone(), pair[1].clone()]
}

/// All primitives of a `C∞` word: between two and eight words.
pub fn primitives(w: &Word) -> Result<BTreeSet<Word>> {
    derivative_chain(w)?;
    let set: BTreeSet<Word> = primitive_candidates(w).into_iter().collect();
    debug_assert!(set.iter().all(|p| derivative(p).as_ref() == Ok(w)));
    Ok(set)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extremal {
    Min,
    Max,
}

/// The two shortest (or longest) primitives, in lexicographic order.
pub fn extremal_primitives(w: &Word, mode: Extremal) -> Result<(Word, Word)> {
    let all = primitives(w)?;
    let target = match mode {
        Extremal::Min => all.iter().map(Word::len).min(),
        Extremal::Max => all.iter().map(Word::len).max(),
    }
    .expect("at least two primitives");
    let mut pick = all.into_iter().filter(|p| p.len() == target);
    match (pick.next(), pick.next(), pick.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(Error::InternalInconsistency(format!(
            "expected exactly two extremal primitives of {w}"
        ))),
    }
}

/// Extendability profile of a non-empty `C∞` word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ExtensionProfile {
    pub left_minimal: bool,
    pub right_minimal: bool,
    pub left_maximal: bool,
    pub right_maximal: bool,
    pub left_doubly_ext: bool,
    pub right_doubly_ext: bool,
    pub fully_ext: bool,
    pub single_rooted: bool,
}

impl ExtensionProfile {
    pub fn is_minimal(&self) -> bool {
        self.left_minimal && self.right_minimal
    }

    pub fn is_maximal(&self) -> bool {
        self.left_maximal && self.right_maximal
    }
}

const LEFT_NON_MINIMAL: [[Symbol; 3]; 2] = [
    [Symbol::One, Symbol::Two, Symbol::Two],
    [Symbol::Two, Symbol::One, Symbol::One],
];
const RIGHT_NON_MINIMAL: [[Symbol; 3]; 2] = [
    [Symbol::Two, Symbol::Two, Symbol::One],
    [Symbol::One, Symbol::One, Symbol::Two],
];

/// Classifies a word from its derivative chain.
///
/// Maximality on a side: the word and every derivative longer than one begin
/// (end) with two distinct symbols. Minimality on a side: the word and every
/// derivative longer than two avoid the prefixes `122`, `211` (suffixes `221`,
/// `112`). Doubly extendable on a side is equivalent to maximal on that side,
/// and fully extendable to double-rooted maximal.
pub fn classify_chain(chain: &DerivativeChain) -> Result<ExtensionProfile> {
    let root = chain.root().ok_or(Error::EmptyWord)?;
    let levels = chain.nonempty_levels();
    let distinct = |a: Symbol, b: Symbol| a != b;

    let left_maximal = levels
        .iter()
        .filter(|l| l.len() > 1)
        .all(|l| distinct(l[0], l[1]));
    let right_maximal = levels
        .iter()
        .filter(|l| l.len() > 1)
        .all(|l| distinct(l[l.len() - 1], l[l.len() - 2]));
    let left_minimal = levels
        .iter()
        .filter(|l| l.len() > 2)
        .all(|l| !LEFT_NON_MINIMAL.iter().any(|p| l.symbols()[..3] == p[..]));
    let right_minimal = levels
        .iter()
        .filter(|l| l.len() > 2)
        .all(|l| !RIGHT_NON_MINIMAL.iter().any(|p| l.symbols()[l.len() - 3..] == p[..]));
    let single_rooted = root.len() == 1;

    Ok(ExtensionProfile {
        left_minimal,
        right_minimal,
        left_maximal,
        right_maximal,
        left_doubly_ext: left_maximal,
        right_doubly_ext: right_maximal,
        fully_ext: left_maximal && right_maximal && !single_rooted,
        single_rooted,
    })
}

pub fn classify(w: &Word) -> Result<ExtensionProfile> {
    classify_chain(&derivative_chain(w)?)
}

pub fn is_left_minimal(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Ok(true);
    }
    classify(w).map(|p| p.left_minimal)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Both,
}

/// The left, right or two-sided maximal (simple) extension of `w`.
///
/// A simple extension step appends the only letter that keeps the word in
/// `C∞`; the maximal extension stops once both letters are possible. The
/// empty word is doubly extendable on both sides and is its own extension.
pub fn extend(w: &Word, side: Side) -> Result<Word> {
    derivative_chain(w)?;
    match side {
        Side::Right => extend_right(w),
        Side::Left => Ok(extend_right(&w.reversal())?.reversal()),
        Side::Both => {
            let right = extend_right(w)?;
            Ok(extend_right(&right.reversal())?.reversal())
        }
    }
}

fn extend_right(w: &Word) -> Result<Word> {
    let mut current = w.clone();
    loop {
        let one = current.with(Symbol::One);
        let two = current.with(Symbol::Two);
        match (is_cinf(&one), is_cinf(&two)) {
            (true, true) => return Ok(current),
            (true, false) => current = one,
            (false, true) => current = two,
            (false, false) => {
                return Err(Error::InternalInconsistency(format!(
                    "{current} has no right extension in C-infinity"
                )))
            }
        }
    }
}
