//! Brute-force reference implementations.
//!
//! Everything here works on plain digit vectors with its own derivative and
//! membership code; only [`Word`] is shared with the rest of the crate. The
//! test suites compare the fast modules against these functions.

use std::collections::BTreeSet;

use crate::repetitions::{RepetitivityRow, RepetitivityTable};
use crate::word::{Symbol, Word};

fn digits(w: &Word) -> Vec<u8> {
    w.iter().map(|s| s.value()).collect()
}

fn to_word(d: &[u8]) -> Word {
    d.iter()
        .map(|&x| Symbol::from_value(x as usize).expect("digit 1 or 2"))
        .collect()
}

fn runs(d: &[u8]) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::new();
    let mut i = 0;
    while i < d.len() {
        let mut j = i;
        while j < d.len() && d[j] == d[i] {
            j += 1;
        }
        out.push((j - i).min(u8::MAX as usize) as u8);
        i = j;
    }
    out
}

/// Five-case derivative; `None` when not differentiable.
fn naive_derivative(d: &[u8]) -> Option<Vec<u8>> {
    if d.is_empty() {
        return Some(Vec::new());
    }
    let r = runs(d);
    if r.iter().any(|&x| x > 2) {
        return None;
    }
    let n = r.len();
    Some(match (r[0], r[n - 1]) {
        _ if r == [1] => Vec::new(),
        _ if r == [2] => r,
        (2, 2) => r,
        (1, 2) => r[1..].to_vec(),
        (2, 1) => r[..n - 1].to_vec(),
        (1, 1) => r[1..n - 1].to_vec(),
        _ => unreachable!(),
    })
}

fn naive_k_differentiable(d: &[u8], k: usize) -> bool {
    let mut cur = d.to_vec();
    for _ in 0..k {
        if cur.is_empty() {
            return true;
        }
        match naive_derivative(&cur) {
            Some(next) => cur = next,
            None => return false,
        }
    }
    true
}

fn naive_cinf(d: &[u8]) -> bool {
    let mut cur = d.to_vec();
    while !cur.is_empty() {
        match naive_derivative(&cur) {
            Some(next) => cur = next,
            None => return false,
        }
    }
    true
}

/// Definition-level `C∞` membership.
pub fn is_cinf(w: &Word) -> bool {
    naive_cinf(&digits(w))
}

/// Definition-level `C^k` membership.
pub fn is_ck(w: &Word, k: usize) -> bool {
    naive_k_differentiable(&digits(w), k)
}

/// Lazily yields, in (length, lexicographic) order, every word of length at
/// most `max_len` accepted by a factorial predicate.
///
/// The cursor extends accepted words one letter to the right; a word whose
/// prefix was rejected is never produced, which is exact for factorial
/// languages.
pub struct EnumerationCursor<F> {
    accept: F,
    max_len: usize,
    current_len: usize,
    layer: Vec<Vec<u8>>,
    position: usize,
}

impl<F: Fn(&[u8]) -> bool> EnumerationCursor<F> {
    fn new(max_len: usize, accept: F) -> Self {
        let layer = if accept(&[]) { vec![Vec::new()] } else { Vec::new() };
        EnumerationCursor {
            accept,
            max_len,
            current_len: 0,
            layer,
            position: 0,
        }
    }

    pub fn current_len(&self) -> usize {
        self.current_len
    }
}

impl<F: Fn(&[u8]) -> bool> Iterator for EnumerationCursor<F> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if let Some(d) = self.layer.get(self.position) {
                self.position += 1;
                return Some(to_word(d));
            }
            if self.current_len >= self.max_len || self.layer.is_empty() {
                return None;
            }
            let mut next = Vec::with_capacity(self.layer.len() * 2);
            for d in &self.layer {
                for x in [1u8, 2] {
                    let mut e = d.clone();
                    e.push(x);
                    if (self.accept)(&e) {
                        next.push(e);
                    }
                }
            }
            self.layer = next;
            self.position = 0;
            self.current_len += 1;
        }
    }
}

pub fn cinf_cursor(max_len: usize) -> EnumerationCursor<impl Fn(&[u8]) -> bool> {
    EnumerationCursor::new(max_len, naive_cinf)
}

/// All words of `C^k` of length at most `n`, in (length, lexicographic) order.
pub fn enumerate_ck(k: usize, n: usize) -> Vec<Word> {
    EnumerationCursor::new(n, move |d: &[u8]| naive_k_differentiable(d, k)).collect()
}

/// All `C∞` words of length at most `n`, in (length, lexicographic) order.
pub fn enumerate_cinf(n: usize) -> Vec<Word> {
    cinf_cursor(n).collect()
}

/// `C∞` words of length exactly `n`, lexicographic.
pub fn cinf_of_length(n: usize) -> Vec<Word> {
    cinf_cursor(n).filter(|w| w.len() == n).collect()
}

/// `MF(C^k)` straight from the definition: `v ∉ C^k` while both maximal
/// proper factors are in `C^k`.
///
/// Candidate lengths are scanned up to two past the longest word of the
/// generated catalog; only that length is taken from the fast path.
pub fn brute_mf(k: usize) -> BTreeSet<Word> {
    assert!(k >= 1);
    let longest = crate::forbidden::mf_set(k).longest();
    brute_mf_up_to(k, longest + 2)
}

/// [`brute_mf`] restricted to words of length at most `max_len`.
pub fn brute_mf_up_to(k: usize, max_len: usize) -> BTreeSet<Word> {
    let allowed = |d: &[u8]| naive_k_differentiable(d, k);
    let mut out = BTreeSet::new();
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for d in &layer {
            for x in [1u8, 2] {
                let mut e = d.clone();
                e.push(x);
                if allowed(&e) {
                    next.push(e);
                } else if allowed(&e[1..]) {
                    out.insert(to_word(&e));
                }
            }
        }
        layer = next;
    }
    out
}

/// Shortest gap for `u` by trying every `C∞` word `z` in (length,
/// lexicographic) order; `z` ranges over `C∞` since it is a factor of `uzu`.
pub fn brute_gap(u: &Word) -> usize {
    let ud = digits(u);
    let mut len = 0;
    loop {
        for z in cinf_cursor(len).filter(|z| z.len() == len) {
            let mut whole = ud.clone();
            whole.extend(digits(&z));
            whole.extend_from_slice(&ud);
            if naive_cinf(&whole) {
                return len;
            }
        }
        len += 1;
    }
}

/// `I(n)` and `G(n)` for `1 <= n <= n_max` by exhaustive search.
pub fn brute_gap_table(n_max: usize) -> RepetitivityTable {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let gaps: Vec<(Word, usize)> = cinf_of_length(n)
            .into_iter()
            .map(|u| {
                let g = brute_gap(&u);
                (u, g)
            })
            .collect();
        let Some(min_gap) = gaps.iter().map(|g| g.1).min() else {
            continue;
        };
        let max_gap = gaps.iter().map(|g| g.1).max().unwrap_or(min_gap);
        let witness = |target: usize| gaps.iter().find(|g| g.1 == target).map(|g| g.0.clone());
        rows.push(RepetitivityRow {
            n,
            words: gaps.len(),
            min_gap,
            max_gap,
            min_witness: witness(min_gap).unwrap_or_default(),
            max_witness: witness(max_gap).unwrap_or_default(),
            max_total: 2 * n + max_gap,
        });
    }
    RepetitivityTable { n_max, rows }
}
