//! Minimal forbidden words of the languages `C^k` and their tries.
//!
//! `MF(C^1) = {111, 222}`, and the words of height `h + 1` are the two
//! shortest primitives of each word of height `h`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::calculus::{classify, derivative, is_cinf, minimal_primitives_unchecked};
use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// `MF(C^k)`, grouped by height.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MfCatalog {
    k: usize,
    strata: BTreeMap<usize, Vec<Word>>,
}

impl MfCatalog {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Words of height `h`, lexicographic.
    pub fn by_height(&self, h: usize) -> &[Word] {
        self.strata.get(&h).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn strata(&self) -> &BTreeMap<usize, Vec<Word>> {
        &self.strata
    }

    /// Every word of the catalog, lexicographic.
    pub fn words(&self) -> BTreeSet<Word> {
        self.strata.values().flatten().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.strata.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.strata.values().any(|s| s.binary_search(w).is_ok())
    }

    /// Length of the longest word (0 for an empty catalog).
    pub fn longest(&self) -> usize {
        self.strata.values().flatten().map(Word::len).max().unwrap_or(0)
    }
}

/// `MF(C^k)` for `k >= 1`.
pub fn mf_set(k: usize) -> MfCatalog {
    assert!(k >= 1, "mf_set needs k >= 1");
    let mut strata = BTreeMap::new();
    let mut current = vec![Word::lit("111"), Word::lit("222")];
    for h in 1..=k {
        if h > 1 {
            let mut next: Vec<Word> = current
                .iter()
                .flat_map(minimal_primitives_unchecked)
                .collect();
            next.sort();
            next.dedup();
            current = next;
        }
        strata.insert(h, current.clone());
    }
    MfCatalog { k, strata }
}

fn is_triple(w: &Word) -> bool {
    w.len() == 3 && w[0] == w[1] && w[1] == w[2]
}

/// The height `h` of a minimal forbidden word, i.e. `D^(h-1)(w) ∈ {111, 222}`.
pub fn mf_height(w: &Word) -> Result<usize> {
    if !is_minimal_forbidden(w)? {
        return Err(Error::NotMinimalForbidden(w.clone()));
    }
    let mut current = w.clone();
    let mut h = 1;
    while !is_triple(&current) {
        current = derivative(&current).map_err(|_| Error::NotMinimalForbidden(w.clone()))?;
        h += 1;
    }
    Ok(h)
}

/// Whether `w` is a minimal forbidden word of `C∞`.
///
/// Checked twice: from the definition (both maximal proper factors are in
/// `C∞`, `w` is not) and through the swapped-ends criterion (`x u y` is
/// minimal forbidden iff `x̄ u ȳ` is a minimal `C∞` word with root `1`).
pub fn is_minimal_forbidden(w: &Word) -> Result<bool> {
    if w.len() < 3 {
        return Ok(false);
    }
    let n = w.len();
    let by_definition =
        !is_cinf(w) && is_cinf(&w.prefix(n - 1)) && is_cinf(&w.factor(1, n));

    let mut swapped = w.clone().symbols().to_vec();
    swapped[0] = swapped[0].flip();
    swapped[n - 1] = swapped[n - 1].flip();
    let swapped = Word::from_symbols(swapped);
    let by_swap = match classify(&swapped) {
        Ok(profile) => {
            profile.is_minimal()
                && profile.single_rooted
                && crate::calculus::root(&swapped)? == Word::lit("1")
        }
        Err(_) => false,
    };

    if by_definition != by_swap {
        return Err(Error::InternalInconsistency(format!(
            "minimal-forbidden tests disagree on {w}"
        )));
    }
    Ok(by_definition)
}

/// Prefix tree of a finite word set. Node `0` is `ε`; nodes are numbered in
/// breadth-first order, children visited `1` before `2`, so node labels are
/// in length-then-lexicographic order.
#[derive(Clone, Debug)]
pub struct Trie {
    labels: Vec<Word>,
    children: Vec<[Option<usize>; 2]>,
    terminal: Vec<bool>,
}

impl Trie {
    pub fn from_words<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Trie {
        let words: BTreeSet<&Word> = words.into_iter().collect();
        let mut prefixes: Vec<Word> = words
            .iter()
            .flat_map(|w| (0..=w.len()).map(move |i| w.prefix(i)))
            .collect();
        prefixes.push(Word::new());
        prefixes.sort_by(|a, b| a.shortlex_cmp(b));
        prefixes.dedup();

        let index: HashMap<&Word, usize> =
            prefixes.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut children = vec![[None, None]; prefixes.len()];
        for (i, p) in prefixes.iter().enumerate().skip(1) {
            let parent = index[&p.prefix(p.len() - 1)];
            children[parent][p[p.len() - 1].index()] = Some(i);
        }
        let terminal = prefixes.iter().map(|p| words.contains(p)).collect();
        Trie {
            labels: prefixes,
            children,
            terminal,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn label(&self, node: usize) -> &Word {
        &self.labels[node]
    }

    pub fn child(&self, node: usize, s: Symbol) -> Option<usize> {
        self.children[node][s.index()]
    }

    pub fn is_terminal(&self, node: usize) -> bool {
        self.terminal[node]
    }

    pub fn terminal_count(&self) -> usize {
        self.terminal.iter().filter(|&&t| t).count()
    }

    pub fn labels(&self) -> &[Word] {
        &self.labels
    }

    /// Node reached by reading `w` from the root.
    pub fn find(&self, w: &Word) -> Option<usize> {
        w.iter().try_fold(0, |node, s| self.child(node, s))
    }
}

pub fn build_trie(catalog: &MfCatalog) -> Trie {
    let words = catalog.words();
    Trie::from_words(&words)
}
