//! Vertical representation of `C∞` words.
//!
//! The left frontier `Ψ(w)` records the first symbol of every level of the
//! derivative chain, writing `0` for a `2` whose level below begins with two
//! distinct letters. The pair `Ψ(w) | Ψ(w̃)` determines `w`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::automata::{compact, l_automaton, EdgeKind};
use crate::calculus::{derivative_chain, is_left_minimal};
use crate::error::{Error, Result};
use crate::forbidden::{build_trie, mf_set};
use crate::word::{Symbol, Word};

/// A word over `{0, 1, 2}` whose first symbol (if any) is not `0`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frontier(Vec<u8>);

impl Frontier {
    pub fn new(digits: Vec<u8>) -> Result<Frontier> {
        if let Some(bad) = digits.iter().find(|&&d| d > 2) {
            return Err(Error::InvalidFrontier(format!("symbol {bad} outside 0..=2")));
        }
        if digits.first() == Some(&0) {
            return Err(Error::InvalidFrontier("first symbol is 0".into()));
        }
        Ok(Frontier(digits))
    }

    pub fn empty() -> Frontier {
        Frontier(Vec::new())
    }

    /// The frontier spelled by a word over `{1, 2}`.
    pub fn from_word(w: &Word) -> Frontier {
        Frontier(w.iter().map(Symbol::value).collect())
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// Appends a symbol; appending `0` to the empty frontier is rejected.
    pub fn with(&self, d: u8) -> Result<Frontier> {
        let mut v = self.0.clone();
        v.push(d);
        Frontier::new(v)
    }

    /// The frontier of the complemented word: first symbol swapped.
    pub fn flip_first(&self) -> Frontier {
        let mut v = self.0.clone();
        if let Some(f) = v.first_mut() {
            *f = 3 - *f;
        }
        Frontier(v)
    }

    /// The frontier read as a word, when it has no `0`.
    pub fn as_word(&self) -> Option<Word> {
        self.0.iter().map(|&d| Symbol::from_value(d as usize)).collect()
    }

    fn decoded(&self, i: usize) -> Symbol {
        decode(self.0[i])
    }
}

fn decode(d: u8) -> Symbol {
    if d == 1 {
        Symbol::One
    } else {
        Symbol::Two
    }
}

impl fmt::Display for Frontier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(crate::word::EPSILON);
        }
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Frontier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frontier({self})")
    }
}

impl FromStr for Frontier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Frontier> {
        let s = s.trim();
        if s == crate::word::EPSILON {
            return Ok(Frontier::empty());
        }
        let digits = s
            .chars()
            .enumerate()
            .map(|(position, c)| match c {
                '0'..='2' => Ok(c as u8 - b'0'),
                _ => Err(Error::InvalidSymbol {
                    found: c,
                    position,
                    expected: "'0', '1' or '2'",
                }),
            })
            .collect::<Result<Vec<u8>>>()?;
        Frontier::new(digits)
    }
}

impl Serialize for Frontier {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.iter().map(|d| (b'0' + d) as char).collect::<String>())
    }
}

/// Left and right frontier of a word, written `U|V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VerticalRepr {
    pub left: Frontier,
    pub right: Frontier,
}

impl fmt::Display for VerticalRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.left, self.right)
    }
}

impl FromStr for VerticalRepr {
    type Err = Error;

    fn from_str(s: &str) -> Result<VerticalRepr> {
        let (u, v) = s
            .split_once('|')
            .ok_or_else(|| Error::InvalidFrontier(format!("expected U|V, got {s:?}")))?;
        Ok(VerticalRepr {
            left: u.parse()?,
            right: v.parse()?,
        })
    }
}

/// Left frontier `Ψ(w)`; its length is the height of `w`.
pub fn psi(w: &Word) -> Result<Frontier> {
    let chain = derivative_chain(w)?;
    let levels = chain.nonempty_levels();
    let mut out = Vec::with_capacity(levels.len());
    for (i, level) in levels.iter().enumerate() {
        let first = level[0];
        let zero = i > 0 && first == Symbol::Two && {
            let below = &levels[i - 1];
            below[0] != below[1]
        };
        out.push(if zero { 0 } else { first.value() });
    }
    Ok(Frontier(out))
}

pub fn vertical_repr(w: &Word) -> Result<VerticalRepr> {
    Ok(VerticalRepr {
        left: psi(w)?,
        right: psi(&w.reversal())?,
    })
}

fn check_pair(u: &Frontier, v: &Frontier) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::InvalidFrontier(format!(
            "frontiers {u} and {v} have different lengths"
        )));
    }
    if u.is_empty() {
        return Err(Error::InvalidFrontier("empty frontier".into()));
    }
    Ok(())
}

// Run lengths of the level below: the level itself, wrapped in optional unit
// runs on either side.
fn expand(first: Symbol, above: &Word, left_wrap: bool, right_wrap: bool) -> Word {
    let mut runs = Vec::with_capacity(above.len() + 2);
    if left_wrap {
        runs.push(1);
    }
    runs.extend(above.iter().map(|s| s.value() as usize));
    if right_wrap {
        runs.push(1);
    }
    Word::from_runs(first, &runs)
}

fn first_difference(a: &Frontier, b: &Frontier) -> usize {
    a.0.iter()
        .zip(&b.0)
        .position(|(x, y)| x != y)
        .unwrap_or(a.len().min(b.len()))
}

fn wraps(d: u8) -> bool {
    d != 2
}

/// The unique `C∞` word with left frontier `u` and right frontier `v`.
///
/// Rebuilt from the root downwards: a level begins with a unit run exactly
/// when the next frontier symbol is `1` or `0`, and likewise at the end.
pub fn reconstruct(u: &Frontier, v: &Frontier) -> Result<Word> {
    check_pair(u, v)?;
    let k = u.len();
    let (a, b) = (u.decoded(k - 1), v.decoded(k - 1));
    let mut w = if a != b {
        Word::from_symbols(vec![a, b])
    } else {
        Word::from_symbols(vec![a])
    };
    for i in (0..k - 1).rev() {
        w = expand(u.decoded(i), &w, wraps(u.0[i + 1]), wraps(v.0[i + 1]));
        if w.last() != Some(v.decoded(i)) {
            return Err(Error::Inconsistent { level: i });
        }
    }
    let check = vertical_repr(&w).map_err(|_| Error::Inconsistent { level: 0 })?;
    if check.left != *u || check.right != *v {
        return Err(Error::Inconsistent {
            level: first_difference(&check.left, u).min(first_difference(&check.right, v)),
        });
    }
    Ok(w)
}

/// A single-rooted word with left frontier `u` that wraps on the right only
/// when forced, hence right-minimal.
pub fn realize_left(u: &Frontier) -> Result<Word> {
    if u.is_empty() {
        return Err(Error::InvalidFrontier("empty frontier".into()));
    }
    let k = u.len();
    let mut w = Word::from_symbols(vec![u.decoded(k - 1)]);
    for i in (0..k - 1).rev() {
        let right = w.last() == Some(Symbol::One);
        w = expand(u.decoded(i), &w, wraps(u.0[i + 1]), right);
    }
    let check = psi(&w).map_err(|_| Error::Inconsistent { level: 0 })?;
    if check != *u {
        return Err(Error::Inconsistent {
            level: first_difference(&check, u),
        });
    }
    Ok(w)
}

/// Target of the `0`-edge leaving `u`: the frontier of the longest proper
/// suffix that is left-minimal, of a word with frontier `u0`.
pub fn weak_target(u: &Frontier) -> Result<Frontier> {
    let witness = realize_left(&u.with(0)?)?;
    weak_target_from(&witness)
}

pub(crate) fn weak_target_from(witness: &Word) -> Result<Frontier> {
    for start in 1..witness.len() {
        let v = witness.factor(start, witness.len());
        if is_left_minimal(&v)? {
            return psi(&v);
        }
    }
    Err(Error::InternalInconsistency(format!(
        "{witness} has no proper left-minimal suffix"
    )))
}

/// Reads a frontier from the initial state; weak edges are computed on
/// demand, so the run is not limited by a cut height.
pub fn vuca_run(u: &Frontier) -> Result<Frontier> {
    let mut state = Frontier::empty();
    for &d in u.digits() {
        state = if d == 0 {
            weak_target(&state)?
        } else {
            state.with(d)?
        };
    }
    Ok(state)
}

/// The minimal word of which `w` is a simple extension.
pub fn canonical_minimal(w: &Word) -> Result<Word> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let repr = vertical_repr(w)?;
    reconstruct(&vuca_run(&repr.left)?, &vuca_run(&repr.right)?)
}

/// The ultra-compacted automaton cut at height `k`: states are the words over
/// `{1, 2}` of length at most `k`; below the cut every non-initial state has
/// the solid edges `1`, `2` and a weak edge `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vuca {
    k: usize,
    edges: BTreeMap<(Frontier, u8), Frontier>,
}

impl Vuca {
    pub fn height(&self) -> usize {
        self.k
    }

    /// All states, by length then lexicographic.
    pub fn states(&self) -> Vec<Frontier> {
        let mut out = vec![Frontier::empty()];
        for n in 1..=self.k {
            out.extend(Word::all_of_length(n).map(|w| Frontier::from_word(&w)));
        }
        out
    }

    pub fn delta(&self, state: &Frontier, d: u8) -> Option<&Frontier> {
        self.edges.get(&(state.clone(), d))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Frontier, u8, &Frontier)> {
        self.edges.iter().map(|((s, d), t)| (s, *d, t))
    }

    pub fn out_degree(&self, state: &Frontier) -> usize {
        (0..=2).filter(|&d| self.delta(state, d).is_some()).count()
    }

    /// End state of the path labeled `u`.
    pub fn run(&self, u: &Frontier) -> Option<Frontier> {
        let mut state = Frontier::empty();
        for &d in u.digits() {
            state = self.delta(&state, d)?.clone();
        }
        Some(state)
    }
}

/// The automaton built from frontiers: solid edges append, weak edges follow
/// [`weak_target`].
pub fn build_vuca(k: usize) -> Vuca {
    assert!(k >= 1, "build_vuca needs k >= 1");
    let mut edges = BTreeMap::new();
    let mut layer = vec![Frontier::empty()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(layer.len() * 2);
        for u in &layer {
            for d in [1, 2] {
                let t = u.with(d).expect("nonzero symbol");
                edges.insert((u.clone(), d), t.clone());
                next.push(t);
            }
            if !u.is_empty() {
                let t = weak_target(u).expect("every frontier over {1,2} is realizable");
                edges.insert((u.clone(), 0), t);
            }
        }
        layer = next;
    }
    Vuca { k, edges }
}

/// Intermediate stage of [`vuca_via_compaction`]: the compacted automaton
/// relabeled by frontiers, before same-frontier states are merged.
#[derive(Clone, Debug)]
pub struct VcaEdge {
    pub source: Word,
    pub source_frontier: Frontier,
    pub target: Word,
    pub target_frontier: Frontier,
    /// `Some(0)` for weak edges, `Some(x)` for a solid step to `Ux`, `None`
    /// for a solid edge between two states with the same frontier.
    pub symbol: Option<u8>,
}

/// Relabels the compacted automaton of `MF(C^k)` by frontiers.
pub fn vca_edges(k: usize) -> Result<Vec<VcaEdge>> {
    let ca = compact(&l_automaton(&build_trie(&mf_set(k))))?;
    let mut out = Vec::new();
    for e in ca.edges() {
        let source = &ca.state(e.source).minimal_word;
        let target = &ca.state(e.target).minimal_word;
        let (su, tu) = (psi(source)?, psi(target)?);
        let symbol = match e.kind {
            EdgeKind::Weak => Some(0),
            EdgeKind::Solid if su == tu => None,
            EdgeKind::Solid
                if tu.len() == su.len() + 1 && tu.digits().starts_with(su.digits()) =>
            {
                tu.last()
            }
            EdgeKind::Solid => {
                return Err(Error::InternalInconsistency(format!(
                    "solid edge {source} -> {target} neither extends nor keeps the frontier"
                )))
            }
        };
        out.push(VcaEdge {
            source: source.clone(),
            source_frontier: su,
            target: target.clone(),
            target_frontier: tu,
            symbol,
        });
    }
    Ok(out)
}

/// The same automaton, obtained by relabeling the compacted automaton of
/// `MF(C^k)` with frontiers and merging states that share a left frontier.
///
/// States near the cut have truncated chains, so only edges leaving states
/// of length at most `k - 2` are comparable with [`build_vuca`].
pub fn vuca_via_compaction(k: usize) -> Result<Vuca> {
    assert!(k >= 1, "vuca_via_compaction needs k >= 1");
    let mut edges: BTreeMap<(Frontier, u8), Frontier> = BTreeMap::new();
    for e in vca_edges(k)? {
        let Some(d) = e.symbol else { continue };
        if let Some(previous) = edges.insert((e.source_frontier.clone(), d), e.target_frontier.clone())
        {
            if previous != e.target_frontier {
                return Err(Error::InternalInconsistency(format!(
                    "merged state {} has two {d}-edges: {previous} and {}",
                    e.source_frontier, e.target_frontier
                )));
            }
        }
    }
    Ok(Vuca { k, edges })
}

/// Run-length profile used by the text output of `psi`.
pub fn frontier_levels(w: &Word) -> Result<Vec<(Word, u8)>> {
    let chain = derivative_chain(w)?;
    let u = psi(w)?;
    Ok(chain
        .nonempty_levels()
        .iter()
        .cloned()
        .zip(u.digits().iter().copied())
        .collect())
}
