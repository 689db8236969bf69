//! The automaton of the words avoiding an anti-factorial set, and its
//! compaction into one state per extension class.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::calculus::{classify, derivative_chain, extend, Side};
use crate::error::{Error, Result};
use crate::forbidden::Trie;
use crate::word::{Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// Inherited from the trie.
    Solid,
    /// Obtained through the failure function.
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Transition {
    pub target: usize,
    pub kind: EdgeKind,
}

/// Deterministic automaton over `{1, 2}` whose states are the proper prefixes
/// of the forbidden words. Sink states (the forbidden words themselves) are
/// removed, so every state is terminal.
#[derive(Clone, Debug)]
pub struct Automaton {
    labels: Vec<Word>,
    transitions: Vec<[Option<Transition>; 2]>,
    failure: Vec<Option<usize>>,
    index: HashMap<Word, usize>,
}

/// Builds the automaton from the trie of an anti-factorial set.
///
/// Trie nodes are visited breadth first. A defined trie move becomes a solid
/// edge and sets `s(δ(p, a)) = δ(s(p), a)`; an undefined move from a
/// non-terminal node becomes a weak edge to `δ(s(p), a)`. Terminal nodes and
/// the edges into them are dropped at the end.
pub fn l_automaton(trie: &Trie) -> Automaton {
    let n = trie.len();
    let mut delta: Vec<[Option<Transition>; 2]> = vec![[None, None]; n];
    let mut fail: Vec<Option<usize>> = vec![None; n];
    let root = trie.root();

    for a in Symbol::ALL {
        delta[root][a.index()] = Some(match trie.child(root, a) {
            Some(q) => {
                fail[q] = Some(root);
                Transition { target: q, kind: EdgeKind::Solid }
            }
            None => Transition { target: root, kind: EdgeKind::Weak },
        });
    }

    let mut queue: VecDeque<usize> = Symbol::ALL
        .iter()
        .filter_map(|&a| trie.child(root, a))
        .collect();
    while let Some(p) = queue.pop_front() {
        if trie.is_terminal(p) {
            continue;
        }
        let sp = fail[p].expect("failure link assigned before visit");
        for a in Symbol::ALL {
            let via_failure = delta[sp][a.index()].expect("shallower node complete").target;
            delta[p][a.index()] = Some(match trie.child(p, a) {
                Some(q) => {
                    fail[q] = Some(via_failure);
                    queue.push_back(q);
                    Transition { target: q, kind: EdgeKind::Solid }
                }
                None => Transition { target: via_failure, kind: EdgeKind::Weak },
            });
        }
    }

    let mut renumber = vec![None; n];
    let mut labels = Vec::new();
    for (node, slot) in renumber.iter_mut().enumerate() {
        if !trie.is_terminal(node) {
            *slot = Some(labels.len());
            labels.push(trie.label(node).clone());
        }
    }
    let mut transitions = vec![[None, None]; labels.len()];
    let mut failure = vec![None; labels.len()];
    for node in 0..n {
        let Some(id) = renumber[node] else { continue };
        for a in Symbol::ALL {
            transitions[id][a.index()] = delta[node][a.index()].and_then(|t| {
                renumber[t.target].map(|target| Transition { target, kind: t.kind })
            });
        }
        failure[id] = fail[node].and_then(|f| renumber[f]);
    }
    let index = labels.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    Automaton {
        labels,
        transitions,
        failure,
        index,
    }
}

impl Automaton {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn label(&self, state: usize) -> &Word {
        &self.labels[state]
    }

    pub fn labels(&self) -> &[Word] {
        &self.labels
    }

    pub fn state_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn transition(&self, state: usize, a: Symbol) -> Option<Transition> {
        self.transitions[state][a.index()]
    }

    /// State of the longest proper suffix that is itself a state.
    pub fn failure(&self, state: usize) -> Option<usize> {
        self.failure[state]
    }

    /// All edges as `(source, letter, transition)`, by source then letter.
    pub fn edges(&self) -> impl Iterator<Item = (usize, Symbol, Transition)> + '_ {
        self.transitions.iter().enumerate().flat_map(|(p, row)| {
            Symbol::ALL
                .into_iter()
                .filter_map(move |a| row[a.index()].map(|t| (p, a, t)))
        })
    }

    pub fn out_degree(&self, state: usize) -> usize {
        self.transitions[state].iter().flatten().count()
    }

    /// End state of the path labeled `w`, or `None` if `w` is rejected.
    pub fn run(&self, w: &Word) -> Option<usize> {
        w.iter()
            .try_fold(self.initial(), |p, a| self.transition(p, a).map(|t| t.target))
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.run(w).is_some()
    }

    /// Accepted words of length at most `n`.
    pub fn language_up_to(&self, n: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        let mut stack = vec![(self.initial(), Word::new())];
        while let Some((p, w)) = stack.pop() {
            if w.len() < n {
                for a in Symbol::ALL {
                    if let Some(t) = self.transition(p, a) {
                        stack.push((t.target, w.with(a)));
                    }
                }
            }
            out.insert(w);
        }
        out
    }

    /// The letter carried by every edge entering `state`, if they agree.
    pub fn entry_letter(&self, state: usize) -> Option<Option<Symbol>> {
        let mut letters = self.edges().filter(|e| e.2.target == state).map(|e| e.1);
        let first = letters.next();
        if letters.all(|a| Some(a) == first) {
            Some(first)
        } else {
            None
        }
    }
}

/// One state of the compacted automaton: a chain of states of the source
/// automaton, each the right simple extension of the previous one, starting
/// from a right-minimal word.
#[derive(Clone, Debug, Serialize)]
pub struct CompactState {
    pub minimal_word: Word,
    pub maximal_extension: Word,
    pub height: usize,
    pub root: Option<Word>,
    pub chain: Vec<Word>,
    #[serde(skip)]
    pub members: Vec<usize>,
}

impl CompactState {
    pub fn is_single_rooted(&self) -> bool {
        self.root.as_ref().is_some_and(|r| r.len() == 1)
    }

    /// Last word of the chain; carries the out-edges.
    pub fn chain_end(&self) -> &Word {
        self.chain.last().expect("chains are non-empty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompactEdge {
    pub source: usize,
    pub letter: Symbol,
    pub label: Word,
    pub target: usize,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug)]
pub struct CompactAutomaton {
    states: Vec<CompactState>,
    edges: Vec<CompactEdge>,
    owner: Vec<usize>,
}

impl CompactAutomaton {
    pub fn states(&self) -> &[CompactState] {
        &self.states
    }

    pub fn state(&self, id: usize) -> &CompactState {
        &self.states[id]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn edges(&self) -> &[CompactEdge] {
        &self.edges
    }

    pub fn out_edges(&self, state: usize) -> impl Iterator<Item = &CompactEdge> {
        self.edges.iter().filter(move |e| e.source == state)
    }

    /// Compacted state containing a state of the source automaton.
    pub fn owner(&self, source_state: usize) -> usize {
        self.owner[source_state]
    }

    pub fn state_of_minimal(&self, w: &Word) -> Option<usize> {
        self.states.iter().position(|s| &s.minimal_word == w)
    }

    /// Number of states of each height.
    pub fn census(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut out = std::collections::BTreeMap::new();
        for s in &self.states {
            *out.entry(s.height).or_insert(0) += 1;
        }
        out
    }
}

fn is_right_minimal(w: &Word) -> bool {
    w.is_empty() || classify(w).is_ok_and(|p| p.right_minimal)
}

/// Merges each right-minimal state with its chain of right simple
/// extensions.
///
/// A chain follows the unique solid out-edge for as long as there is exactly
/// one out-edge. The label of an edge entering a compacted state is the entry
/// letter of its minimal word followed by the letters of its chain.
pub fn compact(a: &Automaton) -> Result<CompactAutomaton> {
    let mut states = Vec::new();
    let mut owner: Vec<Option<usize>> = vec![None; a.len()];
    for head in 0..a.len() {
        if !is_right_minimal(a.label(head)) {
            continue;
        }
        let id = states.len();
        let mut members = vec![head];
        let mut current = head;
        while current != a.initial() && a.out_degree(current) == 1 {
            let next = Symbol::ALL
                .into_iter()
                .find_map(|x| a.transition(current, x))
                .expect("out-degree one");
            if next.kind != EdgeKind::Solid {
                break;
            }
            current = next.target;
            members.push(current);
        }
        for &m in &members {
            if owner[m].replace(id).is_some() {
                return Err(Error::InternalInconsistency(format!(
                    "state {} lies on two chains",
                    a.label(m)
                )));
            }
        }
        let minimal_word = a.label(head).clone();
        let chain = derivative_chain(&minimal_word)?;
        states.push(CompactState {
            maximal_extension: extend(&minimal_word, Side::Both)?,
            height: chain.height(),
            root: chain.root().cloned(),
            chain: members.iter().map(|&m| a.label(m).clone()).collect(),
            minimal_word,
            members,
        });
    }
    let owner: Vec<usize> = owner
        .into_iter()
        .enumerate()
        .map(|(p, o)| {
            o.ok_or_else(|| {
                Error::InternalInconsistency(format!("state {} lies on no chain", a.label(p)))
            })
        })
        .collect::<Result<_>>()?;

    let mut edges = Vec::new();
    for (id, s) in states.iter().enumerate() {
        let end = *s.members.last().expect("non-empty chain");
        for x in Symbol::ALL {
            let Some(t) = a.transition(end, x) else { continue };
            let target = owner[t.target];
            let ts = &states[target];
            let entered = a.label(t.target);
            let tail = ts.chain_end().len() - entered.len() + 1;
            edges.push(CompactEdge {
                source: id,
                letter: x,
                label: ts.chain_end().suffix(tail),
                target,
                kind: t.kind,
            });
        }
    }
    Ok(CompactAutomaton {
        states,
        edges,
        owner,
    })
}

/// Factors of the state's maximal extension, of length at most `n`, whose own
/// maximal extension is that same word.
pub fn class_members(ca: &CompactAutomaton, state: usize, n: usize) -> BTreeSet<Word> {
    let target = &ca.state(state).maximal_extension;
    let mut out = BTreeSet::new();
    for len in 0..=n.min(target.len()) {
        for start in 0..=target.len() - len {
            let v = target.factor(start, start + len);
            if !out.contains(&v) && extend(&v, Side::Both).is_ok_and(|e| &e == target) {
                out.insert(v);
            }
        }
    }
    out
}
