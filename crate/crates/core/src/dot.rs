//! Graphviz export. Solid edges are drawn solid, weak edges dashed, and
//! states of equal height share a rank.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::automata::{Automaton, CompactAutomaton, EdgeKind};
use crate::calculus::height;
use crate::vertical::{vca_edges, Frontier, Vuca};
use crate::error::Result;
use crate::word::Word;

fn style(kind: EdgeKind) -> &'static str {
    match kind {
        EdgeKind::Solid => "solid",
        EdgeKind::Weak => "dashed",
    }
}

fn ranks<K: Ord, I: IntoIterator<Item = (K, String)>>(out: &mut String, nodes: I) {
    let mut by_rank: BTreeMap<K, Vec<String>> = BTreeMap::new();
    for (r, id) in nodes {
        by_rank.entry(r).or_default().push(id);
    }
    for ids in by_rank.values() {
        let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
    }
}

fn header(name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {name} {{");
    s.push_str("  rankdir=LR;\n  node [shape=circle];\n");
    s
}

fn quoted(w: impl std::fmt::Display) -> String {
    format!("\"{w}\"")
}

pub fn automaton_dot(a: &Automaton) -> String {
    let mut s = header("A");
    for (i, l) in a.labels().iter().enumerate() {
        let _ = writeln!(s, "  q{i} [label={}];", quoted(l));
    }
    for (p, x, t) in a.edges() {
        let _ = writeln!(
            s,
            "  q{p} -> q{} [label=\"{x}\", style={}];",
            t.target,
            style(t.kind)
        );
    }
    ranks(
        &mut s,
        a.labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (height(l).unwrap_or(usize::MAX), format!("q{i}"))),
    );
    s.push_str("}\n");
    s
}

pub fn compact_dot(ca: &CompactAutomaton) -> String {
    let mut s = header("CA");
    for (i, st) in ca.states().iter().enumerate() {
        let _ = writeln!(s, "  c{i} [label={}];", quoted(&st.minimal_word));
    }
    for e in ca.edges() {
        let _ = writeln!(
            s,
            "  c{} -> c{} [label={}, style={}];",
            e.source,
            e.target,
            quoted(&e.label),
            style(e.kind)
        );
    }
    ranks(
        &mut s,
        ca.states()
            .iter()
            .enumerate()
            .map(|(i, st)| (st.height, format!("c{i}"))),
    );
    s.push_str("}\n");
    s
}

pub fn vuca_dot(v: &Vuca) -> String {
    let mut s = header("VUCA");
    let states = v.states();
    let id: BTreeMap<&Frontier, usize> = states.iter().enumerate().map(|(i, u)| (u, i)).collect();
    for (i, u) in states.iter().enumerate() {
        let _ = writeln!(s, "  v{i} [label={}];", quoted(u));
    }
    for (u, d, t) in v.edges() {
        let kind = if d == 0 { EdgeKind::Weak } else { EdgeKind::Solid };
        let _ = writeln!(
            s,
            "  v{} -> v{} [label=\"{d}\", style={}];",
            id[u],
            id[t],
            style(kind)
        );
    }
    ranks(
        &mut s,
        states.iter().enumerate().map(|(i, u)| (u.len(), format!("v{i}"))),
    );
    s.push_str("}\n");
    s
}

/// The frontier-relabeled compacted automaton, before states sharing a left
/// frontier are merged; same-frontier edges are labeled `ε`.
pub fn vca_dot(k: usize) -> Result<String> {
    let edges = vca_edges(k)?;
    let mut s = header("VCA");
    let mut names: BTreeMap<Word, (String, Frontier)> = BTreeMap::new();
    for e in &edges {
        for (w, f) in [(&e.source, &e.source_frontier), (&e.target, &e.target_frontier)] {
            let next = names.len();
            names
                .entry(w.clone())
                .or_insert_with(|| (format!("m{next}"), f.clone()));
        }
    }
    for (w, (name, f)) in &names {
        let _ = writeln!(s, "  {name} [label=\"{w}\\n{f}\"];");
    }
    for e in &edges {
        let label = match e.symbol {
            Some(d) => d.to_string(),
            None => crate::word::EPSILON.to_string(),
        };
        let kind = if e.symbol == Some(0) { EdgeKind::Weak } else { EdgeKind::Solid };
        let _ = writeln!(
            s,
            "  {} -> {} [label=\"{label}\", style={}];",
            names[&e.source].0,
            names[&e.target].0,
            style(kind)
        );
    }
    ranks(&mut s, names.values().map(|(name, f)| (f.len(), name.clone())));
    s.push_str("}\n");
    Ok(s)
}
