//! Exhaustive invariant checks, shared by the per-module suites and the
//! acceptance target. Each check returns the first counterexample it finds.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cinf::automata::{compact, l_automaton, Automaton, EdgeKind};
use cinf::calculus::{
    classify, derivative, derivative_chain, extend, extremal_primitives, height, is_cinf,
    is_k_differentiable, primitives, root, Extremal, Side,
};
use cinf::forbidden::{build_trie, mf_set, MfCatalog};
use cinf::oracle;
use cinf::repetitions::{kolakoski, self_encodes, shortest_gap, default_max_total};
use cinf::vertical::{build_vuca, psi, reconstruct, vertical_repr, vuca_run, Frontier};
use cinf::{Symbol, Word};

pub type Check = Result<(), String>;

pub type Registry = Vec<(&'static str, Box<dyn Fn() -> Check>)>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn nonempty_cinf(n: usize) -> Vec<Word> {
    oracle::enumerate_cinf(n).into_iter().filter(|w| !w.is_empty()).collect()
}

pub fn automaton(k: usize) -> Automaton {
    l_automaton(&build_trie(&mf_set(k)))
}

fn w(s: &str) -> Word {
    Word::lit(s)
}

// word-core

pub fn derivative_commutes() -> Check {
    for v in nonempty_cinf(20) {
        let d = derivative(&v).map_err(|e| e.to_string())?;
        ensure!(
            derivative(&v.reversal()).as_ref() == Ok(&d.reversal()),
            "D(rev {v}) != rev D({v})"
        );
        ensure!(derivative(&v.complement()).as_ref() == Ok(&d), "D(comp {v}) != D({v})");
    }
    Ok(())
}

pub fn ck_closure() -> Check {
    for k in 1..=3 {
        for n in 0..=14 {
            for v in Word::all_of_length(n) {
                if is_k_differentiable(&v, k) {
                    ensure!(is_k_differentiable(&v.reversal(), k), "rev {v} not in C^{k}");
                    ensure!(is_k_differentiable(&v.complement(), k), "comp {v} not in C^{k}");
                }
            }
        }
    }
    Ok(())
}

fn twos(v: &Word) -> usize {
    v.count(Symbol::Two)
}

/// The band exactly as stated: `|D| + 2·#2(D) <= |w| <= |D| + 2·#2(D) + 2`.
pub fn length_bands_as_stated() -> Check {
    for v in nonempty_cinf(20) {
        let d = derivative(&v).map_err(|e| e.to_string())?;
        let base = d.len() + 2 * twos(&d);
        ensure!(
            base <= v.len() && v.len() <= base + 2,
            "|{v}| = {} outside [{base}, {}] (D = {d})",
            v.len(),
            base + 2
        );
    }
    Ok(())
}

/// `|w|` is the sum of the letters of `D(w)` plus the trimmed unit runs:
/// `|D| + #2(D) <= |w| <= |D| + #2(D) + 2`.
pub fn length_bands_exact() -> Check {
    for v in nonempty_cinf(20) {
        let d = derivative(&v).map_err(|e| e.to_string())?;
        let base = d.len() + twos(&d);
        ensure!(
            base <= v.len() && v.len() <= base + 2,
            "|{v}| = {} outside [{base}, {}]",
            v.len(),
            base + 2
        );
    }
    Ok(())
}

pub fn primitive_sets() -> Check {
    for v in oracle::enumerate_cinf(14) {
        let all = primitives(&v).map_err(|e| e.to_string())?;
        ensure!((2..=8).contains(&all.len()), "{v} has {} primitives", all.len());
        for p in &all {
            ensure!(derivative(p).as_ref() == Ok(&v), "D({p}) != {v}");
        }
        for mode in [Extremal::Min, Extremal::Max] {
            let (a, b) = extremal_primitives(&v, mode).map_err(|e| e.to_string())?;
            ensure!(a.complement() == b, "{mode:?} pair of {v}: {a}, {b}");
        }
    }
    Ok(())
}

pub fn right_maximal_iff_minimal_extension() -> Check {
    for v in nonempty_cinf(16) {
        let p = classify(&v).map_err(|e| e.to_string())?;
        let mut some_minimal = false;
        for x in Symbol::ALL {
            let e = v.with(x);
            if is_cinf(&e) && classify(&e).is_ok_and(|q| q.right_minimal) {
                some_minimal = true;
                let other = v.with(x.flip());
                ensure!(
                    is_cinf(&other) && classify(&other).is_ok_and(|q| q.right_minimal),
                    "{e} right minimal but {other} is not"
                );
            }
        }
        ensure!(p.right_maximal == some_minimal, "right maximality of {v}");
    }
    Ok(())
}

pub fn derivative_length_growth() -> Check {
    for v in nonempty_cinf(16) {
        if !classify(&v).map_err(|e| e.to_string())?.right_maximal {
            continue;
        }
        let base = derivative_chain(&v).map_err(|e| e.to_string())?;
        for x in Symbol::ALL {
            let grown = derivative_chain(&v.with(x)).map_err(|e| e.to_string())?;
            for j in 0..base.height() {
                ensure!(
                    grown.levels()[j].len() == base.levels()[j].len() + 1,
                    "|D^{j}({v}{x})| != |D^{j}({v})| + 1"
                );
            }
        }
    }
    Ok(())
}

pub fn extension_properties() -> Check {
    for v in nonempty_cinf(16) {
        let chain = derivative_chain(&v).map_err(|e| e.to_string())?;
        for side in [Side::Left, Side::Right, Side::Both] {
            let e = extend(&v, side).map_err(|e| e.to_string())?;
            ensure!(extend(&e, side).as_ref() == Ok(&e), "extend not idempotent on {v}");
            let p = classify(&e).map_err(|e| e.to_string())?;
            let ok = match side {
                Side::Left => p.left_maximal,
                Side::Right => p.right_maximal,
                Side::Both => p.left_maximal && p.right_maximal,
            };
            ensure!(ok, "{side:?} extension {e} of {v} not maximal");
            ensure!(
                height(&e).ok() == Some(chain.height()) && root(&e).ok() == chain.root().cloned(),
                "extension {e} of {v} changes height or root"
            );
        }
        ensure!(
            Symbol::ALL.iter().any(|&x| is_cinf(&v.with(x))),
            "{v} has no right extension"
        );
        ensure!(
            Symbol::ALL.iter().any(|&x| is_cinf(&v.prepended(x))),
            "{v} has no left extension"
        );
    }
    Ok(())
}

pub fn classification_against_extensions() -> Check {
    for v in nonempty_cinf(16) {
        let p = classify(&v).map_err(|e| e.to_string())?;
        let left_both = Symbol::ALL.iter().all(|&x| is_cinf(&v.prepended(x)));
        let right_both = Symbol::ALL.iter().all(|&x| is_cinf(&v.with(x)));
        let all_four = Symbol::ALL
            .iter()
            .all(|&x| Symbol::ALL.iter().all(|&y| is_cinf(&v.prepended(x).with(y))));
        ensure!(p.left_doubly_ext == left_both, "left double extension of {v}");
        ensure!(p.right_doubly_ext == right_both, "right double extension of {v}");
        ensure!(p.fully_ext == all_four, "full extension of {v}");
        ensure!(p.left_doubly_ext == p.left_maximal, "left flags of {v}");
        ensure!(p.right_doubly_ext == p.right_maximal, "right flags of {v}");
        ensure!(
            !p.fully_ext || (p.left_maximal && p.right_maximal && !p.single_rooted),
            "fully extendable {v}"
        );
    }
    Ok(())
}

// forbidden

fn anti_factorial(words: &BTreeSet<Word>) -> bool {
    words
        .iter()
        .all(|a| words.iter().all(|b| a == b || !b.contains_factor(a)))
}

pub fn catalog_invariants() -> Check {
    for k in 1..=7 {
        let c = mf_set(k);
        let words = c.words();
        ensure!(words.len() == (1 << (k + 1)) - 2, "|MF(C^{k})| = {}", words.len());
        ensure!(anti_factorial(&words), "MF(C^{k}) not anti-factorial");
        for v in &words {
            ensure!(words.contains(&v.complement()), "complement of {v} missing");
            ensure!(words.contains(&v.reversal()), "reversal of {v} missing");
        }
        for (h, stratum) in c.strata() {
            for v in stratum {
                let mut cur = v.clone();
                for _ in 1..*h {
                    cur = derivative(&cur).map_err(|e| e.to_string())?;
                }
                ensure!(cur == w("111") || cur == w("222"), "D^{}({v}) = {cur}", h - 1);
            }
        }
    }
    Ok(())
}

pub fn catalog_nesting() -> Check {
    for k in 1..=9 {
        ensure!(
            mf_set(k).words().is_subset(&mf_set(k + 1).words()),
            "MF(C^{k}) not inside MF(C^{})",
            k + 1
        );
    }
    Ok(())
}

pub fn strata_are_primitives() -> Check {
    let c: MfCatalog = mf_set(7);
    for h in 1..7 {
        let below: BTreeSet<Word> = c.by_height(h).iter().cloned().collect();
        for v in c.by_height(h + 1) {
            let d = derivative(v).map_err(|e| e.to_string())?;
            ensure!(below.contains(&d), "{v} of height {} is not a primitive of height {h}", h + 1);
        }
        let above: BTreeSet<Word> = c.by_height(h + 1).iter().cloned().collect();
        for v in &above {
            ensure!(above.contains(&v.complement()), "stratum {} not complement-closed", h + 1);
            ensure!(above.contains(&v.reversal()), "stratum {} not reversal-closed", h + 1);
        }
    }
    Ok(())
}

pub fn catalog_matches_oracle() -> Check {
    for k in 1..=4 {
        ensure!(mf_set(k).words() == oracle::brute_mf(k), "MF(C^{k}) differs from brute force");
    }
    Ok(())
}

pub fn prefix_law() -> Check {
    let words = mf_set(6).words();
    let all = oracle::enumerate_cinf(12);
    ensure!(
        all.iter().all(|v| height(v).is_ok_and(|h| h <= 6)),
        "a C-infinity word of length <= 12 has height above 6"
    );
    for n in 0..=12 {
        let prefixes: BTreeSet<Word> = words
            .iter()
            .filter(|v| v.len() > n)
            .map(|v| v.prefix(n))
            .collect();
        let left_minimal: BTreeSet<Word> = all
            .iter()
            .filter(|v| v.len() == n)
            .filter(|v| v.is_empty() || classify(v).is_ok_and(|p| p.left_minimal))
            .cloned()
            .collect();
        ensure!(prefixes == left_minimal, "length {n}: prefixes differ from left-minimal words");
    }
    Ok(())
}

// automata

pub fn automaton_exactness() -> Check {
    for k in 1..=4 {
        let lang = automaton(k).language_up_to(16);
        let expected: BTreeSet<Word> = oracle::enumerate_ck(k, 16).into_iter().collect();
        ensure!(lang == expected, "A_{k} differs from C^{k} up to length 16");
    }
    Ok(())
}

pub fn automaton_structure() -> Check {
    for k in 1..=7 {
        let a = automaton(k);
        for s in 0..a.len() {
            ensure!(a.entry_letter(s).is_some(), "A_{k}: edges into {} disagree", a.label(s));
            if let Some(Some(x)) = a.entry_letter(s) {
                ensure!(a.label(s).last() == Some(x), "A_{k}: entry letter of {}", a.label(s));
            }
            if let Some(f) = a.failure(s) {
                ensure!(
                    a.label(s).ends_with(a.label(f)) && a.label(f).len() < a.label(s).len(),
                    "A_{k}: failure of {}",
                    a.label(s)
                );
            }
        }
        let mut seen = BTreeSet::new();
        for (p, x, _) in a.edges() {
            ensure!(seen.insert((p, x)), "A_{k}: two edges on one letter");
        }
    }
    Ok(())
}

fn longest_state_suffix(a: &Automaton, v: &Word) -> usize {
    (0..=v.len())
        .find_map(|i| a.state_of(&v.factor(i, v.len())))
        .expect("ε is a state")
}

pub fn run_ends_at_longest_state_suffix() -> Check {
    for k in 1..=5 {
        let a = automaton(k);
        for v in a.language_up_to(14) {
            ensure!(
                a.run(&v) == Some(longest_state_suffix(&a, &v)),
                "A_{k}: run({v}) is not its longest state suffix"
            );
        }
    }
    Ok(())
}

pub fn left_simple_extension() -> Check {
    let a = automaton(7);
    for v in nonempty_cinf(14) {
        let u = a.label(a.run(&v).ok_or(format!("{v} rejected"))?).clone();
        for start in 1..=v.len() - u.len() {
            let s = v.factor(start, v.len());
            let options = Symbol::ALL.iter().filter(|&&x| is_cinf(&s.prepended(x))).count();
            ensure!(options == 1, "{v} is not a left simple extension of {u} (at {s})");
        }
    }
    Ok(())
}

pub fn weak_edges_in_automata() -> Check {
    for k in 4..=7 {
        let a = automaton(k);
        for (p, _, t) in a.edges().filter(|e| e.2.kind == EdgeKind::Weak) {
            let src = a.label(p);
            if src.is_empty() || height(src).map_err(|e| e.to_string())? > k - 2 {
                continue;
            }
            let sp = classify(src).map_err(|e| e.to_string())?;
            ensure!(
                sp.left_minimal && sp.right_maximal && !sp.single_rooted,
                "A_{k}: weak source {src}"
            );
            let dst = a.label(t.target);
            let dp = classify(dst).map_err(|e| e.to_string())?;
            ensure!(
                dp.is_minimal() && root(dst).ok() == Some(w("2")),
                "A_{k}: weak target {dst} of {src}"
            );
        }
    }
    Ok(())
}

pub fn compact_weak_edges(k: usize, max_height: usize) -> Check {
    let ca = compact(&automaton(k)).map_err(|e| e.to_string())?;
    for e in ca.edges().iter().filter(|e| e.kind == EdgeKind::Weak) {
        let s = ca.state(e.source);
        if s.height == 0 || s.height > max_height {
            continue;
        }
        let end = s.chain_end();
        let sp = classify(end).map_err(|e| e.to_string())?;
        ensure!(
            sp.left_minimal && sp.right_maximal && !sp.single_rooted,
            "weak source {end} (class of {})",
            s.minimal_word
        );
        let t = &ca.state(e.target).minimal_word;
        let tp = classify(t).map_err(|e| e.to_string())?;
        ensure!(tp.is_minimal() && root(t).ok() == Some(w("2")), "weak target {t}");
    }
    for (id, s) in ca.states().iter().enumerate() {
        if s.height == 0 || s.height > max_height {
            continue;
        }
        let kinds: Vec<EdgeKind> = ca.out_edges(id).map(|e| e.kind).collect();
        let expected = if s.is_single_rooted() {
            vec![EdgeKind::Solid, EdgeKind::Solid]
        } else {
            let mut v = vec![EdgeKind::Solid, EdgeKind::Weak];
            v.sort_by_key(|k| *k != kinds[0]);
            v
        };
        ensure!(kinds == expected, "{}: out-edges {kinds:?}", s.minimal_word);
    }
    Ok(())
}

/// `2^j` compacted states of height `j` for `1 <= j <= k - 1`.
pub fn compaction_census(k_max: usize) -> Check {
    let mut failures = Vec::new();
    for k in 2..=k_max {
        let census: BTreeMap<usize, usize> = compact(&automaton(k)).map_err(|e| e.to_string())?.census();
        for j in 1..k {
            let got = census.get(&j).copied().unwrap_or(0);
            if got != 1 << j {
                failures.push(format!("k={k} j={j}: {got}"));
            }
        }
    }
    ensure!(failures.is_empty(), "expected 2^j states, got {}", failures.join(", "));
    Ok(())
}

pub fn compaction_metadata() -> Check {
    let ca = compact(&automaton(6)).map_err(|e| e.to_string())?;
    for s in ca.states().iter().skip(1) {
        let p = classify(&s.minimal_word).map_err(|e| e.to_string())?;
        ensure!(p.is_minimal(), "{} is not minimal", s.minimal_word);
        let q = classify(&s.maximal_extension).map_err(|e| e.to_string())?;
        ensure!(q.is_maximal(), "{} is not maximal", s.maximal_extension);
        ensure!(
            height(&s.maximal_extension).ok() == Some(s.height)
                && root(&s.maximal_extension).ok() == s.root,
            "{}: extension changes height or root",
            s.minimal_word
        );
    }
    Ok(())
}

// vertical

pub fn round_trip(n: usize) -> Check {
    for v in nonempty_cinf(n) {
        let r = vertical_repr(&v).map_err(|e| e.to_string())?;
        let back = reconstruct(&r.left, &r.right).map_err(|e| format!("{v} ({r}): {e}"))?;
        ensure!(back == v, "{v} ({r}) rebuilt as {back}");
    }
    Ok(())
}

pub fn frontier_flags() -> Check {
    for v in nonempty_cinf(18) {
        let p = classify(&v).map_err(|e| e.to_string())?;
        let r = vertical_repr(&v).map_err(|e| e.to_string())?;
        let tail = |f: &Frontier, d: u8| f.digits()[1..].contains(&d);
        ensure!(p.left_maximal == !tail(&r.left, 2), "left maximality of {v}");
        ensure!(p.left_minimal == !tail(&r.left, 0), "left minimality of {v}");
        ensure!(p.right_maximal == !tail(&r.right, 2), "right maximality of {v}");
        ensure!(p.right_minimal == !tail(&r.right, 0), "right minimality of {v}");
    }
    Ok(())
}

pub fn frontier_classes() -> Check {
    let mut by_run: BTreeMap<Frontier, BTreeSet<Frontier>> = BTreeMap::new();
    let mut by_ext: BTreeMap<Frontier, BTreeSet<Frontier>> = BTreeMap::new();
    for v in nonempty_cinf(14) {
        let a = vuca_run(&psi(&v).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let b = psi(&extend(&v, Side::Left).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        by_run.entry(a.clone()).or_default().insert(b.clone());
        by_ext.entry(b).or_default().insert(a);
    }
    ensure!(
        by_run.values().all(|s| s.len() == 1) && by_ext.values().all(|s| s.len() == 1),
        "automaton classes and left-extension frontiers do not coincide"
    );
    Ok(())
}

pub fn vuca_shape(k: usize) -> Check {
    let v = build_vuca(k);
    let states = v.states();
    for j in 0..=k {
        let at = states.iter().filter(|u| u.len() == j).count();
        ensure!(at == 1 << j, "{at} states at depth {j}");
    }
    for (u, d, t) in v.edges() {
        if d == 0 {
            ensure!(t.last() == Some(2), "weak target {t} of {u}");
            ensure!(t.len() == u.len() + 1, "weak target {t} of {u} has the wrong length");
        } else {
            ensure!(t.digits() == [u.digits(), &[d]].concat().as_slice(), "solid edge {u} -{d}-> {t}");
        }
    }
    Ok(())
}

pub fn complement_frontier() -> Check {
    for v in nonempty_cinf(18) {
        let a = psi(&v.complement()).map_err(|e| e.to_string())?;
        let b = psi(&v).map_err(|e| e.to_string())?.flip_first();
        ensure!(a == b, "psi(comp {v}) = {a}, expected {b}");
    }
    Ok(())
}

// repetitions

pub fn kolakoski_fixed_point(n: usize) -> Check {
    let k = kolakoski(n);
    ensure!(self_encodes(&k), "kolakoski({n}) does not encode itself");
    let one_k = k.prefix(n.saturating_sub(1)).prepended(Symbol::One);
    ensure!(self_encodes(&one_k), "1K prefix of length {n} does not encode itself");
    Ok(())
}

pub fn kolakoski_factors() -> Check {
    let k = kolakoski(200);
    for len in 1..=20 {
        for start in 0..=k.len() - len {
            let f = k.factor(start, start + len);
            ensure!(is_cinf(&f), "factor {f} of K is not C-infinity");
        }
    }
    Ok(())
}

pub fn gap_records(n_max: usize) -> Check {
    for n in 1..=n_max {
        for u in oracle::cinf_of_length(n) {
            let r = shortest_gap(&u, default_max_total(n)).map_err(|e| e.to_string())?;
            let whole = u.concat(&r.z).concat(&u);
            ensure!(is_cinf(&whole), "{whole} not C-infinity");
            ensure!(r.gap == r.z.len() && r.total == whole.len(), "record fields for {u}");
            ensure!(oracle::brute_gap(&u) == r.gap, "gap of {u} differs from brute force");
        }
    }
    Ok(())
}

// oracle

pub fn oracle_enumerations() -> Check {
    let cinf = oracle::enumerate_cinf(14);
    let filtered: Vec<Word> = (0..=14)
        .flat_map(Word::all_of_length)
        .filter(oracle::is_cinf)
        .collect();
    ensure!(cinf == filtered, "pruned C-infinity enumeration misses words");
    ensure!(
        cinf.windows(2).all(|p| p[0].shortlex_cmp(&p[1]).is_lt()),
        "enumeration out of order"
    );
    for k in 1..=4 {
        let ck = oracle::enumerate_ck(k, 12);
        let filtered: Vec<Word> = (0..=12)
            .flat_map(Word::all_of_length)
            .filter(|v| oracle::is_ck(v, k))
            .collect();
        ensure!(ck == filtered, "pruned C^{k} enumeration misses words");
    }
    ensure!(oracle::enumerate_cinf(20) == oracle::enumerate_cinf(20), "non-deterministic");
    Ok(())
}

pub fn oracle_agrees_with_calculus() -> Check {
    for n in 0..=16 {
        for v in Word::all_of_length(n) {
            ensure!(oracle::is_cinf(&v) == is_cinf(&v), "membership of {v}");
            for k in 1..=4 {
                ensure!(
                    oracle::is_ck(&v, k) == is_k_differentiable(&v, k),
                    "C^{k} membership of {v}"
                );
            }
        }
    }
    Ok(())
}

/// Every invariant with its name, for the acceptance run.
pub fn all() -> Registry {
    vec![
        ("derivative commutes with reversal and complement", Box::new(derivative_commutes)),
        ("C^k closed under reversal and complement", Box::new(ck_closure)),
        ("length bands as stated", Box::new(length_bands_as_stated)),
        ("length bands exact", Box::new(length_bands_exact)),
        ("primitive sets", Box::new(primitive_sets)),
        ("right maximality via minimal extensions", Box::new(right_maximal_iff_minimal_extension)),
        ("derivative lengths grow by one", Box::new(derivative_length_growth)),
        ("extensions idempotent, maximal, same height and root", Box::new(extension_properties)),
        ("classification against brute-force extensions", Box::new(classification_against_extensions)),
        ("catalog invariants", Box::new(catalog_invariants)),
        ("catalog nesting", Box::new(catalog_nesting)),
        ("strata are primitives", Box::new(strata_are_primitives)),
        ("catalog matches oracle", Box::new(catalog_matches_oracle)),
        ("prefix law", Box::new(prefix_law)),
        ("automaton exactness", Box::new(automaton_exactness)),
        ("automaton determinism and entry labels", Box::new(automaton_structure)),
        ("longest state suffix", Box::new(run_ends_at_longest_state_suffix)),
        ("left simple extensions", Box::new(left_simple_extension)),
        ("weak edges in A_k", Box::new(weak_edges_in_automata)),
        ("compacted weak edges", Box::new(|| compact_weak_edges(6, 4))),
        ("compaction census 2^j", Box::new(|| compaction_census(8))),
        ("compaction metadata", Box::new(compaction_metadata)),
        ("vertical round trip", Box::new(|| round_trip(24))),
        ("frontier maximality and minimality", Box::new(frontier_flags)),
        ("frontier classes", Box::new(frontier_classes)),
        ("frontier automaton shape", Box::new(|| vuca_shape(8))),
        ("complement swaps first frontier symbol", Box::new(complement_frontier)),
        ("Kolakoski fixed points", Box::new(|| kolakoski_fixed_point(1_000_000))),
        ("Kolakoski factors", Box::new(kolakoski_factors)),
        ("gap records", Box::new(|| gap_records(8))),
        ("oracle enumerations", Box::new(oracle_enumerations)),
        ("oracle agrees with calculus", Box::new(oracle_agrees_with_calculus)),
    ]
}
