//! Worked examples with known answers, runnable as a self-test.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::automata::{class_members, compact, l_automaton, Automaton, EdgeKind};
use crate::calculus::{
    classify, derivative, derivative_chain, extend, height, is_cinf, is_k_differentiable,
    primitives, root, Side,
};
use crate::error::Error;
use crate::forbidden::{build_trie, is_minimal_forbidden, mf_set};
use crate::repetitions::{census, kolakoski, repetitivity};
use crate::vertical::{
    build_vuca, canonical_minimal, psi, reconstruct, vertical_repr, Frontier,
};
use crate::word::{rle, Word};

pub struct Example {
    pub id: &'static str,
    run: fn() -> Result<(), String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn w(s: &str) -> Word {
    Word::lit(s)
}

fn f(s: &str) -> Frontier {
    s.parse().expect("valid frontier literal")
}

fn words(items: &[&str]) -> BTreeSet<Word> {
    items.iter().map(|s| w(s)).collect()
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn expect(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn automaton(k: usize) -> Automaton {
    l_automaton(&build_trie(&mf_set(k)))
}

macro_rules! examples {
    ($($id:literal => $body:expr;)*) => {
        &[$(Example { id: $id, run: || $body }),*]
    };
}

pub static EXAMPLES: &[Example] = examples! {
    "rle/2211" => expect_eq(rle(&w("2211")).runs().to_vec(), vec![2, 2]);
    "derivative/2211" => expect_eq(derivative(&w("2211")).map_err(err)?, w("22"));
    "derivative/21221211221" => expect_eq(derivative(&w("21221211221")).map_err(err)?, w("121122"));
    "derivative/111-rejected" => expect(derivative(&w("111")).is_err(), "111 differentiated");
    "chain/2211" => expect_eq(
        derivative_chain(&w("2211")).map_err(err)?.levels().to_vec(),
        vec![w("2211"), w("22"), w("2"), Word::new()],
    );
    "chain/22112112" => expect_eq(
        derivative_chain(&w("22112112")).map_err(err)?.levels().to_vec(),
        vec![w("22112112"), w("2212"), w("21"), Word::new()],
    );
    "chain/12121-level-1" => expect_eq(
        derivative_chain(&w("12121")).err(),
        Some(Error::NotCInfinity { level: 1 }),
    );
    "differentiable/12121-twice" => expect(!is_k_differentiable(&w("12121"), 2), "12121 in C^2");
    "cinf/2211" => expect(is_cinf(&w("2211")), "2211 rejected");
    "cinf/112211" => expect(!is_cinf(&w("112211")), "112211 accepted");
    "height-root/2211" => expect_eq(
        (height(&w("2211")).map_err(err)?, root(&w("2211")).map_err(err)?),
        (3, w("2")),
    );
    "height-root/22112112" => expect_eq(
        (height(&w("22112112")).map_err(err)?, root(&w("22112112")).map_err(err)?),
        (3, w("21")),
    );
    "complement/11212" => expect_eq(w("11212").complement(), w("22121"));
    "reversal/11212" => expect_eq(w("11212").reversal(), w("21211"));
    "primitives/2" => expect_eq(
        primitives(&w("2")).map_err(err)?,
        words(&["11", "22", "211", "112", "2112", "122", "221", "1221"]),
    );
    "primitives/1" => expect_eq(primitives(&w("1")).map_err(err)?, words(&["121", "212"]));
    "primitives/empty" => expect_eq(
        primitives(&Word::new()).map_err(err)?,
        words(&["1", "2", "12", "21"]),
    );
    "classify/2211-minimal" => {
        let p = classify(&w("2211")).map_err(err)?;
        expect(p.is_minimal() && !p.left_maximal && !p.right_maximal, "2211 profile")
    };
    "classify/2122112-left-maximal-only" => {
        let p = classify(&w("2122112")).map_err(err)?;
        expect(p.left_maximal && !p.right_maximal, "2122112 profile")
    };
    "classify/121-not-fully-extendable" => {
        let p = classify(&w("121")).map_err(err)?;
        expect(p.left_doubly_ext && p.right_doubly_ext && !p.fully_ext, "121 profile")?;
        expect(!is_cinf(&w("21212")), "21212 accepted")
    };
    "extend/2211-right" => expect_eq(extend(&w("2211"), Side::Right).map_err(err)?, w("221121"));
    "extend/2211-left" => expect_eq(extend(&w("2211"), Side::Left).map_err(err)?, w("212211"));
    "extend/2211-both" => expect_eq(extend(&w("2211"), Side::Both).map_err(err)?, w("21221121"));
    "mf/1" => expect_eq(mf_set(1).words(), words(&["111", "222"]));
    "mf/2" => expect_eq(
        mf_set(2).words(),
        words(&["111", "222", "21212", "12121", "112211", "221122"]),
    );
    "mf/3" => expect_eq(
        mf_set(3).words(),
        words(&[
            "111", "222", "21212", "12121", "112211", "221122", "11211211", "22122122",
            "212212212", "121121121", "2121122121", "1212211212", "1122121122", "2211212211",
        ]),
    );
    "mf/112211-minimal-forbidden" => expect(
        is_minimal_forbidden(&w("112211")).map_err(err)?,
        "112211 not minimal forbidden",
    );
    "automaton/accepts-c3" => {
        let a = automaton(3);
        let lang = a.language_up_to(10);
        let bad = (0..=10)
            .flat_map(Word::all_of_length)
            .filter(|v| lang.contains(v) != is_k_differentiable(v, 3))
            .count();
        expect_eq(bad, 0)
    };
    "automaton/a1-rejects-111" => expect(!automaton(1).accepts(&w("111")), "111 accepted");
    "automaton/a2-excludes-mf2" => {
        let lang = automaton(2).language_up_to(5);
        expect(!lang.contains(&w("21212")) && !lang.contains(&w("12121")), "MF(C^2) accepted")
    };
    "automaton/run-212211" => {
        let a = automaton(4);
        expect_eq(a.run(&w("212211")).map(|s| a.label(s).clone()), Some(w("2211")))
    };
    "compact/census-2^j" => {
        let mut failures = Vec::new();
        for k in 4..=6 {
            let ca = compact(&automaton(k)).map_err(err)?;
            let census = ca.census();
            for j in 1..k {
                let got = census.get(&j).copied().unwrap_or(0);
                if got != 1 << j {
                    failures.push(format!("k={k} j={j}: {got} states, expected {}", 1 << j));
                }
            }
        }
        expect(failures.is_empty(), &failures.join("; "))
    };
    "compact/2211-two-solid-edges" => {
        let ca = compact(&automaton(6)).map_err(err)?;
        let s = ca.state_of_minimal(&w("2211")).ok_or("no state for 2211")?;
        let kinds: Vec<EdgeKind> = ca.out_edges(s).map(|e| e.kind).collect();
        expect_eq(kinds, vec![EdgeKind::Solid, EdgeKind::Solid])
    };
    "compact/double-rooted-weak-target" => {
        let ca = compact(&automaton(6)).map_err(err)?;
        for (id, s) in ca.states().iter().enumerate() {
            if s.height == 0 || s.height > 4 || s.is_single_rooted() {
                continue;
            }
            let kinds: Vec<EdgeKind> = ca.out_edges(id).map(|e| e.kind).collect();
            expect(
                kinds.contains(&EdgeKind::Solid) && kinds.contains(&EdgeKind::Weak) && kinds.len() == 2,
                &format!("{} edges {kinds:?}", s.minimal_word),
            )?;
            for e in ca.out_edges(id).filter(|e| e.kind == EdgeKind::Weak) {
                let t = &ca.state(e.target).minimal_word;
                let p = classify(t).map_err(err)?;
                expect(p.is_minimal() && root(t).map_err(err)? == w("2"), &format!("weak target {t}"))?;
            }
        }
        Ok(())
    };
    "compact/class-of-2211" => {
        let ca = compact(&automaton(6)).map_err(err)?;
        let s = ca.state_of_minimal(&w("2211")).ok_or("no state for 2211")?;
        let members = class_members(&ca, s, 8);
        expect(
            words(&["2211", "221121", "212211", "21221121"]).is_subset(&members),
            "missing class members",
        )
    };
    "psi/21221211221" => expect_eq(
        vertical_repr(&w("21221211221")).map_err(err)?.to_string(),
        "2110|1022".to_string(),
    );
    "psi/1221221121" => expect_eq(
        vertical_repr(&w("1221221121")).map_err(err)?.to_string(),
        "101|110".to_string(),
    );
    "psi/2212211" => expect_eq(
        vertical_repr(&w("2212211")).map_err(err)?.to_string(),
        "221|122".to_string(),
    );
    "reconstruct/221|122" => expect_eq(reconstruct(&f("221"), &f("122")).map_err(err)?, w("2212211"));
    "reconstruct/101|110" => expect_eq(reconstruct(&f("101"), &f("110")).map_err(err)?, w("1221221121"));
    "reconstruct/2122|2222" => expect_eq(reconstruct(&f("2122"), &f("2222")).map_err(err)?, w("2121122"));
    "minimal/21221211221" => expect_eq(canonical_minimal(&w("21221211221")).map_err(err)?, w("2121122"));
    "minimal/1221221121" => expect_eq(canonical_minimal(&w("1221221121")).map_err(err)?, w("2212211"));
    "vuca/211-weak-edge" => expect_eq(build_vuca(4).delta(&f("211"), 0).cloned(), Some(f("2122")));
    "vuca/paths-2110-1022" => {
        let v = build_vuca(4);
        expect_eq((v.run(&f("2110")), v.run(&f("1022"))), (Some(f("2122")), Some(f("2222"))))
    };
    "vuca/out-degree-3" => {
        let v = build_vuca(6);
        let bad = v
            .states()
            .into_iter()
            .filter(|u| !u.is_empty() && u.len() < 6 && v.out_degree(u) != 3)
            .count();
        expect_eq(bad, 0)
    };
    "vuca/two-minimal-words-per-frontier" => {
        let mut count = std::collections::BTreeMap::<Frontier, (usize, usize)>::new();
        for v in crate::oracle::enumerate_cinf(20) {
            if v.is_empty() || height(&v).map_err(err)? > 3 || !classify(&v).map_err(err)?.is_minimal() {
                continue;
            }
            let e = count.entry(psi(&v).map_err(err)?).or_default();
            if root(&v).map_err(err)?.len() == 1 {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        expect_eq(count.len(), 2 + 4 + 8)?;
        expect(count.values().all(|&c| c == (1, 1)), "frontier without one single- and one double-rooted minimal word")
    };
    "vuca/first-symbol-symmetry" => {
        let v = build_vuca(6);
        for (u, d, t) in v.edges() {
            let image = if u.is_empty() {
                v.delta(u, 3 - d)
            } else {
                v.delta(&u.flip_first(), d)
            };
            expect_eq(image, Some(&t.flip_first()))?;
        }
        Ok(())
    };
    "kolakoski/12" => expect_eq(kolakoski(12), w("221121221221"));
    "kolakoski/60" => expect_eq(
        kolakoski(60),
        w("221121221221121122121121221121121221221121221211211221221121"),
    );
    "census/no-cubes" => expect_eq(census(60).cubes, 0);
    "census/no-long-overlaps" => expect_eq(census(60).long_overlaps, 0);
    "gap/existence-up-to-10" => {
        let t = repetitivity(10).map_err(err)?;
        expect_eq(t.rows.len(), 10)
    };
};

pub fn run_all() -> Vec<Outcome> {
    EXAMPLES
        .iter()
        .map(|e| {
            let result = std::panic::catch_unwind(e.run).unwrap_or_else(|_| Err("panicked".into()));
            Outcome {
                id: e.id,
                pass: result.is_ok(),
                detail: result.err(),
            }
        })
        .collect()
}
