//! Repetitions with gap `uzu`, the repetitivity functions `I` and `G`, the
//! Kolakoski word and a census of squares, cubes and overlaps.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::{derivative_chain, is_cinf};
use crate::error::{Error, Result};
use crate::oracle;
use crate::word::{rle, Symbol, Word};

/// A shortest gap for `u`: `u z u` is in `C∞` and no shorter `z` (nor a
/// lexicographically smaller one of the same length) works.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapRecord {
    pub u: Word,
    pub z: Word,
    pub gap: usize,
    pub total: usize,
}

/// Default search budget on `|uzu|`: `4|u|^3 + 64`.
pub fn default_max_total(len: usize) -> usize {
    4 * len.pow(3) + 64
}

/// Breadth-first search over the `C∞` right extensions `u z` of `u`, in
/// length-then-lexicographic order of `z`, for the first `z` with `u z u` in
/// `C∞`.
pub fn shortest_gap(u: &Word, max_total: usize) -> Result<GapRecord> {
    derivative_chain(u)?;
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = u.len();
    let mut layer = vec![u.clone()];
    let mut gap = 0;
    loop {
        if 2 * n + gap > max_total {
            return Err(Error::BudgetExceeded { max_total });
        }
        if let Some(hit) = layer.iter().find(|x| is_cinf(&x.concat(u))) {
            let z = hit.factor(n, hit.len());
            return Ok(GapRecord {
                u: u.clone(),
                total: 2 * n + gap,
                gap,
                z,
            });
        }
        layer = layer
            .iter()
            .flat_map(|x| Symbol::ALL.map(|a| x.with(a)))
            .filter(is_cinf)
            .collect();
        gap += 1;
    }
}

/// One row of a repetitivity table: `I(n)` is `min_gap`, `G(n)` is `max_gap`.
/// Witnesses are the lexicographically first words attaining each value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepetitivityRow {
    pub n: usize,
    pub words: usize,
    pub min_gap: usize,
    pub max_gap: usize,
    pub min_witness: Word,
    pub max_witness: Word,
    /// Largest `|uzu|` over the words of length `n`.
    pub max_total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepetitivityTable {
    pub n_max: usize,
    pub rows: Vec<RepetitivityRow>,
}

impl RepetitivityTable {
    pub fn row(&self, n: usize) -> Option<&RepetitivityRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// `I(n)` and `G(n)` for `1 <= n <= n_max`, over every `C∞` word of each
/// length.
pub fn repetitivity(n_max: usize) -> Result<RepetitivityTable> {
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let words = oracle::cinf_of_length(n);
        let records: Vec<GapRecord> = words
            .par_iter()
            .map(|u| shortest_gap(u, default_max_total(n)))
            .collect::<Result<_>>()?;
        let mut iter = records.iter();
        let Some(first) = iter.next() else { continue };
        let (mut lo, mut hi) = (first, first);
        for r in iter {
            if r.gap < lo.gap {
                lo = r;
            }
            if r.gap > hi.gap {
                hi = r;
            }
        }
        rows.push(RepetitivityRow {
            n,
            words: records.len(),
            min_gap: lo.gap,
            max_gap: hi.gap,
            min_witness: lo.u.clone(),
            max_witness: hi.u.clone(),
            max_total: hi.total,
        });
    }
    Ok(RepetitivityTable { n_max, rows })
}

/// The length-`n` prefix of the Kolakoski word `2211212212211...`.
pub fn kolakoski(n: usize) -> Word {
    let mut out: Vec<Symbol> = Vec::with_capacity(n + 2);
    out.extend([Symbol::Two, Symbol::Two]);
    let mut next = Symbol::One;
    let mut i = 1;
    while out.len() < n {
        let run = out[i].value() as usize;
        out.extend(std::iter::repeat_n(next, run));
        next = next.flip();
        i += 1;
    }
    out.truncate(n);
    Word::from_symbols(out)
}

/// Whether the run lengths of `w`, read as a word, form a prefix of `w`.
/// The last run is ignored since a prefix may cut it short.
pub fn self_encodes(w: &Word) -> bool {
    let runs = rle(w);
    let complete = &runs.runs()[..runs.len().saturating_sub(1)];
    match complete.iter().map(|&r| Symbol::from_value(r)).collect::<Option<Word>>() {
        Some(encoded) => w.starts_with(&encoded),
        None => false,
    }
}

fn has_period(w: &Word, p: usize) -> bool {
    (p..w.len()).all(|i| w[i] == w[i - p])
}

/// `w = xx` with `x` non-empty.
pub fn is_square(w: &Word) -> bool {
    !w.is_empty() && w.len().is_multiple_of(2) && has_period(w, w.len() / 2)
}

/// `w = xxx` with `x` non-empty.
pub fn is_cube(w: &Word) -> bool {
    !w.is_empty() && w.len().is_multiple_of(3) && has_period(w, w.len() / 3)
}

/// `w = xyxyx` with `x` non-empty: some period `p` with `2p < |w| <= 3p`.
pub fn is_overlap(w: &Word) -> bool {
    let n = w.len();
    (n.div_ceil(3)..=(n.saturating_sub(1)) / 2).any(|p| p > 0 && has_period(w, p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub max_len: usize,
    pub words: usize,
    pub squares: usize,
    pub cubes: usize,
    pub overlaps: usize,
    pub square_lengths: BTreeSet<usize>,
    pub longest_overlap: Option<usize>,
    /// Overlaps longer than 55.
    pub long_overlaps: usize,
}

pub const OVERLAP_CAP: usize = 55;

/// Squares, cubes and overlaps among the `C∞` words of length at most
/// `max_len`.
pub fn census(max_len: usize) -> CensusReport {
    let mut report = CensusReport {
        max_len,
        words: 0,
        squares: 0,
        cubes: 0,
        overlaps: 0,
        square_lengths: BTreeSet::new(),
        longest_overlap: None,
        long_overlaps: 0,
    };
    for w in oracle::cinf_cursor(max_len) {
        report.words += 1;
        if is_square(&w) {
            report.squares += 1;
            report.square_lengths.insert(w.len());
        }
        if is_cube(&w) {
            report.cubes += 1;
        }
        if is_overlap(&w) {
            report.overlaps += 1;
            report.longest_overlap = Some(w.len());
            if w.len() > OVERLAP_CAP {
                report.long_overlaps += 1;
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub max_total: usize,
    /// `max_total / n^exponent`.
    pub ratio: f64,
    pub pass: bool,
}

/// Largest `|uzu|` per length against `n^2.72`.
///
/// The constant is fitted as the largest observed ratio, so every row passes
/// by construction; `stable_from` is the first `n` after which the running
/// maximum of the ratios no longer grows.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub exponent: f64,
    pub rows: Vec<BoundRow>,
    pub fitted_constant: f64,
    pub stable_from: Option<usize>,
    pub density_bound: f64,
    pub gamma: f64,
    pub gamma_prime: f64,
}

impl BoundReport {
    pub const EXPONENT: f64 = 2.72;
    /// Upper bound on the density of `2` in long `C∞` words.
    pub const DENSITY_BOUND: f64 = 0.50084;
    /// `1 / (log2(3) - 1)`.
    pub const GAMMA: f64 = 1.70951;
    pub const GAMMA_PRIME: f64 = 2.71701;

    pub fn from_table(table: &RepetitivityTable) -> BoundReport {
        let e = Self::EXPONENT;
        let ratios: Vec<(usize, usize, f64)> = table
            .rows
            .iter()
            .map(|r| (r.n, r.max_total, r.max_total as f64 / (r.n as f64).powf(e)))
            .collect();
        let fitted = ratios.iter().map(|r| r.2).fold(0.0, f64::max);
        let mut stable_from = None;
        let mut running = f64::NEG_INFINITY;
        for &(n, _, ratio) in &ratios {
            if ratio > running {
                running = ratio;
                stable_from = Some(n);
            }
        }
        BoundReport {
            exponent: e,
            rows: ratios
                .into_iter()
                .map(|(n, max_total, ratio)| BoundRow {
                    n,
                    max_total,
                    ratio,
                    pass: max_total as f64 <= fitted * (n as f64).powf(e) * (1.0 + 1e-12),
                })
                .collect(),
            fitted_constant: fitted,
            stable_from,
            density_bound: Self::DENSITY_BOUND,
            gamma: Self::GAMMA,
            gamma_prime: Self::GAMMA_PRIME,
        }
    }
}

pub fn bound_check(n_max: usize) -> Result<BoundReport> {
    Ok(BoundReport::from_table(&repetitivity(n_max)?))
}
