use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid symbol {found:?} at position {position} (expected {expected})")]
    InvalidSymbol {
        found: char,
        position: usize,
        expected: &'static str,
    },

    /// Some run of the word has length three or more.
    #[error("word is not differentiable (run of length {run_length})")]
    NotDifferentiable { run_length: usize },

    /// `level` is the index `j` of the first derivative `D^j(w)` that is not
    /// differentiable, so `w` is in `C^j` but not in `C^(j+1)`.
    #[error("not C-infinity (D^{level} is not differentiable)")]
    NotCInfinity { level: usize },

    #[error("the empty word has no root")]
    RootOfEmpty,

    #[error("operation requires a non-empty word")]
    EmptyWord,

    #[error("{0} is not a minimal forbidden word")]
    NotMinimalForbidden(Word),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid frontier: {0}")]
    InvalidFrontier(String),

    /// No C-infinity word realizes the frontier pair; detected at `level`.
    #[error("inconsistent vertical representation at level {level}")]
    Inconsistent { level: usize },

    #[error("gap search exceeded the total length budget {max_total}")]
    BudgetExceeded { max_total: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
