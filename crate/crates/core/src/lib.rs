//! Run-length derivatives of words over `{1, 2}` and the `C∞` words that
//! can be differentiated indefinitely.
//!
//! The crate covers the derivative calculus, the minimal forbidden words of
//! the `C^k` languages and the automata built from them, the vertical
//! representation of a word by its two frontiers, and experiments on
//! repetitions `uzu`.

pub mod automata;
pub mod calculus;
pub mod dot;
pub mod error;
pub mod forbidden;
pub mod golden;
pub mod oracle;
pub mod repetitions;
pub mod vertical;
pub mod word;

pub use automata::{class_members, compact, l_automaton, Automaton, CompactAutomaton, EdgeKind};
pub use calculus::{
    classify, derivative, derivative_chain, extend, extremal_primitives, height,
    is_cinf, is_k_differentiable, primitives, root, DerivativeChain, ExtensionProfile, Extremal,
    Side,
};
pub use error::{Error, Result};
pub use forbidden::{build_trie, is_minimal_forbidden, mf_height, mf_set, MfCatalog, Trie};
pub use repetitions::{
    bound_check, census, kolakoski, repetitivity, shortest_gap, BoundReport, CensusReport,
    GapRecord, RepetitivityTable,
};
pub use vertical::{
    build_vuca, canonical_minimal, psi, realize_left, reconstruct, vertical_repr, vuca_run,
    vuca_via_compaction, Frontier, VerticalRepr, Vuca,
};
pub use word::{rle, RunSequence, Symbol, Word};
