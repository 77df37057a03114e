//! Ranked trees, cuts, and weighted tree automata `(Q, δ, F)`.

mod alphabet;
mod automaton;
mod cuts;
mod tree;

pub use alphabet::{AlphabetClass, RankedAlphabet};
pub use automaton::{branching_example_automaton, TreeAutomaton, TreeRun};
pub use cuts::{Cut, CutRelation};
pub use tree::{Position, Tree};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a ranked alphabet needs at least one symbol of rank 0")]
    NoNullarySymbol,
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("state `{0}` is not declared")]
    UnknownState(String),
    #[error("state index {0} is out of range")]
    InvalidState(usize),
    #[error("`{symbol}` has rank {expected} but was given {found} children")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("`{0}` is not a position of the tree")]
    InvalidPosition(String),
    #[error("run labels {found} positions but the tree has {expected}")]
    RunMismatch { expected: usize, found: usize },
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("cut index {index} is out of range 1..={len}")]
    InvalidIndex { index: usize, len: usize },
    #[error("the block at cut index {index} is not the children sequence of {parent}")]
    NotChildrenBlock { index: usize, parent: String },
    #[error("alphabet {0} is not monadic")]
    NotMonadic(String),
    #[error("alphabet {0} is not string ranked")]
    NotStringRanked(String),
    #[error("`{symbol}` has rank {rank}; at least 2 is needed")]
    RankTooSmall { symbol: String, rank: usize },
    #[error("malformed automaton: {0}")]
    Malformed(String),
}
