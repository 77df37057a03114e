pub mod bridge;
pub mod format;
pub mod harness;
pub mod properties;
pub mod trees;
pub mod weights;
pub mod words;

use serde::{Deserialize, Serialize};

/// Which of the two semantics of an automaton to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    /// Sum over all runs of the product of their weights.
    Run,
    /// Structural recursion through the state vectors.
    Init,
}

/// Options for evaluating the run semantics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Skip every run extending a partial run whose product is already `𝟘`.
    /// Off by default, so that every run is enumerated.
    pub prune: bool,
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/properties.md")]
    mod properties {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/trees.md")]
    mod trees {}
    #[doc = include_str!("../../../book/src/bridge.md")]
    mod bridge {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
