use std::fmt;

use serde::Serialize;

use super::TreeError;

/// A finite set of symbols with ranks, kept in declaration order. At least
/// one symbol has rank 0.
#[derive(Debug, Clone, Eq)]
pub struct RankedAlphabet {
    symbols: Vec<(String, usize)>,
}

/// Equality ignores declaration order.
impl PartialEq for RankedAlphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols.len() == other.symbols.len()
            && self.symbols.iter().all(|s| other.symbols.contains(s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlphabetClass {
    pub trivial: bool,
    pub monadic: bool,
    pub string_ranked: bool,
    pub branching: bool,
}

impl AlphabetClass {
    pub fn label(&self) -> &'static str {
        if self.trivial {
            "trivial"
        } else if self.string_ranked {
            "string ranked"
        } else if self.monadic {
            "monadic"
        } else {
            "branching"
        }
    }
}

pub(crate) fn valid_identifier(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || "(),".contains(c))
}

impl RankedAlphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Result<Self, TreeError> {
        let symbols: Vec<(String, usize)> = symbols.into_iter().map(|(s, k)| (s.into(), k)).collect();
        for (i, (s, _)) in symbols.iter().enumerate() {
            if !valid_identifier(s) {
                return Err(TreeError::Malformed(format!("`{s}` is not a valid symbol name")));
            }
            if symbols[..i].iter().any(|(t, _)| t == s) {
                return Err(TreeError::Malformed(format!("symbol `{s}` declared twice")));
            }
        }
        if !symbols.iter().any(|(_, k)| *k == 0) {
            return Err(TreeError::NoNullarySymbol);
        }
        Ok(RankedAlphabet { symbols })
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn rank(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().find(|(s, _)| s == symbol).map(|(_, k)| *k)
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.rank(symbol).is_some()
    }

    /// Symbols of rank `k`, in declaration order.
    pub fn of_rank(&self, k: usize) -> Vec<&str> {
        self.symbols
            .iter()
            .filter(|(_, r)| *r == k)
            .map(|(s, _)| s.as_str())
            .collect()
    }

    pub fn max_rank(&self) -> usize {
        self.symbols.iter().map(|(_, k)| *k).max().unwrap_or(0)
    }

    pub fn classify(&self) -> AlphabetClass {
        let trivial = self.max_rank() == 0;
        let monadic = self.max_rank() <= 1;
        let string_ranked = monadic && self.of_rank(0).len() == 1 && !self.of_rank(1).is_empty();
        AlphabetClass {
            trivial,
            monadic,
            string_ranked,
            branching: !monadic,
        }
    }
}

impl fmt::Display for RankedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.symbols.iter().map(|(s, k)| format!("{s}/{k}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
