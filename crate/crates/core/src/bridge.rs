//! Words as unary trees: `a₁…a_n ↦ a_n(…a₁(e)…)`, and the matching
//! conversions between word automata and tree automata over a string
//! ranked alphabet.

use thiserror::Error;

use crate::trees::{RankedAlphabet, Tree, TreeAutomaton, TreeError};
use crate::weights::Weights;
use crate::words::{WordAutomaton, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("end marker `{0}` is also a letter of the word alphabet")]
    EndMarkerInAlphabet(String),
    #[error("alphabet {0} is not string ranked")]
    NotStringRanked(String),
    #[error("`{0}` is not a unary spine ending in the end marker")]
    NotASpine(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A word alphabet `Γ` together with an end marker `e ∉ Γ`, read as the
/// ranked alphabet with `e` of rank 0 and every letter of rank 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringRankedAlphabet {
    letters: Vec<String>,
    end: String,
}

impl StringRankedAlphabet {
    pub fn new(letters: Vec<String>, end: impl Into<String>) -> Result<Self, BridgeError> {
        let end = end.into();
        if letters.contains(&end) {
            return Err(BridgeError::EndMarkerInAlphabet(end));
        }
        let s = StringRankedAlphabet { letters, end };
        s.ranked()?;
        Ok(s)
    }

    pub fn from_ranked(alphabet: &RankedAlphabet) -> Result<Self, BridgeError> {
        if !alphabet.classify().string_ranked {
            return Err(BridgeError::NotStringRanked(alphabet.to_string()));
        }
        Ok(StringRankedAlphabet {
            letters: alphabet.of_rank(1).into_iter().map(String::from).collect(),
            end: alphabet.of_rank(0)[0].to_string(),
        })
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn end(&self) -> &str {
        &self.end
    }

    /// `e` first, then the letters in order.
    pub fn ranked(&self) -> Result<RankedAlphabet, TreeError> {
        RankedAlphabet::new(
            std::iter::once((self.end.clone(), 0)).chain(self.letters.iter().map(|a| (a.clone(), 1))),
        )
    }
}

pub fn word_to_tree<S: AsRef<str>>(word: &[S], end: &str) -> Tree {
    word.iter()
        .fold(Tree::leaf(end), |t, a| Tree::new(a.as_ref(), vec![t]))
}

/// Inverse of [`word_to_tree`].
pub fn tree_to_word(tree: &Tree, end: &str) -> Result<Vec<String>, BridgeError> {
    let mut word = Vec::new();
    let mut t = tree;
    loop {
        match t.children.as_slice() {
            [] if t.symbol == end => break,
            [child] if t.symbol != end => {
                word.push(t.symbol.clone());
                t = child;
            }
            _ => return Err(BridgeError::NotASpine(tree.to_string())),
        }
    }
    word.reverse();
    Ok(word)
}

/// The tree automaton with `δ₀(ε, e, q) = I_q`, `δ₁(p, a, q) = μ(a)_{p,q}`
/// and root weights `F`. Both semantics commute with [`word_to_tree`].
pub fn wsa_to_wta<W: Weights>(
    alg: &W,
    automaton: &WordAutomaton<W::Elem>,
    end: &str,
) -> Result<TreeAutomaton<W::Elem>, BridgeError> {
    let alphabet = StringRankedAlphabet::new(automaton.alphabet().to_vec(), end)?;
    let n = automaton.num_states();
    let mut out = TreeAutomaton::empty(alphabet.ranked()?, automaton.states().to_vec(), alg.zero())?;
    for q in 0..n {
        out.set_transition(&[], end, q, automaton.initial()[q].clone())?;
        out.set_root_weight(q, automaton.final_weights()[q].clone());
    }
    for (a, sym) in automaton.alphabet().iter().enumerate() {
        let m = automaton.matrix(a);
        for (p, row) in m.iter().enumerate() {
            for (q, w) in row.iter().enumerate() {
                out.set_transition(&[p], sym, q, w.clone())?;
            }
        }
    }
    Ok(out)
}

/// The inverse construction for a tree automaton over a string ranked
/// alphabet. Returns the word automaton and the end marker.
pub fn string_wta_to_wsa<E: Clone + PartialEq>(
    automaton: &TreeAutomaton<E>,
) -> Result<(WordAutomaton<E>, String), BridgeError> {
    let alphabet = StringRankedAlphabet::from_ranked(automaton.alphabet())?;
    let n = automaton.num_states();
    let initial = (0..n)
        .map(|q| automaton.transition(&[], alphabet.end(), q))
        .collect();
    let transitions = alphabet
        .letters()
        .iter()
        .map(|a| {
            (0..n)
                .map(|p| (0..n).map(|q| automaton.transition(&[p], a, q)).collect())
                .collect()
        })
        .collect();
    let word = WordAutomaton::new(
        alphabet.letters().to_vec(),
        automaton.states().to_vec(),
        initial,
        automaton.root_weights().to_vec(),
        transitions,
    )?;
    Ok((word, alphabet.end().to_string()))
}
