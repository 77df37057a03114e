//! Weighted string automata `(Q, I, μ, F)` with run and initial-algebra
//! semantics.

use thiserror::Error;

use crate::weights::{dedup, product, sum, Weights};
use crate::{RunOptions, Semantics};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("state `{0}` is not declared")]
    UnknownState(String),
    #[error("run has {found} states but the word needs {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("index {index} is out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("malformed automaton: {0}")]
    Malformed(String),
}

/// A weighted automaton over words. States and symbols are addressed by
/// their index in `states` and `alphabet`; `transitions[a][p][q]` is
/// `μ(a)_{p,q}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WordAutomaton<E> {
    alphabet: Vec<String>,
    states: Vec<String>,
    initial: Vec<E>,
    final_weights: Vec<E>,
    transitions: Vec<Vec<Vec<E>>>,
}

impl<E: Clone + PartialEq> WordAutomaton<E> {
    pub fn new(
        alphabet: Vec<String>,
        states: Vec<String>,
        initial: Vec<E>,
        final_weights: Vec<E>,
        transitions: Vec<Vec<Vec<E>>>,
    ) -> Result<Self, WordError> {
        let n = states.len();
        if n == 0 {
            return Err(WordError::Malformed("the state set is empty".into()));
        }
        check_distinct("state", &states)?;
        check_distinct("symbol", &alphabet)?;
        if initial.len() != n || final_weights.len() != n {
            return Err(WordError::Malformed(format!(
                "initial and final vectors must have {n} entries"
            )));
        }
        if transitions.len() != alphabet.len() {
            return Err(WordError::Malformed(format!(
                "{} transition matrices for {} symbols",
                transitions.len(),
                alphabet.len()
            )));
        }
        for (a, m) in alphabet.iter().zip(&transitions) {
            if m.len() != n || m.iter().any(|row| row.len() != n) {
                return Err(WordError::Malformed(format!(
                    "matrix of `{a}` is not {n}×{n}"
                )));
            }
        }
        Ok(WordAutomaton {
            alphabet,
            states,
            initial,
            final_weights,
            transitions,
        })
    }

    /// The automaton whose every weight is `zero`.
    pub fn empty(alphabet: Vec<String>, states: Vec<String>, zero: E) -> Result<Self, WordError> {
        let n = states.len();
        let k = alphabet.len();
        WordAutomaton::new(
            alphabet,
            states,
            vec![zero.clone(); n],
            vec![zero.clone(); n],
            vec![vec![vec![zero; n]; n]; k],
        )
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> &[E] {
        &self.initial
    }

    pub fn final_weights(&self) -> &[E] {
        &self.final_weights
    }

    /// `μ(a)` for the symbol with index `a`.
    pub fn matrix(&self, a: usize) -> &[Vec<E>] {
        &self.transitions[a]
    }

    pub fn symbol_index(&self, s: &str) -> Result<usize, WordError> {
        self.alphabet
            .iter()
            .position(|x| x == s)
            .ok_or_else(|| WordError::UnknownSymbol(s.to_string()))
    }

    pub fn state_index(&self, s: &str) -> Result<usize, WordError> {
        self.states
            .iter()
            .position(|x| x == s)
            .ok_or_else(|| WordError::UnknownState(s.to_string()))
    }

    pub fn set_initial(&mut self, q: usize, w: E) {
        self.initial[q] = w;
    }

    pub fn set_final(&mut self, q: usize, w: E) {
        self.final_weights[q] = w;
    }

    pub fn set_transition(&mut self, from: usize, a: usize, to: usize, w: E) {
        self.transitions[a][from][to] = w;
    }

    /// Maps every weight through `f`, keeping the shape.
    pub fn map_weights<F: Clone + PartialEq>(&self, mut f: impl FnMut(&E) -> F) -> WordAutomaton<F> {
        WordAutomaton {
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            initial: self.initial.iter().map(&mut f).collect(),
            final_weights: self.final_weights.iter().map(&mut f).collect(),
            transitions: self
                .transitions
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(&mut f).collect()).collect())
                .collect(),
        }
    }

    fn encode<S: AsRef<str>>(&self, w: &[S]) -> Result<Vec<usize>, WordError> {
        w.iter().map(|s| self.symbol_index(s.as_ref())).collect()
    }

    /// Reads a word from text: `ε` or the empty string is the empty word;
    /// text with commas or whitespace is split there; a declared symbol on
    /// its own is a one-letter word; otherwise every character must be a
    /// symbol.
    pub fn parse_word(&self, text: &str) -> Result<Vec<String>, WordError> {
        let t = text.trim();
        if t.is_empty() || t == "ε" {
            return Ok(Vec::new());
        }
        let parts: Vec<String> = if t.contains(|c: char| c == ',' || c.is_whitespace()) {
            t.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect()
        } else if self.alphabet.iter().any(|a| a == t) {
            vec![t.to_string()]
        } else {
            t.chars().map(|c| c.to_string()).collect()
        };
        for p in &parts {
            self.symbol_index(p)?;
        }
        Ok(parts)
    }

    /// All words of length `≤ max_len`, shortest first, each length in
    /// lexicographic order of the alphabet.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Vec<String>> {
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Vec<String>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.alphabet.len());
            for w in &layer {
                for a in &self.alphabet {
                    let mut v = w.clone();
                    v.push(a.clone());
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// `I_{q₀} ⊗ μ(a₁)_{q₀,q₁} ⊗ … ⊗ μ(a_n)_{q_{n−1},q_n} ⊗ F_{q_n}`,
    /// multiplied left to right.
    pub fn run_weight<W, S>(&self, alg: &W, w: &[S], run: &[usize]) -> Result<E, WordError>
    where
        W: Weights<Elem = E>,
        S: AsRef<str>,
    {
        let syms = self.encode(w)?;
        self.check_run(syms.len(), run)?;
        Ok(self.run_weight_idx(alg, &syms, run))
    }

    fn check_run(&self, n: usize, run: &[usize]) -> Result<(), WordError> {
        if run.len() != n + 1 {
            return Err(WordError::LengthMismatch {
                expected: n + 1,
                found: run.len(),
            });
        }
        if let Some(&q) = run.iter().find(|&&q| q >= self.num_states()) {
            return Err(WordError::IndexOutOfRange {
                index: q,
                max: self.num_states() - 1,
            });
        }
        Ok(())
    }

    fn run_weight_idx<W: Weights<Elem = E>>(&self, alg: &W, syms: &[usize], run: &[usize]) -> E {
        let factors = std::iter::once(self.initial[run[0]].clone())
            .chain(
                syms.iter()
                    .enumerate()
                    .map(|(i, &a)| self.transitions[a][run[i]][run[i + 1]].clone()),
            )
            .chain(std::iter::once(self.final_weights[run[syms.len()]].clone()));
        product(alg, factors)
    }

    /// `⨁` of all run weights, runs taken in lexicographic order of their
    /// state sequences.
    pub fn run_semantics<W, S>(&self, alg: &W, w: &[S]) -> Result<E, WordError>
    where
        W: Weights<Elem = E>,
        S: AsRef<str>,
    {
        self.run_semantics_with(alg, w, RunOptions::default())
    }

    pub fn run_semantics_with<W, S>(&self, alg: &W, w: &[S], opts: RunOptions) -> Result<E, WordError>
    where
        W: Weights<Elem = E>,
        S: AsRef<str>,
    {
        let syms = self.encode(w)?;
        if opts.prune {
            return Ok(self.pruned_run_sum(alg, &syms));
        }
        let runs = Odometer::new(self.num_states(), syms.len() + 1);
        Ok(sum(alg, runs.map(|run| self.run_weight_idx(alg, &syms, &run))))
    }

    fn pruned_run_sum<W: Weights<Elem = E>>(&self, alg: &W, syms: &[usize]) -> E {
        let mut acc: Option<E> = None;
        let mut push = |v: E| {
            acc = Some(match acc.take() {
                None => v,
                Some(a) => alg.add(&a, &v),
            })
        };
        // depth-first over runs in lexicographic order, carrying the prefix product
        fn go<E: Clone + PartialEq, W: Weights<Elem = E>>(
            a: &WordAutomaton<E>,
            alg: &W,
            syms: &[usize],
            i: usize,
            q: usize,
            prefix: E,
            push: &mut dyn FnMut(E),
        ) {
            if alg.is_zero(&prefix) {
                return;
            }
            if i == syms.len() {
                let v = alg.mul(&prefix, &a.final_weights[q]);
                if !alg.is_zero(&v) {
                    push(v);
                }
                return;
            }
            for r in 0..a.num_states() {
                let next = alg.mul(&prefix, &a.transitions[syms[i]][q][r]);
                go(a, alg, syms, i + 1, r, next, push);
            }
        }
        for q in 0..self.num_states() {
            go(self, alg, syms, 0, q, self.initial[q].clone(), &mut push);
        }
        drop(push);
        acc.unwrap_or_else(|| alg.zero())
    }

    /// `h(w)`: `h(ε) = I` and `h(ua) = h(u) · μ(a)`.
    pub fn state_vector<W, S>(&self, alg: &W, w: &[S]) -> Result<Vec<E>, WordError>
    where
        W: Weights<Elem = E>,
        S: AsRef<str>,
    {
        let syms = self.encode(w)?;
        Ok(self.state_vector_idx(alg, &syms))
    }

    fn state_vector_idx<W: Weights<Elem = E>>(&self, alg: &W, syms: &[usize]) -> Vec<E> {
        let n = self.num_states();
        let mut h = self.initial.clone();
        for &a in syms {
            let m = &self.transitions[a];
            h = (0..n)
                .map(|q| sum(alg, (0..n).map(|p| alg.mul(&h[p], &m[p][q]))))
                .collect();
        }
        h
    }

    /// `⨁_q h(w)_q ⊗ F_q`.
    pub fn initial_semantics<W, S>(&self, alg: &W, w: &[S]) -> Result<E, WordError>
    where
        W: Weights<Elem = E>,
        S: AsRef<str>,
    {
        let h = self.state_vector(alg, w)?;
        Ok(sum(
            alg,
            h.iter().zip(&self.final_weights).map(|(x, f)| alg.mul(x, f)),
        ))
    }

    pub fn evaluate<W, S>(&self, alg: &W, w: &[S], sem: Semantics) -> Result<E, WordError>
    where
        W: Weights<Elem = E>,
        S: AsRef<str>,
    {
        match sem {
            Semantics::Run => self.run_semantics(alg, w),
            Semantics::Init => self.initial_semantics(alg, w),
        }
    }

    pub fn in_support<W, S>(&self, alg: &W, w: &[S], sem: Semantics) -> Result<bool, WordError>
    where
        W: Weights<Elem = E>,
        S: AsRef<str>,
    {
        Ok(!alg.is_zero(&self.evaluate(alg, w, sem)?))
    }

    /// The distinct values taken on words of length `≤ max_len`, in order of
    /// first appearance.
    pub fn image_up_to<W: Weights<Elem = E>>(&self, alg: &W, max_len: usize, sem: Semantics) -> Vec<E> {
        let values = self
            .words_up_to(max_len)
            .into_iter()
            .map(|w| self.evaluate(alg, &w, sem).expect("words over the alphabet"));
        dedup(alg, values)
    }

    /// `h(a₁…a_i)_{q_i} ⊗ μ(a_{i+1})_{q_i,q_{i+1}} ⊗ … ⊗ μ(a_n)_{q_{n−1},q_n} ⊗ F_{q_n}`.
    pub fn mixed_prefix_product<W, S>(
        &self,
        alg: &W,
        w: &[S],
        run: &[usize],
        i: usize,
    ) -> Result<E, WordError>
    where
        W: Weights<Elem = E>,
        S: AsRef<str>,
    {
        let syms = self.encode(w)?;
        self.check_run(syms.len(), run)?;
        if i > syms.len() {
            return Err(WordError::IndexOutOfRange {
                index: i,
                max: syms.len(),
            });
        }
        let h = self.state_vector_idx(alg, &syms[..i]);
        let factors = std::iter::once(h[run[i]].clone())
            .chain(
                (i..syms.len()).map(|j| self.transitions[syms[j]][run[j]][run[j + 1]].clone()),
            )
            .chain(std::iter::once(self.final_weights[run[syms.len()]].clone()));
        Ok(product(alg, factors))
    }
}

fn check_distinct(kind: &str, names: &[String]) -> Result<(), WordError> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(WordError::Malformed(format!("{kind} `{n}` declared twice")));
        }
    }
    Ok(())
}

/// The three-state automaton with `I = (a, b, 𝟘)`, `F = (𝟘, 𝟘, c)` and
/// `μ(γ)_{p,r} = μ(γ)_{q,r} = 𝟙` as its only nonzero transitions. On the
/// one-letter word `γ` its run semantics is `a ⊗ c ⊕ b ⊗ c` and its
/// initial-algebra semantics is `(a ⊕ b) ⊗ c`; every other word maps to `𝟘`.
pub fn special_automaton<W: Weights>(
    alg: &W,
    a: W::Elem,
    b: W::Elem,
    c: W::Elem,
    gamma: &str,
    alphabet: &[String],
) -> Result<WordAutomaton<W::Elem>, WordError> {
    let states = ["p", "q", "r"].map(String::from).to_vec();
    let mut aut = WordAutomaton::empty(alphabet.to_vec(), states, alg.zero())?;
    let g = aut.symbol_index(gamma)?;
    aut.set_initial(0, a);
    aut.set_initial(1, b);
    aut.set_final(2, c);
    aut.set_transition(0, g, 2, alg.one());
    aut.set_transition(1, g, 2, alg.one());
    Ok(aut)
}

/// Counts through all `base^len` digit vectors in lexicographic order.
#[derive(Debug, Clone)]
pub struct Odometer {
    base: usize,
    current: Option<Vec<usize>>,
}

impl Odometer {
    pub fn new(base: usize, len: usize) -> Self {
        Odometer {
            base,
            current: (base > 0 || len == 0).then(|| vec![0; len]),
        }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        let mut pos = next.len();
        let mut advanced = false;
        while pos > 0 {
            pos -= 1;
            next[pos] += 1;
            if next[pos] < self.base {
                advanced = true;
                break;
            }
            next[pos] = 0;
        }
        if advanced {
            self.current = Some(next);
        }
        Some(cur)
    }
}
