use std::collections::BTreeMap;

use super::{Cut, Position, RankedAlphabet, Tree, TreeError};
use crate::weights::{dedup, product, sum, Weights};
use crate::words::Odometer;
use crate::{RunOptions, Semantics};

/// A run on a tree: one state index per position, listed in lexicographic
/// position order (the order of [`Tree::positions`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeRun {
    pub labels: Vec<usize>,
}

impl TreeRun {
    pub fn new(labels: Vec<usize>) -> Self {
        TreeRun { labels }
    }

    /// Builds a run from `(position, state)` pairs covering every position
    /// of `tree` exactly once.
    pub fn from_pairs(tree: &Tree, pairs: &[(Position, usize)]) -> Result<Self, TreeError> {
        let positions = tree.positions();
        if pairs.len() != positions.len() {
            return Err(TreeError::RunMismatch {
                expected: positions.len(),
                found: pairs.len(),
            });
        }
        let labels = positions
            .iter()
            .map(|w| {
                pairs
                    .iter()
                    .find(|(p, _)| p == w)
                    .map(|(_, q)| *q)
                    .ok_or_else(|| TreeError::InvalidPosition(w.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(TreeRun { labels })
    }

    /// The state at `w`.
    pub fn state_at(&self, tree: &Tree, w: &Position) -> Option<usize> {
        let idx = tree.positions().iter().position(|p| p == w)?;
        self.labels.get(idx).copied()
    }
}

/// A tree flattened in lexicographic (pre-)order: node `i` is the `i`-th
/// position of the tree.
struct Flat<'t> {
    symbols: Vec<&'t str>,
    children: Vec<Vec<usize>>,
    postorder: Vec<usize>,
}

impl<'t> Flat<'t> {
    fn new(tree: &'t Tree) -> Self {
        let mut flat = Flat {
            symbols: Vec::new(),
            children: Vec::new(),
            postorder: Vec::new(),
        };
        fn go<'t>(t: &'t Tree, flat: &mut Flat<'t>) -> usize {
            let id = flat.symbols.len();
            flat.symbols.push(&t.symbol);
            flat.children.push(Vec::new());
            let kids: Vec<usize> = t.children.iter().map(|c| go(c, flat)).collect();
            flat.children[id] = kids;
            flat.postorder.push(id);
            id
        }
        go(tree, &mut flat);
        flat
    }

    fn len(&self) -> usize {
        self.symbols.len()
    }
}

/// A weighted tree automaton `(Q, δ, F)`.
///
/// `δ` is stored sparsely: for each symbol and each tuple of child states
/// a vector of weights indexed by the target state. Missing entries are `𝟘`
/// and all-`𝟘` vectors are never stored, so structurally equal automata
/// compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeAutomaton<E> {
    alphabet: RankedAlphabet,
    states: Vec<String>,
    zero: E,
    transitions: BTreeMap<String, BTreeMap<Vec<usize>, Vec<E>>>,
    root_weights: Vec<E>,
}

impl<E: Clone + PartialEq> TreeAutomaton<E> {
    /// The automaton with all transition and root weights `𝟘`.
    pub fn empty(alphabet: RankedAlphabet, states: Vec<String>, zero: E) -> Result<Self, TreeError> {
        if states.is_empty() {
            return Err(TreeError::Malformed("the state set is empty".into()));
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(TreeError::Malformed(format!("state `{s}` declared twice")));
            }
        }
        let n = states.len();
        Ok(TreeAutomaton {
            alphabet,
            root_weights: vec![zero.clone(); n],
            states,
            zero,
            transitions: BTreeMap::new(),
        })
    }

    pub fn alphabet(&self) -> &RankedAlphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn zero(&self) -> &E {
        &self.zero
    }

    pub fn root_weights(&self) -> &[E] {
        &self.root_weights
    }

    pub fn state_index(&self, s: &str) -> Result<usize, TreeError> {
        self.states
            .iter()
            .position(|x| x == s)
            .ok_or_else(|| TreeError::UnknownState(s.to_string()))
    }

    pub fn set_root_weight(&mut self, q: usize, w: E) {
        self.root_weights[q] = w;
    }

    /// Sets `δ_k(children, symbol, to) = w`.
    pub fn set_transition(&mut self, children: &[usize], symbol: &str, to: usize, w: E) -> Result<(), TreeError> {
        let k = self
            .alphabet
            .rank(symbol)
            .ok_or_else(|| TreeError::UnknownSymbol(symbol.to_string()))?;
        if k != children.len() {
            return Err(TreeError::ArityMismatch {
                symbol: symbol.to_string(),
                expected: k,
                found: children.len(),
            });
        }
        let n = self.num_states();
        if let Some(&q) = children.iter().chain([&to]).find(|&&q| q >= n) {
            return Err(TreeError::InvalidState(q));
        }
        let zero = self.zero.clone();
        let by_children = self.transitions.entry(symbol.to_string()).or_default();
        let vector = by_children
            .entry(children.to_vec())
            .or_insert_with(|| vec![zero.clone(); n]);
        vector[to] = w;
        if vector.iter().all(|x| *x == zero) {
            by_children.remove(children);
            if by_children.is_empty() {
                self.transitions.remove(symbol);
            }
        }
        Ok(())
    }

    /// `δ_k(children, symbol, to)`.
    pub fn transition(&self, children: &[usize], symbol: &str, to: usize) -> E {
        self.transitions
            .get(symbol)
            .and_then(|m| m.get(children))
            .map(|v| v[to].clone())
            .unwrap_or_else(|| self.zero.clone())
    }

    /// Every stored nonzero transition as `(children, symbol, to, weight)`,
    /// ordered by symbol, then children, then target.
    pub fn nonzero_transitions(&self) -> Vec<(Vec<usize>, String, usize, E)> {
        let mut out = Vec::new();
        for (sym, m) in &self.transitions {
            for (kids, v) in m {
                for (q, w) in v.iter().enumerate() {
                    if *w != self.zero {
                        out.push((kids.clone(), sym.clone(), q, w.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn map_weights<F: Clone + PartialEq>(&self, mut f: impl FnMut(&E) -> F) -> TreeAutomaton<F> {
        let zero = f(&self.zero);
        let mut out = TreeAutomaton {
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            root_weights: self.root_weights.iter().map(&mut f).collect(),
            zero,
            transitions: BTreeMap::new(),
        };
        for (kids, sym, q, w) in self.nonzero_transitions() {
            out.set_transition(&kids, &sym, q, f(&w))
                .expect("same alphabet and states");
        }
        out
    }

    fn delta_at(&self, flat: &Flat<'_>, node: usize, labels: &[usize]) -> E {
        let kids: Vec<usize> = flat.children[node].iter().map(|&c| labels[c]).collect();
        self.transition(&kids, flat.symbols[node], labels[node])
    }

    fn check_run(&self, tree: &Tree, run: &TreeRun) -> Result<(), TreeError> {
        tree.check(&self.alphabet)?;
        let size = tree.size();
        if run.labels.len() != size {
            return Err(TreeError::RunMismatch {
                expected: size,
                found: run.labels.len(),
            });
        }
        if let Some(&q) = run.labels.iter().find(|&&q| q >= self.num_states()) {
            return Err(TreeError::InvalidState(q));
        }
        Ok(())
    }

    /// `wt(ξ, ρ) = (⨂_i wt(ξ|_i, ρ|_i)) ⊗ δ_k(ρ(1)…ρ(k), σ, ρ(ε))`; at a
    /// leaf the empty product is dropped, so a leaf costs no multiplication.
    pub fn run_weight<W: Weights<Elem = E>>(&self, alg: &W, tree: &Tree, run: &TreeRun) -> Result<E, TreeError> {
        self.check_run(tree, run)?;
        let flat = Flat::new(tree);
        Ok(self.inductive_weight(alg, &flat, 0, &run.labels))
    }

    fn inductive_weight<W: Weights<Elem = E>>(&self, alg: &W, flat: &Flat<'_>, node: usize, labels: &[usize]) -> E {
        let delta = self.delta_at(flat, node, labels);
        if flat.children[node].is_empty() {
            return delta;
        }
        let below = product(
            alg,
            flat.children[node]
                .iter()
                .map(|&c| self.inductive_weight(alg, flat, c, labels)),
        );
        alg.mul(&below, &delta)
    }

    /// The product of the transition weights of all positions in post-order.
    pub fn run_weight_postorder<W: Weights<Elem = E>>(
        &self,
        alg: &W,
        tree: &Tree,
        run: &TreeRun,
    ) -> Result<E, TreeError> {
        self.check_run(tree, run)?;
        let flat = Flat::new(tree);
        Ok(product(
            alg,
            flat.postorder.iter().map(|&v| self.delta_at(&flat, v, &run.labels)),
        ))
    }

    /// All `|Q|^{|pos(ξ)|}` runs on `tree`, odometer-style over positions in
    /// lexicographic order.
    pub fn enumerate_runs(&self, tree: &Tree) -> impl Iterator<Item = TreeRun> {
        Odometer::new(self.num_states(), tree.size()).map(TreeRun::new)
    }

    /// `⨁_ρ wt(ξ, ρ) ⊗ F_{ρ(ε)}`.
    pub fn run_semantics<W: Weights<Elem = E>>(&self, alg: &W, tree: &Tree) -> Result<E, TreeError> {
        self.run_semantics_with(alg, tree, RunOptions::default())
    }

    pub fn run_semantics_with<W: Weights<Elem = E>>(
        &self,
        alg: &W,
        tree: &Tree,
        opts: RunOptions,
    ) -> Result<E, TreeError> {
        tree.check(&self.alphabet)?;
        let flat = Flat::new(tree);
        if opts.prune {
            return Ok(self.pruned_run_sum(alg, &flat));
        }
        let terms = self.enumerate_runs(tree).map(|run| {
            let wt = self.inductive_weight(alg, &flat, 0, &run.labels);
            alg.mul(&wt, &self.root_weights[run.labels[0]])
        });
        Ok(sum(alg, terms))
    }

    /// Assigns states in post-order, multiplying transition weights as they
    /// become known and abandoning any partial run whose product is `𝟘`.
    fn pruned_run_sum<W: Weights<Elem = E>>(&self, alg: &W, flat: &Flat<'_>) -> E {
        struct Search<'a, E, W> {
            aut: &'a TreeAutomaton<E>,
            alg: &'a W,
            flat: &'a Flat<'a>,
            labels: Vec<usize>,
            acc: Option<E>,
        }
        impl<E: Clone + PartialEq, W: Weights<Elem = E>> Search<'_, E, W> {
            fn go(&mut self, step: usize, prefix: Option<E>) {
                if step == self.flat.len() {
                    let prefix = prefix.expect("nonempty tree");
                    let v = self.alg.mul(&prefix, &self.aut.root_weights[self.labels[0]]);
                    if !self.alg.is_zero(&v) {
                        self.acc = Some(match self.acc.take() {
                            None => v,
                            Some(a) => self.alg.add(&a, &v),
                        });
                    }
                    return;
                }
                let node = self.flat.postorder[step];
                for q in 0..self.aut.num_states() {
                    self.labels[node] = q;
                    let d = self.aut.delta_at(self.flat, node, &self.labels);
                    let next = match &prefix {
                        None => d,
                        Some(p) => self.alg.mul(p, &d),
                    };
                    if !self.alg.is_zero(&next) {
                        self.go(step + 1, Some(next));
                    }
                }
            }
        }
        let mut s = Search {
            aut: self,
            alg,
            flat,
            labels: vec![0; flat.len()],
            acc: None,
        };
        s.go(0, None);
        s.acc.unwrap_or_else(|| alg.zero())
    }

    /// `h(ξ)`: for `ξ = σ(ξ₁, …, ξ_k)` and each `q`,
    /// `⨁_{q₁…q_k} (⨂_i h(ξ_i)_{q_i}) ⊗ δ_k(q₁…q_k, σ, q)`.
    pub fn state_vector<W: Weights<Elem = E>>(&self, alg: &W, tree: &Tree) -> Result<Vec<E>, TreeError> {
        tree.check(&self.alphabet)?;
        let flat = Flat::new(tree);
        Ok(self.all_state_vectors(alg, &flat).swap_remove(0))
    }

    /// `h(ξ|_w)` for every node, indexed like [`Flat`].
    fn all_state_vectors<W: Weights<Elem = E>>(&self, alg: &W, flat: &Flat<'_>) -> Vec<Vec<E>> {
        let n = self.num_states();
        let mut h: Vec<Vec<E>> = vec![Vec::new(); flat.len()];
        for &v in &flat.postorder {
            let kids = &flat.children[v];
            let sym = flat.symbols[v];
            h[v] = if kids.is_empty() {
                (0..n).map(|q| self.transition(&[], sym, q)).collect()
            } else {
                (0..n)
                    .map(|q| {
                        let terms = Odometer::new(n, kids.len()).map(|tuple| {
                            let below = product(
                                alg,
                                kids.iter().zip(&tuple).map(|(&c, &p)| h[c][p].clone()),
                            );
                            alg.mul(&below, &self.transition(&tuple, sym, q))
                        });
                        sum(alg, terms)
                    })
                    .collect()
            };
        }
        h
    }

    /// `⨁_q h(ξ)_q ⊗ F_q`.
    pub fn initial_semantics<W: Weights<Elem = E>>(&self, alg: &W, tree: &Tree) -> Result<E, TreeError> {
        let h = self.state_vector(alg, tree)?;
        Ok(sum(
            alg,
            h.iter().zip(&self.root_weights).map(|(x, f)| alg.mul(x, f)),
        ))
    }

    pub fn evaluate<W: Weights<Elem = E>>(&self, alg: &W, tree: &Tree, sem: Semantics) -> Result<E, TreeError> {
        self.evaluate_with(alg, tree, sem, RunOptions::default())
    }

    pub fn evaluate_with<W: Weights<Elem = E>>(
        &self,
        alg: &W,
        tree: &Tree,
        sem: Semantics,
        opts: RunOptions,
    ) -> Result<E, TreeError> {
        match sem {
            Semantics::Run => self.run_semantics_with(alg, tree, opts),
            Semantics::Init => self.initial_semantics(alg, tree),
        }
    }

    pub fn in_support<W: Weights<Elem = E>>(&self, alg: &W, tree: &Tree, sem: Semantics) -> Result<bool, TreeError> {
        Ok(!alg.is_zero(&self.evaluate(alg, tree, sem)?))
    }

    /// The product, over the positions not strictly below `cut` in
    /// post-order, of `h(ξ|_w)_{ρ(w)}` for `w` on the cut and of the
    /// transition weight at `w` otherwise, followed by `⊗ F_{ρ(ε)}`.
    pub fn cut_partial_product<W: Weights<Elem = E>>(
        &self,
        alg: &W,
        tree: &Tree,
        run: &TreeRun,
        cut: &Cut,
    ) -> Result<E, TreeError> {
        self.check_run(tree, run)?;
        let cut = Cut::new(tree, cut.positions().to_vec())?;
        let flat = Flat::new(tree);
        let positions = tree.positions();
        let index_of = |w: &Position| positions.iter().position(|p| p == w).expect("valid position");
        let mut memo: BTreeMap<usize, Vec<E>> = BTreeMap::new();
        let mut factors = Vec::new();
        for w in cut.upper_postorder(tree) {
            let v = index_of(&w);
            if cut.positions().contains(&w) {
                let h = memo.entry(v).or_insert_with(|| {
                    let sub = tree.subtree_at(&w).expect("valid position");
                    self.all_state_vectors(alg, &Flat::new(sub)).swap_remove(0)
                });
                factors.push(h[run.labels[v]].clone());
            } else {
                factors.push(self.delta_at(&flat, v, &run.labels));
            }
        }
        let p = product(alg, factors);
        Ok(alg.mul(&p, &self.root_weights[run.labels[0]]))
    }

    pub fn trees_up_to(&self, max_size: usize) -> Vec<Tree> {
        Tree::enumerate(&self.alphabet, max_size)
    }

    /// The distinct values over all trees with at most `max_size` nodes, in
    /// order of first appearance.
    pub fn image_up_to<W: Weights<Elem = E>>(&self, alg: &W, max_size: usize, sem: Semantics) -> Vec<E> {
        self.image_up_to_with(alg, max_size, sem, RunOptions::default())
    }

    pub fn image_up_to_with<W: Weights<Elem = E>>(
        &self,
        alg: &W,
        max_size: usize,
        sem: Semantics,
        opts: RunOptions,
    ) -> Vec<E> {
        let values = self
            .trees_up_to(max_size)
            .into_iter()
            .map(|t| self.evaluate_with(alg, &t, sem, opts).expect("trees over the alphabet"));
        dedup(alg, values)
    }

    /// The same automaton over `{α} ∪ Σ⁽¹⁾`, dropping every other nullary
    /// symbol.
    pub fn restrict_to_nullary(&self, alpha: &str) -> Result<TreeAutomaton<E>, TreeError> {
        if !self.alphabet.classify().monadic {
            return Err(TreeError::NotMonadic(self.alphabet.to_string()));
        }
        match self.alphabet.rank(alpha) {
            Some(0) => {}
            Some(k) => {
                return Err(TreeError::ArityMismatch {
                    symbol: alpha.to_string(),
                    expected: 0,
                    found: k,
                })
            }
            None => return Err(TreeError::UnknownSymbol(alpha.to_string())),
        }
        let symbols = self
            .alphabet
            .symbols()
            .iter()
            .filter(|(s, k)| *k == 1 || s == alpha)
            .cloned();
        let alphabet = RankedAlphabet::new(symbols)?;
        let mut out = TreeAutomaton::empty(alphabet, self.states.clone(), self.zero.clone())?;
        out.root_weights = self.root_weights.clone();
        out.transitions = self
            .transitions
            .iter()
            .filter(|(s, _)| out.alphabet.contains(s))
            .map(|(s, m)| (s.clone(), m.clone()))
            .collect();
        Ok(out)
    }
}

/// The six-state automaton with states `a, (b,1), (b',2), 1, q1, q2`.
///
/// On `α` the states carry the weights `a, b, b', 𝟙, 𝟘, 𝟘`; the only
/// nonzero `σ`-transitions have weight `𝟙` and read `(b,1) 1…1 → q1`,
/// `(b',2) 1…1 → q1` and `a 1…1 q1 → q2`; only `q2` has a nonzero root
/// weight, `c`. On `σ(α, …, α, σ(α, …, α))` its initial-algebra semantics
/// is `a ⊗ (b ⊕ b') ⊗ c` while its run semantics is
/// `a ⊗ b ⊗ c ⊕ a ⊗ b' ⊗ c`.
#[allow(clippy::too_many_arguments)]
pub fn branching_example_automaton<W: Weights>(
    alg: &W,
    a: W::Elem,
    b: W::Elem,
    b_prime: W::Elem,
    c: W::Elem,
    sigma: &str,
    alpha: &str,
    alphabet: &RankedAlphabet,
) -> Result<TreeAutomaton<W::Elem>, TreeError> {
    let k = alphabet
        .rank(sigma)
        .ok_or_else(|| TreeError::UnknownSymbol(sigma.to_string()))?;
    if k < 2 {
        return Err(TreeError::RankTooSmall {
            symbol: sigma.to_string(),
            rank: k,
        });
    }
    match alphabet.rank(alpha) {
        Some(0) => {}
        None => return Err(TreeError::UnknownSymbol(alpha.to_string())),
        Some(r) => {
            return Err(TreeError::ArityMismatch {
                symbol: alpha.to_string(),
                expected: 0,
                found: r,
            })
        }
    }
    let states = ["a", "(b,1)", "(b',2)", "1", "q1", "q2"].map(String::from).to_vec();
    let (sa, sb, sb2, s1, q1, q2) = (0, 1, 2, 3, 4, 5);
    let mut aut = TreeAutomaton::empty(alphabet.clone(), states, alg.zero())?;
    for (q, w) in [(sa, a), (sb, b), (sb2, b_prime), (s1, alg.one())] {
        aut.set_transition(&[], alpha, q, w)?;
    }
    let ones = |n: usize| std::iter::repeat(s1).take(n);
    let from_b: Vec<usize> = std::iter::once(sb).chain(ones(k - 1)).collect();
    let from_b2: Vec<usize> = std::iter::once(sb2).chain(ones(k - 1)).collect();
    let to_root: Vec<usize> = std::iter::once(sa).chain(ones(k - 2)).chain([q1]).collect();
    aut.set_transition(&from_b, sigma, q1, alg.one())?;
    aut.set_transition(&from_b2, sigma, q1, alg.one())?;
    aut.set_transition(&to_root, sigma, q2, alg.one())?;
    aut.set_root_weight(q2, c);
    Ok(aut)
}
