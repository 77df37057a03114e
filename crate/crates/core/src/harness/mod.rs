//! Bounded, reproducible checks of the support and image characterizations
//! over finite algebras.
//!
//! When an algebra satisfies the hypothesis of a characterization, random
//! automata are evaluated on every input up to a size bound and the two
//! semantics are compared. When it does not, the counterexample automaton is
//! built from the first violating tuple of the property checker and the
//! predicted disagreement is confirmed. A disagreement nobody predicted is
//! reported as [`Outcome::UnexpectedCounterexample`]; it points at a bug, not
//! at a false theorem.

mod cost;
mod random;

pub use cost::{
    predicted_tree_costs, predicted_word_costs, tree_cost_profile, word_cost_profile, CostProfile,
    CostRow, OpCounts,
};
pub use random::{random_tree_automaton, random_word_automaton, trial_rng, WeightSampler};

use std::fmt;

use rand::Rng;
use serde::{Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::bridge::{wsa_to_wta, BridgeError};
use crate::format::{self, table_ref_json, Automaton, FormatError};
use crate::properties::{check, check_half, Half, Property, PropertyError};
use crate::trees::{branching_example_automaton, RankedAlphabet, Tree, TreeAutomaton, TreeError};
use crate::weights::{same_set, AnyAlgebra, FiniteTableAlgebra, WeightError, Weights};
use crate::words::{special_automaton, Odometer, WordAutomaton, WordError};
use crate::{RunOptions, Semantics};

const PRUNE: RunOptions = RunOptions { prune: true };

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error(transparent)]
    Property(#[from] PropertyError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// Everything a check depends on. The seed fixes all randomness.
#[derive(Debug, Clone)]
pub struct TheoremCheckConfig {
    pub algebra: FiniteTableAlgebra,
    pub word_alphabet: Vec<String>,
    pub tree_alphabet: RankedAlphabet,
    /// Longest word checked.
    pub max_len: usize,
    /// Largest tree checked, in nodes.
    pub max_size: usize,
    /// Number of random automata.
    pub automata: usize,
    /// Random automata get between 1 and this many states.
    pub max_states: usize,
    /// Probability of forcing a weight to `𝟘`.
    pub zero_bias: f64,
    pub seed: u64,
}

impl TheoremCheckConfig {
    /// Words up to length 4 over `{a, b}`, trees up to 7 nodes over
    /// `{alpha/0, sigma/2}`, 100 automata with at most 3 states, seed 42.
    pub fn new(algebra: FiniteTableAlgebra) -> Self {
        TheoremCheckConfig {
            algebra,
            word_alphabet: vec!["a".into(), "b".into()],
            tree_alphabet: RankedAlphabet::new([("alpha", 0), ("sigma", 2)]).expect("static alphabet"),
            max_len: 4,
            max_size: 7,
            automata: 100,
            max_states: 3,
            zero_bias: 0.5,
            seed: 42,
        }
    }

    /// Refuses algebras without a finite table.
    pub fn for_algebra(alg: &AnyAlgebra) -> Result<Self, HarnessError> {
        match alg.as_table() {
            Some(t) => Ok(Self::new(t.clone())),
            None => Err(WeightError::InfiniteCarrier(alg.name()).into()),
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: &str| Err(HarnessError::Config(m.to_string()));
        if self.max_len == 0 || self.max_size == 0 {
            return bad("input bounds must be at least 1");
        }
        if self.max_states == 0 {
            return bad("automata need at least one state");
        }
        if self.word_alphabet.is_empty() {
            return bad("the word alphabet is empty");
        }
        if !(0.0..=1.0).contains(&self.zero_bias) {
            return bad("the zero bias must lie in [0, 1]");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    SupportsWords,
    SupportsTrees,
    ImageWords,
    ImageTrees,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::SupportsWords => "supports-words",
            Theorem::SupportsTrees => "supports-trees",
            Theorem::ImageWords => "image-words",
            Theorem::ImageTrees => "image-trees",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// The semantics behaved as the hypothesis predicts.
    Consistent,
    /// The hypothesis fails and the constructed automaton disagrees as
    /// predicted.
    PredictedCounterexample,
    /// The observed behaviour contradicts the prediction.
    UnexpectedCounterexample,
    /// The algebra is not zero-sum-free, which the support
    /// characterizations presuppose.
    OutsideScope,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Consistent => "consistent",
            Outcome::PredictedCounterexample => "predicted counterexample",
            Outcome::UnexpectedCounterexample => "UNEXPECTED counterexample",
            Outcome::OutsideScope => "outside scope",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Input {
    Word(Vec<String>),
    Tree(String),
}

impl fmt::Display for Input {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Input::Word(w) if w.is_empty() => f.write_str("ε"),
            Input::Word(w) => f.write_str(&w.join(" ")),
            Input::Tree(t) => f.write_str(t),
        }
    }
}

/// What disagreed: two values on one input, or two images up to a bound
/// (word length or tree size).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    Values { input: Input, run: String, init: String },
    Images { bound: usize, run: Vec<String>, init: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// Construction parameters, in order.
    #[serde(serialize_with = "pairs_as_map")]
    pub parameters: Vec<(String, String)>,
    /// Index of the random automaton, for replay with the report's seed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    /// The automaton in the file format.
    pub automaton: Value,
    pub evidence: Evidence,
}

fn pairs_as_map<S: Serializer>(pairs: &[(String, String)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(pairs.iter().map(|(k, v)| (k, v)))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub automata: usize,
    pub inputs: usize,
    pub tuples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub theorem: Theorem,
    pub algebra: String,
    pub alphabet: String,
    pub seed: u64,
    pub hypothesis: String,
    pub hypothesis_holds: bool,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub stats: Stats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn is_unexpected(&self) -> bool {
        self.outcome == Outcome::UnexpectedCounterexample
    }

    /// Re-evaluates the stored witness from its serialized automaton and
    /// compares with the stored values. Reports without a witness pass.
    pub fn revalidate(&self) -> Result<bool, HarnessError> {
        let Some(w) = &self.witness else {
            return Ok(true);
        };
        let file = format::automaton_from_value(&w.automaton, true)?;
        let alg = &file.algebra;
        let names = |vs: Vec<crate::weights::AnyElem>| -> Vec<String> {
            let mut out: Vec<String> = vs.iter().map(|v| alg.describe(v)).collect();
            out.sort();
            out
        };
        let sorted = |vs: &[String]| {
            let mut out = vs.to_vec();
            out.sort();
            out
        };
        Ok(match (&file.automaton, &w.evidence) {
            (Automaton::Word(a), Evidence::Values { input: Input::Word(word), run, init }) => {
                alg.describe(&a.run_semantics(alg, word)?) == *run
                    && alg.describe(&a.initial_semantics(alg, word)?) == *init
            }
            (Automaton::Tree(a), Evidence::Values { input: Input::Tree(text), run, init }) => {
                let t = Tree::parse(text, a.alphabet())?;
                alg.describe(&a.run_semantics(alg, &t)?) == *run
                    && alg.describe(&a.initial_semantics(alg, &t)?) == *init
            }
            (Automaton::Word(a), Evidence::Images { bound, run, init }) => {
                names(a.image_up_to(alg, *bound, Semantics::Run)) == sorted(run)
                    && names(a.image_up_to(alg, *bound, Semantics::Init)) == sorted(init)
            }
            (Automaton::Tree(a), Evidence::Images { bound, run, init }) => {
                names(a.image_up_to(alg, *bound, Semantics::Run)) == sorted(run)
                    && names(a.image_up_to(alg, *bound, Semantics::Init)) == sorted(init)
            }
            _ => false,
        })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theorem     {}", self.theorem)?;
        writeln!(f, "algebra     {}", self.algebra)?;
        writeln!(f, "alphabet    {}", self.alphabet)?;
        writeln!(f, "seed        {}", self.seed)?;
        writeln!(f, "hypothesis  {} ({})", self.hypothesis, if self.hypothesis_holds { "holds" } else { "fails" })?;
        writeln!(f, "outcome     {}", self.outcome.as_str())?;
        writeln!(
            f,
            "checked     {} automata, {} inputs, {} tuples",
            self.stats.automata, self.stats.inputs, self.stats.tuples
        )?;
        if let Some(w) = &self.witness {
            if !w.parameters.is_empty() {
                let ps: Vec<String> = w.parameters.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                writeln!(f, "parameters  {}", ps.join(", "))?;
            }
            if let Some(t) = w.trial {
                writeln!(f, "trial       {t}")?;
            }
            match &w.evidence {
                Evidence::Values { input, run, init } => {
                    writeln!(f, "input       {input}")?;
                    writeln!(f, "run         {run}")?;
                    writeln!(f, "init        {init}")?;
                }
                Evidence::Images { bound, run, init } => {
                    writeln!(f, "bound       {bound}")?;
                    writeln!(f, "run image   {{{}}}", run.join(", "))?;
                    writeln!(f, "init image  {{{}}}", init.join(", "))?;
                }
            }
        }
        if let Some(n) = &self.note {
            writeln!(f, "note        {n}")?;
        }
        Ok(())
    }
}

struct Builder<'c> {
    cfg: &'c TheoremCheckConfig,
    report: CheckReport,
}

impl<'c> Builder<'c> {
    fn new(cfg: &'c TheoremCheckConfig, theorem: Theorem, alphabet: String) -> Self {
        Builder {
            cfg,
            report: CheckReport {
                theorem,
                algebra: cfg.algebra.name(),
                alphabet,
                seed: cfg.seed,
                hypothesis: String::new(),
                hypothesis_holds: false,
                outcome: Outcome::Consistent,
                witness: None,
                stats: Stats::default(),
                note: None,
            },
        }
    }

    fn hypothesis(&mut self, name: impl Into<String>, holds: bool) {
        self.report.hypothesis = name.into();
        self.report.hypothesis_holds = holds;
    }

    fn finish(mut self, outcome: Outcome, witness: Option<Witness>) -> CheckReport {
        self.report.outcome = outcome;
        self.report.witness = witness;
        self.report
    }

    fn alg(&self) -> &'c FiniteTableAlgebra {
        &self.cfg.algebra
    }

    fn names(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|x| self.alg().describe(x)).collect()
    }

    fn word_witness(
        &self,
        params: Vec<(String, String)>,
        trial: Option<usize>,
        aut: &WordAutomaton<usize>,
        evidence: Evidence,
    ) -> Witness {
        Witness {
            parameters: params,
            trial,
            automaton: format::word_automaton_to_json(self.alg(), table_ref_json(self.alg()), aut),
            evidence,
        }
    }

    fn tree_witness(
        &self,
        params: Vec<(String, String)>,
        trial: Option<usize>,
        aut: &TreeAutomaton<usize>,
        evidence: Evidence,
    ) -> Witness {
        Witness {
            parameters: params,
            trial,
            automaton: format::tree_automaton_to_json(self.alg(), table_ref_json(self.alg()), aut),
            evidence,
        }
    }

    fn params(&self, vars: &[&str], values: &[usize]) -> Vec<(String, String)> {
        vars.iter()
            .zip(values)
            .map(|(k, v)| (k.to_string(), self.alg().describe(v)))
            .collect()
    }

    fn values(&self, input: Input, run: &usize, init: &usize) -> Evidence {
        Evidence::Values {
            input,
            run: self.alg().describe(run),
            init: self.alg().describe(init),
        }
    }

    /// Compares the two semantics of random word automata on every word up
    /// to the bound. `relation` says whether a pair of values agrees.
    fn random_words(&mut self, relation: impl Fn(&usize, &usize) -> bool) -> Result<Option<Witness>, HarnessError> {
        let cfg = self.cfg;
        let alg = self.alg();
        let sampler = WeightSampler::new(alg, cfg.zero_bias)?;
        let mut words: Option<Vec<Vec<String>>> = None;
        for trial in 0..cfg.automata {
            let mut rng = trial_rng(cfg.seed, trial);
            let n = rng.gen_range(1..=cfg.max_states);
            let aut = random_word_automaton(&sampler, &cfg.word_alphabet, n, &mut rng);
            let words = words.get_or_insert_with(|| aut.words_up_to(cfg.max_len));
            self.report.stats.automata += 1;
            for w in words.iter() {
                self.report.stats.inputs += 1;
                let run = aut.run_semantics_with(alg, w, PRUNE)?;
                let init = aut.initial_semantics(alg, w)?;
                if !relation(&run, &init) {
                    let ev = self.values(Input::Word(w.clone()), &run, &init);
                    return Ok(Some(self.word_witness(Vec::new(), Some(trial), &aut, ev)));
                }
            }
        }
        Ok(None)
    }

    fn random_trees(&mut self, relation: impl Fn(&usize, &usize) -> bool) -> Result<Option<Witness>, HarnessError> {
        let cfg = self.cfg;
        let alg = self.alg();
        let sampler = WeightSampler::new(alg, cfg.zero_bias)?;
        let trees = Tree::enumerate(&cfg.tree_alphabet, cfg.max_size);
        for trial in 0..cfg.automata {
            let mut rng = trial_rng(cfg.seed, trial);
            let n = rng.gen_range(1..=cfg.max_states);
            let aut = random_tree_automaton(&sampler, &cfg.tree_alphabet, n, &mut rng);
            self.report.stats.automata += 1;
            for t in &trees {
                self.report.stats.inputs += 1;
                let run = aut.run_semantics_with(alg, t, PRUNE)?;
                let init = aut.initial_semantics(alg, t)?;
                if !relation(&run, &init) {
                    let ev = self.values(Input::Tree(t.to_string()), &run, &init);
                    return Ok(Some(self.tree_witness(Vec::new(), Some(trial), &aut, ev)));
                }
            }
        }
        Ok(None)
    }
}

fn same_support(alg: &FiniteTableAlgebra) -> impl Fn(&usize, &usize) -> bool + '_ {
    move |x, y| alg.is_zero(x) == alg.is_zero(y)
}

/// The direction a failing half predicts: `true` when the run semantics is
/// nonzero and the initial-algebra semantics is `𝟘`.
fn run_beats_init(half: Half) -> bool {
    matches!(half, Half::RunToInit | Half::TreeRunToInit)
}

fn confirm(alg: &FiniteTableAlgebra, half: Half, run: &usize, init: &usize) -> Outcome {
    let (nonzero, zero) = if run_beats_init(half) { (run, init) } else { (init, run) };
    if !alg.is_zero(nonzero) && alg.is_zero(zero) {
        Outcome::PredictedCounterexample
    } else {
        Outcome::UnexpectedCounterexample
    }
}

fn direction_note(half: Half) -> String {
    let d = if run_beats_init(half) {
        "in supp(run) but not in supp(init)"
    } else {
        "in supp(init) but not in supp(run)"
    };
    format!("{half} fails; the input is {d}")
}

fn word_alphabet_label(alphabet: &[String]) -> String {
    format!("{{{}}}", alphabet.join(", "))
}

/// Support equality for word automata against strong zero-sum-freeness.
pub fn check_support_theorem_words(cfg: &TheoremCheckConfig) -> Result<CheckReport, HarnessError> {
    cfg.validate()?;
    let alg = &cfg.algebra;
    let mut b = Builder::new(cfg, Theorem::SupportsWords, word_alphabet_label(&cfg.word_alphabet));
    b.hypothesis(Property::StronglyZSF.to_string(), check(alg, Property::StronglyZSF)?.holds);
    if !check(alg, Property::ZeroSumFree)?.holds {
        b.report.note = Some("the algebra is not zero-sum-free".into());
        return Ok(b.finish(Outcome::OutsideScope, None));
    }
    if b.report.hypothesis_holds {
        let w = b.random_words(same_support(alg))?;
        let outcome = if w.is_some() { Outcome::UnexpectedCounterexample } else { Outcome::Consistent };
        return Ok(b.finish(outcome, w));
    }
    for half in [Half::RunToInit, Half::InitToRun] {
        let v = check_half(alg, half)?;
        let Some(t) = v.witness else { continue };
        b.report.stats.tuples += 1;
        b.report.stats.automata += 1;
        b.report.stats.inputs += 1;
        let gamma = &cfg.word_alphabet[0];
        let aut = special_automaton(alg, t[0], t[1], t[2], gamma, &cfg.word_alphabet)?;
        let word = [gamma.clone()];
        let run = aut.run_semantics(alg, &word)?;
        let init = aut.initial_semantics(alg, &word)?;
        let outcome = confirm(alg, half, &run, &init);
        let ev = b.values(Input::Word(word.to_vec()), &run, &init);
        let w = b.word_witness(b.params(&["a", "b", "c"], &t), None, &aut, ev);
        b.report.note = Some(direction_note(half));
        return Ok(b.finish(outcome, Some(w)));
    }
    Err(PropertyError::InternalLogic("StronglyZSF fails but both halves hold".into()).into())
}

/// Copies `aut` onto a larger alphabet; the new symbols get weight `𝟘`.
fn embed<E: Clone + PartialEq>(aut: &TreeAutomaton<E>, alphabet: &RankedAlphabet) -> Result<TreeAutomaton<E>, TreeError> {
    let mut out = TreeAutomaton::empty(alphabet.clone(), aut.states().to_vec(), aut.zero().clone())?;
    for (q, w) in aut.root_weights().iter().enumerate() {
        out.set_root_weight(q, w.clone());
    }
    for (children, symbol, to, w) in aut.nonzero_transitions() {
        out.set_transition(&children, &symbol, to, w)?;
    }
    Ok(out)
}

/// The word counterexample of a monadic alphabet read as a tree automaton:
/// the letters are the unary symbols and the first nullary symbol is the
/// end marker. Returns the automaton and the tree `γ(α)`.
fn monadic_special_automaton(
    alg: &FiniteTableAlgebra,
    alphabet: &RankedAlphabet,
    t: &[usize],
) -> Result<(TreeAutomaton<usize>, Tree), HarnessError> {
    let letters: Vec<String> = alphabet.of_rank(1).into_iter().map(String::from).collect();
    let end = alphabet.of_rank(0)[0];
    let word = special_automaton(alg, t[0], t[1], t[2], &letters[0], &letters)?;
    let aut = embed(&wsa_to_wta(alg, &word, end)?, alphabet)?;
    Ok((aut, Tree::new(letters[0].clone(), vec![Tree::leaf(end)])))
}

/// The first symbol of rank at least 2 and the first nullary symbol.
fn branching_symbols(alphabet: &RankedAlphabet) -> (String, usize, String) {
    let (sigma, k) = alphabet
        .symbols()
        .iter()
        .find(|(_, k)| *k >= 2)
        .cloned()
        .expect("branching alphabet");
    (sigma, k, alphabet.of_rank(0)[0].to_string())
}

/// Support equality for tree automata, with the hypothesis chosen by the
/// class of the alphabet: none for trivial alphabets, strong
/// zero-sum-freeness for monadic ones, and bi-strong zero-sum-freeness for
/// branching ones.
pub fn check_support_theorem_trees(cfg: &TheoremCheckConfig) -> Result<CheckReport, HarnessError> {
    cfg.validate()?;
    let alg = &cfg.algebra;
    let alphabet = &cfg.tree_alphabet;
    let class = alphabet.classify();
    let mut b = Builder::new(cfg, Theorem::SupportsTrees, alphabet.to_string());
    if class.trivial {
        b.hypothesis("none (trivial alphabet)", true);
        let w = b.random_trees(|x, y| x == y)?;
        let outcome = if w.is_some() { Outcome::UnexpectedCounterexample } else { Outcome::Consistent };
        return Ok(b.finish(outcome, w));
    }
    let property = if class.branching { Property::BiStronglyZSF } else { Property::StronglyZSF };
    let holds = check(alg, Property::StronglyZSF)?.holds && check(alg, property)?.holds;
    b.hypothesis(property.to_string(), holds);
    if !check(alg, Property::ZeroSumFree)?.holds {
        b.report.note = Some("the algebra is not zero-sum-free".into());
        return Ok(b.finish(Outcome::OutsideScope, None));
    }
    if holds {
        let w = b.random_trees(same_support(alg))?;
        let outcome = if w.is_some() { Outcome::UnexpectedCounterexample } else { Outcome::Consistent };
        return Ok(b.finish(outcome, w));
    }
    b.report.stats.tuples += 1;
    b.report.stats.automata += 1;
    b.report.stats.inputs += 1;
    if class.branching {
        let (sigma, k, alpha) = branching_symbols(alphabet);
        // a failing word half (a, b, c) is the tree tuple (𝟙, a, b, c)
        let one = alg.one();
        let candidates = [
            (Half::TreeRunToInit, None),
            (Half::TreeInitToRun, None),
            (Half::RunToInit, Some(Half::TreeRunToInit)),
            (Half::InitToRun, Some(Half::TreeInitToRun)),
        ];
        for (half, lifted) in candidates {
            let Some(t) = check_half(alg, half)?.witness else { continue };
            let t = if lifted.is_some() { vec![one, t[0], t[1], t[2]] } else { t };
            let half = lifted.unwrap_or(half);
            let aut = branching_example_automaton(alg, t[0], t[1], t[2], t[3], &sigma, &alpha, alphabet)?;
            let tree = Tree::nested_example(&sigma, &alpha, k);
            let run = aut.run_semantics_with(alg, &tree, PRUNE)?;
            let init = aut.initial_semantics(alg, &tree)?;
            let outcome = confirm(alg, half, &run, &init);
            let ev = b.values(Input::Tree(tree.to_string()), &run, &init);
            let w = b.tree_witness(b.params(&["a", "b", "b'", "c"], &t), None, &aut, ev);
            b.report.note = Some(direction_note(half));
            return Ok(b.finish(outcome, Some(w)));
        }
    } else {
        for half in [Half::RunToInit, Half::InitToRun] {
            let Some(t) = check_half(alg, half)?.witness else { continue };
            let (aut, tree) = monadic_special_automaton(alg, alphabet, &t)?;
            let run = aut.run_semantics(alg, &tree)?;
            let init = aut.initial_semantics(alg, &tree)?;
            let outcome = confirm(alg, half, &run, &init);
            let ev = b.values(Input::Tree(tree.to_string()), &run, &init);
            let w = b.tree_witness(b.params(&["a", "b", "c"], &t), None, &aut, ev);
            b.report.note = Some(direction_note(half));
            return Ok(b.finish(outcome, Some(w)));
        }
    }
    Err(PropertyError::InternalLogic(format!("{property} fails but no half condition does")).into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageMode {
    Words,
    Trees,
}

/// Image equality against distributivity. Every parameter tuple of the
/// counterexample construction is tried, and the images of both semantics
/// are computed exactly up to the largest input in the support.
pub fn check_image_theorem(cfg: &TheoremCheckConfig, mode: ImageMode) -> Result<CheckReport, HarnessError> {
    cfg.validate()?;
    match mode {
        ImageMode::Words => image_words(cfg),
        ImageMode::Trees => image_trees(cfg),
    }
}

fn images_differ(alg: &FiniteTableAlgebra, run: &[usize], init: &[usize]) -> bool {
    !same_set(alg, run, init)
}

fn image_outcome(holds: bool, found: bool) -> Outcome {
    match (holds, found) {
        (true, false) => Outcome::Consistent,
        (false, true) => Outcome::PredictedCounterexample,
        _ => Outcome::UnexpectedCounterexample,
    }
}

fn image_words(cfg: &TheoremCheckConfig) -> Result<CheckReport, HarnessError> {
    let alg = &cfg.algebra;
    let mut b = Builder::new(cfg, Theorem::ImageWords, word_alphabet_label(&cfg.word_alphabet));
    b.hypothesis(Property::RightDistributive.to_string(), check(alg, Property::RightDistributive)?.holds);
    let n = alg.size();
    let gamma = &cfg.word_alphabet[0];
    let mut witness = None;
    for t in Odometer::new(n, 3) {
        b.report.stats.tuples += 1;
        b.report.stats.automata += 1;
        let aut = special_automaton(alg, t[0], t[1], t[2], gamma, &cfg.word_alphabet)?;
        let run = aut.image_up_to(alg, 1, Semantics::Run);
        let init = aut.image_up_to(alg, 1, Semantics::Init);
        b.report.stats.inputs += 1 + cfg.word_alphabet.len();
        if images_differ(alg, &run, &init) {
            let ev = Evidence::Images {
                bound: 1,
                run: b.names(&run),
                init: b.names(&init),
            };
            witness = Some(b.word_witness(b.params(&["a", "b", "c"], &t), None, &aut, ev));
            break;
        }
    }
    let outcome = image_outcome(b.report.hypothesis_holds, witness.is_some());
    if outcome == Outcome::UnexpectedCounterexample && witness.is_none() {
        b.report.note = Some("right-distributivity fails but every tuple gave equal images".into());
    }
    Ok(b.finish(outcome, witness))
}

fn image_trees(cfg: &TheoremCheckConfig) -> Result<CheckReport, HarnessError> {
    let alg = &cfg.algebra;
    let alphabet = &cfg.tree_alphabet;
    let class = alphabet.classify();
    let mut b = Builder::new(cfg, Theorem::ImageTrees, alphabet.to_string());
    if class.trivial {
        b.hypothesis("none (trivial alphabet)", true);
        let w = b.random_trees(|x, y| x == y)?;
        let outcome = if w.is_some() { Outcome::UnexpectedCounterexample } else { Outcome::Consistent };
        return Ok(b.finish(outcome, w));
    }
    let rd = check(alg, Property::RightDistributive)?.holds;
    let n = alg.size();
    let mut witness = None;
    if class.branching {
        let ld = check(alg, Property::LeftDistributive)?.holds;
        b.hypothesis("RightDistributive and LeftDistributive", rd && ld);
        let (sigma, k, alpha) = branching_symbols(alphabet);
        let bound = 2 * k + 1;
        for t in Odometer::new(n, 4) {
            b.report.stats.tuples += 1;
            b.report.stats.automata += 1;
            let aut = branching_example_automaton(alg, t[0], t[1], t[2], t[3], &sigma, &alpha, alphabet)?;
            let run = aut.image_up_to_with(alg, bound, Semantics::Run, PRUNE);
            let init = aut.image_up_to(alg, bound, Semantics::Init);
            if images_differ(alg, &run, &init) {
                let ev = Evidence::Images {
                    bound,
                    run: b.names(&run),
                    init: b.names(&init),
                };
                witness = Some(b.tree_witness(b.params(&["a", "b", "b'", "c"], &t), None, &aut, ev));
                break;
            }
        }
    } else {
        b.hypothesis(Property::RightDistributive.to_string(), rd);
        for t in Odometer::new(n, 3) {
            b.report.stats.tuples += 1;
            b.report.stats.automata += 1;
            let (aut, _) = monadic_special_automaton(alg, alphabet, &t)?;
            let run = aut.image_up_to(alg, 2, Semantics::Run);
            let init = aut.image_up_to(alg, 2, Semantics::Init);
            if images_differ(alg, &run, &init) {
                let ev = Evidence::Images {
                    bound: 2,
                    run: b.names(&run),
                    init: b.names(&init),
                };
                witness = Some(b.tree_witness(b.params(&["a", "b", "c"], &t), None, &aut, ev));
                break;
            }
        }
    }
    let outcome = image_outcome(b.report.hypothesis_holds, witness.is_some());
    if outcome == Outcome::UnexpectedCounterexample && witness.is_none() {
        b.report.note = Some("distributivity fails but every tuple gave equal images".into());
    }
    Ok(b.finish(outcome, witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(alg: FiniteTableAlgebra) -> TheoremCheckConfig {
        TheoremCheckConfig {
            automata: 20,
            ..TheoremCheckConfig::new(alg)
        }
    }

    #[test]
    fn b4_words_counterexample() {
        let r = check_support_theorem_words(&cfg(FiniteTableAlgebra::b4())).unwrap();
        assert_eq!(r.outcome, Outcome::PredictedCounterexample);
        let w = r.witness.as_ref().unwrap();
        assert_eq!(w.parameters, [("a", "2"), ("b", "2"), ("c", "2")].map(|(k, v)| (k.into(), v.into())));
        assert_eq!(
            w.evidence,
            Evidence::Values {
                input: Input::Word(vec!["a".into()]),
                run: "0".into(),
                init: "2".into()
            }
        );
        assert!(r.revalidate().unwrap());
    }

    #[test]
    fn tampered_witness_fails_revalidation() {
        let mut r = check_support_theorem_words(&cfg(FiniteTableAlgebra::b4())).unwrap();
        if let Some(Witness {
            evidence: Evidence::Values { run, .. },
            ..
        }) = &mut r.witness
        {
            *run = "2".into();
        }
        assert!(!r.revalidate().unwrap());
    }

    #[test]
    fn pentagon_trees_consistent() {
        let c = TheoremCheckConfig {
            automata: 10,
            max_size: 5,
            ..TheoremCheckConfig::new(FiniteTableAlgebra::pentagon())
        };
        let r = check_support_theorem_trees(&c).unwrap();
        assert_eq!(r.outcome, Outcome::Consistent);
        assert!(r.hypothesis_holds);
        assert_eq!(r.stats.automata, 10);
    }

    #[test]
    fn monadic_alphabet_uses_the_word_construction() {
        let c = TheoremCheckConfig {
            tree_alphabet: RankedAlphabet::new([("alpha", 0), ("beta", 0), ("gamma", 1)]).unwrap(),
            ..cfg(FiniteTableAlgebra::b3prime())
        };
        let r = check_support_theorem_trees(&c).unwrap();
        assert_eq!(r.outcome, Outcome::PredictedCounterexample);
        assert_eq!(r.hypothesis, "StronglyZSF");
        let Evidence::Values { input, .. } = &r.witness.as_ref().unwrap().evidence else {
            panic!()
        };
        assert_eq!(input, &Input::Tree("gamma(alpha)".into()));
        assert!(r.revalidate().unwrap());
    }

    #[test]
    fn invalid_configs_are_refused() {
        let mut c = cfg(FiniteTableAlgebra::boole());
        c.max_len = 0;
        assert!(matches!(check_support_theorem_words(&c), Err(HarnessError::Config(_))));
        assert!(TheoremCheckConfig::for_algebra(&AnyAlgebra::NatPlusMin).is_err());
    }

    #[test]
    fn image_words_over_the_pentagon() {
        let r = check_image_theorem(&cfg(FiniteTableAlgebra::pentagon()), ImageMode::Words).unwrap();
        assert_eq!(r.outcome, Outcome::PredictedCounterexample);
        assert!(!r.hypothesis_holds);
        assert!(r.revalidate().unwrap());
    }
}
