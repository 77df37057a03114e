//! Operation counts of both semantics against their closed forms.

use std::fmt;

use serde::Serialize;

use crate::trees::{Tree, TreeAutomaton, TreeError};
use crate::weights::{CountingAlgebra, Weights};
use crate::words::{WordAutomaton, WordError};
use crate::Semantics;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OpCounts {
    pub adds: u64,
    pub muls: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostRow {
    pub semantics: Semantics,
    pub value: String,
    pub measured: OpCounts,
    pub predicted: OpCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostProfile {
    pub input: String,
    pub states: usize,
    /// Word length or number of tree nodes.
    pub input_size: usize,
    pub rows: Vec<CostRow>,
}

impl CostProfile {
    pub fn row(&self, sem: Semantics) -> &CostRow {
        self.rows.iter().find(|r| r.semantics == sem).expect("both semantics are profiled")
    }

    pub fn matches_prediction(&self) -> bool {
        self.rows.iter().all(|r| r.measured == r.predicted)
    }
}

impl fmt::Display for CostProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input {} (size {}), {} states", self.input, self.input_size, self.states)?;
        writeln!(
            f,
            "{:<10} {:<12} {:>12} {:>12} {:>12} {:>12}",
            "semantics", "value", "adds", "muls", "pred. adds", "pred. muls"
        )?;
        for r in &self.rows {
            let sem = match r.semantics {
                Semantics::Run => "run",
                Semantics::Init => "init",
            };
            writeln!(
                f,
                "{:<10} {:<12} {:>12} {:>12} {:>12} {:>12}",
                sem, r.value, r.measured.adds, r.measured.muls, r.predicted.adds, r.predicted.muls
            )?;
        }
        Ok(())
    }
}

/// Counts for a word of length `n` over `q` states: the run semantics sums
/// `q^(n+1)` runs of `n + 2` factors each, the initial-algebra semantics
/// does `n` vector-matrix products and one final dot product.
pub fn predicted_word_costs(q: u64, n: u64) -> [(Semantics, OpCounts); 2] {
    let runs = q.pow(n as u32 + 1);
    [
        (
            Semantics::Run,
            OpCounts {
                adds: runs - 1,
                muls: runs * (n + 1),
            },
        ),
        (
            Semantics::Init,
            OpCounts {
                adds: n * q * (q - 1) + q - 1,
                muls: n * q * q + q,
            },
        ),
    ]
}

/// Counts for a tree over `q` states. A node of rank `k ≥ 1` costs
/// `q^(k+1)·k` multiplications and `q·(q^k − 1)` additions in `h`; leaves
/// cost nothing; the root adds `q` multiplications and `q − 1` additions.
pub fn predicted_tree_costs(q: u64, tree: &Tree) -> [(Semantics, OpCounts); 2] {
    let size = tree.size() as u64;
    let runs = q.pow(size as u32);
    let mut init = OpCounts {
        adds: q - 1,
        muls: q,
    };
    let mut stack = vec![tree];
    while let Some(t) = stack.pop() {
        let k = t.children.len() as u64;
        if k > 0 {
            init.muls += q.pow(k as u32 + 1) * k;
            init.adds += q * (q.pow(k as u32) - 1);
        }
        stack.extend(t.children.iter());
    }
    [
        (
            Semantics::Run,
            OpCounts {
                adds: runs - 1,
                muls: runs * size,
            },
        ),
        (Semantics::Init, init),
    ]
}

fn measure<W: Weights>(
    alg: &W,
    predicted: [(Semantics, OpCounts); 2],
    mut eval: impl FnMut(&CountingAlgebra<&W>, Semantics) -> W::Elem,
) -> Vec<CostRow> {
    let counting = CountingAlgebra::new(alg);
    predicted
        .into_iter()
        .map(|(sem, predicted)| {
            counting.reset_counts();
            let v = eval(&counting, sem);
            let (adds, muls) = counting.read_counts();
            CostRow {
                semantics: sem,
                value: alg.describe(&v),
                measured: OpCounts { adds, muls },
                predicted,
            }
        })
        .collect()
}

/// Both semantics of `aut` on `word`, evaluated without pruning, with
/// measured and predicted operation counts.
pub fn word_cost_profile<W: Weights, S: AsRef<str>>(
    alg: &W,
    aut: &WordAutomaton<W::Elem>,
    word: &[S],
) -> Result<CostProfile, WordError> {
    aut.evaluate(alg, word, Semantics::Init)?;
    let q = aut.num_states() as u64;
    let predicted = predicted_word_costs(q, word.len() as u64);
    let rows = measure(alg, predicted, |c, sem| aut.evaluate(c, word, sem).expect("checked above"));
    let input = if word.is_empty() {
        "ε".to_string()
    } else {
        word.iter().map(|s| s.as_ref()).collect::<Vec<_>>().join(" ")
    };
    Ok(CostProfile {
        input,
        states: aut.num_states(),
        input_size: word.len(),
        rows,
    })
}

pub fn tree_cost_profile<W: Weights>(
    alg: &W,
    aut: &TreeAutomaton<W::Elem>,
    tree: &Tree,
) -> Result<CostProfile, TreeError> {
    aut.evaluate(alg, tree, Semantics::Init)?;
    let predicted = predicted_tree_costs(aut.num_states() as u64, tree);
    let rows = measure(alg, predicted, |c, sem| aut.evaluate(c, tree, sem).expect("checked above"));
    Ok(CostProfile {
        input: tree.to_string(),
        states: aut.num_states(),
        input_size: tree.size(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::RankedAlphabet;
    use crate::weights::FiniteTableAlgebra;

    #[test]
    fn three_states_length_four() {
        let alg = FiniteTableAlgebra::pentagon();
        let states: Vec<String> = ["p", "q", "r"].map(String::from).to_vec();
        let aut = WordAutomaton::empty(vec!["x".into()], states, 0).unwrap();
        let p = word_cost_profile(&alg, &aut, &["x"; 4]).unwrap();
        assert_eq!(p.row(Semantics::Run).measured.muls, 1215);
        assert_eq!(p.row(Semantics::Init).measured.muls, 9 * 4 + 3);
        assert!(p.matches_prediction());
        let empty: [&str; 0] = [];
        let p = word_cost_profile(&alg, &aut, &empty).unwrap();
        assert!(p.rows.iter().all(|r| r.measured.muls == 3));
    }

    #[test]
    fn tree_profile_matches() {
        let alg = FiniteTableAlgebra::hexagon();
        let al = RankedAlphabet::new([("alpha", 0), ("gamma", 1), ("sigma", 2)]).unwrap();
        let aut = TreeAutomaton::empty(al.clone(), vec!["s".into(), "t".into()], 0).unwrap();
        for t in Tree::enumerate(&al, 5) {
            assert!(tree_cost_profile(&alg, &aut, &t).unwrap().matches_prediction(), "{t}");
        }
    }
}
