//! Random automata with a `𝟘`-biased weight distribution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::trees::{RankedAlphabet, TreeAutomaton};
use crate::weights::{WeightError, Weights};
use crate::words::{Odometer, WordAutomaton};

/// Draws `𝟘` with probability `zero_bias` and otherwise a uniformly chosen
/// carrier element (which may again be `𝟘`).
#[derive(Debug, Clone)]
pub struct WeightSampler<E> {
    elements: Vec<E>,
    zero: E,
    zero_bias: f64,
}

impl<E: Clone> WeightSampler<E> {
    pub fn new<W: Weights<Elem = E>>(alg: &W, zero_bias: f64) -> Result<Self, WeightError> {
        Ok(WeightSampler {
            elements: alg.elements()?,
            zero: alg.zero(),
            zero_bias: zero_bias.clamp(0.0, 1.0),
        })
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> E {
        if rng.gen_bool(self.zero_bias) {
            self.zero.clone()
        } else {
            self.elements[rng.gen_range(0..self.elements.len())].clone()
        }
    }
}

/// The generator for trial `trial` under `seed`. Each trial has its own
/// stream, so a trial can be replayed without running the ones before it.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn state_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

/// A word automaton with `states` states and every weight drawn from
/// `sampler`.
pub fn random_word_automaton<E: Clone + PartialEq, R: Rng>(
    sampler: &WeightSampler<E>,
    alphabet: &[String],
    states: usize,
    rng: &mut R,
) -> WordAutomaton<E> {
    let mut aut = WordAutomaton::empty(alphabet.to_vec(), state_names(states), sampler.zero.clone())
        .expect("generated names are distinct");
    for q in 0..states {
        aut.set_initial(q, sampler.sample(rng));
        aut.set_final(q, sampler.sample(rng));
    }
    for a in 0..alphabet.len() {
        for p in 0..states {
            for q in 0..states {
                aut.set_transition(p, a, q, sampler.sample(rng));
            }
        }
    }
    aut
}

/// A tree automaton with `states` states; every `δ_k(q₁…q_k, σ, q)` and
/// every root weight is drawn from `sampler`.
pub fn random_tree_automaton<E: Clone + PartialEq, R: Rng>(
    sampler: &WeightSampler<E>,
    alphabet: &RankedAlphabet,
    states: usize,
    rng: &mut R,
) -> TreeAutomaton<E> {
    let mut aut = TreeAutomaton::empty(alphabet.clone(), state_names(states), sampler.zero.clone())
        .expect("generated names are distinct");
    for q in 0..states {
        aut.set_root_weight(q, sampler.sample(rng));
    }
    for (symbol, rank) in alphabet.symbols() {
        for children in Odometer::new(states, *rank) {
            for q in 0..states {
                aut.set_transition(&children, symbol, q, sampler.sample(rng))
                    .expect("ranks match the alphabet");
            }
        }
    }
    aut
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::FiniteTableAlgebra;

    #[test]
    fn bias_extremes() {
        let alg = FiniteTableAlgebra::hexagon();
        let mut rng = trial_rng(7, 0);
        let always = WeightSampler::new(&alg, 1.0).unwrap();
        assert!((0..100).all(|_| always.sample(&mut rng) == 0));
        let never = WeightSampler::new(&alg, 0.0).unwrap();
        let seen: std::collections::BTreeSet<usize> = (0..500).map(|_| never.sample(&mut rng)).collect();
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn trials_replay() {
        let alg = FiniteTableAlgebra::b4();
        let s = WeightSampler::new(&alg, 0.5).unwrap();
        let al = vec!["a".to_string(), "b".to_string()];
        let x = random_word_automaton(&s, &al, 3, &mut trial_rng(42, 5));
        let y = random_word_automaton(&s, &al, 3, &mut trial_rng(42, 5));
        let z = random_word_automaton(&s, &al, 3, &mut trial_rng(42, 6));
        assert_eq!(x, y);
        assert_ne!(x, z);
    }
}
