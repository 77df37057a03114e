//! Strong bimonoids: the weight structures every automaton is evaluated over.
//!
//! A strong bimonoid `(B, ⊕, ⊗, 𝟘, 𝟙)` has a commutative additive monoid, a
//! (not necessarily commutative) multiplicative monoid, and an absorbing `𝟘`.
//! Unlike a semiring, neither distributive law is required, which is what makes
//! the run semantics and the initial-algebra semantics of an automaton differ.

mod any;
mod counting;
mod naturals;
mod poly;
mod table;

pub use any::{builtin, AnyAlgebra, AnyElem, BUILTIN_NAMES};
pub use counting::CountingAlgebra;
pub use naturals::{ExtNat, NatOrZero, NatPlusMin, NatPlusPlus};
pub use poly::{PolyMonome, Polynomial};
pub use table::{Axiom, AxiomFailure, FiniteTableAlgebra, TableSpec, ValidationReport};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("algebra `{0}` has an infinite carrier and cannot be enumerated")]
    InfiniteCarrier(String),
    #[error("malformed operation table: {0}")]
    MalformedTable(String),
    #[error("unknown algebra `{name}`; valid names: {valid}")]
    UnknownAlgebra { name: String, valid: String },
    #[error("`{text}` is not an element of {algebra}")]
    UnknownElement { algebra: String, text: String },
    #[error("table `{name}` violates the strong bimonoid axioms: {failure}")]
    InvalidAxioms { name: String, failure: String },
    #[error("TruncFun({0}) cannot be tabulated; the parameter must lie in 1..=4")]
    TruncFunRange(usize),
}

/// A strong bimonoid with decidable equality.
///
/// Implementors are immutable values; the element type carries no reference to
/// the algebra, so an automaton built over one instance can be evaluated with
/// any other instance that shares the element type (in particular a
/// [`CountingAlgebra`] wrapper).
pub trait Weights {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Structural equality of carrier elements.
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.zero())
    }

    /// Human-readable label, the inverse of [`Weights::parse_elem`].
    fn describe(&self, a: &Self::Elem) -> String;

    fn parse_elem(&self, text: &str) -> Result<Self::Elem, WeightError>;

    /// Every carrier element exactly once, in a fixed order. Infinite
    /// carriers report [`WeightError::InfiniteCarrier`].
    fn elements(&self) -> Result<Vec<Self::Elem>, WeightError> {
        Err(WeightError::InfiniteCarrier(self.name()))
    }
}

impl<W: Weights + ?Sized> Weights for &W {
    type Elem = W::Elem;

    fn name(&self) -> String {
        (**self).name()
    }
    fn zero(&self) -> Self::Elem {
        (**self).zero()
    }
    fn one(&self) -> Self::Elem {
        (**self).one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).add(a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).mul(a, b)
    }
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        (**self).equal(a, b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        (**self).is_zero(a)
    }
    fn describe(&self, a: &Self::Elem) -> String {
        (**self).describe(a)
    }
    fn parse_elem(&self, text: &str) -> Result<Self::Elem, WeightError> {
        (**self).parse_elem(text)
    }
    fn elements(&self) -> Result<Vec<Self::Elem>, WeightError> {
        (**self).elements()
    }
}

/// Left fold with `⊕`. A sum of `m ≥ 1` terms costs exactly `m - 1`
/// additions; the empty sum is `𝟘`.
pub fn sum<W: Weights>(alg: &W, terms: impl IntoIterator<Item = W::Elem>) -> W::Elem {
    let mut it = terms.into_iter();
    match it.next() {
        None => alg.zero(),
        Some(first) => it.fold(first, |acc, t| alg.add(&acc, &t)),
    }
}

/// Left-associated product with `⊗`; `m ≥ 1` factors cost `m - 1`
/// multiplications and the empty product is `𝟙`.
pub fn product<W: Weights>(alg: &W, factors: impl IntoIterator<Item = W::Elem>) -> W::Elem {
    let mut it = factors.into_iter();
    match it.next() {
        None => alg.one(),
        Some(first) => it.fold(first, |acc, f| alg.mul(&acc, &f)),
    }
}

/// Removes duplicates (by algebra equality), keeping first occurrences.
pub fn dedup<W: Weights>(alg: &W, values: impl IntoIterator<Item = W::Elem>) -> Vec<W::Elem> {
    let mut out: Vec<W::Elem> = Vec::new();
    for v in values {
        if !out.iter().any(|u| alg.equal(u, &v)) {
            out.push(v);
        }
    }
    out
}

/// Set equality of two value lists under algebra equality.
pub fn same_set<W: Weights>(alg: &W, xs: &[W::Elem], ys: &[W::Elem]) -> bool {
    xs.iter().all(|x| ys.iter().any(|y| alg.equal(x, y)))
        && ys.iter().all(|y| xs.iter().any(|x| alg.equal(x, y)))
}
