use std::cell::Cell;

use super::{WeightError, Weights};

/// Wraps an algebra and counts every `add` and `mul` call.
///
/// The counters use interior mutability, so the wrapper is deliberately not
/// `Sync`; use one wrapper per thread and add the counts up afterwards.
#[derive(Debug)]
pub struct CountingAlgebra<W> {
    inner: W,
    adds: Cell<u64>,
    muls: Cell<u64>,
}

impl<W: Weights> CountingAlgebra<W> {
    pub fn new(inner: W) -> Self {
        CountingAlgebra {
            inner,
            adds: Cell::new(0),
            muls: Cell::new(0),
        }
    }

    pub fn inner(&self) -> &W {
        &self.inner
    }

    pub fn reset_counts(&self) {
        self.adds.set(0);
        self.muls.set(0);
    }

    /// `(adds, muls)` since construction or the last reset.
    pub fn read_counts(&self) -> (u64, u64) {
        (self.adds.get(), self.muls.get())
    }
}

impl<W: Weights> Weights for CountingAlgebra<W> {
    type Elem = W::Elem;

    fn name(&self) -> String {
        self.inner.name()
    }

    fn zero(&self) -> W::Elem {
        self.inner.zero()
    }

    fn one(&self) -> W::Elem {
        self.inner.one()
    }

    fn add(&self, a: &W::Elem, b: &W::Elem) -> W::Elem {
        self.adds.set(self.adds.get() + 1);
        self.inner.add(a, b)
    }

    fn mul(&self, a: &W::Elem, b: &W::Elem) -> W::Elem {
        self.muls.set(self.muls.get() + 1);
        self.inner.mul(a, b)
    }

    fn equal(&self, a: &W::Elem, b: &W::Elem) -> bool {
        self.inner.equal(a, b)
    }

    fn is_zero(&self, a: &W::Elem) -> bool {
        self.inner.is_zero(a)
    }

    fn describe(&self, a: &W::Elem) -> String {
        self.inner.describe(a)
    }

    fn parse_elem(&self, text: &str) -> Result<W::Elem, WeightError> {
        self.inner.parse_elem(text)
    }

    fn elements(&self) -> Result<Vec<W::Elem>, WeightError> {
        self.inner.elements()
    }
}
