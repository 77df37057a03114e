//! Exhaustive decision of the zero-sum-freeness hierarchy on finite algebras.
//!
//! Every check quantifies over all tuples of carrier elements in lexicographic
//! order (first coordinate slowest) and reports the first violating tuple.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weights::{WeightError, Weights};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    ZeroSumFree,
    StronglyZSF,
    BiStronglyZSF,
    ZeroDivisorFree,
    Positive,
    ZeroRightDistributive,
    RightDistributive,
    LeftDistributive,
    Distributive,
    Commutative,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::ZeroSumFree,
        Property::StronglyZSF,
        Property::BiStronglyZSF,
        Property::ZeroDivisorFree,
        Property::Positive,
        Property::ZeroRightDistributive,
        Property::RightDistributive,
        Property::LeftDistributive,
        Property::Distributive,
        Property::Commutative,
    ];

    /// Number of quantified variables.
    pub fn arity(self) -> usize {
        match self {
            Property::ZeroSumFree
            | Property::ZeroDivisorFree
            | Property::Positive
            | Property::Commutative => 2,
            Property::StronglyZSF
            | Property::ZeroRightDistributive
            | Property::RightDistributive
            | Property::LeftDistributive
            | Property::Distributive => 3,
            Property::BiStronglyZSF => 4,
        }
    }

    pub fn variables(self) -> &'static [&'static str] {
        match self.arity() {
            2 => &["a", "b"],
            3 => &["a", "b", "c"],
            _ => &["a", "b", "b'", "c"],
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Property::ZeroSumFree => "a ⊕ b = 𝟘 iff a = b = 𝟘",
            Property::StronglyZSF => "(a ⊕ b) ⊗ c = 𝟘 iff a ⊗ c = b ⊗ c = 𝟘",
            Property::BiStronglyZSF => {
                "a ⊗ (b ⊕ b') ⊗ c = 𝟘 iff a ⊗ b ⊗ c = a ⊗ b' ⊗ c = 𝟘"
            }
            Property::ZeroDivisorFree => "a ⊗ b = 𝟘 iff a = 𝟘 or b = 𝟘",
            Property::Positive => "zero-sum-free and zero-divisor-free",
            Property::ZeroRightDistributive => "(a ⊕ b) ⊗ c = 𝟘 iff a ⊗ c ⊕ b ⊗ c = 𝟘",
            Property::RightDistributive => "(a ⊕ b) ⊗ c = a ⊗ c ⊕ b ⊗ c",
            Property::LeftDistributive => "a ⊗ (b ⊕ c) = a ⊗ b ⊕ a ⊗ c",
            Property::Distributive => "right- and left-distributive",
            Property::Commutative => "a ⊗ b = b ⊗ a",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One-sided conditions. `RunToInit ∧ InitToRun` is strong zero-sum-freeness
/// and the two tree halves together are bi-strong zero-sum-freeness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Half {
    RunToInit,
    InitToRun,
    TreeRunToInit,
    TreeInitToRun,
}

impl Half {
    pub const ALL: [Half; 4] = [
        Half::RunToInit,
        Half::InitToRun,
        Half::TreeRunToInit,
        Half::TreeInitToRun,
    ];

    pub fn arity(self) -> usize {
        match self {
            Half::RunToInit | Half::InitToRun => 3,
            Half::TreeRunToInit | Half::TreeInitToRun => 4,
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Half::RunToInit => "a ⊗ c ≠ 𝟘 implies (a ⊕ b) ⊗ c ≠ 𝟘",
            Half::InitToRun => "(a ⊕ b) ⊗ c ≠ 𝟘 implies a ⊗ c ≠ 𝟘 or b ⊗ c ≠ 𝟘",
            Half::TreeRunToInit => "a ⊗ b ⊗ c ≠ 𝟘 implies a ⊗ (b ⊕ b') ⊗ c ≠ 𝟘",
            Half::TreeInitToRun => {
                "a ⊗ (b ⊕ b') ⊗ c ≠ 𝟘 implies a ⊗ b ⊗ c ≠ 𝟘 or a ⊗ b' ⊗ c ≠ 𝟘"
            }
        }
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Condition {
    Property(Property),
    Half(Half),
}

impl Condition {
    pub fn arity(self) -> usize {
        match self {
            Condition::Property(p) => p.arity(),
            Condition::Half(h) => h.arity(),
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Condition::Property(p) => p.statement(),
            Condition::Half(h) => h.statement(),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Property(p) => p.fmt(f),
            Condition::Half(h) => h.fmt(f),
        }
    }
}

impl From<Property> for Condition {
    fn from(p: Property) -> Self {
        Condition::Property(p)
    }
}

impl From<Half> for Condition {
    fn from(h: Half) -> Self {
        Condition::Half(h)
    }
}

/// Outcome of one exhaustive check. A failing verdict always carries the
/// first violating tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<E> {
    pub condition: Condition,
    pub holds: bool,
    pub witness: Option<Vec<E>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropertyError {
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error("internal logic error: {0}")]
    InternalLogic(String),
}

/// True iff the tuple `t` violates `cond`. Tuples are laid out as in
/// [`Property::variables`].
pub fn violates<W: Weights>(alg: &W, cond: Condition, t: &[W::Elem]) -> bool {
    assert_eq!(t.len(), cond.arity(), "wrong tuple length for {cond}");
    let z = |x: &W::Elem| alg.is_zero(x);
    let add = |x: &W::Elem, y: &W::Elem| alg.add(x, y);
    let mul = |x: &W::Elem, y: &W::Elem| alg.mul(x, y);
    let iff_fails = |l: bool, r: bool| l != r;
    match cond {
        Condition::Property(p) => match p {
            Property::ZeroSumFree => iff_fails(z(&add(&t[0], &t[1])), z(&t[0]) && z(&t[1])),
            Property::ZeroDivisorFree => {
                iff_fails(z(&mul(&t[0], &t[1])), z(&t[0]) || z(&t[1]))
            }
            Property::Positive => {
                violates(alg, Property::ZeroSumFree.into(), t)
                    || violates(alg, Property::ZeroDivisorFree.into(), t)
            }
            Property::Commutative => !alg.equal(&mul(&t[0], &t[1]), &mul(&t[1], &t[0])),
            Property::StronglyZSF => {
                let (a, b, c) = (&t[0], &t[1], &t[2]);
                iff_fails(z(&mul(&add(a, b), c)), z(&mul(a, c)) && z(&mul(b, c)))
            }
            Property::ZeroRightDistributive => {
                let (a, b, c) = (&t[0], &t[1], &t[2]);
                iff_fails(z(&mul(&add(a, b), c)), z(&add(&mul(a, c), &mul(b, c))))
            }
            Property::RightDistributive => {
                let (a, b, c) = (&t[0], &t[1], &t[2]);
                !alg.equal(&mul(&add(a, b), c), &add(&mul(a, c), &mul(b, c)))
            }
            Property::LeftDistributive => {
                let (a, b, c) = (&t[0], &t[1], &t[2]);
                !alg.equal(&mul(a, &add(b, c)), &add(&mul(a, b), &mul(a, c)))
            }
            Property::Distributive => {
                violates(alg, Property::RightDistributive.into(), t)
                    || violates(alg, Property::LeftDistributive.into(), t)
            }
            Property::BiStronglyZSF => {
                let (a, b, b2, c) = (&t[0], &t[1], &t[2], &t[3]);
                let lhs = mul(&mul(a, &add(b, b2)), c);
                iff_fails(
                    z(&lhs),
                    z(&mul(&mul(a, b), c)) && z(&mul(&mul(a, b2), c)),
                )
            }
        },
        Condition::Half(h) => match h {
            Half::RunToInit => {
                let (a, b, c) = (&t[0], &t[1], &t[2]);
                !z(&mul(a, c)) && z(&mul(&add(a, b), c))
            }
            Half::InitToRun => {
                let (a, b, c) = (&t[0], &t[1], &t[2]);
                !z(&mul(&add(a, b), c)) && z(&mul(a, c)) && z(&mul(b, c))
            }
            Half::TreeRunToInit => {
                let (a, b, b2, c) = (&t[0], &t[1], &t[2], &t[3]);
                !z(&mul(&mul(a, b), c)) && z(&mul(&mul(a, &add(b, b2)), c))
            }
            Half::TreeInitToRun => {
                let (a, b, b2, c) = (&t[0], &t[1], &t[2], &t[3]);
                !z(&mul(&mul(a, &add(b, b2)), c))
                    && z(&mul(&mul(a, b), c))
                    && z(&mul(&mul(a, b2), c))
            }
        },
    }
}

/// Visits every `k`-tuple over `elems` in lexicographic order, stopping at
/// the first tuple for which `f` returns true.
fn first_tuple<E: Clone>(elems: &[E], k: usize, mut f: impl FnMut(&[E]) -> bool) -> Option<Vec<E>> {
    let n = elems.len();
    if n == 0 {
        return None;
    }
    let mut idx = vec![0usize; k];
    let mut tuple: Vec<E> = vec![elems[0].clone(); k];
    loop {
        if f(&tuple) {
            return Some(tuple);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                tuple[pos] = elems[idx[pos]].clone();
                break;
            }
            idx[pos] = 0;
            tuple[pos] = elems[0].clone();
        }
    }
}

fn check_condition<W: Weights>(alg: &W, cond: Condition) -> Result<Verdict<W::Elem>, PropertyError> {
    let elems = alg.elements()?;
    let witness = first_tuple(&elems, cond.arity(), |t| violates(alg, cond, t));
    Ok(Verdict {
        condition: cond,
        holds: witness.is_none(),
        witness,
    })
}

pub fn check<W: Weights>(alg: &W, property: Property) -> Result<Verdict<W::Elem>, PropertyError> {
    check_condition(alg, property.into())
}

pub fn check_half<W: Weights>(alg: &W, half: Half) -> Result<Verdict<W::Elem>, PropertyError> {
    check_condition(alg, half.into())
}

/// All verdicts for one algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport<E> {
    pub algebra: String,
    pub properties: Vec<Verdict<E>>,
    pub halves: Vec<Verdict<E>>,
}

impl<E> PropertyReport<E> {
    pub fn verdict(&self, cond: impl Into<Condition>) -> &Verdict<E> {
        let cond = cond.into();
        self.properties
            .iter()
            .chain(&self.halves)
            .find(|v| v.condition == cond)
            .expect("every condition is checked")
    }

    pub fn holds(&self, cond: impl Into<Condition>) -> bool {
        self.verdict(cond).holds
    }
}

/// Checks every property and half condition, then cross-checks the
/// implications that must hold between them. A violated implication means
/// the checker itself is wrong and is reported as
/// [`PropertyError::InternalLogic`].
pub fn classify<W: Weights>(alg: &W) -> Result<PropertyReport<W::Elem>, PropertyError> {
    let properties = Property::ALL
        .iter()
        .map(|&p| check(alg, p))
        .collect::<Result<Vec<_>, _>>()?;
    let halves = Half::ALL
        .iter()
        .map(|&h| check_half(alg, h))
        .collect::<Result<Vec<_>, _>>()?;
    let report = PropertyReport {
        algebra: alg.name(),
        properties,
        halves,
    };
    let h = |c: Property| report.holds(c);
    let half = |c: Half| report.holds(c);
    use Property::*;
    let rules: [(&str, bool); 9] = [
        ("positive ⇒ bi-strongly zero-sum-free", !h(Positive) || h(BiStronglyZSF)),
        ("bi-strongly ⇒ strongly zero-sum-free", !h(BiStronglyZSF) || h(StronglyZSF)),
        ("strongly zero-sum-free ⇒ zero-sum-free", !h(StronglyZSF) || h(ZeroSumFree)),
        (
            "strongly zero-sum-free = zero-sum-free ∧ zero-right-distributive",
            h(StronglyZSF) == (h(ZeroSumFree) && h(ZeroRightDistributive)),
        ),
        (
            "commutative ∧ strongly ⇒ bi-strongly zero-sum-free",
            !(h(Commutative) && h(StronglyZSF)) || h(BiStronglyZSF),
        ),
        ("right-distributive ⇒ zero-right-distributive", !h(RightDistributive) || h(ZeroRightDistributive)),
        (
            "strongly zero-sum-free = both word halves",
            h(StronglyZSF) == (half(Half::RunToInit) && half(Half::InitToRun)),
        ),
        (
            "bi-strongly zero-sum-free = both tree halves",
            h(BiStronglyZSF) == (half(Half::TreeRunToInit) && half(Half::TreeInitToRun)),
        ),
        (
            "distributive = right- ∧ left-distributive",
            h(Distributive) == (h(RightDistributive) && h(LeftDistributive)),
        ),
    ];
    if let Some((rule, _)) = rules.iter().find(|(_, ok)| !ok) {
        return Err(PropertyError::InternalLogic(format!(
            "{} violates `{rule}`",
            report.algebra
        )));
    }
    Ok(report)
}

/// A verdict with witness elements rendered by the algebra, for output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedVerdict {
    pub condition: Condition,
    pub statement: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedPropertyReport {
    pub algebra: String,
    pub properties: Vec<NamedVerdict>,
    pub halves: Vec<NamedVerdict>,
}

fn variables(cond: Condition) -> &'static [&'static str] {
    match cond {
        Condition::Property(p) => p.variables(),
        Condition::Half(h) if h.arity() == 3 => &["a", "b", "c"],
        Condition::Half(_) => &["a", "b", "b'", "c"],
    }
}

impl<E> Verdict<E> {
    pub fn named<W: Weights<Elem = E>>(&self, alg: &W) -> NamedVerdict {
        NamedVerdict {
            condition: self.condition,
            statement: self.condition.statement().to_string(),
            holds: self.holds,
            witness: self.witness.as_ref().map(|w| {
                variables(self.condition)
                    .iter()
                    .zip(w)
                    .map(|(v, e)| (v.to_string(), alg.describe(e)))
                    .collect()
            }),
        }
    }
}

impl<E> PropertyReport<E> {
    pub fn named<W: Weights<Elem = E>>(&self, alg: &W) -> NamedPropertyReport {
        NamedPropertyReport {
            algebra: self.algebra.clone(),
            properties: self.properties.iter().map(|v| v.named(alg)).collect(),
            halves: self.halves.iter().map(|v| v.named(alg)).collect(),
        }
    }
}

impl fmt::Display for NamedPropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.algebra)?;
        for v in self.properties.iter().chain(&self.halves) {
            let mark = if v.holds { "yes" } else { "no " };
            write!(f, "  {:<22} {mark}", v.condition.to_string())?;
            if let Some(w) = &v.witness {
                let parts: Vec<String> = w.iter().map(|(k, e)| format!("{k}={e}")).collect();
                write!(f, "  witness ({})", parts.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
