use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use super::{WeightError, Weights};

/// A natural number or the sentinel `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Fin(BigUint),
    Inf,
}

impl ExtNat {
    pub fn fin(n: u64) -> Self {
        ExtNat::Fin(BigUint::from(n))
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}

/// `(ℕ ∪ {∞}, +, min, 0, ∞)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NatPlusMin;

impl Weights for NatPlusMin {
    type Elem = ExtNat;

    fn name(&self) -> String {
        "NatPlusMin".into()
    }

    fn zero(&self) -> ExtNat {
        ExtNat::fin(0)
    }

    fn one(&self) -> ExtNat {
        ExtNat::Inf
    }

    fn add(&self, a: &ExtNat, b: &ExtNat) -> ExtNat {
        match (a, b) {
            (ExtNat::Fin(x), ExtNat::Fin(y)) => ExtNat::Fin(x + y),
            _ => ExtNat::Inf,
        }
    }

    fn mul(&self, a: &ExtNat, b: &ExtNat) -> ExtNat {
        a.min(b).clone()
    }

    fn describe(&self, a: &ExtNat) -> String {
        a.to_string()
    }

    fn parse_elem(&self, text: &str) -> Result<ExtNat, WeightError> {
        let t = text.trim();
        match t {
            "inf" | "∞" | "infinity" => Ok(ExtNat::Inf),
            "𝟘" => Ok(self.zero()),
            "𝟙" => Ok(self.one()),
            _ => t.parse::<BigUint>().map(ExtNat::Fin).map_err(|_| {
                WeightError::UnknownElement {
                    algebra: self.name(),
                    text: text.to_string(),
                }
            }),
        }
    }
}

/// A natural number or the adjoined absorbing element `𝟘`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NatOrZero {
    Zero,
    Nat(BigUint),
}

impl NatOrZero {
    pub fn nat(n: u64) -> Self {
        NatOrZero::Nat(BigUint::from(n))
    }
}

impl fmt::Display for NatOrZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatOrZero::Zero => f.write_str("zero"),
            NatOrZero::Nat(n) => write!(f, "{n}"),
        }
    }
}

/// `(ℕ ∪ {𝟘}, +, +, 𝟘, 0)`: both operations are addition of naturals, `𝟘`
/// is neutral for `⊕` and absorbing for `⊗`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NatPlusPlus;

impl Weights for NatPlusPlus {
    type Elem = NatOrZero;

    fn name(&self) -> String {
        "NatPlusPlus".into()
    }

    fn zero(&self) -> NatOrZero {
        NatOrZero::Zero
    }

    fn one(&self) -> NatOrZero {
        NatOrZero::Nat(BigUint::zero())
    }

    fn add(&self, a: &NatOrZero, b: &NatOrZero) -> NatOrZero {
        match (a, b) {
            (NatOrZero::Zero, x) | (x, NatOrZero::Zero) => x.clone(),
            (NatOrZero::Nat(x), NatOrZero::Nat(y)) => NatOrZero::Nat(x + y),
        }
    }

    fn mul(&self, a: &NatOrZero, b: &NatOrZero) -> NatOrZero {
        match (a, b) {
            (NatOrZero::Nat(x), NatOrZero::Nat(y)) => NatOrZero::Nat(x + y),
            _ => NatOrZero::Zero,
        }
    }

    fn describe(&self, a: &NatOrZero) -> String {
        a.to_string()
    }

    fn parse_elem(&self, text: &str) -> Result<NatOrZero, WeightError> {
        let t = text.trim();
        match t {
            "zero" | "𝟘" => Ok(NatOrZero::Zero),
            "𝟙" => Ok(self.one()),
            _ => t.parse::<BigUint>().map(NatOrZero::Nat).map_err(|_| {
                WeightError::UnknownElement {
                    algebra: self.name(),
                    text: text.to_string(),
                }
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plus_plus_multiplies_by_adding() {
        let alg = NatPlusPlus;
        assert_eq!(alg.mul(&NatOrZero::nat(3), &NatOrZero::nat(2)), NatOrZero::nat(5));
        assert_eq!(alg.add(&NatOrZero::nat(3), &NatOrZero::nat(2)), NatOrZero::nat(5));
        assert_eq!(alg.mul(&NatOrZero::Zero, &NatOrZero::nat(2)), NatOrZero::Zero);
        assert_eq!(alg.add(&NatOrZero::Zero, &NatOrZero::nat(2)), NatOrZero::nat(2));
        assert_eq!(alg.mul(&alg.one(), &NatOrZero::nat(7)), NatOrZero::nat(7));
    }

    #[test]
    fn plus_min_infinity() {
        let alg = NatPlusMin;
        assert_eq!(alg.add(&ExtNat::fin(4), &ExtNat::Inf), ExtNat::Inf);
        assert_eq!(alg.mul(&ExtNat::fin(4), &ExtNat::Inf), ExtNat::fin(4));
        assert_eq!(alg.mul(&ExtNat::fin(4), &ExtNat::fin(0)), ExtNat::fin(0));
        assert_eq!(alg.parse_elem("∞").unwrap(), ExtNat::Inf);
        assert_eq!(alg.parse_elem(" 12 ").unwrap(), ExtNat::fin(12));
        assert!(alg.elements().is_err());
    }

    #[test]
    fn describe_parse_roundtrip() {
        let alg = NatPlusPlus;
        for v in [NatOrZero::Zero, NatOrZero::nat(0), NatOrZero::nat(19)] {
            assert_eq!(alg.parse_elem(&alg.describe(&v)).unwrap(), v);
        }
        assert!(alg.parse_elem("-1").is_err());
    }
}
