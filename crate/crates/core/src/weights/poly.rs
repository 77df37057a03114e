use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{WeightError, Weights};

/// A polynomial over ℕ; `coeffs[i]` is the coefficient of `x^i`.
/// Always normalized: no trailing zero coefficients, so the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigUint>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<BigUint>) -> Self {
        let mut p = Polynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: u64) -> Self {
        Polynomial::from_u64s(&[c])
    }

    /// `x`.
    pub fn x() -> Self {
        Polynomial::from_u64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `p(0)`.
    pub fn constant_term(&self) -> BigUint {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    /// At most one nonzero coefficient; the zero polynomial is a monome.
    pub fn is_monome(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }

    pub fn sum(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                let b = other.coeffs.get(i).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigUint::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, k: &BigUint) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Parses `"2x^2 + x + 3"`-style text. Terms may repeat and are summed.
    pub fn parse(text: &str) -> Option<Polynomial> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return None;
        }
        if compact == "0" {
            return Some(Polynomial::zero());
        }
        let mut acc = Polynomial::zero();
        for term in compact.split('+') {
            if term.is_empty() {
                return None;
            }
            let (coef, power) = match term.find('x') {
                None => (term.parse::<BigUint>().ok()?, 0usize),
                Some(pos) => {
                    let (c, rest) = term.split_at(pos);
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let coef = if c.is_empty() {
                        BigUint::one()
                    } else {
                        c.parse::<BigUint>().ok()?
                    };
                    let rest = &rest[1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')?.parse::<usize>().ok()?
                    };
                    (coef, power)
                }
            };
            let mut coeffs = vec![BigUint::zero(); power + 1];
            coeffs[power] = coef;
            acc = acc.sum(&Polynomial::new(coeffs));
        }
        Some(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = if c.is_one() && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        f.write_str(&terms.join("+"))
    }
}

/// `(ℕ⟨x⟩, +, ⊗, 0, 1)` where `p ⊗ q` is the ordinary product when `q` is a
/// monome and `p(0)·q` otherwise. Right-distributive and zero-sum-free, but
/// `x ⊗ (1 ⊕ x) = 𝟘` although `x ⊗ 1 ≠ 𝟘`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PolyMonome;

impl Weights for PolyMonome {
    type Elem = Polynomial;

    fn name(&self) -> String {
        "PolyMonome".into()
    }

    fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    fn one(&self) -> Polynomial {
        Polynomial::constant(1)
    }

    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.sum(b)
    }

    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        if b.is_monome() {
            a.product(b)
        } else {
            b.scale(&a.constant_term())
        }
    }

    fn describe(&self, a: &Polynomial) -> String {
        a.to_string()
    }

    fn parse_elem(&self, text: &str) -> Result<Polynomial, WeightError> {
        match text.trim() {
            "𝟘" => Ok(self.zero()),
            "𝟙" => Ok(self.one()),
            t => Polynomial::parse(t).ok_or_else(|| WeightError::UnknownElement {
                algebra: self.name(),
                text: text.to_string(),
            }),
        }
    }
}
