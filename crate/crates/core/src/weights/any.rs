use super::{
    ExtNat, FiniteTableAlgebra, NatOrZero, NatPlusMin, NatPlusPlus, PolyMonome, Polynomial,
    WeightError, Weights,
};

/// Names accepted by [`builtin`], in canonical spelling.
pub const BUILTIN_NAMES: [&str; 9] = [
    "Boole",
    "NatPlusMin",
    "NatPlusPlus",
    "PentagonN5",
    "Hexagon",
    "B4",
    "B3prime",
    "TruncFun(m)",
    "PolyMonome",
];

/// Any bundled algebra behind one type, for code that picks the algebra at
/// run time (the CLI, file loaders).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyAlgebra {
    Table(FiniteTableAlgebra),
    NatPlusMin,
    NatPlusPlus,
    PolyMonome,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AnyElem {
    Table(usize),
    Ext(ExtNat),
    Nat(NatOrZero),
    Poly(Polynomial),
}

/// Looks up a bundled algebra. Matching ignores case and the separators
/// `_`, `-` and spaces; `TruncFun(m)` may also be written `truncfun3`, and
/// plain `TruncFun` means `TruncFun(2)`.
pub fn builtin(name: &str) -> Result<AnyAlgebra, WeightError> {
    let key: String = name
        .chars()
        .filter(|c| !matches!(c, '_' | '-' | ' '))
        .flat_map(char::to_lowercase)
        .collect();
    let table = |t: FiniteTableAlgebra| Ok(AnyAlgebra::Table(t));
    match key.as_str() {
        "boole" | "boolean" => table(FiniteTableAlgebra::boole()),
        "natplusmin" => Ok(AnyAlgebra::NatPlusMin),
        "natplusplus" => Ok(AnyAlgebra::NatPlusPlus),
        "pentagon" | "pentagonn5" | "n5" => table(FiniteTableAlgebra::pentagon()),
        "hexagon" => table(FiniteTableAlgebra::hexagon()),
        "b4" => table(FiniteTableAlgebra::b4()),
        "b3prime" | "b3'" | "b3" => table(FiniteTableAlgebra::b3prime()),
        "polymonome" | "poly" => Ok(AnyAlgebra::PolyMonome),
        "truncfun" => table(FiniteTableAlgebra::trunc_fun(2)?),
        _ => {
            if let Some(rest) = key.strip_prefix("truncfun") {
                let digits = rest
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .unwrap_or(rest);
                if let Ok(m) = digits.parse::<usize>() {
                    return table(FiniteTableAlgebra::trunc_fun(m)?);
                }
            }
            Err(WeightError::UnknownAlgebra {
                name: name.to_string(),
                valid: BUILTIN_NAMES.join(", "),
            })
        }
    }
}

impl AnyAlgebra {
    pub fn as_table(&self) -> Option<&FiniteTableAlgebra> {
        match self {
            AnyAlgebra::Table(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, AnyAlgebra::Table(_))
    }
}

fn mismatch(alg: &AnyAlgebra, e: &AnyElem) -> ! {
    panic!("element {e:?} does not belong to algebra {}", alg.name())
}

impl Weights for AnyAlgebra {
    type Elem = AnyElem;

    fn name(&self) -> String {
        match self {
            AnyAlgebra::Table(t) => t.name(),
            AnyAlgebra::NatPlusMin => NatPlusMin.name(),
            AnyAlgebra::NatPlusPlus => NatPlusPlus.name(),
            AnyAlgebra::PolyMonome => PolyMonome.name(),
        }
    }

    fn zero(&self) -> AnyElem {
        match self {
            AnyAlgebra::Table(t) => AnyElem::Table(t.zero()),
            AnyAlgebra::NatPlusMin => AnyElem::Ext(NatPlusMin.zero()),
            AnyAlgebra::NatPlusPlus => AnyElem::Nat(NatPlusPlus.zero()),
            AnyAlgebra::PolyMonome => AnyElem::Poly(PolyMonome.zero()),
        }
    }

    fn one(&self) -> AnyElem {
        match self {
            AnyAlgebra::Table(t) => AnyElem::Table(t.one()),
            AnyAlgebra::NatPlusMin => AnyElem::Ext(NatPlusMin.one()),
            AnyAlgebra::NatPlusPlus => AnyElem::Nat(NatPlusPlus.one()),
            AnyAlgebra::PolyMonome => AnyElem::Poly(PolyMonome.one()),
        }
    }

    fn add(&self, a: &AnyElem, b: &AnyElem) -> AnyElem {
        match (self, a, b) {
            (AnyAlgebra::Table(t), AnyElem::Table(x), AnyElem::Table(y)) => {
                AnyElem::Table(t.add(x, y))
            }
            (AnyAlgebra::NatPlusMin, AnyElem::Ext(x), AnyElem::Ext(y)) => {
                AnyElem::Ext(NatPlusMin.add(x, y))
            }
            (AnyAlgebra::NatPlusPlus, AnyElem::Nat(x), AnyElem::Nat(y)) => {
                AnyElem::Nat(NatPlusPlus.add(x, y))
            }
            (AnyAlgebra::PolyMonome, AnyElem::Poly(x), AnyElem::Poly(y)) => {
                AnyElem::Poly(PolyMonome.add(x, y))
            }
            _ => mismatch(self, a),
        }
    }

    fn mul(&self, a: &AnyElem, b: &AnyElem) -> AnyElem {
        match (self, a, b) {
            (AnyAlgebra::Table(t), AnyElem::Table(x), AnyElem::Table(y)) => {
                AnyElem::Table(t.mul(x, y))
            }
            (AnyAlgebra::NatPlusMin, AnyElem::Ext(x), AnyElem::Ext(y)) => {
                AnyElem::Ext(NatPlusMin.mul(x, y))
            }
            (AnyAlgebra::NatPlusPlus, AnyElem::Nat(x), AnyElem::Nat(y)) => {
                AnyElem::Nat(NatPlusPlus.mul(x, y))
            }
            (AnyAlgebra::PolyMonome, AnyElem::Poly(x), AnyElem::Poly(y)) => {
                AnyElem::Poly(PolyMonome.mul(x, y))
            }
            _ => mismatch(self, a),
        }
    }

    fn describe(&self, a: &AnyElem) -> String {
        match (self, a) {
            (AnyAlgebra::Table(t), AnyElem::Table(x)) => t.describe(x),
            (AnyAlgebra::NatPlusMin, AnyElem::Ext(x)) => NatPlusMin.describe(x),
            (AnyAlgebra::NatPlusPlus, AnyElem::Nat(x)) => NatPlusPlus.describe(x),
            (AnyAlgebra::PolyMonome, AnyElem::Poly(x)) => PolyMonome.describe(x),
            _ => mismatch(self, a),
        }
    }

    fn parse_elem(&self, text: &str) -> Result<AnyElem, WeightError> {
        Ok(match self {
            AnyAlgebra::Table(t) => AnyElem::Table(t.parse_elem(text)?),
            AnyAlgebra::NatPlusMin => AnyElem::Ext(NatPlusMin.parse_elem(text)?),
            AnyAlgebra::NatPlusPlus => AnyElem::Nat(NatPlusPlus.parse_elem(text)?),
            AnyAlgebra::PolyMonome => AnyElem::Poly(PolyMonome.parse_elem(text)?),
        })
    }

    fn elements(&self) -> Result<Vec<AnyElem>, WeightError> {
        match self {
            AnyAlgebra::Table(t) => Ok(t.elements()?.into_iter().map(AnyElem::Table).collect()),
            _ => Err(WeightError::InfiniteCarrier(self.name())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_is_forgiving_about_spelling() {
        assert_eq!(builtin("pentagon").unwrap(), builtin("PentagonN5").unwrap());
        assert_eq!(builtin("B3prime").unwrap(), builtin("b3_prime").unwrap());
        assert_eq!(builtin("TruncFun(3)").unwrap(), builtin("truncfun3").unwrap());
        assert_eq!(builtin("truncfun").unwrap(), builtin("TruncFun(2)").unwrap());
        assert!(matches!(
            builtin("TruncFun(9)"),
            Err(WeightError::TruncFunRange(9))
        ));
    }

    #[test]
    fn unknown_name_lists_valid_ones() {
        let err = builtin("quaternions").unwrap_err().to_string();
        assert!(err.contains("PentagonN5") && err.contains("PolyMonome"), "{err}");
    }

    #[test]
    fn bundled_examples() {
        let npp = builtin("NatPlusPlus").unwrap();
        let three = npp.parse_elem("3").unwrap();
        let two = npp.parse_elem("2").unwrap();
        assert_eq!(npp.describe(&npp.mul(&three, &two)), "5");

        let poly = builtin("PolyMonome").unwrap();
        let x = poly.parse_elem("x").unwrap();
        let one_plus_x = poly.parse_elem("1+x").unwrap();
        assert!(poly.is_zero(&poly.mul(&x, &one_plus_x)));

        let b4 = builtin("B4").unwrap();
        let two = b4.parse_elem("2").unwrap();
        assert_eq!(b4.describe(&b4.mul(&b4.add(&two, &two), &two)), "2");
        assert!(b4.is_zero(&b4.mul(&two, &two)));

        let tf = builtin("TruncFun(2)").unwrap();
        let g = tf.parse_elem("[0,1,0]").unwrap();
        let gg = tf.add(&g, &g);
        assert!(tf.is_zero(&tf.mul(&g, &gg)));
        assert_eq!(tf.mul(&g, &g), g);
    }

    #[test]
    fn element_counts() {
        let count = |n: &str| builtin(n).unwrap().elements().unwrap().len();
        assert_eq!(count("Boole"), 2);
        assert_eq!(count("PentagonN5"), 5);
        assert_eq!(count("Hexagon"), 6);
        assert_eq!(count("TruncFun(2)"), 9);
        assert!(matches!(
            builtin("NatPlusMin").unwrap().elements(),
            Err(WeightError::InfiniteCarrier(_))
        ));
    }
}
