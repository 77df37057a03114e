use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{WeightError, Weights};

/// A strong bimonoid given by explicit `n × n` operation tables over the
/// element indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTableAlgebra {
    name: String,
    names: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

/// On-disk form of a table: operation entries and identities are element
/// names rather than indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub names: Vec<String>,
    pub add: Vec<Vec<String>>,
    pub mul: Vec<Vec<String>>,
    pub zero: String,
    pub one: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    MulAssociative,
    MulIdentity,
    ZeroAnnihilates,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::AddAssociative,
        Axiom::AddCommutative,
        Axiom::AddIdentity,
        Axiom::MulAssociative,
        Axiom::MulIdentity,
        Axiom::ZeroAnnihilates,
    ];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::AddAssociative => "(a ⊕ b) ⊕ c = a ⊕ (b ⊕ c)",
            Axiom::AddCommutative => "a ⊕ b = b ⊕ a",
            Axiom::AddIdentity => "a ⊕ 𝟘 = 𝟘 ⊕ a = a",
            Axiom::MulAssociative => "(a ⊗ b) ⊗ c = a ⊗ (b ⊗ c)",
            Axiom::MulIdentity => "a ⊗ 𝟙 = 𝟙 ⊗ a = a",
            Axiom::ZeroAnnihilates => "a ⊗ 𝟘 = 𝟘 ⊗ a = 𝟘",
        };
        f.write_str(s)
    }
}

/// The first violating tuple (in index order) of one axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    pub witness_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failure(&self, axiom: Axiom) -> Option<&AxiomFailure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("all strong bimonoid axioms hold");
        }
        let parts: Vec<String> = self
            .failures
            .iter()
            .map(|x| format!("{} fails at ({})", x.axiom, x.witness_names.join(", ")))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

impl FiniteTableAlgebra {
    /// Builds a table after structural checks only (sizes, index ranges,
    /// distinct names). Use [`FiniteTableAlgebra::validate_axioms`] for the
    /// algebraic ones.
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self, WeightError> {
        let n = names.len();
        if n == 0 {
            return Err(WeightError::MalformedTable("empty carrier".into()));
        }
        let mut seen = HashMap::new();
        for (i, nm) in names.iter().enumerate() {
            if let Some(j) = seen.insert(nm.as_str(), i) {
                return Err(WeightError::MalformedTable(format!(
                    "element name `{nm}` used for indices {j} and {i}"
                )));
            }
        }
        for (label, table) in [("add", &add), ("mul", &mul)] {
            if table.len() != n {
                return Err(WeightError::MalformedTable(format!(
                    "{label} table has {} rows, expected {n}",
                    table.len()
                )));
            }
            for (i, row) in table.iter().enumerate() {
                if row.len() != n {
                    return Err(WeightError::MalformedTable(format!(
                        "{label} table row {i} has {} entries, expected {n}",
                        row.len()
                    )));
                }
                if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                    return Err(WeightError::MalformedTable(format!(
                        "{label}[{i}][{j}] = {v} is out of range 0..{n}"
                    )));
                }
            }
        }
        if zero >= n || one >= n {
            return Err(WeightError::MalformedTable(format!(
                "identity index out of range 0..{n}"
            )));
        }
        Ok(FiniteTableAlgebra {
            name: name.into(),
            names,
            add,
            mul,
            zero,
            one,
        })
    }

    /// Loads a named table. Unless `allow_invalid` is set the axioms are
    /// validated and a failing table is refused.
    pub fn from_spec(spec: &TableSpec, allow_invalid: bool) -> Result<Self, WeightError> {
        let index: HashMap<&str, usize> = spec
            .names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| WeightError::MalformedTable(format!("unknown element `{s}`")))
        };
        let convert = |t: &Vec<Vec<String>>| -> Result<Vec<Vec<usize>>, WeightError> {
            t.iter()
                .map(|row| row.iter().map(|s| lookup(s)).collect())
                .collect()
        };
        let name = spec.name.clone().unwrap_or_else(|| "table".to_string());
        let alg = FiniteTableAlgebra::new(
            name,
            spec.names.clone(),
            convert(&spec.add)?,
            convert(&spec.mul)?,
            lookup(&spec.zero)?,
            lookup(&spec.one)?,
        )?;
        if !allow_invalid {
            let report = alg.validate_axioms();
            if !report.passed() {
                return Err(WeightError::InvalidAxioms {
                    name: alg.name.clone(),
                    failure: report.to_string(),
                });
            }
        }
        Ok(alg)
    }

    pub fn to_spec(&self) -> TableSpec {
        let named = |t: &Vec<Vec<usize>>| {
            t.iter()
                .map(|row| row.iter().map(|&i| self.names[i].clone()).collect())
                .collect()
        };
        TableSpec {
            name: Some(self.name.clone()),
            names: self.names.clone(),
            add: named(&self.add),
            mul: named(&self.mul),
            zero: self.names[self.zero].clone(),
            one: self.names[self.one].clone(),
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    /// Overwrites one table entry; the axioms are not re-checked.
    pub fn set_add(&mut self, a: usize, b: usize, value: usize) {
        assert!(value < self.size());
        self.add[a][b] = value;
    }

    pub fn set_mul(&mut self, a: usize, b: usize, value: usize) {
        assert!(value < self.size());
        self.mul[a][b] = value;
    }

    /// Exhaustive check of every strong bimonoid axiom; reports the first
    /// violating tuple of each failing axiom in lexicographic index order.
    pub fn validate_axioms(&self) -> ValidationReport {
        let n = self.size();
        let (add, mul, z, o) = (&self.add, &self.mul, self.zero, self.one);
        let mut failures = Vec::new();
        for axiom in Axiom::ALL {
            let witness: Option<Vec<usize>> = match axiom {
                Axiom::AddAssociative => first_triple(n, |a, b, c| {
                    add[add[a][b]][c] != add[a][add[b][c]]
                }),
                Axiom::MulAssociative => first_triple(n, |a, b, c| {
                    mul[mul[a][b]][c] != mul[a][mul[b][c]]
                }),
                Axiom::AddCommutative => {
                    first_pair(n, |a, b| add[a][b] != add[b][a])
                }
                Axiom::AddIdentity => (0..n)
                    .find(|&a| add[a][z] != a || add[z][a] != a)
                    .map(|a| vec![a]),
                Axiom::MulIdentity => (0..n)
                    .find(|&a| mul[a][o] != a || mul[o][a] != a)
                    .map(|a| vec![a]),
                Axiom::ZeroAnnihilates => (0..n)
                    .find(|&a| mul[a][z] != z || mul[z][a] != z)
                    .map(|a| vec![a]),
            };
            if let Some(w) = witness {
                failures.push(AxiomFailure {
                    axiom,
                    witness_names: w.iter().map(|&i| self.names[i].clone()).collect(),
                    witness: w,
                });
            }
        }
        ValidationReport { failures }
    }

    /// Bounded lattice `(L, ∨, ∧, ⊥, ⊤)` from its covering pairs `(lower, upper)`.
    /// Join and meet are read off the reflexive-transitive closure; the order
    /// must be a bounded lattice.
    pub fn lattice(
        name: impl Into<String>,
        names: &[&str],
        covers: &[(usize, usize)],
    ) -> Result<Self, WeightError> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(WeightError::MalformedTable(format!(
                    "cover ({lo}, {hi}) is out of range"
                )));
            }
            leq[lo][hi] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        let bound = |upper: bool, a: usize, b: usize| -> Result<usize, WeightError> {
            let cands: Vec<usize> = (0..n)
                .filter(|&x| {
                    if upper {
                        leq[a][x] && leq[b][x]
                    } else {
                        leq[x][a] && leq[x][b]
                    }
                })
                .collect();
            cands
                .iter()
                .copied()
                .find(|&x| {
                    cands
                        .iter()
                        .all(|&y| if upper { leq[x][y] } else { leq[y][x] })
                })
                .ok_or_else(|| {
                    WeightError::MalformedTable(format!(
                        "{} and {} have no {}",
                        names[a],
                        names[b],
                        if upper { "join" } else { "meet" }
                    ))
                })
        };
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                join[a][b] = bound(true, a, b)?;
                meet[a][b] = bound(false, a, b)?;
            }
        }
        let bottom = (0..n)
            .find(|&x| (0..n).all(|y| leq[x][y]))
            .ok_or_else(|| WeightError::MalformedTable("no bottom element".into()))?;
        let top = (0..n)
            .find(|&x| (0..n).all(|y| leq[y][x]))
            .ok_or_else(|| WeightError::MalformedTable("no top element".into()))?;
        FiniteTableAlgebra::new(
            name,
            names.iter().map(|s| s.to_string()).collect(),
            join,
            meet,
            bottom,
            top,
        )
    }

    /// `({0, 1}, ∨, ∧, 0, 1)`.
    pub fn boole() -> Self {
        FiniteTableAlgebra::new(
            "Boole",
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 1]],
            0,
            1,
        )
        .expect("static table")
    }

    /// The pentagon `N5`: `0 < p < q < 1` and `0 < r < 1`.
    pub fn pentagon() -> Self {
        FiniteTableAlgebra::lattice(
            "PentagonN5",
            &["0", "1", "p", "q", "r"],
            &[(0, 2), (2, 3), (3, 1), (0, 4), (4, 1)],
        )
        .expect("static lattice")
    }

    /// The hexagon: two two-element chains `0 < p < q < 1` and `0 < r < s < 1`.
    pub fn hexagon() -> Self {
        FiniteTableAlgebra::lattice(
            "Hexagon",
            &["0", "1", "p", "q", "r", "s"],
            &[(0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1)],
        )
        .expect("static lattice")
    }

    /// Four elements `{0, 1, 2, 3}`: `1 ⊕ 1 = 1`, `2 ⊕ j = 3 ⊕ j = 3` for
    /// `j ≠ 0`; `2 ⊗ 2 = 0`, `2 ⊗ 3 = 3 ⊗ 2 = 2`, `3 ⊗ 3 = 3`.
    /// Zero-sum-free, but sums can revive a vanishing product.
    pub fn b4() -> Self {
        let add = vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 3, 3],
            vec![2, 3, 3, 3],
            vec![3, 3, 3, 3],
        ];
        let mul = vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 2, 3],
            vec![0, 2, 0, 2],
            vec![0, 3, 2, 3],
        ];
        let names = ["0", "1", "2", "3"].map(String::from).to_vec();
        FiniteTableAlgebra::new("B4", names, add, mul, 0, 1).expect("static table")
    }

    /// Three elements `{0′, 1′, 2′}`: every non-trivial sum is `2′` and
    /// `2′ ⊗ 2′ = 0′`.
    pub fn b3prime() -> Self {
        let add = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]];
        let mul = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]];
        let names = ["0'", "1'", "2'"].map(String::from).to_vec();
        FiniteTableAlgebra::new("B3prime", names, add, mul, 0, 1).expect("static table")
    }

    /// Maps `f: [0, m] → [0, m]` with `f(0) = 0`, added pointwise with
    /// addition saturating at `m` and multiplied by composition
    /// `(f ⊗ g)(x) = f(g(x))`.
    ///
    /// Elements are ordered lexicographically by `(f(1), …, f(m))` and named by
    /// their full value list, e.g. `[0,1,0]` for `m = 2`.
    pub fn trunc_fun(m: usize) -> Result<Self, WeightError> {
        if !(1..=4).contains(&m) {
            return Err(WeightError::TruncFunRange(m));
        }
        let base = m + 1;
        let count = base.pow(m as u32);
        let decode = |mut idx: usize| -> Vec<usize> {
            let mut vals = vec![0; base];
            for x in (1..=m).rev() {
                vals[x] = idx % base;
                idx /= base;
            }
            vals
        };
        let encode = |vals: &[usize]| vals[1..].iter().fold(0, |acc, &v| acc * base + v);
        let funcs: Vec<Vec<usize>> = (0..count).map(decode).collect();
        let names = funcs
            .iter()
            .map(|f| {
                let parts: Vec<String> = f.iter().map(|v| v.to_string()).collect();
                format!("[{}]", parts.join(","))
            })
            .collect();
        let mut add = vec![vec![0; count]; count];
        let mut mul = vec![vec![0; count]; count];
        for (i, f) in funcs.iter().enumerate() {
            for (j, g) in funcs.iter().enumerate() {
                let s: Vec<usize> = (0..base).map(|x| (f[x] + g[x]).min(m)).collect();
                let c: Vec<usize> = (0..base).map(|x| f[g[x]]).collect();
                add[i][j] = encode(&s);
                mul[i][j] = encode(&c);
            }
        }
        let identity: Vec<usize> = (0..base).collect();
        FiniteTableAlgebra::new(
            format!("TruncFun({m})"),
            names,
            add,
            mul,
            0,
            encode(&identity),
        )
    }

    /// `{𝟘, 0, 1, …, m}` with saturating `+` for both operations, `𝟘` neutral
    /// for `⊕` and absorbing for `⊗`, and `𝟙 = 0`. A finite stand-in for the
    /// plus-plus naturals.
    pub fn nat_plus_plus_truncated(m: usize) -> Self {
        let n = m + 2;
        let names: Vec<String> = std::iter::once("zero".to_string())
            .chain((0..=m).map(|v| v.to_string()))
            .collect();
        // index 0 is 𝟘, index v + 1 is the number v
        let mut add = vec![vec![0; n]; n];
        let mut mul = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                add[i][j] = match (i, j) {
                    (0, x) | (x, 0) => x,
                    (x, y) => (x - 1 + y - 1).min(m) + 1,
                };
                mul[i][j] = match (i, j) {
                    (0, _) | (_, 0) => 0,
                    (x, y) => (x - 1 + y - 1).min(m) + 1,
                };
            }
        }
        FiniteTableAlgebra::new(format!("NatPlusPlus≤{m}"), names, add, mul, 0, 1)
            .expect("generated table")
    }
}

fn first_pair(n: usize, mut bad: impl FnMut(usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in 0..n {
            if bad(a, b) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

fn first_triple(n: usize, mut bad: impl FnMut(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if bad(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

impl Weights for FiniteTableAlgebra {
    type Elem = usize;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn zero(&self) -> usize {
        self.zero
    }

    fn one(&self) -> usize {
        self.one
    }

    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add[*a][*b]
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul[*a][*b]
    }

    fn describe(&self, a: &usize) -> String {
        self.names[*a].clone()
    }

    fn parse_elem(&self, text: &str) -> Result<usize, WeightError> {
        let t = text.trim();
        self.index_of(t)
            .or_else(|| match t {
                "𝟘" => Some(self.zero),
                "𝟙" => Some(self.one),
                _ => None,
            })
            .ok_or_else(|| WeightError::UnknownElement {
                algebra: self.name.clone(),
                text: text.to_string(),
            })
    }

    fn elements(&self) -> Result<Vec<usize>, WeightError> {
        Ok((0..self.size()).collect())
    }
}
