use std::collections::HashMap;
use std::fmt;

use super::alphabet::valid_identifier;
use super::{RankedAlphabet, TreeError};

/// A tree position: the path of 1-based child indices from the root. The
/// root is the empty path `ε`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn child(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        Position(v)
    }

    pub fn parent(&self) -> Option<Self> {
        let mut v = self.0.clone();
        v.pop().map(|_| Position(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` is a (not necessarily proper) prefix of `other`.
    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_proper_prefix_of(&self, other: &Position) -> bool {
        self.len() < other.len() && self.is_prefix_of(other)
    }

    /// Neither is a prefix of the other and `self` branches off to the left.
    pub fn is_left_of(&self, other: &Position) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .find(|(a, b)| a != b)
            .is_some_and(|(a, b)| a < b)
    }

    /// Reads `ε`, a digit string such as `121`, or dot-separated indices
    /// such as `1.12.3`.
    pub fn parse(text: &str) -> Option<Position> {
        let t = text.trim();
        if t.is_empty() || t == "ε" {
            return Some(Position::root());
        }
        let parts: Option<Vec<usize>> = if t.contains('.') {
            t.split('.').map(|p| p.parse().ok().filter(|&i| i > 0)).collect()
        } else {
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).filter(|&i| i > 0))
                .collect()
        };
        parts.map(Position)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let sep = if self.0.iter().any(|&i| i > 9) { "." } else { "" };
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

/// A ranked tree `σ(ξ₁, …, ξ_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    pub symbol: String,
    pub children: Vec<Tree>,
}

impl Tree {
    pub fn new(symbol: impl Into<String>, children: Vec<Tree>) -> Self {
        Tree {
            symbol: symbol.into(),
            children,
        }
    }

    pub fn leaf(symbol: impl Into<String>) -> Self {
        Tree::new(symbol, Vec::new())
    }

    /// `σ(α, …, α, σ(α, …, α))` with `σ` of rank `k`: `2k + 1` nodes.
    pub fn nested_example(sigma: &str, alpha: &str, k: usize) -> Self {
        let inner = Tree::new(sigma, vec![Tree::leaf(alpha); k]);
        let mut children = vec![Tree::leaf(alpha); k - 1];
        children.push(inner);
        Tree::new(sigma, children)
    }

    /// Checks that every symbol is in `alphabet` with the right arity.
    pub fn check(&self, alphabet: &RankedAlphabet) -> Result<(), TreeError> {
        match alphabet.rank(&self.symbol) {
            None => Err(TreeError::UnknownSymbol(self.symbol.clone())),
            Some(k) if k != self.children.len() => Err(TreeError::ArityMismatch {
                symbol: self.symbol.clone(),
                expected: k,
                found: self.children.len(),
            }),
            Some(_) => self.children.iter().try_for_each(|c| c.check(alphabet)),
        }
    }

    pub fn parse(text: &str, alphabet: &RankedAlphabet) -> Result<Tree, TreeError> {
        let mut p = Parser { text, pos: 0 };
        let tree = p.tree()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.error("unexpected trailing input"));
        }
        tree.check(alphabet)?;
        Ok(tree)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Tree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.children.iter().map(Tree::height).max().unwrap_or(0)
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// All positions in lexicographic order (the root first, then each
    /// child's positions from left to right).
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::with_capacity(self.size());
        fn go(t: &Tree, at: Position, out: &mut Vec<Position>) {
            out.push(at.clone());
            for (i, c) in t.children.iter().enumerate() {
                go(c, at.child(i + 1), out);
            }
        }
        go(self, Position::root(), &mut out);
        out
    }

    /// All positions in post-order (children left to right, then the node).
    pub fn postorder(&self) -> Vec<Position> {
        let mut out = Vec::with_capacity(self.size());
        fn go(t: &Tree, at: Position, out: &mut Vec<Position>) {
            for (i, c) in t.children.iter().enumerate() {
                go(c, at.child(i + 1), out);
            }
            out.push(at);
        }
        go(self, Position::root(), &mut out);
        out
    }

    /// Leaf positions from left to right.
    pub fn leaves(&self) -> Vec<Position> {
        self.positions()
            .into_iter()
            .filter(|p| self.subtree_at(p).is_some_and(Tree::is_leaf))
            .collect()
    }

    pub fn subtree_at(&self, w: &Position) -> Option<&Tree> {
        let mut t = self;
        for &i in &w.0 {
            t = t.children.get(i.checked_sub(1)?)?;
        }
        Some(t)
    }

    pub fn label_at(&self, w: &Position) -> Option<&str> {
        self.subtree_at(w).map(|t| t.symbol.as_str())
    }

    pub fn contains_position(&self, w: &Position) -> bool {
        self.subtree_at(w).is_some()
    }

    /// Every tree over `alphabet` with at most `max_size` nodes, ordered by
    /// size, then by root symbol in declaration order, then by the sizes of
    /// the children and recursively by the children themselves.
    pub fn enumerate(alphabet: &RankedAlphabet, max_size: usize) -> Vec<Tree> {
        let mut memo: HashMap<usize, Vec<Tree>> = HashMap::new();
        (1..=max_size)
            .flat_map(|n| trees_of_size(alphabet, n, &mut memo))
            .collect()
    }
}

fn trees_of_size(alphabet: &RankedAlphabet, n: usize, memo: &mut HashMap<usize, Vec<Tree>>) -> Vec<Tree> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let mut out = Vec::new();
    for (sym, k) in alphabet.symbols() {
        let k = *k;
        if k == 0 {
            if n == 1 {
                out.push(Tree::leaf(sym.clone()));
            }
            continue;
        }
        if n < k + 1 {
            continue;
        }
        for sizes in compositions(n - 1, k) {
            let options: Vec<Vec<Tree>> = sizes
                .iter()
                .map(|&s| trees_of_size(alphabet, s, memo))
                .collect();
            if options.iter().any(Vec::is_empty) {
                continue;
            }
            let mut idx = vec![0usize; k];
            'outer: loop {
                out.push(Tree::new(
                    sym.clone(),
                    idx.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect(),
                ));
                let mut pos = k;
                loop {
                    if pos == 0 {
                        break 'outer;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < options[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        }
    }
    memo.insert(n, out.clone());
    out
}

/// Ordered ways to write `n` as a sum of `k` positive parts, in
/// lexicographic order.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(k - 1) {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol)?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> TreeError {
        TreeError::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn tree(&mut self) -> Result<Tree, TreeError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() || "(),".contains(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        let symbol = &self.text[start..self.pos];
        if !valid_identifier(symbol) {
            return Err(self.error("expected a symbol"));
        }
        self.skip_ws();
        let mut children = Vec::new();
        if self.peek() == Some('(') {
            self.pos += 1;
            loop {
                children.push(self.tree()?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected `,` or `)`")),
                }
            }
        }
        Ok(Tree::new(symbol, children))
    }
}
