use std::fmt;

use super::{Position, Tree, TreeError};

/// A cut through a tree: positions that are pairwise prefix-independent,
/// strictly increasing in left-of order, and cover every leaf.
///
/// Indices into a cut (for [`Cut::expand`] and [`Cut::merge`]) are 1-based,
/// like tree positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    positions: Vec<Position>,
}

/// The two rewrite relations on cuts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutRelation {
    /// Replace a non-leaf position by its children.
    Expand,
    /// Replace the complete children block of a position by the position.
    Merge,
}

impl Cut {
    /// Validates the three cut conditions against `tree`.
    pub fn new(tree: &Tree, positions: Vec<Position>) -> Result<Self, TreeError> {
        let invalid = |m: String| Err(TreeError::InvalidCut(m));
        if positions.is_empty() {
            return invalid("a cut is nonempty".into());
        }
        if let Some(w) = positions.iter().find(|w| !tree.contains_position(w)) {
            return Err(TreeError::InvalidPosition(w.to_string()));
        }
        for pair in positions.windows(2) {
            if !pair[0].is_left_of(&pair[1]) {
                return invalid(format!(
                    "{} is not left of {} (independent and ordered)",
                    pair[0], pair[1]
                ));
            }
        }
        if let Some(leaf) = tree
            .leaves()
            .into_iter()
            .find(|l| !positions.iter().any(|w| w.is_prefix_of(l)))
        {
            return invalid(format!("leaf {leaf} is not covered"));
        }
        Ok(Cut { positions })
    }

    /// `(ε)`.
    pub fn root() -> Self {
        Cut {
            positions: vec![Position::root()],
        }
    }

    /// The leaves-cut.
    pub fn lcut(tree: &Tree) -> Self {
        Cut {
            positions: tree.leaves(),
        }
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Every cut through `tree`, in lexicographic order of position lists.
    pub fn all(tree: &Tree) -> Vec<Cut> {
        fn go(t: &Tree, at: &Position) -> Vec<Vec<Position>> {
            let mut out = vec![vec![at.clone()]];
            if t.is_leaf() {
                return out;
            }
            // choose a cut through every child and concatenate
            let mut acc: Vec<Vec<Position>> = vec![Vec::new()];
            for (i, c) in t.children.iter().enumerate() {
                let sub = go(c, &at.child(i + 1));
                acc = acc
                    .iter()
                    .flat_map(|prefix| {
                        sub.iter().map(move |s| {
                            let mut v = prefix.clone();
                            v.extend(s.iter().cloned());
                            v
                        })
                    })
                    .collect();
            }
            out.extend(acc);
            out
        }
        let mut cuts: Vec<Cut> = go(tree, &Position::root())
            .into_iter()
            .map(|positions| Cut { positions })
            .collect();
        cuts.sort();
        cuts
    }

    /// One expansion step at the 1-based index `i`: position `w_i` is
    /// replaced by its children `w_i1, …, w_ik`.
    pub fn expand(&self, tree: &Tree, i: usize) -> Result<Cut, TreeError> {
        let w = self.at(i)?;
        let sub = tree
            .subtree_at(w)
            .ok_or_else(|| TreeError::InvalidPosition(w.to_string()))?;
        if sub.is_leaf() {
            return Err(TreeError::InvalidCut(format!("{w} is a leaf and cannot be expanded")));
        }
        let mut positions = self.positions[..i - 1].to_vec();
        positions.extend((1..=sub.children.len()).map(|j| w.child(j)));
        positions.extend_from_slice(&self.positions[i..]);
        Ok(Cut { positions })
    }

    /// One merge step: the block starting at the 1-based index `i` must be
    /// exactly the children of some position `w`, which replaces it.
    pub fn merge(&self, tree: &Tree, i: usize) -> Result<Cut, TreeError> {
        let first = self.at(i)?;
        let parent = first.parent().ok_or_else(|| {
            TreeError::InvalidCut("the root has no parent to merge into".into())
        })?;
        let k = tree
            .subtree_at(&parent)
            .ok_or_else(|| TreeError::InvalidPosition(parent.to_string()))?
            .children
            .len();
        let block = self.positions.get(i - 1..i - 1 + k);
        let expected: Vec<Position> = (1..=k).map(|j| parent.child(j)).collect();
        if block != Some(expected.as_slice()) {
            return Err(TreeError::NotChildrenBlock {
                index: i,
                parent: parent.to_string(),
            });
        }
        let mut positions = self.positions[..i - 1].to_vec();
        positions.push(parent);
        positions.extend_from_slice(&self.positions[i - 1 + k..]);
        Ok(Cut { positions })
    }

    /// All cuts reachable in one step of `relation`, by increasing index.
    pub fn successors(&self, tree: &Tree, relation: CutRelation) -> Vec<Cut> {
        (1..=self.len())
            .filter_map(|i| match relation {
                CutRelation::Expand => self.expand(tree, i).ok(),
                CutRelation::Merge => self.merge(tree, i).ok(),
            })
            .collect()
    }

    pub fn is_normal_form(&self, tree: &Tree, relation: CutRelation) -> bool {
        self.successors(tree, relation).is_empty()
    }

    fn at(&self, i: usize) -> Result<&Position, TreeError> {
        i.checked_sub(1)
            .and_then(|j| self.positions.get(j))
            .ok_or(TreeError::InvalidIndex {
                index: i,
                len: self.len(),
            })
    }

    /// Positions of the tree that are not strictly below a cut position,
    /// in post-order.
    pub fn upper_postorder(&self, tree: &Tree) -> Vec<Position> {
        tree.postorder()
            .into_iter()
            .filter(|w| !self.positions.iter().any(|c| c.is_proper_prefix_of(w)))
            .collect()
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::RankedAlphabet;

    fn pos(s: &str) -> Position {
        Position::parse(s).unwrap()
    }

    fn cut(tree: &Tree, ps: &[&str]) -> Cut {
        Cut::new(tree, ps.iter().map(|s| pos(s)).collect()).unwrap()
    }

    fn figure_tree() -> Tree {
        let al = RankedAlphabet::new([("alpha", 0), ("beta", 0), ("sigma", 2), ("eta", 3)]).unwrap();
        Tree::parse(
            "eta(eta(alpha,beta,alpha), sigma(sigma(beta,beta),alpha), alpha)",
            &al,
        )
        .unwrap()
    }

    #[test]
    fn expand_root() {
        let t = Tree::nested_example("sigma", "alpha", 2);
        let c = Cut::root().expand(&t, 1).unwrap();
        assert_eq!(c.to_string(), "(1,2)");
        assert!(Cut::root().expand(&t, 2).is_err());
    }

    #[test]
    fn merge_children_block() {
        let t = figure_tree();
        let k = cut(&t, &["11", "12", "13", "21", "22", "3"]);
        assert_eq!(k.merge(&t, 4).unwrap().to_string(), "(11,12,13,2,3)");
        assert!(matches!(
            k.merge(&t, 5),
            Err(TreeError::NotChildrenBlock { .. })
        ));
        assert!(matches!(
            k.merge(&t, 2),
            Err(TreeError::NotChildrenBlock { .. })
        ));
        assert!(matches!(k.merge(&t, 9), Err(TreeError::InvalidIndex { .. })));
    }

    #[test]
    fn leaves_cut() {
        let al = RankedAlphabet::new([("alpha", 0), ("beta", 0), ("delta", 2), ("sigma", 2)]).unwrap();
        let t = Tree::parse("sigma(delta(alpha,beta),alpha)", &al).unwrap();
        assert_eq!(Cut::lcut(&t).to_string(), "(11,12,2)");
        assert!(Cut::lcut(&t).is_normal_form(&t, CutRelation::Expand));
        assert!(Cut::root().is_normal_form(&t, CutRelation::Merge));
    }

    #[test]
    fn invalid_cuts_rejected() {
        let t = figure_tree();
        let bad = |ps: &[&str]| Cut::new(&t, ps.iter().map(|s| pos(s)).collect());
        assert!(bad(&["1", "11", "2", "3"]).is_err()); // dependent
        assert!(bad(&["2", "1", "3"]).is_err()); // unordered
        assert!(bad(&["1", "2"]).is_err()); // incomplete
        assert!(bad(&["1", "2", "4"]).is_err()); // not a position
        assert!(bad(&["1", "2", "3"]).is_ok());
    }

    #[test]
    fn all_cuts_are_valid_and_distinct() {
        let t = figure_tree();
        let all = Cut::all(&t);
        for c in &all {
            Cut::new(&t, c.positions.clone()).unwrap();
        }
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        // root: 1 + product over children (child 1: 1 + 1, child 2: 1 + (1+1)*1, child 3: 1)
        assert_eq!(all.len(), 1 + 2 * 3);
    }

    #[test]
    fn upper_positions() {
        let t = figure_tree();
        let k = cut(&t, &["1", "21", "22", "3"]);
        let up: Vec<String> = k.upper_postorder(&t).iter().map(|p| p.to_string()).collect();
        assert_eq!(up, ["1", "21", "22", "2", "3", "ε"]);
    }
}
