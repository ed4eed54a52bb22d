//! Rooted trees and N-colored rooted trees.
//!
//! A [`Tree`] is an immutable canonical value: its children are kept sorted
//! under a total order (vertex count first, then root color, then the child
//! sequences compared lexicographically). Plain trees are the one-color case,
//! with every vertex colored `1`.

mod enumerate;
mod notation;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::factorial;

pub use enumerate::{enumerate_trees, enumerate_trees_capped, trees_of_order};

/// Largest tree order any operation accepts unless a caller passes its own cap.
pub const DEFAULT_MAX_ORDER: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tree {
    color: u32,
    order: usize,
    children: Vec<Tree>,
}

/// A rooted tree whose children are in arbitrary order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTree {
    pub color: u32,
    pub children: Vec<RawTree>,
}

impl RawTree {
    pub fn leaf(color: u32) -> Self {
        RawTree { color, children: Vec::new() }
    }
}

pub fn canonicalize(raw: &RawTree) -> Tree {
    Tree::colored(raw.color, raw.children.iter().map(canonicalize).collect())
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then(self.color.cmp(&other.color))
            .then_with(|| self.children.cmp(&other.children))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Tree {
    /// The single vertex `[]`.
    pub fn leaf() -> Self {
        Self::colored_leaf(1)
    }

    pub fn colored_leaf(color: u32) -> Self {
        Tree { color, order: 1, children: Vec::new() }
    }

    /// Plain tree `[children...]`; the children are sorted into canonical order.
    pub fn new(children: Vec<Tree>) -> Self {
        Self::colored(1, children)
    }

    pub fn colored(color: u32, mut children: Vec<Tree>) -> Self {
        children.sort();
        let order = 1 + children.iter().map(|c| c.order).sum::<usize>();
        Tree { color, order, children }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn color(&self) -> u32 {
        self.color
    }

    pub fn children(&self) -> &[Tree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Re-sorts every child list. Trees built through the constructors are
    /// already canonical, so this is the identity on them.
    pub fn canonicalize(&self) -> Tree {
        Tree::colored(self.color, self.children.iter().map(Tree::canonicalize).collect())
    }

    pub fn to_raw(&self) -> RawTree {
        RawTree { color: self.color, children: self.children.iter().map(Tree::to_raw).collect() }
    }

    /// Largest color used by any vertex.
    pub fn max_color(&self) -> u32 {
        self.children.iter().map(Tree::max_color).fold(self.color, u32::max)
    }

    /// The same shape with every vertex recolored to `1`.
    pub fn uncolored(&self) -> Tree {
        Tree::new(self.children.iter().map(Tree::uncolored).collect())
    }

    /// Symmetry coefficient: `σ([τ₁…τ_m]) = σ(τ₁)⋯σ(τ_m) μ₁!⋯μ_k!`, where the
    /// `μ` count repeated (equal, including colors) subtrees.
    pub fn symmetry(&self) -> u64 {
        let mut product: u64 = self.children.iter().map(Tree::symmetry).product();
        for run in self.children.chunk_by(|a, b| a == b) {
            product *= factorial(run.len() as u64);
        }
        product
    }

    /// Tree factorial `γ([τ₁…τ_m]) = |τ| γ(τ₁)⋯γ(τ_m)`; exact-flow coefficients are `1/γ`.
    pub fn gamma(&self) -> u64 {
        self.order as u64 * self.children.iter().map(Tree::gamma).product::<u64>()
    }

    /// Butcher product `self ∘ v`: graft `v` as a new child of the root.
    pub fn butcher_product(&self, v: &Tree) -> Tree {
        let mut children = self.children.clone();
        children.push(v.clone());
        Tree::colored(self.color, children)
    }

    /// All `(u, v, multiplicity)` with `u ∘ v = self`, one entry per distinct
    /// pair. The multiplicity is the number of root children equal to `v`.
    pub fn unbuttoned_pairs(&self) -> Result<Vec<(Tree, Tree, u64)>> {
        if self.is_leaf() {
            return Err(Error::NoDecomposition);
        }
        let mut out = Vec::new();
        let mut start = 0;
        for run in self.children.chunk_by(|a, b| a == b) {
            let mut rest = self.children.clone();
            rest.remove(start);
            let u = Tree { color: self.color, order: self.order - run[0].order, children: rest };
            out.push((u, run[0].clone(), run.len() as u64));
            start += run.len();
        }
        Ok(out)
    }

    pub fn recolor_root(&self, color: u32, colors: u32) -> Result<Tree> {
        if color == 0 || color > colors {
            return Err(Error::ColorOutOfRange { color, colors });
        }
        Ok(Tree { color, order: self.order, children: self.children.clone() })
    }

    /// Vertices in depth-first postorder as `(color, child indices)`; the root
    /// is last. Children of a vertex precede it.
    pub fn postorder(&self) -> Vec<(u32, Vec<usize>)> {
        fn walk(t: &Tree, out: &mut Vec<(u32, Vec<usize>)>) -> usize {
            let kids: Vec<usize> = t.children.iter().map(|c| walk(c, out)).collect();
            out.push((t.color, kids));
            out.len() - 1
        }
        let mut out = Vec::with_capacity(self.order);
        walk(self, &mut out);
        out
    }
}

/// Multiset of subtrees as `(tree, count)`; used by callers that group children.
pub fn child_counts(t: &Tree) -> BTreeMap<&Tree, usize> {
    let mut counts = BTreeMap::new();
    for c in t.children() {
        *counts.entry(c).or_insert(0) += 1;
    }
    counts
}

pub fn check_order(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        return Err(Error::OrderTooLarge { requested: order, max: cap });
    }
    Ok(())
}
