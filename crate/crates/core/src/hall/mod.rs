//! Hall basic commutators and the counting behind the mixed part of a free
//! product.
//!
//! Ordering convention (fixed, see [`ORDER_VERSION`]): weight first, ties
//! broken by comparing `(left, right)` lexicographically in the same order.
//! A pair `[c1, c2]` is basic when `c1 > c2` and, if `c1 = [c11, c12]`,
//! `c12 ≤ c2`.

mod counting;
mod graded;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use counting::{bidegree_count, mixed_rank, mobius, necklace_count, witt, Bidegree};
pub use graded::{graded_piece, GradedPiece, GradedSummand, MultiplicityMode};

/// Tag identifying the ordering convention; cached bases carrying a
/// different tag are ignored.
pub const ORDER_VERSION: &str = "hall-v1/weight-then-lex/c1>c2,c12<=c2";

/// Default cap on the number of basis elements a single request may build.
pub const DEFAULT_BASIS_CAP: usize = 1_000_000;

/// Bracket tree over generators `x1, x2, …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CommutatorTree {
    Leaf(u32),
    Pair(Box<CommutatorTree>, Box<CommutatorTree>),
}

impl CommutatorTree {
    pub fn pair(left: CommutatorTree, right: CommutatorTree) -> Self {
        CommutatorTree::Pair(Box::new(left), Box::new(right))
    }

    pub fn weight(&self) -> usize {
        match self {
            CommutatorTree::Leaf(_) => 1,
            CommutatorTree::Pair(l, r) => l.weight() + r.weight(),
        }
    }

    /// The group commutator this tree denotes, `[a,b] = a⁻¹b⁻¹ab`.
    pub fn to_word(&self) -> crate::nilpotent::FreeGroupWord {
        use crate::nilpotent::FreeGroupWord;
        match self {
            CommutatorTree::Leaf(g) => FreeGroupWord::generator(*g),
            CommutatorTree::Pair(l, r) => FreeGroupWord::commutator(&l.to_word(), &r.to_word()),
        }
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            CommutatorTree::Leaf(g) => out.push(*g),
            CommutatorTree::Pair(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// Hall order computed structurally, without reference to any basis.
    pub fn cmp_hall(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| match (self, other) {
            (CommutatorTree::Leaf(a), CommutatorTree::Leaf(b)) => a.cmp(b),
            (CommutatorTree::Pair(a1, a2), CommutatorTree::Pair(b1, b2)) => {
                a1.cmp_hall(b1).then_with(|| a2.cmp_hall(b2))
            }
            _ => unreachable!("equal weights imply equal shapes at weight 1"),
        })
    }

    /// Checks the Hall condition recursively.
    pub fn is_basic(&self) -> bool {
        match self {
            CommutatorTree::Leaf(g) => *g >= 1,
            CommutatorTree::Pair(c1, c2) => {
                c1.is_basic()
                    && c2.is_basic()
                    && c1.cmp_hall(c2) == Ordering::Greater
                    && match c1.as_ref() {
                        CommutatorTree::Leaf(_) => true,
                        CommutatorTree::Pair(_, c12) => c12.cmp_hall(c2) != Ordering::Greater,
                    }
            }
        }
    }
}

impl fmt::Display for CommutatorTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommutatorTree::Leaf(g) => write!(f, "x{g}"),
            CommutatorTree::Pair(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}

/// A basic commutator with its weight and per-generator leaf counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicCommutator {
    pub tree: CommutatorTree,
    pub weight: usize,
    pub multidegree: Vec<usize>,
}

impl fmt::Display for BasicCommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.tree.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HallNode {
    Leaf(u32),
    /// Indices into the basis.
    Pair(usize, usize),
}

/// Hall basis through a given weight, elements stored in Hall order; the
/// position of an element is its rank in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallBasis {
    generator_count: usize,
    max_weight: usize,
    nodes: Vec<HallNode>,
    weights: Vec<usize>,
    multidegrees: Vec<Vec<usize>>,
    ranges: Vec<Range<usize>>,
}

impl HallBasis {
    /// Builds the basis on `n` generators through weight `w`, failing if the
    /// element count would exceed `cap`.
    pub fn generate_with_cap(n: usize, w: usize, cap: usize) -> Result<Self> {
        if n == 0 || w == 0 {
            return Err(Error::invalid("Hall basis needs n >= 1 and w >= 1"));
        }
        let needed: u128 = (1..=w).map(|k| witt(n, k)).fold(0u128, u128::saturating_add);
        if needed > cap as u128 {
            return Err(Error::ResourceLimit {
                what: "Hall basis elements",
                needed,
                cap: cap as u128,
            });
        }
        let mut b = HallBasis {
            generator_count: n,
            max_weight: w,
            nodes: Vec::with_capacity(needed as usize),
            weights: Vec::with_capacity(needed as usize),
            multidegrees: Vec::with_capacity(needed as usize),
            ranges: Vec::with_capacity(w),
        };
        for g in 1..=n {
            let mut md = vec![0; n];
            md[g - 1] = 1;
            b.nodes.push(HallNode::Leaf(g as u32));
            b.weights.push(1);
            b.multidegrees.push(md);
        }
        b.ranges.push(0..n);
        for weight in 2..=w {
            let start = b.nodes.len();
            let mut fresh: Vec<(usize, usize)> = Vec::new();
            for w1 in weight.div_ceil(2)..weight {
                let w2 = weight - w1;
                for c1 in b.ranges[w1 - 1].clone() {
                    for c2 in b.ranges[w2 - 1].clone() {
                        if c1 <= c2 {
                            continue;
                        }
                        if let HallNode::Pair(_, c12) = b.nodes[c1] {
                            if c12 > c2 {
                                continue;
                            }
                        }
                        fresh.push((c1, c2));
                    }
                }
            }
            fresh.sort_unstable();
            for (c1, c2) in fresh {
                let md: Vec<usize> = b.multidegrees[c1]
                    .iter()
                    .zip(&b.multidegrees[c2])
                    .map(|(x, y)| x + y)
                    .collect();
                b.nodes.push(HallNode::Pair(c1, c2));
                b.weights.push(weight);
                b.multidegrees.push(md);
            }
            b.ranges.push(start..b.nodes.len());
        }
        Ok(b)
    }

    pub fn generate(n: usize, w: usize) -> Result<Self> {
        Self::generate_with_cap(n, w, DEFAULT_BASIS_CAP)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, idx: usize) -> HallNode {
        self.nodes[idx]
    }

    pub fn weight(&self, idx: usize) -> usize {
        self.weights[idx]
    }

    pub fn multidegree(&self, idx: usize) -> &[usize] {
        &self.multidegrees[idx]
    }

    /// Index range of the elements of weight `k`.
    pub fn weight_range(&self, k: usize) -> Range<usize> {
        self.ranges[k - 1].clone()
    }

    pub fn count_at(&self, k: usize) -> usize {
        self.ranges[k - 1].len()
    }

    /// Index of the weight-1 element for generator `g` (1-based).
    pub fn generator_index(&self, g: u32) -> usize {
        g as usize - 1
    }

    pub fn tree(&self, idx: usize) -> CommutatorTree {
        match self.nodes[idx] {
            HallNode::Leaf(g) => CommutatorTree::Leaf(g),
            HallNode::Pair(l, r) => CommutatorTree::pair(self.tree(l), self.tree(r)),
        }
    }

    pub fn element(&self, idx: usize) -> BasicCommutator {
        BasicCommutator {
            tree: self.tree(idx),
            weight: self.weights[idx],
            multidegree: self.multidegrees[idx].clone(),
        }
    }

    /// Elements of weight `k`, in Hall order.
    pub fn elements_at(&self, k: usize) -> Vec<BasicCommutator> {
        self.weight_range(k).map(|i| self.element(i)).collect()
    }

    /// Position of a tree in the basis, if it is one of its elements.
    pub fn index_of(&self, tree: &CommutatorTree) -> Option<usize> {
        match tree {
            CommutatorTree::Leaf(g) => {
                let g = *g as usize;
                (1..=self.generator_count).contains(&g).then(|| g - 1)
            }
            CommutatorTree::Pair(l, r) => {
                let (l, r) = (self.index_of(l)?, self.index_of(r)?);
                let w = self.weights[l] + self.weights[r];
                if w > self.max_weight {
                    return None;
                }
                let range = self.weight_range(w);
                self.nodes[range.clone()]
                    .binary_search_by(|n| match n {
                        HallNode::Pair(a, b) => (*a, *b).cmp(&(l, r)),
                        HallNode::Leaf(_) => Ordering::Less,
                    })
                    .ok()
                    .map(|p| range.start + p)
            }
        }
    }

    /// Structural form used by the on-disk cache.
    pub(crate) fn raw_nodes(&self) -> &[HallNode] {
        &self.nodes
    }

    /// Rebuilds a basis from cached nodes. Every pair must be basic, each
    /// weight strictly sorted and of Witt size, which forces equality with a
    /// fresh generation.
    pub(crate) fn from_raw_nodes(n: usize, w: usize, nodes: Vec<HallNode>) -> Result<Self> {
        let stale = || Error::invalid("cached Hall basis does not match the current ordering");
        if n == 0 || w == 0 || nodes.len() < n {
            return Err(stale());
        }
        let mut b = HallBasis {
            generator_count: n,
            max_weight: w,
            nodes: Vec::with_capacity(nodes.len()),
            weights: Vec::with_capacity(nodes.len()),
            multidegrees: Vec::with_capacity(nodes.len()),
            ranges: Vec::with_capacity(w),
        };
        for (g, node) in nodes[..n].iter().enumerate() {
            if *node != HallNode::Leaf(g as u32 + 1) {
                return Err(stale());
            }
            let mut md = vec![0; n];
            md[g] = 1;
            b.nodes.push(*node);
            b.weights.push(1);
            b.multidegrees.push(md);
        }
        b.ranges.push(0..n);
        let mut rest = nodes[n..].iter().peekable();
        for weight in 2..=w {
            let start = b.nodes.len();
            let mut prev: Option<(usize, usize)> = None;
            while let Some(&&HallNode::Pair(c1, c2)) = rest.peek() {
                if c1 >= start || c2 >= c1 || b.weights[c1] + b.weights[c2] != weight {
                    break;
                }
                if let HallNode::Pair(_, c12) = b.nodes[c1] {
                    if c12 > c2 {
                        return Err(stale());
                    }
                }
                if prev.is_some_and(|p| p >= (c1, c2)) {
                    return Err(stale());
                }
                prev = Some((c1, c2));
                rest.next();
                let md = b.multidegrees[c1]
                    .iter()
                    .zip(&b.multidegrees[c2])
                    .map(|(x, y)| x + y)
                    .collect();
                b.nodes.push(HallNode::Pair(c1, c2));
                b.weights.push(weight);
                b.multidegrees.push(md);
            }
            if (b.nodes.len() - start) as u128 != witt(n, weight) {
                return Err(stale());
            }
            b.ranges.push(start..b.nodes.len());
        }
        if rest.next().is_some() {
            return Err(stale());
        }
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(b: &HallBasis, k: usize) -> Vec<String> {
        b.elements_at(k).iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn weight_two_on_two_generators() {
        let b = HallBasis::generate(2, 2).unwrap();
        assert_eq!(strings(&b, 1), ["x1", "x2"]);
        assert_eq!(strings(&b, 2), ["[x2,x1]"]);
    }

    #[test]
    fn weight_three_on_two_generators() {
        let b = HallBasis::generate(2, 3).unwrap();
        assert_eq!(strings(&b, 3), ["[[x2,x1],x1]", "[[x2,x1],x2]"]);
    }

    #[test]
    fn weight_two_on_three_generators() {
        let b = HallBasis::generate(3, 2).unwrap();
        assert_eq!(b.count_at(2), 3);
        assert_eq!(strings(&b, 2), ["[x2,x1]", "[x3,x1]", "[x3,x2]"]);
    }

    #[test]
    fn counts_match_witt() {
        for n in 1..=4 {
            let b = HallBasis::generate(n, 8).unwrap();
            for w in 1..=8 {
                assert_eq!(b.count_at(w) as u128, witt(n, w), "n={n} w={w}");
            }
        }
    }

    #[test]
    fn every_element_is_basic_and_multidegree_sums_to_weight() {
        let b = HallBasis::generate(3, 6).unwrap();
        for i in 0..b.len() {
            let e = b.element(i);
            assert!(e.tree.is_basic(), "{e}");
            assert_eq!(e.tree.weight(), e.weight);
            assert_eq!(e.multidegree.iter().sum::<usize>(), e.weight);
            assert_eq!(b.index_of(&e.tree), Some(i));
        }
        assert_eq!(
            b.index_of(&CommutatorTree::pair(CommutatorTree::Leaf(1), CommutatorTree::Leaf(2))),
            None
        );
    }

    #[test]
    fn hall_order_is_a_strict_total_order_matching_positions() {
        for (n, w) in [(2, 6), (3, 4), (4, 3)] {
            let b = HallBasis::generate(n, w).unwrap();
            let trees: Vec<CommutatorTree> = (0..b.len()).map(|i| b.tree(i)).collect();
            for (i, a) in trees.iter().enumerate() {
                for (j, c) in trees.iter().enumerate() {
                    let o = a.cmp_hall(c);
                    assert_eq!(o, i.cmp(&j));
                    assert_eq!(c.cmp_hall(a), o.reverse());
                }
            }
            // transitivity on a sample of triples
            for a in trees.iter().step_by(3) {
                for c in trees.iter().step_by(5) {
                    for d in trees.iter().step_by(7) {
                        if a.cmp_hall(c).is_lt() && c.cmp_hall(d).is_lt() {
                            assert!(a.cmp_hall(d).is_lt());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = HallBasis::generate_with_cap(4, 8, 1000).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { cap: 1000, .. }));
        assert!(HallBasis::generate(0, 3).is_err());
    }

    #[test]
    fn tree_json_mirrors_nesting() {
        let t = CommutatorTree::pair(
            CommutatorTree::pair(CommutatorTree::Leaf(2), CommutatorTree::Leaf(1)),
            CommutatorTree::Leaf(3),
        );
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(text, "[[2,1],3]");
        assert_eq!(serde_json::from_str::<CommutatorTree>(&text).unwrap(), t);
        assert_eq!(t.to_string(), "[[x2,x1],x3]");
    }
}
