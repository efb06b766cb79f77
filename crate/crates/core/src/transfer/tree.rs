use std::fmt;

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::linfty::signs::koszul_sign;
use crate::linfty::Carrier;

/// The operations a decorated tree is evaluated with.
pub trait TreeAlgebra {
    type Src: Clone;
    type Tgt: Carrier;

    /// Shifted degree of a leaf argument (drives the Koszul sign).
    fn degree(&self, x: &Self::Src) -> Result<i32>;
    /// Leaf decoration.
    fn leaf(&self, x: &Self::Src) -> Result<Self::Tgt>;
    /// Trivalent vertex.
    fn bracket(&self, a: &Self::Tgt, b: &Self::Tgt) -> Result<Self::Tgt>;
    /// The homotopy `h`; trees use `−h`.
    fn homotopy(&self, a: &Self::Tgt) -> Self::Tgt;
    /// Bivalent vertex (the de Rham differential on interval forms).
    fn bivalent(&self, a: &Self::Tgt) -> Result<Self::Tgt> {
        Ok(a.zero_like())
    }
    /// Check that a value carrying `e` homotopies has filtration `≥ (e,e)`.
    fn filtration_holds(&self, _value: &Self::Tgt, _e: usize) -> bool {
        true
    }
    /// Largest number of homotopies on a non-vanishing tree, if known.
    fn homotopy_bound(&self) -> Option<usize> {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Leaf(usize),
    Bracket(Box<DecoratedTree>, Box<DecoratedTree>),
}

/// A rooted planar binary tree whose leaves carry argument indices.
///
/// Every interior edge carries `−h`. An edge may additionally carry a
/// bivalent vertex, decorated `−h∘d`, directly above its source. The root
/// decoration is chosen at evaluation time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedTree {
    node: Node,
    bivalent: bool,
}

/// How the root edge is decorated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Root {
    /// No decoration; the caller applies the projection.
    Open,
    /// `−h`, as in the Taylor components of the quasi-isomorphism.
    Homotopy,
}

impl DecoratedTree {
    pub fn leaf(index: usize) -> Self {
        DecoratedTree {
            node: Node::Leaf(index),
            bivalent: false,
        }
    }

    pub fn join(left: DecoratedTree, right: DecoratedTree) -> Self {
        DecoratedTree {
            node: Node::Bracket(Box::new(left), Box::new(right)),
            bivalent: false,
        }
    }

    /// Put a bivalent vertex on the edge leaving this tree's root.
    pub fn with_bivalent(mut self) -> Self {
        self.bivalent = true;
        self
    }

    /// Leaf indices in planar order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match &self.node {
            Node::Leaf(i) => out.push(*i),
            Node::Bracket(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn bivalent_count(&self) -> usize {
        usize::from(self.bivalent)
            + match &self.node {
                Node::Leaf(_) => 0,
                Node::Bracket(l, r) => l.bivalent_count() + r.bivalent_count(),
            }
    }

    /// Number of `−h` decorations when the root is decorated by `root`.
    pub fn homotopies(&self, root: Root) -> usize {
        let own = match (&self.node, root) {
            (Node::Bracket(..), Root::Homotopy) => 1,
            _ => 0,
        } + usize::from(self.bivalent);
        own + match &self.node {
            Node::Leaf(_) => 0,
            Node::Bracket(l, r) => l.homotopies(Root::Homotopy) + r.homotopies(Root::Homotopy),
        }
    }

    /// All binary trees on `leaves`, each unordered split listed once (the
    /// left subtree holds the smallest index), with at most `max_bivalent`
    /// bivalent vertices.
    pub fn enumerate(leaves: &[usize], max_bivalent: usize) -> Vec<DecoratedTree> {
        let mut out = Vec::new();
        for t in Self::enumerate_plain(leaves) {
            out.extend(t.marked(max_bivalent));
        }
        out
    }

    fn enumerate_plain(leaves: &[usize]) -> Vec<DecoratedTree> {
        match leaves {
            [] => Vec::new(),
            [i] => vec![DecoratedTree::leaf(*i)],
            [first, rest @ ..] => {
                let mut out = Vec::new();
                let m = rest.len();
                // subsets of `rest` joining `first` on the left; the right side is non-empty
                for mask in 0..(1u64 << m) - 1 {
                    let mut left = vec![*first];
                    let mut right = Vec::new();
                    for (k, &x) in rest.iter().enumerate() {
                        if mask >> k & 1 == 1 {
                            left.push(x);
                        } else {
                            right.push(x);
                        }
                    }
                    let ls = Self::enumerate_plain(&left);
                    let rs = Self::enumerate_plain(&right);
                    for l in &ls {
                        for r in &rs {
                            out.push(DecoratedTree::join(l.clone(), r.clone()));
                        }
                    }
                }
                out
            }
        }
    }

    /// All ways of marking at most `budget` edges of `self` as bivalent.
    fn marked(&self, budget: usize) -> Vec<DecoratedTree> {
        let inner: Vec<(DecoratedTree, usize)> = match &self.node {
            Node::Leaf(_) => vec![(self.clone(), 0)],
            Node::Bracket(l, r) => {
                let mut v = Vec::new();
                for lt in l.marked(budget) {
                    let used = lt.bivalent_count();
                    for rt in r.marked(budget - used) {
                        let n = used + rt.bivalent_count();
                        v.push((DecoratedTree::join(lt.clone(), rt), n));
                    }
                }
                v
            }
        };
        let mut out = Vec::new();
        for (t, used) in inner {
            if used < budget {
                out.push(t.clone().with_bivalent());
            }
            out.push(t);
        }
        out
    }

    /// Koszul sign of the leaf order relative to the argument order.
    pub fn sign<A: TreeAlgebra>(&self, alg: &A, args: &[A::Src]) -> Result<i64> {
        let order = self.leaves();
        let degrees = args.iter().map(|a| alg.degree(a)).collect::<Result<Vec<_>>>()?;
        Ok(koszul_sign(&degrees, &order))
    }

    /// Signed value of the tree on `args`, with filtration and finiteness
    /// checks on the result.
    pub fn evaluate<A: TreeAlgebra>(&self, alg: &A, args: &[A::Src], root: Root) -> Result<A::Tgt> {
        let sign = self.sign(alg, args)?;
        let value = self.value(alg, args, root)?;
        let e = self.homotopies(root);
        if !alg.filtration_holds(&value, e) {
            return Err(Error::invariant(format!(
                "tree {self} with {e} homotopies leaves the filtration level ({e},{e}): {value}"
            )));
        }
        if alg.homotopy_bound().is_some_and(|b| e > b) && !value.is_zero() {
            return Err(Error::invariant(format!(
                "tree {self} with {e} homotopies should vanish, got {value}"
            )));
        }
        Ok(value.scale(&Rational::from_integer(sign.into())))
    }

    fn value<A: TreeAlgebra>(&self, alg: &A, args: &[A::Src], root: Root) -> Result<A::Tgt> {
        let base = match &self.node {
            Node::Leaf(i) => alg.leaf(&args[*i])?,
            Node::Bracket(l, r) => {
                let lv = l.value(alg, args, Root::Homotopy)?;
                let rv = r.value(alg, args, Root::Homotopy)?;
                let b = alg.bracket(&lv, &rv)?;
                match root {
                    Root::Open => b,
                    Root::Homotopy => minus_h(alg, &b),
                }
            }
        };
        if self.bivalent {
            Ok(minus_h(alg, &alg.bivalent(&base)?))
        } else {
            Ok(base)
        }
    }
}

fn minus_h<A: TreeAlgebra>(alg: &A, a: &A::Tgt) -> A::Tgt {
    alg.homotopy(a).scale(&Rational::from_integer((-1).into()))
}

impl fmt::Display for DecoratedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Leaf(i) => write!(f, "{}", i + 1)?,
            Node::Bracket(l, r) => write!(f, "({l} {r})")?,
        }
        if self.bivalent {
            write!(f, "'")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double_factorial(n: usize) -> usize {
        (1..=n).rev().step_by(2).product()
    }

    #[test]
    fn tree_counts() {
        for k in 1..=5 {
            let idx: Vec<usize> = (0..k).collect();
            let plain = DecoratedTree::enumerate(&idx, 0);
            let expect = if k == 1 { 1 } else { double_factorial(2 * k - 3) };
            assert_eq!(plain.len(), expect, "k = {k}");
            // one extra tree per edge (2k − 1 edges)
            assert_eq!(DecoratedTree::enumerate(&idx, 1).len(), expect * 2 * k);
            for t in &plain {
                let mut l = t.leaves();
                assert_eq!(l[0], 0);
                l.sort();
                assert_eq!(l, idx);
            }
        }
    }

    #[test]
    fn homotopy_counts() {
        let t = DecoratedTree::join(
            DecoratedTree::leaf(0),
            DecoratedTree::join(DecoratedTree::leaf(1), DecoratedTree::leaf(2)),
        );
        assert_eq!(t.homotopies(Root::Open), 1);
        assert_eq!(t.homotopies(Root::Homotopy), 2);
        assert_eq!(t.clone().with_bivalent().homotopies(Root::Homotopy), 3);
        assert_eq!(t.to_string(), "(1 (2 3))");
    }
}
