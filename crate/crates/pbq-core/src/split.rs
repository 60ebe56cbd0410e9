//! Multiple splits of a single term through systems of indicator
//! functions.
//!
//! A split system is a family of literal conjunctions `phi_i` over `p`
//! local variables whose sum has minimum exactly 1, while dropping any one
//! `phi_i` lets the rest reach 0. Such a system splits a product
//! `prod_{j in S} x_j` into `q` lower-degree fragments
//! `phi_i(y) * prod_{j in P_i} x_j` over parts covering `S`, with the
//! minimum over `y` reproducing the product pointwise.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::literal::{LitSet, LiteralForm};
use crate::pbf::{Assignment, Pbf, VarSet};
use crate::quad::{Method, Quadratization};
use crate::rational::Rational;
use crate::termwise::{finish_pieces, push_kzfd_negative, Pieces};
use crate::var::{FreshVars, Literal, VarId};

/// A family of literal conjunctions over a local universe `y_1..y_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSystem {
    aux_count: usize,
    phis: Vec<LitSet>,
}

impl SplitSystem {
    /// Panics if a conjunction mentions a variable above `aux_count`.
    pub fn new(aux_count: usize, phis: Vec<LitSet>) -> Self {
        for phi in &phis {
            assert!(
                phi.max_var().is_none_or(|v| v.index() < aux_count),
                "conjunction mentions a variable outside y_1..y_{aux_count}"
            );
        }
        SplitSystem { aux_count, phis }
    }

    /// `{y, !y}`: the 2-split.
    pub fn two_split() -> Self {
        let y = VarId::new(1);
        SplitSystem::new(
            1,
            vec![
                LitSet::from_literals([Literal::positive(y)]).unwrap(),
                LitSet::from_literals([Literal::negated(y)]).unwrap(),
            ],
        )
    }

    /// `{y1, y2, !y1 !y2}`: the 3-split, which is not a tree system.
    pub fn three_split() -> Self {
        let y1 = VarId::new(1);
        let y2 = VarId::new(2);
        SplitSystem::new(
            2,
            vec![
                LitSet::from_literals([Literal::positive(y1)]).unwrap(),
                LitSet::from_literals([Literal::positive(y2)]).unwrap(),
                LitSet::from_literals([Literal::negated(y1), Literal::negated(y2)]).unwrap(),
            ],
        )
    }

    /// System defined by a binary tree: level `k` of the tree reads `y_{k+1}`,
    /// a left branch contributes the positive literal and a right branch the
    /// negated one, and each leaf becomes the conjunction of its path.
    pub fn from_binary_tree(tree: &BinaryTree) -> Self {
        let mut phis = Vec::new();
        let mut path = Vec::new();
        collect_leaves(tree, 0, &mut path, &mut phis);
        SplitSystem::new(tree.depth(), phis)
    }

    pub fn aux_count(&self) -> usize {
        self.aux_count
    }

    pub fn phis(&self) -> &[LitSet] {
        &self.phis
    }
}

/// A full binary tree; every internal node has exactly two children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn depth(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }
}

fn collect_leaves(tree: &BinaryTree, depth: usize, path: &mut Vec<Literal>, out: &mut Vec<LitSet>) {
    match tree {
        BinaryTree::Leaf => {
            out.push(LitSet::from_literals(path.iter().copied()).expect("one literal per level"))
        }
        BinaryTree::Node(l, r) => {
            let y = VarId::new(depth as u32 + 1);
            path.push(Literal::positive(y));
            collect_leaves(l, depth + 1, path, out);
            path.pop();
            path.push(Literal::negated(y));
            collect_leaves(r, depth + 1, path, out);
            path.pop();
        }
    }
}

/// Checks the split condition by enumerating the local cube: the sum of
/// the conjunctions has minimum exactly 1, and for each `k` some `y`
/// zeroes every conjunction except possibly the `k`-th. Only the maximal
/// proper subsets need checking; zeroing a superset zeroes every subset.
pub fn validate_split_system(sys: &SplitSystem) -> bool {
    let p = sys.aux_count;
    let q = sys.phis.len();
    if q == 0 {
        return false;
    }
    let mut min_sum: Option<usize> = None;
    let mut drop_one_reaches_zero = vec![false; q];
    for idx in 0..(1usize << p) {
        let y = Assignment::from_lex_index(idx, p);
        let hits: Vec<bool> = sys.phis.iter().map(|phi| phi.eval(&y)).collect();
        let sum = hits.iter().filter(|h| **h).count();
        min_sum = Some(min_sum.map_or(sum, |m| m.min(sum)));
        for k in 0..q {
            let rest = sum - usize::from(hits[k]);
            if rest == 0 {
                drop_one_reaches_zero[k] = true;
            }
        }
    }
    min_sum == Some(1) && drop_one_reaches_zero.into_iter().all(|b| b)
}

/// Splits `alpha * prod_{j in S} x_j` into literal fragments
/// `alpha * phi_i(y) * prod_{j in P_i} x_j` over fresh `y` variables.
///
/// The minimum over `y` equals the source monomial pointwise. The cover
/// must have one part per conjunction, each a subset of `S`, jointly
/// covering `S`.
pub fn apply_split(
    alpha: &Rational,
    s: &VarSet,
    sys: &SplitSystem,
    cover: &[VarSet],
    fresh: &mut FreshVars,
) -> Result<LiteralForm> {
    if !alpha.is_positive() {
        return Err(Error::NonPositiveCoefficient);
    }
    if !validate_split_system(sys) {
        return Err(Error::InvalidSplitSystem);
    }
    if cover.len() != sys.phis.len()
        || cover.iter().any(|p| !s.is_superset(p))
        || cover.iter().fold(VarSet::empty(), |acc, p| acc.union(p)) != *s
    {
        return Err(Error::InvalidCover);
    }
    let ys: Vec<VarId> = (0..sys.aux_count).map(|_| fresh.fresh()).collect();
    let mut form = LiteralForm::new(fresh.universe());
    for (phi, part) in sys.phis.iter().zip(cover) {
        let lits = globalize(phi, &ys)
            .union(&LitSet::positive(part))
            .expect("parts are disjoint from fresh variables");
        form.push(alpha.clone(), lits);
    }
    Ok(form)
}

/// Maps a conjunction over local `y_1..y_p` onto allocated variables.
fn globalize(phi: &LitSet, ys: &[VarId]) -> LitSet {
    LitSet::from_literals(phi.iter().map(|l| {
        let v = ys[l.var().index()];
        if l.is_negated() {
            Literal::negated(v)
        } else {
            Literal::positive(v)
        }
    }))
    .expect("renaming preserves distinctness")
}

/// Which split system the whole-function driver uses on positive terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitArity {
    Two,
    Three,
}

/// Whole-function quadratization where every positive term of degree >= 3
/// is split recursively and every negative one goes through the
/// one-auxiliary negative rule.
pub fn quadratize_split(f: &Pbf, arity: SplitArity, fresh: &mut FreshVars) -> Quadratization {
    let base = fresh.universe();
    assert!(
        f.n_vars() <= base,
        "allocator must sit above the input universe"
    );
    let mut pieces = Pieces::new();
    for (set, coef) in f.terms() {
        let lits = LitSet::positive(set);
        if set.len() <= 2 {
            pieces.push((coef.clone(), lits));
        } else if coef.is_negative() {
            push_kzfd_negative(&-coef, &lits, fresh, &mut pieces);
        } else {
            push_split_positive(coef, &lits, arity, fresh, &mut pieces);
        }
    }
    let tag = match arity {
        SplitArity::Two => Method::Split2,
        SplitArity::Three => Method::Split3,
    };
    finish_pieces(base, pieces, fresh, tag)
}

/// Recursive split of a positive literal product.
///
/// Negated literals are peeled first (`!l * K = K - l * K`, with the
/// negative part finished by the one-auxiliary rule); an all-positive
/// product of degree >= 3 is split into balanced parts, except that a
/// cubic under a 2-split takes the singleton-first cover so every
/// fragment strictly shrinks.
pub(crate) fn push_split_positive(
    alpha: &Rational,
    lits: &LitSet,
    arity: SplitArity,
    fresh: &mut FreshVars,
    pieces: &mut Pieces,
) {
    debug_assert!(alpha.is_positive());
    let d = lits.len();
    if d <= 2 {
        pieces.push((alpha.clone(), lits.clone()));
        return;
    }
    if let Some(neg) = lits.first_negated() {
        let rest = lits.without(neg);
        push_split_positive(alpha, &rest, arity, fresh, pieces);
        let flipped = rest
            .with(neg.complement())
            .expect("variable was present negated");
        push_kzfd_negative(alpha, &flipped, fresh, pieces);
        return;
    }
    let ordered: Vec<Literal> = lits.iter().collect();
    let (sys, parts): (SplitSystem, Vec<&[Literal]>) = match arity {
        SplitArity::Two => {
            let first = if d == 3 { 1 } else { d.div_ceil(2) };
            (
                SplitSystem::two_split(),
                vec![&ordered[..first], &ordered[first..]],
            )
        }
        SplitArity::Three => {
            let a = d.div_ceil(3);
            let b = (d - a).div_ceil(2);
            (
                SplitSystem::three_split(),
                vec![&ordered[..a], &ordered[a..a + b], &ordered[a + b..]],
            )
        }
    };
    let ys: Vec<VarId> = (0..sys.aux_count()).map(|_| fresh.fresh()).collect();
    for (phi, part) in sys.phis().iter().zip(parts) {
        let fragment = globalize(phi, &ys)
            .union(&LitSet::from_literals(part.iter().copied()).unwrap())
            .expect("fresh variables cannot clash");
        push_split_positive(alpha, &fragment, arity, fresh, pieces);
    }
}
