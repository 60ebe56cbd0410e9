//! Seeded random generators shared by the property and acceptance suites.

// Each test target compiles this module separately and uses a subset.
#![allow(dead_code)]

use pbq_core::aggregate::{GroupSign, TermGroup};
use pbq_core::split::BinaryTree;
use pbq_core::{rat, LitSet, Literal, LiteralForm, Pbf, Rational, VarId, VarSet};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn nonzero_coef(rng: &mut impl Rng) -> Rational {
    let mut c = 0i64;
    while c == 0 {
        c = rng.random_range(-10..=10);
    }
    rat(c)
}

fn random_subset(rng: &mut impl Rng, n: usize, size: usize) -> VarSet {
    let mut ids: Vec<u32> = (1..=n as u32).collect();
    ids.shuffle(rng);
    VarSet::from_indices(ids.into_iter().take(size))
}

/// A random canonical polynomial with up to `max_terms` terms of degree
/// up to `max_degree` over 2..=`max_n` variables, integer coefficients in
/// [-10, 10].
pub fn random_pbf(rng: &mut impl Rng, max_n: usize, max_degree: usize, max_terms: usize) -> Pbf {
    let n = rng.random_range(2..=max_n);
    let t = rng.random_range(1..=max_terms);
    let terms = (0..t).map(|_| {
        let d = rng.random_range(0..=max_degree.min(n));
        (random_subset(rng, n, d), nonzero_coef(rng))
    });
    Pbf::from_terms(n, terms.collect::<Vec<_>>()).expect("indices within universe")
}

/// Like [`random_pbf`] but every term of degree >= 3 gets a negative
/// coefficient.
pub fn random_pbf_negative_high(
    rng: &mut impl Rng,
    max_n: usize,
    max_degree: usize,
    max_terms: usize,
) -> Pbf {
    let n = rng.random_range(2..=max_n);
    let t = rng.random_range(1..=max_terms);
    let terms: Vec<(VarSet, Rational)> = (0..t)
        .map(|_| {
            let d = rng.random_range(0..=max_degree.min(n));
            let set = random_subset(rng, n, d);
            let coef = if d >= 3 {
                rat(-rng.random_range(1..=10))
            } else {
                nonzero_coef(rng)
            };
            (set, coef)
        })
        .collect();
    Pbf::from_terms(n, terms).expect("indices within universe")
}

/// A random unary negaform: negative weights on polarity-pure literal
/// products, plus an optional constant of either sign.
pub fn random_negaform(rng: &mut impl Rng, max_n: usize, max_terms: usize) -> LiteralForm {
    let n = rng.random_range(2..=max_n);
    let t = rng.random_range(1..=max_terms);
    let mut form = LiteralForm::new(n);
    for _ in 0..t {
        let d = rng.random_range(1..=n.min(5));
        let vars = random_subset(rng, n, d);
        let negated = rng.random_bool(0.5);
        let lits = if negated {
            LitSet::negative(&vars)
        } else {
            LitSet::positive(&vars)
        };
        form.push(rat(-rng.random_range(1..=10)), lits);
    }
    if rng.random_bool(0.5) {
        form.push(nonzero_coef(rng), LitSet::empty());
    }
    form
}

/// A random quadratic with nonpositive quadratic coefficients.
pub fn random_submodular_quadratic(rng: &mut impl Rng, max_n: usize) -> Pbf {
    let n = rng.random_range(2..=max_n);
    let mut terms: Vec<(VarSet, Rational)> = Vec::new();
    if rng.random_bool(0.5) {
        terms.push((VarSet::empty(), nonzero_coef(rng)));
    }
    for i in 1..=n as u32 {
        if rng.random_bool(0.6) {
            terms.push((VarSet::from_indices([i]), nonzero_coef(rng)));
        }
        for j in i + 1..=n as u32 {
            if rng.random_bool(0.4) {
                terms.push((VarSet::from_indices([i, j]), rat(-rng.random_range(1..=10))));
            }
        }
    }
    Pbf::from_terms(n, terms).expect("indices within universe")
}

/// A random common-part group over `n` variables: |C| in 1..=3, up to
/// `max_members` member sets disjoint from C (possibly empty), positive
/// integer weights.
pub fn random_term_group(
    rng: &mut impl Rng,
    n: usize,
    max_members: usize,
    sign: GroupSign,
) -> TermGroup {
    let c_size = rng.random_range(1..=3.min(n));
    let common = random_subset(rng, n, c_size);
    let remaining: Vec<u32> = (1..=n as u32)
        .filter(|&v| !common.contains(VarId::new(v)))
        .collect();
    let count = rng.random_range(1..=max_members);
    let members = (0..count)
        .map(|_| {
            let h_size = rng.random_range(0..=remaining.len().min(3));
            let mut pool = remaining.clone();
            pool.shuffle(rng);
            let h = VarSet::from_indices(pool.into_iter().take(h_size));
            (rat(rng.random_range(1..=10)), h)
        })
        .collect();
    TermGroup::new(common, members, sign).expect("members disjoint from common part")
}

/// A random full binary tree with depth at most `max_depth` and at least
/// one internal node.
pub fn random_binary_tree(rng: &mut impl Rng, max_depth: usize) -> BinaryTree {
    fn gen(rng: &mut impl Rng, depth_left: usize, must_branch: bool) -> BinaryTree {
        if depth_left == 0 || (!must_branch && rng.random_bool(0.4)) {
            BinaryTree::Leaf
        } else {
            BinaryTree::Node(
                Box::new(gen(rng, depth_left - 1, false)),
                Box::new(gen(rng, depth_left - 1, false)),
            )
        }
    }
    gen(rng, max_depth, true)
}

/// A random polynomial over literal products (mixed polarities allowed).
pub fn random_literal_form(
    rng: &mut impl Rng,
    max_n: usize,
    max_degree: usize,
    max_terms: usize,
) -> LiteralForm {
    let n = rng.random_range(2..=max_n);
    let t = rng.random_range(1..=max_terms);
    let mut form = LiteralForm::new(n);
    for _ in 0..t {
        let d = rng.random_range(0..=max_degree.min(n));
        let vars = random_subset(rng, n, d);
        let lits = LitSet::from_literals(vars.iter().map(|v| {
            if rng.random_bool(0.5) {
                Literal::negated(v)
            } else {
                Literal::positive(v)
            }
        }))
        .expect("one literal per variable");
        form.push(nonzero_coef(rng), lits);
    }
    form
}
