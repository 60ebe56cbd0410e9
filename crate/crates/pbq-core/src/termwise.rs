//! Term-wise quadratization rules.
//!
//! Each rule rewrites one monomial (or, for the Rosenberg reduction, a
//! whole function) into a quadratic form over fresh auxiliary variables
//! whose minimum over the auxiliaries reproduces the source pointwise.
//!
//! The rules are stated for unit coefficients; scaling the whole right-hand
//! side by `alpha > 0` preserves the identity because a positive factor
//! commutes with `min`. They are also literal-polarity agnostic: every
//! derivation only uses the fact that a literal is a binary value, so the
//! internal helpers accept arbitrary literal products. Terms of degree at
//! most 2 are never touched.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::literal::{LitSet, LiteralForm};
use crate::pbf::{Pbf, VarSet};
use crate::quad::{Method, Quadratization};
use crate::rational::{rat, Rational};
use crate::var::{FreshVars, Literal, VarId};

/// Positive-term rule selected by the generic driver; negative terms
/// always go through the one-auxiliary negative-monomial rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositiveMethod {
    Chain,
    Ishikawa,
    Rkfj,
}

pub(crate) type Pieces = Vec<(Rational, LitSet)>;

/// Canonicalizes collected quadratic literal pieces into a finished
/// quadratization. `base` is the universe size before the rule allocated
/// anything, so the result only claims its own auxiliaries.
pub(crate) fn finish_pieces(
    base: usize,
    pieces: Pieces,
    fresh: &FreshVars,
    method: Method,
) -> Quadratization {
    let universe = fresh.universe();
    let mut form = LiteralForm::new(universe);
    for (coef, lits) in pieces {
        form.push(coef, lits);
    }
    let g = form.canonicalize();
    let aux: Vec<VarId> = (base as u32 + 1..=universe as u32)
        .map(VarId::new)
        .collect();
    Quadratization::new(g, base, aux, method)
}

/// `-alpha * prod(lits) = min_w alpha * w * ((d-1) - sum(lits))`, one
/// fresh auxiliary, no positive quadratic coefficients when the literals
/// are all positive. Products of degree at most 2 pass through unchanged.
pub(crate) fn push_kzfd_negative(
    alpha: &Rational,
    lits: &LitSet,
    fresh: &mut FreshVars,
    pieces: &mut Pieces,
) {
    debug_assert!(alpha.is_positive());
    if lits.len() <= 2 {
        pieces.push((-alpha, lits.clone()));
        return;
    }
    let w = Literal::positive(fresh.fresh());
    let d = lits.len() as i64;
    pieces.push((alpha * rat(d - 1), LitSet::from_literals([w]).unwrap()));
    for lit in lits.iter() {
        pieces.push((-alpha, LitSet::from_literals([w, lit]).unwrap()));
    }
}

/// Chain rule for a positive product of degree `d >= 3`:
/// `prod(lits) = l_{d-1} l_d + min_w sum_i w_i (d - i - !l_i - sum_{j>i} l_j)`
/// over `d - 2` auxiliaries, yielding exactly `d - 1` positive quadratic
/// terms. The chain runs over the literals in increasing variable order,
/// leaving the two largest for the explicit product.
pub(crate) fn push_chain_positive(
    alpha: &Rational,
    lits: &LitSet,
    fresh: &mut FreshVars,
    pieces: &mut Pieces,
) {
    debug_assert!(alpha.is_positive());
    let ordered: Vec<Literal> = lits.iter().collect();
    let d = ordered.len();
    debug_assert!(d >= 3);
    pieces.push((
        alpha.clone(),
        LitSet::from_literals([ordered[d - 2], ordered[d - 1]]).unwrap(),
    ));
    for i in 0..d - 2 {
        let w = Literal::positive(fresh.fresh());
        // w_i * ((d - i) - !l_i - sum_{j>i} l_j), with i 1-based
        let multiplier = (d - i - 1) as i64;
        pieces.push((alpha * rat(multiplier), LitSet::from_literals([w]).unwrap()));
        pieces.push((
            -alpha,
            LitSet::from_literals([w, ordered[i].complement()]).unwrap(),
        ));
        for &lit in &ordered[i + 1..] {
            pieces.push((-alpha, LitSet::from_literals([w, lit]).unwrap()));
        }
    }
}

/// Compact rule for a positive product of degree `d >= 3` using
/// `k = floor((d-1)/2)` auxiliaries:
/// `prod = S2 + min_w B - 2 A S1 (+ w_k (S1 - d + 1) when d is odd)`
/// with `S1 = sum(lits)`, `S2 = sum of pairwise products`, `A = sum(w)`,
/// `B = sum (4j - 1) w_j`. Introduces `C(d, 2)` positive quadratic terms.
pub(crate) fn push_ishikawa_positive(
    alpha: &Rational,
    lits: &LitSet,
    fresh: &mut FreshVars,
    pieces: &mut Pieces,
) {
    debug_assert!(alpha.is_positive());
    let ordered: Vec<Literal> = lits.iter().collect();
    let d = ordered.len();
    debug_assert!(d >= 3);
    let k = (d - 1) / 2;
    let odd = d == 2 * k + 1;
    let aux: Vec<Literal> = (0..k).map(|_| Literal::positive(fresh.fresh())).collect();
    for i in 0..d {
        for j in i + 1..d {
            pieces.push((
                alpha.clone(),
                LitSet::from_literals([ordered[i], ordered[j]]).unwrap(),
            ));
        }
    }
    for (j, &w) in aux.iter().enumerate() {
        let b = 4 * (j as i64 + 1) - 1;
        pieces.push((alpha * rat(b), LitSet::from_literals([w]).unwrap()));
        for &lit in &ordered {
            pieces.push((alpha * rat(-2), LitSet::from_literals([w, lit]).unwrap()));
        }
    }
    if odd {
        let wk = aux[k - 1];
        for &lit in &ordered {
            pieces.push((alpha.clone(), LitSet::from_literals([wk, lit]).unwrap()));
        }
        pieces.push((
            alpha * rat(1 - d as i64),
            LitSet::from_literals([wk]).unwrap(),
        ));
    }
}

/// Type-I rule for a negative product of mixed-polarity literals:
/// `-alpha * prod(lits) = min_{u,v} alpha * (-uv + u * sum(!l : l negated)
/// + v * sum(!l : l positive))`, always two fresh auxiliaries.
pub(crate) fn push_rkfj_negative(
    alpha: &Rational,
    lits: &LitSet,
    fresh: &mut FreshVars,
    pieces: &mut Pieces,
) {
    debug_assert!(alpha.is_positive());
    let u = Literal::positive(fresh.fresh());
    let v = Literal::positive(fresh.fresh());
    pieces.push((-alpha, LitSet::from_literals([u, v]).unwrap()));
    for lit in lits.iter() {
        let partner = if lit.is_negated() { u } else { v };
        pieces.push((
            alpha.clone(),
            LitSet::from_literals([partner, lit.complement()]).unwrap(),
        ));
    }
}

/// Complemented-auxiliary rule for a negative product:
/// `-alpha * prod(lits) = alpha * (-1 + sum(!l) + min_w w (1 - sum(!l)))`.
/// For an all-negated product this keeps every quadratic coefficient
/// nonpositive. Degree at most 2 passes through unchanged.
pub(crate) fn push_negated_kzfd(
    alpha: &Rational,
    lits: &LitSet,
    fresh: &mut FreshVars,
    pieces: &mut Pieces,
) {
    debug_assert!(alpha.is_positive());
    if lits.len() <= 2 {
        pieces.push((-alpha, lits.clone()));
        return;
    }
    let w = Literal::positive(fresh.fresh());
    pieces.push((-alpha, LitSet::empty()));
    pieces.push((alpha.clone(), LitSet::from_literals([w]).unwrap()));
    for lit in lits.iter() {
        pieces.push((
            alpha.clone(),
            LitSet::from_literals([lit.complement()]).unwrap(),
        ));
        pieces.push((
            -alpha,
            LitSet::from_literals([w, lit.complement()]).unwrap(),
        ));
    }
}

fn require_positive(alpha: &Rational) -> Result<()> {
    if alpha.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveCoefficient)
    }
}

/// Quadratization of the negative monomial `-alpha * prod_{j in S} x_j`
/// with one auxiliary. Products of degree at most 2 are returned
/// unchanged with no auxiliary.
pub fn quadratize_negative_term(
    alpha: &Rational,
    s: &VarSet,
    fresh: &mut FreshVars,
) -> Result<Quadratization> {
    require_positive(alpha)?;
    let base = fresh.universe();
    let mut pieces = Pieces::new();
    push_kzfd_negative(alpha, &LitSet::positive(s), fresh, &mut pieces);
    Ok(finish_pieces(base, pieces, fresh, Method::Kzfd))
}

/// Chain quadratization of the positive monomial `alpha * prod_{j in S} x_j`
/// of degree at least 3; `d - 2` auxiliaries and `d - 1` positive
/// quadratic terms.
pub fn quadratize_positive_term_chain(
    alpha: &Rational,
    s: &VarSet,
    fresh: &mut FreshVars,
) -> Result<Quadratization> {
    require_positive(alpha)?;
    if s.len() < 3 {
        return Err(Error::DegreeTooSmall(s.len()));
    }
    let base = fresh.universe();
    let mut pieces = Pieces::new();
    push_chain_positive(alpha, &LitSet::positive(s), fresh, &mut pieces);
    Ok(finish_pieces(base, pieces, fresh, Method::Chain))
}

/// Quadratization of the all-negated negative monomial
/// `-alpha * prod_{j in S} !x_j` with one complemented auxiliary; the
/// result is submodular. Degree at most 2 is returned canonicalized with
/// no auxiliary.
pub fn quadratize_negated_negative_term(
    alpha: &Rational,
    s: &VarSet,
    fresh: &mut FreshVars,
) -> Result<Quadratization> {
    require_positive(alpha)?;
    let base = fresh.universe();
    let mut pieces = Pieces::new();
    push_negated_kzfd(alpha, &LitSet::negative(s), fresh, &mut pieces);
    Ok(finish_pieces(base, pieces, fresh, Method::NegatedKzfd))
}

/// Type-I quadratization of the mixed negative monomial
/// `-alpha * prod_{j in S0} !x_j * prod_{j in S1} x_j` with two
/// auxiliaries.
pub fn quadratize_mixed_term_rkfj(
    alpha: &Rational,
    s0: &VarSet,
    s1: &VarSet,
    fresh: &mut FreshVars,
) -> Result<Quadratization> {
    require_positive(alpha)?;
    if !s0.is_disjoint(s1) {
        return Err(Error::OverlappingSets);
    }
    let lits = LitSet::negative(s0)
        .union(&LitSet::positive(s1))
        .expect("disjoint sets");
    let base = fresh.universe();
    let mut pieces = Pieces::new();
    push_rkfj_negative(alpha, &lits, fresh, &mut pieces);
    Ok(finish_pieces(base, pieces, fresh, Method::Rkfj))
}

/// Compact quadratization of the positive monomial
/// `alpha * prod_{j in S} x_j` of degree at least 3 with
/// `floor((d-1)/2)` auxiliaries and `C(d, 2)` positive quadratic terms.
pub fn quadratize_positive_term_ishikawa(
    alpha: &Rational,
    s: &VarSet,
    fresh: &mut FreshVars,
) -> Result<Quadratization> {
    require_positive(alpha)?;
    if s.len() < 3 {
        return Err(Error::DegreeTooSmall(s.len()));
    }
    let base = fresh.universe();
    let mut pieces = Pieces::new();
    push_ishikawa_positive(alpha, &LitSet::positive(s), fresh, &mut pieces);
    Ok(finish_pieces(base, pieces, fresh, Method::Ishikawa))
}

/// Rosenberg penalty `p(x, y, w) = xy - 2xw - 2yw + 3w`: zero exactly
/// when `w = xy` and at least 1 otherwise.
fn add_penalty(g: &mut Pbf, i: VarId, j: VarId, w: VarId, m: &Rational) {
    g.add_term(VarSet::pair(i, j), m.clone());
    g.add_term(VarSet::pair(i, w), m * rat(-2));
    g.add_term(VarSet::pair(j, w), m * rat(-2));
    g.add_term(VarSet::singleton(w), m * rat(3));
}

/// The pair contained in the most terms of degree >= 3, ties broken
/// lexicographically; `None` once the function is quadratic.
fn rosenberg_pair(g: &Pbf) -> Option<(VarId, VarId)> {
    let mut counts: std::collections::BTreeMap<(VarId, VarId), usize> =
        std::collections::BTreeMap::new();
    for (set, _) in g.terms() {
        if set.len() >= 3 {
            for pair in set.pairs() {
                *counts.entry(pair).or_insert(0) += 1;
            }
        }
    }
    let mut best: Option<((VarId, VarId), usize)> = None;
    for (pair, count) in counts {
        match best {
            Some((_, c)) if c >= count => {}
            _ => best = Some((pair, count)),
        }
    }
    best.map(|(pair, _)| pair)
}

/// Whole-function reduction by repeated pair substitution with a big-M
/// penalty.
///
/// Writes `f = x_i x_j A + B`, substitutes a fresh `w` for the pair in
/// every term containing it, and adds `M * p(x_i, x_j, w)` with
/// `M = 1 + sum of |a_S| over S containing the pair`, a bound strictly
/// above `max |A|`. The substituted pair is the one contained in the most
/// terms of degree >= 3. The minimum over the auxiliaries equals `f`
/// pointwise, not just at the optimum.
pub fn rosenberg_reduce(f: &Pbf, fresh: &mut FreshVars) -> Quadratization {
    let base = fresh.universe();
    assert!(
        f.n_vars() <= base,
        "allocator must sit above the input universe"
    );
    let mut g = f.extended(base);
    while let Some((i, j)) = rosenberg_pair(&g) {
        let mut m = rat(1);
        for (set, coef) in g.terms() {
            if set.contains(i) && set.contains(j) {
                m += coef.abs();
            }
        }
        let w = fresh.fresh();
        g = g
            .substitute_pair(i, j, w)
            .expect("fresh variable is unused");
        add_penalty(&mut g, i, j, w, &m);
    }
    let aux: Vec<VarId> = (base as u32 + 1..=fresh.universe() as u32)
        .map(VarId::new)
        .collect();
    Quadratization::new(g, base, aux, Method::Rosenberg)
}

/// Generic per-term driver: negative terms of degree >= 3 through the
/// one-auxiliary negative rule, positive ones through the chosen rule,
/// terms of degree <= 2 untouched.
pub fn quadratize_termwise(
    f: &Pbf,
    method: PositiveMethod,
    fresh: &mut FreshVars,
) -> Quadratization {
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
            match method {
                PositiveMethod::Chain => push_chain_positive(coef, &lits, fresh, &mut pieces),
                PositiveMethod::Ishikawa => push_ishikawa_positive(coef, &lits, fresh, &mut pieces),
                PositiveMethod::Rkfj => push_rkfj_positive(coef, &lits, fresh, &mut pieces),
            }
        }
    }
    let tag = match method {
        PositiveMethod::Chain => Method::Chain,
        PositiveMethod::Ishikawa => Method::Ishikawa,
        PositiveMethod::Rkfj => Method::Rkfj,
    };
    finish_pieces(base, pieces, fresh, tag)
}

/// Positive products under the type-I rule: the chain decomposition
/// `prod = l_{d-1} l_d - sum_i !l_i * prod_{j>i} l_j` with each negative
/// mixed monomial quadratized by two auxiliaries.
fn push_rkfj_positive(alpha: &Rational, lits: &LitSet, fresh: &mut FreshVars, pieces: &mut Pieces) {
    let ordered: Vec<Literal> = lits.iter().collect();
    let d = ordered.len();
    debug_assert!(d >= 3);
    pieces.push((
        alpha.clone(),
        LitSet::from_literals([ordered[d - 2], ordered[d - 1]]).unwrap(),
    ));
    for i in 0..d - 2 {
        let mixed = LitSet::from_literals(
            std::iter::once(ordered[i].complement()).chain(ordered[i + 1..].iter().copied()),
        )
        .unwrap();
        push_rkfj_negative(alpha, &mixed, fresh, pieces);
    }
}

/// Negative-monomials-only driver; errors if any positive term of degree
/// >= 3 is present.
pub fn quadratize_kzfd(f: &Pbf, fresh: &mut FreshVars) -> Result<Quadratization> {
    let base = fresh.universe();
    assert!(
        f.n_vars() <= base,
        "allocator must sit above the input universe"
    );
    if f.terms()
        .any(|(set, coef)| set.len() >= 3 && coef.is_positive())
    {
        return Err(Error::PositiveHigherDegreeTerm);
    }
    let mut pieces = Pieces::new();
    for (set, coef) in f.terms() {
        let lits = LitSet::positive(set);
        if set.len() <= 2 {
            pieces.push((coef.clone(), lits));
        } else {
            push_kzfd_negative(&-coef, &lits, fresh, &mut pieces);
        }
    }
    Ok(finish_pieces(base, pieces, fresh, Method::Kzfd))
}

/// Per-term submodular quadratization of a unary negaform: all-positive
/// products through the negative-monomial rule, all-negated products
/// through the complemented-auxiliary rule.
pub fn quadratize_negaform(form: &LiteralForm, fresh: &mut FreshVars) -> Result<Quadratization> {
    if !crate::verify::is_unary_negaform(form) {
        return Err(Error::NotNegaform);
    }
    let base = fresh.universe();
    assert!(
        form.n_vars() <= base,
        "allocator must sit above the input universe"
    );
    let mut pieces = Pieces::new();
    for (coef, lits) in form.terms() {
        if lits.len() <= 2 {
            pieces.push((coef.clone(), lits.clone()));
        } else {
            let alpha = -coef;
            if lits.iter().all(|l| l.is_negated()) {
                push_negated_kzfd(&alpha, lits, fresh, &mut pieces);
            } else {
                push_kzfd_negative(&alpha, lits, fresh, &mut pieces);
            }
        }
    }
    Ok(finish_pieces(base, pieces, fresh, Method::Negaform))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbf::Assignment;
    use crate::verify::{is_quadratization, metrics};

    fn s(ids: &[u32]) -> VarSet {
        VarSet::from_indices(ids.iter().copied())
    }

    fn source_negative(n: usize, set: &[u32], alpha: i64) -> Pbf {
        Pbf::term(n, s(set), rat(-alpha))
    }

    fn source_positive(n: usize, set: &[u32], alpha: i64) -> Pbf {
        Pbf::term(n, s(set), rat(alpha))
    }

    #[test]
    fn kzfd_cubic_term_map_and_minima() {
        let mut fresh = FreshVars::new(3);
        let q = quadratize_negative_term(&rat(1), &s(&[1, 2, 3]), &mut fresh).unwrap();
        // g = 2w - wx1 - wx2 - wx3
        let expect = Pbf::from_terms(
            4,
            [
                (s(&[4]), rat(2)),
                (s(&[1, 4]), rat(-1)),
                (s(&[2, 4]), rat(-1)),
                (s(&[3, 4]), rat(-1)),
            ],
        )
        .unwrap();
        assert_eq!(q.g(), &expect);
        assert_eq!(q.aux().len(), 1);

        // min over w at x = (1,1,1) is -1, at (1,1,0) is 0
        let at = |x: &[bool], w: bool| {
            let mut bits = x.to_vec();
            bits.push(w);
            q.g().evaluate(&Assignment::new(bits))
        };
        let min_w = |x: &[bool]| at(x, false).min(at(x, true));
        assert_eq!(min_w(&[true, true, true]), rat(-1));
        assert_eq!(min_w(&[true, true, false]), rat(0));

        let f = source_negative(3, &[1, 2, 3], 1);
        assert!(is_quadratization(&f, q.g()).unwrap());
    }

    #[test]
    fn kzfd_scaled_quartic_minimum() {
        let mut fresh = FreshVars::new(4);
        let q = quadratize_negative_term(&rat(2), &s(&[1, 2, 3, 4]), &mut fresh).unwrap();
        // at x = all ones, min over w is 2 * (3 - 4) = -2
        let mut bits = vec![true; 4];
        bits.push(true);
        assert_eq!(q.g().evaluate(&Assignment::new(bits)), rat(-2));
        let f = source_negative(4, &[1, 2, 3, 4], 2);
        assert!(is_quadratization(&f, q.g()).unwrap());
    }

    #[test]
    fn kzfd_low_degree_passes_through() {
        let mut fresh = FreshVars::new(2);
        let q = quadratize_negative_term(&rat(3), &s(&[1, 2]), &mut fresh).unwrap();
        assert_eq!(q.aux().len(), 0);
        assert_eq!(q.g(), &Pbf::term(2, s(&[1, 2]), rat(-3)));
    }

    #[test]
    fn kzfd_rejects_nonpositive_alpha() {
        let mut fresh = FreshVars::new(3);
        assert_eq!(
            quadratize_negative_term(&rat(0), &s(&[1, 2, 3]), &mut fresh).unwrap_err(),
            Error::NonPositiveCoefficient
        );
    }

    #[test]
    fn chain_cubic_term_map() {
        let mut fresh = FreshVars::new(3);
        let q = quadratize_positive_term_chain(&rat(1), &s(&[1, 2, 3]), &mut fresh).unwrap();
        // g = x2x3 + w1 + w1x1 - w1x2 - w1x3
        let expect = Pbf::from_terms(
            4,
            [
                (s(&[2, 3]), rat(1)),
                (s(&[4]), rat(1)),
                (s(&[1, 4]), rat(1)),
                (s(&[2, 4]), rat(-1)),
                (s(&[3, 4]), rat(-1)),
            ],
        )
        .unwrap();
        assert_eq!(q.g(), &expect);

        let f = source_positive(3, &[1, 2, 3], 1);
        assert!(is_quadratization(&f, q.g()).unwrap());
    }

    #[test]
    fn chain_counts_match_claims() {
        for d in 3..=8u32 {
            let vars: Vec<u32> = (1..=d).collect();
            let mut fresh = FreshVars::new(d as usize);
            let q = quadratize_positive_term_chain(&rat(1), &s(&vars), &mut fresh).unwrap();
            let m = metrics(&q);
            assert_eq!(m.aux_count, d as usize - 2);
            assert_eq!(m.positive_quadratic_terms, d as usize - 1);
        }
    }

    #[test]
    fn chain_rejects_low_degree() {
        let mut fresh = FreshVars::new(2);
        assert_eq!(
            quadratize_positive_term_chain(&rat(1), &s(&[1, 2]), &mut fresh).unwrap_err(),
            Error::DegreeTooSmall(2)
        );
    }

    #[test]
    fn negated_kzfd_pointwise_values() {
        let mut fresh = FreshVars::new(3);
        let q = quadratize_negated_negative_term(&rat(1), &s(&[1, 2, 3]), &mut fresh).unwrap();
        assert_eq!(q.aux().len(), 1);
        let at = |x: &[bool], w: bool| {
            let mut bits = x.to_vec();
            bits.push(w);
            q.g().evaluate(&Assignment::new(bits))
        };
        let min_w = |x: &[bool]| at(x, false).min(at(x, true));
        // -prod !x_j: -1 at the all-zero point, 0 elsewhere
        assert_eq!(min_w(&[false, false, false]), rat(-1));
        assert_eq!(min_w(&[true, false, false]), rat(0));
        assert_eq!(min_w(&[true, true, true]), rat(0));

        // oracle against the canonical source
        let mut form = LiteralForm::new(3);
        form.push(rat(-1), LitSet::negative(&s(&[1, 2, 3])));
        let f = form.canonicalize();
        assert!(is_quadratization(&f, q.g()).unwrap());
        // all quadratic coefficients nonpositive
        assert!(crate::verify::quadratic_submodularity(q.g()).unwrap());
    }

    #[test]
    fn negated_kzfd_counts() {
        for d in 3..=8u32 {
            let vars: Vec<u32> = (1..=d).collect();
            let mut fresh = FreshVars::new(d as usize);
            let q = quadratize_negated_negative_term(&rat(1), &s(&vars), &mut fresh).unwrap();
            let m = metrics(&q);
            assert_eq!((m.aux_count, m.positive_quadratic_terms), (1, 0));
        }
    }

    #[test]
    fn rkfj_mixed_term_enumeration() {
        // -!x1 x2 over (u, v)
        let mut fresh = FreshVars::new(2);
        let q = quadratize_mixed_term_rkfj(&rat(1), &s(&[1]), &s(&[2]), &mut fresh).unwrap();
        assert_eq!(q.aux().len(), 2);
        let min_uv = |x: &[bool]| {
            let mut best: Option<Rational> = None;
            for u in [false, true] {
                for v in [false, true] {
                    let mut bits = x.to_vec();
                    bits.extend([u, v]);
                    let val = q.g().evaluate(&Assignment::new(bits));
                    best = Some(match best {
                        None => val,
                        Some(b) => b.min(val),
                    });
                }
            }
            best.unwrap()
        };
        assert_eq!(min_uv(&[false, true]), rat(-1));
        assert_eq!(min_uv(&[true, true]), rat(0));
        assert_eq!(min_uv(&[false, false]), rat(0));

        // two auxiliaries; +u x_j per negated variable is the only
        // positive quadratic source here
        let m = metrics(&q);
        assert_eq!((m.aux_count, m.positive_quadratic_terms), (2, 1));

        let mut form = LiteralForm::new(2);
        form.push(
            rat(-1),
            LitSet::from_literals([
                Literal::negated(VarId::new(1)),
                Literal::positive(VarId::new(2)),
            ])
            .unwrap(),
        );
        assert!(is_quadratization(&form.canonicalize(), q.g()).unwrap());
    }

    #[test]
    fn rkfj_empty_negated_side_matches_kzfd_case() {
        let mut fresh = FreshVars::new(3);
        let q = quadratize_mixed_term_rkfj(&rat(1), &VarSet::empty(), &s(&[1, 2, 3]), &mut fresh)
            .unwrap();
        let mut bits = vec![true; 3];
        let mut best: Option<Rational> = None;
        for u in [false, true] {
            for v in [false, true] {
                bits.truncate(3);
                bits.extend([u, v]);
                let val = q.g().evaluate(&Assignment::new(bits.clone()));
                best = Some(match best.clone() {
                    None => val,
                    Some(b) => b.min(val),
                });
            }
        }
        assert_eq!(best.unwrap(), rat(-1));
        let f = source_negative(3, &[1, 2, 3], 1);
        assert!(is_quadratization(&f, q.g()).unwrap());
    }

    #[test]
    fn rkfj_rejects_overlap() {
        let mut fresh = FreshVars::new(3);
        assert_eq!(
            quadratize_mixed_term_rkfj(&rat(1), &s(&[1, 2]), &s(&[2, 3]), &mut fresh).unwrap_err(),
            Error::OverlappingSets
        );
    }

    #[test]
    fn ishikawa_small_degrees() {
        // d = 3: g = S2 + w1 (1 - S1)
        let mut fresh = FreshVars::new(3);
        let q = quadratize_positive_term_ishikawa(&rat(1), &s(&[1, 2, 3]), &mut fresh).unwrap();
        assert_eq!(q.aux().len(), 1);
        let expect = Pbf::from_terms(
            4,
            [
                (s(&[1, 2]), rat(1)),
                (s(&[1, 3]), rat(1)),
                (s(&[2, 3]), rat(1)),
                (s(&[4]), rat(1)),
                (s(&[1, 4]), rat(-1)),
                (s(&[2, 4]), rat(-1)),
                (s(&[3, 4]), rat(-1)),
            ],
        )
        .unwrap();
        assert_eq!(q.g(), &expect);
        let f = source_positive(3, &[1, 2, 3], 1);
        assert!(is_quadratization(&f, q.g()).unwrap());

        // d = 4: g = S2 + w1 (3 - 2 S1); at all ones 6 + (3 - 8) = 1
        let mut fresh = FreshVars::new(4);
        let q = quadratize_positive_term_ishikawa(&rat(1), &s(&[1, 2, 3, 4]), &mut fresh).unwrap();
        assert_eq!(q.aux().len(), 1);
        let mut bits = vec![true; 4];
        bits.push(true);
        assert_eq!(q.g().evaluate(&Assignment::new(bits)), rat(1));
        let f = source_positive(4, &[1, 2, 3, 4], 1);
        assert!(is_quadratization(&f, q.g()).unwrap());
    }

    #[test]
    fn ishikawa_counts_match_claims() {
        for d in 3..=8u32 {
            let vars: Vec<u32> = (1..=d).collect();
            let mut fresh = FreshVars::new(d as usize);
            let q = quadratize_positive_term_ishikawa(&rat(1), &s(&vars), &mut fresh).unwrap();
            let m = metrics(&q);
            assert_eq!(m.aux_count, (d as usize - 1) / 2);
            assert_eq!(
                m.positive_quadratic_terms,
                (d as usize) * (d as usize - 1) / 2
            );
        }
    }

    #[test]
    fn rosenberg_penalty_truth_table() {
        // p = xy - 2xw - 2yw + 3w: zero iff w = xy, else 1 or 3
        let p = Pbf::from_terms(
            3,
            [
                (s(&[1, 2]), rat(1)),
                (s(&[1, 3]), rat(-2)),
                (s(&[2, 3]), rat(-2)),
                (s(&[3]), rat(3)),
            ],
        )
        .unwrap();
        for idx in 0..8 {
            let a = Assignment::from_lex_index(idx, 3);
            let (x, y, w) = (a.bits()[0], a.bits()[1], a.bits()[2]);
            let val = p.evaluate(&a);
            if w == (x && y) {
                assert_eq!(val, rat(0));
            } else {
                assert!(val == rat(1) || val == rat(3), "p = {val}");
                assert!(val >= rat(1));
            }
        }
    }

    #[test]
    fn rosenberg_cubic_example() {
        // f = x1x2x3, pair (1,2), M = 2: g = wx3 + 2(x1x2 - 2x1w - 2x2w + 3w)
        let f = Pbf::term(3, s(&[1, 2, 3]), rat(1));
        let mut fresh = FreshVars::new(3);
        let q = rosenberg_reduce(&f, &mut fresh);
        let expect = Pbf::from_terms(
            4,
            [
                (s(&[3, 4]), rat(1)),
                (s(&[1, 2]), rat(2)),
                (s(&[1, 4]), rat(-4)),
                (s(&[2, 4]), rat(-4)),
                (s(&[4]), rat(6)),
            ],
        )
        .unwrap();
        assert_eq!(q.g(), &expect);
        assert_eq!(q.aux().len(), 1);
        // pointwise identity over all 8 assignments
        assert!(is_quadratization(&f, q.g()).unwrap());
    }

    #[test]
    fn rosenberg_quadratic_is_untouched() {
        let f = Pbf::from_terms(2, [(s(&[1, 2]), rat(5)), (s(&[1]), rat(-1))]).unwrap();
        let mut fresh = FreshVars::new(2);
        let q = rosenberg_reduce(&f, &mut fresh);
        assert_eq!(q.aux().len(), 0);
        assert_eq!(q.g(), &f);
    }

    #[test]
    fn termwise_driver_metrics() {
        // a single negative cubic needs one auxiliary and stays submodular
        let f = Pbf::term(3, s(&[1, 2, 3]), rat(-1));
        for method in [
            PositiveMethod::Chain,
            PositiveMethod::Ishikawa,
            PositiveMethod::Rkfj,
        ] {
            let mut fresh = FreshVars::new(3);
            let q = quadratize_termwise(&f, method, &mut fresh);
            let m = metrics(&q);
            assert_eq!((m.aux_count, m.positive_quadratic_terms), (1, 0));
            assert!(is_quadratization(&f, q.g()).unwrap());
        }

        // two positive cubics under the compact rule; the shared +x1x2
        // contributions merge into one canonical term, so 5 rather than 6
        let f = Pbf::from_terms(4, [(s(&[1, 2, 3]), rat(1)), (s(&[1, 2, 4]), rat(1))]).unwrap();
        let mut fresh = FreshVars::new(4);
        let q = quadratize_termwise(&f, PositiveMethod::Ishikawa, &mut fresh);
        let m = metrics(&q);
        assert_eq!((m.aux_count, m.positive_quadratic_terms), (2, 5));
        assert_eq!(q.g().coefficient(&s(&[1, 2])), rat(2));
        assert!(is_quadratization(&f, q.g()).unwrap());

        // an already quadratic function is returned as-is
        let f = Pbf::from_terms(2, [(s(&[1, 2]), rat(3)), (s(&[]), rat(-1))]).unwrap();
        let mut fresh = FreshVars::new(2);
        let q = quadratize_termwise(&f, PositiveMethod::Chain, &mut fresh);
        assert_eq!(q.aux().len(), 0);
        assert_eq!(q.g(), &f);
    }

    #[test]
    fn termwise_rkfj_driver_oracle() {
        let f = Pbf::from_terms(4, [(s(&[1, 2, 3, 4]), rat(2)), (s(&[2]), rat(-1))]).unwrap();
        let mut fresh = FreshVars::new(4);
        let q = quadratize_termwise(&f, PositiveMethod::Rkfj, &mut fresh);
        // chain decomposition allocates two auxiliaries per chain element
        assert_eq!(q.aux().len(), 4);
        assert!(is_quadratization(&f, q.g()).unwrap());
    }

    #[test]
    fn kzfd_driver_rejects_positive_high_degree() {
        let f = Pbf::term(3, s(&[1, 2, 3]), rat(1));
        let mut fresh = FreshVars::new(3);
        assert_eq!(
            quadratize_kzfd(&f, &mut fresh).unwrap_err(),
            Error::PositiveHigherDegreeTerm
        );

        let f = Pbf::from_terms(3, [(s(&[1, 2, 3]), rat(-2)), (s(&[1, 2]), rat(7))]).unwrap();
        let mut fresh = FreshVars::new(3);
        let q = quadratize_kzfd(&f, &mut fresh).unwrap();
        assert!(is_quadratization(&f, q.g()).unwrap());
    }

    #[test]
    fn negaform_quadratization_is_submodular() {
        // -x1x2x3 - !x2!x3!x4 - x1x4 + 5
        let mut form = LiteralForm::new(4);
        form.push(rat(-1), LitSet::positive(&s(&[1, 2, 3])));
        form.push(rat(-2), LitSet::negative(&s(&[2, 3, 4])));
        form.push(rat(-1), LitSet::positive(&s(&[1, 4])));
        form.push(rat(5), LitSet::empty());
        let mut fresh = FreshVars::new(4);
        let q = quadratize_negaform(&form, &mut fresh).unwrap();
        assert!(crate::verify::quadratic_submodularity(q.g()).unwrap());
        assert!(is_quadratization(&form.canonicalize(), q.g()).unwrap());

        // a mixed-polarity term is rejected
        let mut bad = LiteralForm::new(2);
        bad.push(
            rat(-1),
            LitSet::from_literals([
                Literal::positive(VarId::new(1)),
                Literal::negated(VarId::new(2)),
            ])
            .unwrap(),
        );
        let mut fresh = FreshVars::new(2);
        assert_eq!(
            quadratize_negaform(&bad, &mut fresh).unwrap_err(),
            Error::NotNegaform
        );
    }
}
