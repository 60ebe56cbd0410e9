//! Aggregative quadratization: one auxiliary variable splits a common
//! part away from a whole group of terms at once, decreasing all their
//! degrees simultaneously.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::literal::{LitSet, LiteralForm};
use crate::pbf::{Pbf, VarSet};
use crate::quad::{Method, Quadratization};
use crate::rational::Rational;
use crate::termwise::{
    finish_pieces, push_chain_positive, push_ishikawa_positive, push_kzfd_negative, Pieces,
};
use crate::var::{FreshVars, Literal, VarId};

/// Sign of a group of same-sign terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupSign {
    Positive,
    Negative,
}

/// A fragment `sum_H alpha_H * prod_{j in H u C} x_j` (or its negation):
/// several terms sharing the common variable set `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermGroup {
    common: VarSet,
    members: Vec<(Rational, VarSet)>,
    sign: GroupSign,
}

impl TermGroup {
    /// Requires every weight positive and every member disjoint from the
    /// common part.
    pub fn new(common: VarSet, members: Vec<(Rational, VarSet)>, sign: GroupSign) -> Result<Self> {
        if members.iter().any(|(alpha, _)| !alpha.is_positive()) {
            return Err(Error::NonPositiveCoefficient);
        }
        if members.iter().any(|(_, h)| !h.is_disjoint(&common)) {
            return Err(Error::OverlappingSets);
        }
        Ok(TermGroup {
            common,
            members,
            sign,
        })
    }

    pub fn common(&self) -> &VarSet {
        &self.common
    }

    pub fn members(&self) -> &[(Rational, VarSet)] {
        &self.members
    }

    pub fn sign(&self) -> GroupSign {
        self.sign
    }

    /// The group as a canonical polynomial over `n_vars` variables.
    pub fn to_pbf(&self, n_vars: usize) -> Result<Pbf> {
        let sign = match self.sign {
            GroupSign::Positive => Rational::from_integer(1.into()),
            GroupSign::Negative => Rational::from_integer((-1).into()),
        };
        Pbf::from_terms(
            n_vars,
            self.members
                .iter()
                .map(|(alpha, h)| (h.union(&self.common), alpha * &sign)),
        )
    }
}

/// One-auxiliary split of a positive group:
/// `sum_H alpha_H prod_{H u C} x = min_w (sum alpha) !w prod_C x
/// + sum_H alpha_H w prod_H x`, with `w = prod_C x` always optimal.
pub fn split_common_positive(group: &TermGroup, fresh: &mut FreshVars) -> Result<LiteralForm> {
    if group.sign != GroupSign::Positive {
        return Err(Error::NonPositiveCoefficient);
    }
    let w = fresh.fresh();
    let mut form = LiteralForm::new(fresh.universe());
    let common = LitSet::positive(&group.common);
    let members: Vec<(Rational, LitSet)> = group
        .members
        .iter()
        .map(|(alpha, h)| (alpha.clone(), LitSet::positive(h)))
        .collect();
    emit_positive_split(&common, &members, w, &mut form);
    Ok(form)
}

/// One-auxiliary split of a negative group:
/// `-sum_H alpha_H prod_{H u C} x = min_w sum_H alpha_H w (1 - prod_C x
/// - prod_H x)`; every product keeps a nonpositive sign except the bare
/// `+w` part.
pub fn split_common_negative(group: &TermGroup, fresh: &mut FreshVars) -> Result<LiteralForm> {
    if group.sign != GroupSign::Negative {
        return Err(Error::NonPositiveCoefficient);
    }
    let w = fresh.fresh();
    let mut form = LiteralForm::new(fresh.universe());
    let common = LitSet::positive(&group.common);
    let members: Vec<(Rational, LitSet)> = group
        .members
        .iter()
        .map(|(alpha, h)| (alpha.clone(), LitSet::positive(h)))
        .collect();
    emit_negative_split(&common, &members, w, &mut form);
    Ok(form)
}

fn emit_positive_split(
    common: &LitSet,
    members: &[(Rational, LitSet)],
    w: VarId,
    out: &mut LiteralForm,
) {
    let total: Rational = members.iter().map(|(a, _)| a.clone()).sum();
    let w_pos = Literal::positive(w);
    let w_neg = Literal::negated(w);
    out.push(total, common.with(w_neg).expect("fresh variable"));
    for (alpha, h) in members {
        out.push(alpha.clone(), h.with(w_pos).expect("fresh variable"));
    }
}

fn emit_negative_split(
    common: &LitSet,
    members: &[(Rational, LitSet)],
    w: VarId,
    out: &mut LiteralForm,
) {
    let total: Rational = members.iter().map(|(a, _)| a.clone()).sum();
    let w_pos = Literal::positive(w);
    out.push(total.clone(), LitSet::from_literals([w_pos]).unwrap());
    out.push(-total, common.with(w_pos).expect("fresh variable"));
    for (alpha, h) in members {
        out.push(-alpha, h.with(w_pos).expect("fresh variable"));
    }
}

/// A literal pair shared by at least two same-sign terms of degree >= 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonPart {
    pub pair: (Literal, Literal),
    pub sign: GroupSign,
    /// Indices into the inspected term list.
    pub members: Vec<usize>,
}

/// The literal pair contained in the most same-sign terms of degree >= 3,
/// provided that count is at least 2; ties break lexicographically by
/// pair, then positive sign first.
pub fn select_common_part(form: &LiteralForm) -> Option<CommonPart> {
    let mut groups: std::collections::BTreeMap<(Literal, Literal, u8), Vec<usize>> =
        std::collections::BTreeMap::new();
    for (idx, (coef, lits)) in form.terms().iter().enumerate() {
        if lits.len() < 3 {
            continue;
        }
        let rank = u8::from(coef.is_negative());
        let ordered: Vec<Literal> = lits.iter().collect();
        for i in 0..ordered.len() {
            for j in i + 1..ordered.len() {
                groups
                    .entry((ordered[i], ordered[j], rank))
                    .or_default()
                    .push(idx);
            }
        }
    }
    let mut best: Option<CommonPart> = None;
    for ((a, b, rank), members) in groups {
        if members.len() < 2 {
            continue;
        }
        if best
            .as_ref()
            .is_none_or(|c| members.len() > c.members.len())
        {
            let sign = if rank == 0 {
                GroupSign::Positive
            } else {
                GroupSign::Negative
            };
            best = Some(CommonPart {
                pair: (a, b),
                sign,
                members,
            });
        }
    }
    best
}

/// Rule used on leftover positive terms once no pair is shared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositiveFallback {
    Chain,
    Ishikawa,
}

/// Aggregative quadratization driver.
///
/// Works on a literal-form copy of `f` so split residues such as
/// `!w prod_C x` stay single terms. Repeatedly selects the most shared
/// same-sign literal pair and splits it off with one auxiliary; when no
/// pair is shared by two terms, finishes negative terms with the
/// one-auxiliary negative rule and positive ones with the chosen
/// fallback. Each aggregation of `t` terms lowers the degree-excess
/// potential by `t - 1`, so the loop terminates.
pub fn aggregate_pipeline(
    f: &Pbf,
    fallback: PositiveFallback,
    fresh: &mut FreshVars,
) -> Quadratization {
    aggregate_pipeline_traced(f, fallback, fresh).0
}

pub(crate) fn aggregate_pipeline_traced(
    f: &Pbf,
    fallback: PositiveFallback,
    fresh: &mut FreshVars,
) -> (Quadratization, Vec<usize>) {
    let base = fresh.universe();
    assert!(
        f.n_vars() <= base,
        "allocator must sit above the input universe"
    );
    let mut working = {
        let mut w = LiteralForm::from_pbf(f);
        w.extend_universe(base);
        w.normalized()
    };
    let mut potentials = vec![potential(&working)];
    while let Some(part) = select_common_part(&working) {
        let common = LitSet::from_literals([part.pair.0, part.pair.1])
            .expect("pair literals come from one term");
        let members: Vec<(Rational, LitSet)> = part
            .members
            .iter()
            .map(|&idx| {
                let (coef, lits) = &working.terms()[idx];
                (coef.abs(), lits.without(part.pair.0).without(part.pair.1))
            })
            .collect();
        let w = fresh.fresh();
        let mut next = LiteralForm::new(fresh.universe());
        for (idx, (coef, lits)) in working.terms().iter().enumerate() {
            if !part.members.contains(&idx) {
                next.push(coef.clone(), lits.clone());
            }
        }
        match part.sign {
            GroupSign::Positive => emit_positive_split(&common, &members, w, &mut next),
            GroupSign::Negative => emit_negative_split(&common, &members, w, &mut next),
        }
        working = next.normalized();
        let p = potential(&working);
        assert!(
            p < *potentials.last().unwrap(),
            "aggregation step must shrink the degree excess"
        );
        potentials.push(p);
    }
    // Fallback phase: everything left is either quadratic or a lone
    // high-degree term.
    let mut pieces = Pieces::new();
    for (coef, lits) in working.terms() {
        if lits.len() <= 2 {
            pieces.push((coef.clone(), lits.clone()));
        } else if coef.is_negative() {
            push_kzfd_negative(&-coef, lits, fresh, &mut pieces);
        } else {
            push_fallback_positive(coef, lits, fallback, fresh, &mut pieces);
        }
    }
    let q = finish_pieces(base, pieces, fresh, Method::Aggregate);
    (q, potentials)
}

/// Positive leftovers may carry negated auxiliaries from earlier splits;
/// peel them (`!l * K = K - l * K`) before handing the all-positive core
/// to the fallback rule.
fn push_fallback_positive(
    alpha: &Rational,
    lits: &LitSet,
    fallback: PositiveFallback,
    fresh: &mut FreshVars,
    pieces: &mut Pieces,
) {
    if lits.len() <= 2 {
        pieces.push((alpha.clone(), lits.clone()));
        return;
    }
    if let Some(neg) = lits.first_negated() {
        let rest = lits.without(neg);
        push_fallback_positive(alpha, &rest, fallback, fresh, pieces);
        let flipped = rest
            .with(neg.complement())
            .expect("variable was present negated");
        push_kzfd_negative(alpha, &flipped, fresh, pieces);
        return;
    }
    match fallback {
        PositiveFallback::Chain => push_chain_positive(alpha, lits, fresh, pieces),
        PositiveFallback::Ishikawa => push_ishikawa_positive(alpha, lits, fresh, pieces),
    }
}

/// Degree excess `sum of max(|term| - 2, 0)` of a literal working set.
fn potential(form: &LiteralForm) -> usize {
    form.terms()
        .iter()
        .map(|(_, lits)| lits.len().saturating_sub(2))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbf::Assignment;
    use crate::rational::rat;
    use crate::termwise::{quadratize_termwise, PositiveMethod};
    use crate::verify::{is_quadratization, metrics};

    fn s(ids: &[u32]) -> VarSet {
        VarSet::from_indices(ids.iter().copied())
    }

    fn group(common: &[u32], members: &[(i64, &[u32])], sign: GroupSign) -> TermGroup {
        TermGroup::new(
            s(common),
            members.iter().map(|(a, h)| (rat(*a), s(h))).collect(),
            sign,
        )
        .unwrap()
    }

    /// min over w by direct evaluation of the literal form.
    fn min_over_last_aux(form: &LiteralForm, x: &[bool]) -> Rational {
        let mut candidates = Vec::new();
        for w in [false, true] {
            let mut bits = x.to_vec();
            bits.push(w);
            candidates.push(form.eval(&Assignment::new(bits)));
        }
        candidates.into_iter().min().unwrap()
    }

    #[test]
    fn positive_split_examples() {
        // C = {1}, members {2}, {3}: min_w 2 !w x1 + w x2 + w x3
        let g = group(&[1], &[(1, &[2]), (1, &[3])], GroupSign::Positive);
        let mut fresh = FreshVars::new(3);
        let form = split_common_positive(&g, &mut fresh).unwrap();
        assert_eq!(min_over_last_aux(&form, &[true, true, false]), rat(1));
        assert_eq!(min_over_last_aux(&form, &[false, true, true]), rat(0));

        // the split is a quadratization of the fragment
        let f = g.to_pbf(3).unwrap();
        assert!(is_quadratization(&f, &form.canonicalize()).unwrap());
    }

    #[test]
    fn positive_split_pair_common() {
        let g = group(&[1, 2], &[(1, &[3]), (1, &[4])], GroupSign::Positive);
        let mut fresh = FreshVars::new(4);
        let form = split_common_positive(&g, &mut fresh).unwrap();
        let f = g.to_pbf(4).unwrap();
        assert!(is_quadratization(&f, &form.canonicalize()).unwrap());
    }

    #[test]
    fn negative_split_examples() {
        // C = {1}, members {2}, {3}: min_w 2w - 2wx1 - wx2 - wx3
        let g = group(&[1], &[(1, &[2]), (1, &[3])], GroupSign::Negative);
        let mut fresh = FreshVars::new(3);
        let form = split_common_negative(&g, &mut fresh).unwrap();
        assert_eq!(min_over_last_aux(&form, &[true, true, true]), rat(-2));
        assert_eq!(min_over_last_aux(&form, &[true, true, false]), rat(-1));
        assert_eq!(min_over_last_aux(&form, &[false, true, true]), rat(0));

        let f = g.to_pbf(3).unwrap();
        assert!(is_quadratization(&f, &form.canonicalize()).unwrap());
    }

    #[test]
    fn optimal_witness_is_common_product() {
        // value at w = prod_C x equals the minimum over w, for every x
        let g = group(&[1, 2], &[(3, &[3]), (2, &[4, 5])], GroupSign::Positive);
        let mut fresh = FreshVars::new(5);
        let form = split_common_positive(&g, &mut fresh).unwrap();
        for idx in 0..32 {
            let x = Assignment::from_lex_index(idx, 5);
            let witness = x.get(VarId::new(1)) && x.get(VarId::new(2));
            let mut bits = x.bits().to_vec();
            bits.push(witness);
            let at_witness = form.eval(&Assignment::new(bits));
            assert_eq!(at_witness, min_over_last_aux(&form, x.bits()));
        }
    }

    #[test]
    fn group_constructor_validates() {
        assert_eq!(
            TermGroup::new(s(&[1]), vec![(rat(0), s(&[2]))], GroupSign::Positive).unwrap_err(),
            Error::NonPositiveCoefficient
        );
        assert_eq!(
            TermGroup::new(s(&[1]), vec![(rat(1), s(&[1, 2]))], GroupSign::Positive).unwrap_err(),
            Error::OverlappingSets
        );
    }

    #[test]
    fn select_common_part_examples() {
        // x1x2x3 + x1x2x4: pair {1, 2} positive, both terms
        let f = Pbf::from_terms(4, [(s(&[1, 2, 3]), rat(1)), (s(&[1, 2, 4]), rat(1))]).unwrap();
        let part = select_common_part(&LiteralForm::from_pbf(&f)).unwrap();
        assert_eq!(
            part.pair,
            (
                Literal::positive(VarId::new(1)),
                Literal::positive(VarId::new(2))
            )
        );
        assert_eq!(part.sign, GroupSign::Positive);
        assert_eq!(part.members, vec![0, 1]);

        // opposite signs never group
        let f = Pbf::from_terms(4, [(s(&[1, 2, 3]), rat(1)), (s(&[1, 2, 4]), rat(-1))]).unwrap();
        assert!(select_common_part(&LiteralForm::from_pbf(&f)).is_none());

        // a quadratic function has nothing to aggregate
        let f = Pbf::from_terms(4, [(s(&[1, 2]), rat(1)), (s(&[3, 4]), rat(1))]).unwrap();
        assert!(select_common_part(&LiteralForm::from_pbf(&f)).is_none());
    }

    #[test]
    fn pipeline_positive_pair_matches_worked_example() {
        // x1x2x3 + x1x2x4 -> 2x1x2 + wx3 + wx4 + 4s - 2sw - 2sx1 - 2sx2
        let f = Pbf::from_terms(4, [(s(&[1, 2, 3]), rat(1)), (s(&[1, 2, 4]), rat(1))]).unwrap();
        let mut fresh = FreshVars::new(4);
        let q = aggregate_pipeline(&f, PositiveFallback::Ishikawa, &mut fresh);
        let (w, sv) = (5u32, 6u32);
        let expect = Pbf::from_terms(
            6,
            [
                (s(&[1, 2]), rat(2)),
                (s(&[3, w]), rat(1)),
                (s(&[4, w]), rat(1)),
                (s(&[sv]), rat(4)),
                (s(&[w, sv]), rat(-2)),
                (s(&[1, sv]), rat(-2)),
                (s(&[2, sv]), rat(-2)),
            ],
        )
        .unwrap();
        assert_eq!(q.g(), &expect);
        let m = metrics(&q);
        assert_eq!((m.aux_count, m.positive_quadratic_terms), (2, 3));
        assert!(is_quadratization(&f, q.g()).unwrap());

        // strictly better than the chain on positive quadratic terms
        let mut fresh = FreshVars::new(4);
        let chain = quadratize_termwise(&f, PositiveMethod::Chain, &mut fresh);
        let cm = metrics(&chain);
        assert_eq!((cm.aux_count, cm.positive_quadratic_terms), (2, 4));
    }

    #[test]
    fn pipeline_negative_pair_matches_worked_example() {
        let f = Pbf::from_terms(4, [(s(&[1, 2, 3]), rat(-1)), (s(&[1, 2, 4]), rat(-1))]).unwrap();
        let mut fresh = FreshVars::new(4);
        let (q, potentials) = aggregate_pipeline_traced(&f, PositiveFallback::Ishikawa, &mut fresh);
        assert_eq!(q.aux().len(), 2);
        assert!(is_quadratization(&f, q.g()).unwrap());
        assert!(potentials.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn pipeline_potential_strictly_decreases() {
        let f = Pbf::from_terms(
            6,
            [
                (s(&[1, 2, 3, 4]), rat(2)),
                (s(&[1, 2, 5]), rat(1)),
                (s(&[1, 2, 6]), rat(3)),
                (s(&[3, 4, 5, 6]), rat(-1)),
                (s(&[3, 4, 6]), rat(-2)),
                (s(&[5]), rat(-1)),
            ],
        )
        .unwrap();
        let mut fresh = FreshVars::new(6);
        let (q, potentials) = aggregate_pipeline_traced(&f, PositiveFallback::Ishikawa, &mut fresh);
        assert!(potentials.windows(2).all(|w| w[1] < w[0]));
        assert!(is_quadratization(&f, q.g()).unwrap());
    }

    #[test]
    fn aggregation_beats_per_term_chain_on_matched_groups() {
        // 1 + residual aux <= sum of per-term chain aux for t >= 2, |C| = 2
        let cases: Vec<Vec<&[u32]>> = vec![
            vec![&[3], &[4]],
            vec![&[3], &[4], &[5]],
            vec![&[3, 4], &[5, 6]],
            vec![&[3, 4, 5], &[4, 5], &[6]],
        ];
        for members in cases {
            let g = TermGroup::new(
                s(&[1, 2]),
                members.iter().map(|h| (rat(1), s(h))).collect(),
                GroupSign::Positive,
            )
            .unwrap();
            let f = g.to_pbf(6).unwrap();
            let mut fresh = FreshVars::new(6);
            let agg = aggregate_pipeline(&f, PositiveFallback::Chain, &mut fresh);
            let per_term: usize = f.terms().map(|(set, _)| set.len() - 2).sum();
            assert!(
                agg.aux().len() <= per_term,
                "aggregate used {} aux, per-term chain {}",
                agg.aux().len(),
                per_term
            );
            assert!(is_quadratization(&f, agg.g()).unwrap());
        }
    }

    #[test]
    fn pipeline_leaves_quadratics_untouched() {
        let f = Pbf::from_terms(3, [(s(&[1, 2]), rat(-5)), (s(&[3]), rat(2))]).unwrap();
        let mut fresh = FreshVars::new(3);
        let q = aggregate_pipeline(&f, PositiveFallback::Ishikawa, &mut fresh);
        assert_eq!(q.aux().len(), 0);
        assert_eq!(q.g(), &f);
    }
}
