//! Polynomials over products of literals.
//!
//! Negated literals `!x = 1 - x` make posiform-style manipulation natural;
//! `canonicalize` expands everything back into the unique multilinear form.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::pbf::{Assignment, Pbf, VarSet};
use crate::rational::Rational;
use crate::var::{Literal, VarId};

/// A product of literals, at most one per variable.
///
/// Ordered by degree, then lexicographically by (variable, polarity).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LitSet(Vec<Literal>);

impl LitSet {
    pub fn empty() -> Self {
        LitSet(Vec::new())
    }

    /// Builds a literal product, rejecting a variable mentioned with both
    /// polarities (such a product is identically zero and may not be
    /// stored). Duplicates of the same literal collapse.
    pub fn from_literals(lits: impl IntoIterator<Item = Literal>) -> Result<Self> {
        let mut v: Vec<Literal> = lits.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        for pair in v.windows(2) {
            if pair[0].var() == pair[1].var() {
                return Err(Error::ConflictingPolarity(pair[0].var()));
            }
        }
        Ok(LitSet(v))
    }

    /// All-positive product over a variable set.
    pub fn positive(vars: &VarSet) -> Self {
        LitSet(vars.iter().map(Literal::positive).collect())
    }

    /// All-negated product over a variable set.
    pub fn negative(vars: &VarSet) -> Self {
        LitSet(vars.iter().map(Literal::negated).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Literal> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.0.contains(&lit)
    }

    pub fn first_negated(&self) -> Option<Literal> {
        self.0.iter().copied().find(|l| l.is_negated())
    }

    pub fn is_polarity_pure(&self) -> bool {
        self.0.iter().all(|l| l.is_negated()) || self.0.iter().all(|l| !l.is_negated())
    }

    pub fn without(&self, lit: Literal) -> Self {
        LitSet(self.0.iter().copied().filter(|&l| l != lit).collect())
    }

    /// Product with one more literal; errors if the opposite polarity of
    /// the same variable is already present.
    pub fn with(&self, lit: Literal) -> Result<Self> {
        Self::from_literals(self.0.iter().copied().chain([lit]))
    }

    pub fn union(&self, other: &LitSet) -> Result<Self> {
        Self::from_literals(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn vars(&self) -> VarSet {
        VarSet::from_vars(self.0.iter().map(|l| l.var()))
    }

    pub fn max_var(&self) -> Option<VarId> {
        self.0.iter().map(|l| l.var()).max()
    }

    /// True iff every literal is satisfied by `x`.
    pub fn eval(&self, x: &Assignment) -> bool {
        self.0.iter().all(|l| l.eval(x.get(l.var())))
    }
}

impl Ord for LitSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for LitSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A polynomial over literal products: an ordered list of
/// `(coefficient, literal product)` terms with nonzero coefficients.
///
/// Unlike [`Pbf`] this representation is not canonical — the same function
/// has many literal forms — so terms are kept as a list and only merged on
/// request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralForm {
    n_vars: usize,
    terms: Vec<(Rational, LitSet)>,
}

impl LiteralForm {
    pub fn new(n_vars: usize) -> Self {
        LiteralForm {
            n_vars,
            terms: Vec::new(),
        }
    }

    /// Positive-literal view of a canonical polynomial.
    pub fn from_pbf(f: &Pbf) -> Self {
        let mut out = LiteralForm::new(f.n_vars());
        for (set, coef) in f.terms() {
            out.push(coef.clone(), LitSet::positive(set));
        }
        out
    }

    /// Appends a term; zero coefficients are dropped. Panics on an
    /// out-of-universe variable.
    pub fn push(&mut self, coef: Rational, lits: LitSet) {
        if coef.is_zero() {
            return;
        }
        assert!(
            lits.max_var().is_none_or(|v| v.index() < self.n_vars),
            "literal outside the declared universe"
        );
        self.terms.push((coef, lits));
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Grows the universe (for forms that will receive auxiliary literals).
    pub fn extend_universe(&mut self, n_vars: usize) {
        assert!(n_vars >= self.n_vars);
        self.n_vars = n_vars;
    }

    pub fn terms(&self) -> &[(Rational, LitSet)] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest literal-product size.
    pub fn literal_degree(&self) -> usize {
        self.terms.iter().map(|(_, l)| l.len()).max().unwrap_or(0)
    }

    /// Sorts terms and merges duplicate literal products, dropping terms
    /// that cancel. The result is deterministic regardless of insertion
    /// order.
    pub fn normalized(&self) -> LiteralForm {
        let mut merged: std::collections::BTreeMap<LitSet, Rational> =
            std::collections::BTreeMap::new();
        for (coef, lits) in &self.terms {
            let entry = merged.entry(lits.clone()).or_insert_with(Rational::zero);
            *entry += coef;
        }
        let mut out = LiteralForm::new(self.n_vars);
        for (lits, coef) in merged {
            if !coef.is_zero() {
                out.terms.push((coef, lits));
            }
        }
        out
    }

    /// Direct evaluation without expansion.
    pub fn eval(&self, x: &Assignment) -> Rational {
        assert_eq!(
            x.len(),
            self.n_vars,
            "assignment does not cover the universe"
        );
        let mut total = Rational::zero();
        for (coef, lits) in &self.terms {
            if lits.eval(x) {
                total += coef;
            }
        }
        total
    }

    /// Multilinear expansion: substitutes `!x = 1 - x` in every product and
    /// collects the canonical term map. Pointwise equal to the literal form
    /// on every assignment.
    pub fn canonicalize(&self) -> Pbf {
        let mut out = Pbf::zero(self.n_vars);
        for (coef, lits) in &self.terms {
            expand_into(&mut out, coef, lits);
        }
        out
    }
}

/// Adds `coef * product(lits)` to `out` in multilinear form. Each negated
/// literal doubles the expansion: `!x * K = K - x*K`.
fn expand_into(out: &mut Pbf, coef: &Rational, lits: &LitSet) {
    let positive: Vec<VarId> = lits
        .iter()
        .filter(|l| !l.is_negated())
        .map(|l| l.var())
        .collect();
    let negated: Vec<VarId> = lits
        .iter()
        .filter(|l| l.is_negated())
        .map(|l| l.var())
        .collect();
    let base = VarSet::from_vars(positive);
    // Inclusion-exclusion over subsets of the negated variables.
    for mask in 0..(1usize << negated.len()) {
        let chosen = negated
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v);
        let set = base.union(&VarSet::from_vars(chosen));
        let sign = if (mask.count_ones() % 2) == 0 { 1 } else { -1 };
        out.add_term(set, coef * Rational::from_integer(sign.into()));
    }
}

impl fmt::Display for LiteralForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (coef, lits)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{coef}*{lits}")?;
        }
        Ok(())
    }
}
