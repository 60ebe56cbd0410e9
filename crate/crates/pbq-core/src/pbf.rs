//! Canonical multilinear pseudo-Boolean polynomials.
//!
//! A pseudo-Boolean function is stored as its unique multilinear polynomial:
//! a map from variable-index sets to nonzero rational coefficients. Term
//! keys are ordered by degree first, then lexicographically, so iteration
//! order and everything derived from it (emitted files, reduction order) is
//! deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::var::VarId;

/// A product of distinct variables, the key of one multilinear term.
///
/// Held as a strictly increasing index list; the empty set is the constant
/// term. Ordered by degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet(Vec<VarId>);

impl VarSet {
    pub fn empty() -> Self {
        VarSet(Vec::new())
    }

    pub fn singleton(v: VarId) -> Self {
        VarSet(vec![v])
    }

    pub fn pair(a: VarId, b: VarId) -> Self {
        assert_ne!(a, b, "a pair needs two distinct variables");
        if a < b {
            VarSet(vec![a, b])
        } else {
            VarSet(vec![b, a])
        }
    }

    /// Builds a set from arbitrary indices, sorting and deduplicating.
    pub fn from_vars(vars: impl IntoIterator<Item = VarId>) -> Self {
        let mut v: Vec<VarId> = vars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VarSet(v)
    }

    /// Convenience constructor from raw 1-based indices.
    pub fn from_indices(ids: impl IntoIterator<Item = u32>) -> Self {
        Self::from_vars(ids.into_iter().map(VarId::new))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().copied()
    }

    pub fn max_var(&self) -> Option<VarId> {
        self.0.last().copied()
    }

    /// Set with `v` removed (no-op when absent).
    pub fn without(&self, v: VarId) -> Self {
        VarSet(self.0.iter().copied().filter(|&u| u != v).collect())
    }

    /// Set with `v` inserted.
    pub fn with(&self, v: VarId) -> Self {
        let mut out = self.0.clone();
        match out.binary_search(&v) {
            Ok(_) => {}
            Err(pos) => out.insert(pos, v),
        }
        VarSet(out)
    }

    pub fn union(&self, other: &VarSet) -> Self {
        Self::from_vars(self.iter().chain(other.iter()))
    }

    pub fn is_disjoint(&self, other: &VarSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn is_superset(&self, other: &VarSet) -> bool {
        other.iter().all(|v| self.contains(v))
    }

    /// All 2-element subsets, in increasing order.
    pub fn pairs(&self) -> impl Iterator<Item = (VarId, VarId)> + '_ {
        let items = &self.0;
        (0..items.len()).flat_map(move |i| (i + 1..items.len()).map(move |j| (items[i], items[j])))
    }
}

impl Ord for VarSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for VarSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A 0/1 value for every variable of a universe; bit `i` is `x_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Assignment(vec![false; n])
    }

    /// The `index`-th assignment in lexicographic order over
    /// `(x_1, ..., x_n)`: `x_1` is the most significant bit.
    pub fn from_lex_index(index: usize, n: usize) -> Self {
        debug_assert!(n < usize::BITS as usize);
        debug_assert!(index < (1usize << n));
        Assignment((0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: VarId) -> bool {
        self.0[v.index()]
    }

    pub fn set(&mut self, v: VarId, b: bool) {
        self.0[v.index()] = b;
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Concatenates two assignments over consecutive variable ranges.
    pub fn concat(&self, tail: &Assignment) -> Assignment {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&tail.0);
        Assignment(bits)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", u8::from(*b))?;
        }
        Ok(())
    }
}

/// A pseudo-Boolean function in canonical multilinear form over the
/// universe `x_1..x_n`.
///
/// No stored coefficient is zero, every index is within the universe, and
/// two functions are pointwise equal iff their term maps are identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pbf {
    n_vars: usize,
    terms: BTreeMap<VarSet, Rational>,
}

impl Pbf {
    pub fn zero(n_vars: usize) -> Self {
        Pbf {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Rational) -> Self {
        let mut f = Pbf::zero(n_vars);
        f.add_term(VarSet::empty(), c);
        f
    }

    /// Accumulates `(set, coefficient)` pairs into canonical form.
    /// Duplicate sets add up; zero results are dropped.
    pub fn from_terms(
        n_vars: usize,
        terms: impl IntoIterator<Item = (VarSet, Rational)>,
    ) -> Result<Self> {
        let mut f = Pbf::zero(n_vars);
        for (set, coef) in terms {
            if let Some(v) = set.max_var() {
                if v.index() >= n_vars {
                    return Err(Error::VarOutOfRange {
                        var: v.id(),
                        universe: n_vars,
                    });
                }
            }
            f.add_term(set, coef);
        }
        Ok(f)
    }

    /// Single-term polynomial; panics on an out-of-universe index.
    pub fn term(n_vars: usize, set: VarSet, coef: Rational) -> Self {
        Self::from_terms(n_vars, [(set, coef)]).expect("term within universe")
    }

    pub(crate) fn add_term(&mut self, set: VarSet, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        debug_assert!(set.max_var().is_none_or(|v| v.index() < self.n_vars));
        use std::collections::btree_map::Entry;
        match self.terms.entry(set) {
            Entry::Vacant(e) => {
                e.insert(coef);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in degree-then-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&VarSet, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, set: &VarSet) -> Rational {
        self.terms.get(set).cloned().unwrap_or_else(Rational::zero)
    }

    /// Size of the largest set with a nonzero coefficient; 0 for constants
    /// and for the zero function.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(VarSet::len).max().unwrap_or(0)
    }

    /// Same function over a larger universe.
    pub fn extended(&self, n_vars: usize) -> Pbf {
        assert!(n_vars >= self.n_vars, "universe can only grow");
        Pbf {
            n_vars,
            terms: self.terms.clone(),
        }
    }

    /// Exact value at `x`; panics if `x` does not cover the universe.
    pub fn evaluate(&self, x: &Assignment) -> Rational {
        assert_eq!(
            x.len(),
            self.n_vars,
            "assignment has {} bits but the universe has {} variables",
            x.len(),
            self.n_vars
        );
        let mut total = Rational::zero();
        for (set, coef) in &self.terms {
            if set.iter().all(|v| x.get(v)) {
                total += coef;
            }
        }
        total
    }

    /// Canonical form of `alpha * self + beta * other`. The result lives on
    /// the larger of the two universes.
    pub fn linear_combine(&self, alpha: &Rational, other: &Pbf, beta: &Rational) -> Pbf {
        let mut out = Pbf::zero(self.n_vars.max(other.n_vars));
        for (set, coef) in &self.terms {
            out.add_term(set.clone(), alpha * coef);
        }
        for (set, coef) in &other.terms {
            out.add_term(set.clone(), beta * coef);
        }
        out
    }

    pub fn scaled(&self, alpha: &Rational) -> Pbf {
        let mut out = Pbf::zero(self.n_vars);
        for (set, coef) in &self.terms {
            out.add_term(set.clone(), alpha * coef);
        }
        out
    }

    /// Replaces `{i, j}` by `{w}` in every term containing both `i` and `j`.
    ///
    /// `w` must be outside the current universe; the result's universe is
    /// extended to include it.
    pub fn substitute_pair(&self, i: VarId, j: VarId, w: VarId) -> Result<Pbf> {
        assert_ne!(i, j, "substituted pair must be two distinct variables");
        if w.index() < self.n_vars {
            return Err(Error::VariableInUse(w));
        }
        let mut out = Pbf::zero(self.n_vars.max(w.index() + 1));
        for (set, coef) in &self.terms {
            if set.contains(i) && set.contains(j) {
                out.add_term(set.without(i).without(j).with(w), coef.clone());
            } else {
                out.add_term(set.clone(), coef.clone());
            }
        }
        Ok(out)
    }

    /// Fixes `x_i := b` and re-canonicalizes. The universe is unchanged;
    /// `i` simply no longer occurs in any term.
    pub fn restrict(&self, i: VarId, b: bool) -> Pbf {
        let mut out = Pbf::zero(self.n_vars);
        for (set, coef) in &self.terms {
            if set.contains(i) {
                if b {
                    out.add_term(set.without(i), coef.clone());
                }
                // x_i = 0 kills the term.
            } else {
                out.add_term(set.clone(), coef.clone());
            }
        }
        out
    }

    /// Variables that actually occur in some term.
    pub fn support(&self) -> VarSet {
        VarSet::from_vars(self.terms.keys().flat_map(|s| s.iter()))
    }
}

impl fmt::Display for Pbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (set, coef)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if set.is_empty() {
                write!(f, "{coef}")?;
            } else if coef == &Rational::from_integer(1.into()) {
                write!(f, "{set}")?;
            } else {
                write!(f, "{coef}*{set}")?;
            }
        }
        Ok(())
    }
}
