//! Ground-truth checks: exhaustive minimization, the quadratization
//! identity, submodularity tests, negaform recognition, and size metrics.
//!
//! Everything here is exact. Enumeration is bounded by explicit caps;
//! exceeding a cap is an error, never a silent approximation.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::literal::LiteralForm;
use crate::pbf::{Assignment, Pbf, VarSet};
use crate::quad::Quadratization;
use crate::rational::Rational;
use crate::var::VarId;

/// Default cap on the total variable count of a full enumeration.
pub const DEFAULT_ENUM_CAP: usize = 24;
/// Default cap for the 4^n lattice submodularity test.
pub const DEFAULT_LATTICE_CAP: usize = 10;
/// Default cap for the n^2 * 2^(n-2) second-difference test.
pub const DEFAULT_SECOND_DIFF_CAP: usize = 16;

/// An exact minimum together with an assignment attaining it.
/// [`brute_force_min`] returns the lexicographically smallest minimizer;
/// the min-cut solver returns the one its minimum cut induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinResult {
    pub value: Rational,
    pub argmin: Assignment,
}

/// Size measures of a quadratization, computed on the canonical
/// multilinear form of `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadMetrics {
    pub aux_count: usize,
    pub term_count: usize,
    pub positive_quadratic_terms: usize,
    pub max_abs_coefficient: Rational,
}

impl QuadMetrics {
    pub fn of(g: &Pbf, aux_count: usize) -> Self {
        let positive_quadratic_terms = g
            .terms()
            .filter(|(set, coef)| set.len() == 2 && coef.is_positive())
            .count();
        let max_abs_coefficient = g
            .terms()
            .map(|(_, coef)| coef.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        QuadMetrics {
            aux_count,
            term_count: g.term_count(),
            positive_quadratic_terms,
            max_abs_coefficient,
        }
    }
}

/// Metrics of a finished quadratization.
pub fn metrics(q: &Quadratization) -> QuadMetrics {
    QuadMetrics::of(q.g(), q.aux().len())
}

/// Exact global minimum by full enumeration, with the default cap.
pub fn brute_force_min(f: &Pbf) -> Result<MinResult> {
    brute_force_min_with_cap(f, DEFAULT_ENUM_CAP)
}

/// Exact global minimum by full enumeration over `2^n` assignments.
///
/// The argmin is the lexicographically smallest attaining assignment
/// (`x_1` most significant, 0 before 1).
pub fn brute_force_min_with_cap(f: &Pbf, cap: usize) -> Result<MinResult> {
    let n = f.n_vars();
    if n > cap {
        return Err(Error::CapExceeded { needed: n, cap });
    }
    let mut best: Option<MinResult> = None;
    let mut path = vec![false; n];
    descend_min(f, 1, &mut path, &mut best);
    let best = best.expect("at least one assignment exists");
    Ok(best)
}

/// Depth-first restriction over variables `depth..=n` in index order.
/// Visiting the 0-branch first makes the first strict improvement the
/// lexicographically smallest minimizer.
fn descend_min(f: &Pbf, depth: u32, path: &mut Vec<bool>, best: &mut Option<MinResult>) {
    if depth as usize > f.n_vars() {
        let value = f.coefficient(&VarSet::empty());
        match best {
            Some(b) if value >= b.value => {}
            _ => {
                *best = Some(MinResult {
                    value,
                    argmin: Assignment::new(path.clone()),
                })
            }
        }
        return;
    }
    let var = VarId::new(depth);
    for bit in [false, true] {
        path[var.index()] = bit;
        descend_min(&f.restrict(var, bit), depth + 1, path, best);
    }
    path[var.index()] = false;
}

/// Table of `f` over all `2^n` assignments, indexed by lexicographic
/// assignment index.
pub fn value_table(f: &Pbf) -> Vec<Rational> {
    let mut out = Vec::with_capacity(1usize << f.n_vars());
    fill_table(f, 1, &mut out);
    out
}

fn fill_table(f: &Pbf, depth: u32, out: &mut Vec<Rational>) {
    if depth as usize > f.n_vars() {
        out.push(f.coefficient(&VarSet::empty()));
        return;
    }
    let var = VarId::new(depth);
    fill_table(&f.restrict(var, false), depth + 1, out);
    fill_table(&f.restrict(var, true), depth + 1, out);
}

/// Exact minimum of `f` over the variables in its support, leaving any
/// other universe variable free (they cannot affect the value).
///
/// The support is split into connected components (variables linked by
/// co-occurrence in a term); components are minimized independently and
/// the minima added, which keeps the enumeration exponent at the largest
/// component size instead of the whole support.
fn min_over_support(f: &Pbf) -> Rational {
    let support: Vec<VarId> = f.support().iter().collect();
    if support.is_empty() {
        return f.coefficient(&VarSet::empty());
    }
    // Union-find over support positions.
    let index_of = |v: VarId| support.binary_search(&v).expect("support var");
    let mut parent: Vec<usize> = (0..support.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for (set, _) in f.terms() {
        let mut vars = set.iter();
        if let Some(first) = vars.next() {
            let a = find(&mut parent, index_of(first));
            for v in vars {
                let b = find(&mut parent, index_of(v));
                parent[b] = a;
            }
        }
    }
    // Split terms by component root; the constant term goes straight in.
    let mut total = f.coefficient(&VarSet::empty());
    let roots: Vec<usize> = (0..support.len()).map(|i| find(&mut parent, i)).collect();
    let mut seen: Vec<usize> = roots.clone();
    seen.sort_unstable();
    seen.dedup();
    for root in seen {
        let comp_vars: Vec<VarId> = support
            .iter()
            .enumerate()
            .filter(|(i, _)| roots[*i] == root)
            .map(|(_, &v)| v)
            .collect();
        let comp = Pbf::from_terms(
            f.n_vars(),
            f.terms()
                .filter(|(set, _)| set.iter().next().is_some_and(|v| comp_vars.contains(&v)))
                .map(|(set, coef)| (set.clone(), coef.clone())),
        )
        .expect("component terms are within the universe");
        total += min_over_vars(&comp, &comp_vars);
    }
    total
}

/// Exact minimum of `f` over the listed variables by recursive restriction.
fn min_over_vars(f: &Pbf, vars: &[VarId]) -> Rational {
    match vars.split_first() {
        None => f.coefficient(&VarSet::empty()),
        Some((&v, rest)) => {
            let zero = min_over_vars(&f.restrict(v, false), rest);
            let one = min_over_vars(&f.restrict(v, true), rest);
            zero.min(one)
        }
    }
}

/// The quadratization identity with the default cap.
pub fn is_quadratization(f: &Pbf, g: &Pbf) -> Result<bool> {
    is_quadratization_with_cap(f, g, DEFAULT_ENUM_CAP)
}

/// True iff `min_w g(x, w) = f(x)` for every assignment `x`, exactly.
///
/// `g` lives on the universe of `f` extended by the auxiliary variables,
/// which by the numbering convention are the last `g.n_vars() - f.n_vars()`
/// indices. The cap bounds the total variable count `|X| + |W|`.
pub fn is_quadratization_with_cap(f: &Pbf, g: &Pbf, cap: usize) -> Result<bool> {
    let n = f.n_vars();
    if g.n_vars() < n {
        return Err(Error::UniverseMismatch {
            expected: n,
            got: g.n_vars(),
        });
    }
    if g.n_vars() > cap {
        return Err(Error::CapExceeded {
            needed: g.n_vars(),
            cap,
        });
    }
    Ok(check_pointwise(f, g, 1))
}

fn check_pointwise(f: &Pbf, g: &Pbf, depth: u32) -> bool {
    if depth as usize > f.n_vars() {
        // f is now a constant; g depends only on auxiliaries.
        return min_over_support(g) == f.coefficient(&VarSet::empty());
    }
    let var = VarId::new(depth);
    check_pointwise(&f.restrict(var, false), &g.restrict(var, false), depth + 1)
        && check_pointwise(&f.restrict(var, true), &g.restrict(var, true), depth + 1)
}

/// Lattice-definition submodularity test with the default cap.
pub fn is_submodular_lattice(f: &Pbf) -> Result<bool> {
    is_submodular_lattice_with_cap(f, DEFAULT_LATTICE_CAP)
}

/// True iff `f(x v y) + f(x ^ y) <= f(x) + f(y)` for all pairs; costs
/// `4^n` comparisons over a precomputed value table.
pub fn is_submodular_lattice_with_cap(f: &Pbf, cap: usize) -> Result<bool> {
    let n = f.n_vars();
    if n > cap {
        return Err(Error::CapExceeded { needed: n, cap });
    }
    let table = value_table(f);
    let size = 1usize << n;
    for x in 0..size {
        for y in (x + 1)..size {
            let join = x | y;
            let meet = x & y;
            if join == x || join == y {
                continue; // comparable pair, inequality is an identity
            }
            if &table[join] + &table[meet] > &table[x] + &table[y] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Second-difference submodularity test with the default cap.
pub fn is_submodular_second_diff(f: &Pbf) -> Result<bool> {
    is_submodular_second_diff_with_cap(f, DEFAULT_SECOND_DIFF_CAP)
}

/// True iff for every `i < j` and every `x` with `x_i = x_j = 0`,
/// `f(x + e_i + e_j) + f(x) <= f(x + e_i) + f(x + e_j)`.
pub fn is_submodular_second_diff_with_cap(f: &Pbf, cap: usize) -> Result<bool> {
    let n = f.n_vars();
    if n > cap {
        return Err(Error::CapExceeded { needed: n, cap });
    }
    let table = value_table(f);
    let size = 1usize << n;
    // Bit of x_k in the lexicographic index.
    let bit = |k: usize| 1usize << (n - 1 - k);
    for i in 0..n {
        for j in (i + 1)..n {
            for x in 0..size {
                if x & bit(i) != 0 || x & bit(j) != 0 {
                    continue;
                }
                let both = x | bit(i) | bit(j);
                if &table[both] + &table[x] > &table[x | bit(i)] + &table[x | bit(j)] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Submodularity of a quadratic function via its coefficients: true iff
/// every degree-2 coefficient is nonpositive.
pub fn quadratic_submodularity(g: &Pbf) -> Result<bool> {
    if g.degree() > 2 {
        return Err(Error::NotQuadratic(g.degree()));
    }
    Ok(g.terms()
        .all(|(set, coef)| set.len() != 2 || !coef.is_positive()))
}

/// Representation-level unary-negaform check: every non-constant term has
/// a negative coefficient and a polarity-pure literal product.
pub fn is_unary_negaform(form: &LiteralForm) -> bool {
    form.terms()
        .iter()
        .all(|(coef, lits)| lits.is_empty() || (coef.is_negative() && lits.is_polarity_pure()))
}
