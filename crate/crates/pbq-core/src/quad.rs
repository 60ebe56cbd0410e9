//! The result type shared by every quadratization rule.

use std::fmt;

use crate::pbf::Pbf;
use crate::var::VarId;
use crate::verify::QuadMetrics;

/// Which rule produced a quadratization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Negative monomials via one auxiliary.
    Kzfd,
    /// Positive monomials via the negated-literal chain.
    Chain,
    /// Fully negated negative monomials via one complemented auxiliary.
    NegatedKzfd,
    /// Mixed-polarity negative monomials via two auxiliaries (type-I).
    Rkfj,
    /// Positive monomials with about half as many auxiliaries.
    Ishikawa,
    /// Whole-function pair substitution with a big-M penalty.
    Rosenberg,
    /// Term splitting through a 2-split system.
    Split2,
    /// Term splitting through a 3-split system.
    Split3,
    /// Common-part aggregation across terms.
    Aggregate,
    /// Per-term treatment of a unary negaform.
    Negaform,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Method::Kzfd => "kzfd",
            Method::Chain => "chain",
            Method::NegatedKzfd => "negated-kzfd",
            Method::Rkfj => "rkfj",
            Method::Ishikawa => "ishikawa",
            Method::Rosenberg => "rosenberg",
            Method::Split2 => "2-split",
            Method::Split3 => "3-split",
            Method::Aggregate => "aggregate",
            Method::Negaform => "negaform",
        };
        write!(f, "{name}")
    }
}

/// A quadratic function `g` over the original universe plus auxiliaries,
/// with `min over aux of g(x, .) = f(x)` pointwise for its source `f`.
#[derive(Debug, Clone)]
pub struct Quadratization {
    g: Pbf,
    n_original: usize,
    aux: Vec<VarId>,
    method: Method,
    metrics: QuadMetrics,
}

impl Quadratization {
    /// Panics if `g` is not quadratic or the auxiliaries are not exactly
    /// the variables above the original universe.
    pub fn new(g: Pbf, n_original: usize, aux: Vec<VarId>, method: Method) -> Self {
        assert!(g.degree() <= 2, "quadratization must have degree <= 2");
        assert_eq!(
            g.n_vars(),
            n_original + aux.len(),
            "universe must be originals plus auxiliaries"
        );
        for (k, v) in aux.iter().enumerate() {
            assert_eq!(v.index(), n_original + k, "auxiliaries must be contiguous");
        }
        let metrics = QuadMetrics::of(&g, aux.len());
        Quadratization {
            g,
            n_original,
            aux,
            method,
            metrics,
        }
    }

    pub fn g(&self) -> &Pbf {
        &self.g
    }

    pub fn into_g(self) -> Pbf {
        self.g
    }

    pub fn n_original(&self) -> usize {
        self.n_original
    }

    pub fn aux(&self) -> &[VarId] {
        &self.aux
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn metrics(&self) -> &QuadMetrics {
        &self.metrics
    }
}
