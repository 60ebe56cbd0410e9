//! Variable identifiers, literals, and fresh-variable allocation.
//!
//! Variables are numbered from 1. Original variables of a function occupy
//! `1..=n` contiguously; auxiliary variables introduced by a quadratization
//! are appended as `n+1, n+2, ...` in order of creation, so a variable's
//! kind is determined by its index relative to the original count.

use std::fmt;

/// A 1-based variable index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(u32);

impl VarId {
    /// Panics if `id == 0`; variable indices start at 1.
    pub fn new(id: u32) -> Self {
        assert!(id >= 1, "variable indices start at 1");
        VarId(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    /// 0-based position in an assignment vector.
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }

    pub fn kind(self, n_original: usize) -> VarKind {
        if (self.0 as usize) <= n_original {
            VarKind::Original
        } else {
            VarKind::Auxiliary
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Original,
    Auxiliary,
}

/// A variable or its negation.
///
/// Ordering is by variable index with the positive polarity first, which
/// fixes a deterministic order for literal products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: VarId,
    negated: bool,
}

impl Literal {
    pub fn positive(var: VarId) -> Self {
        Literal {
            var,
            negated: false,
        }
    }

    pub fn negated(var: VarId) -> Self {
        Literal { var, negated: true }
    }

    pub fn var(self) -> VarId {
        self.var
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    pub fn complement(self) -> Self {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }

    /// Value of the literal under `value` of its variable.
    pub fn eval(self, value: bool) -> bool {
        value != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!x{}", self.var.id())
        } else {
            write!(f, "x{}", self.var.id())
        }
    }
}

/// Allocator handing out auxiliary variables `n+1, n+2, ...` above a fixed
/// universe of `n` original variables.
///
/// Callers running in parallel must use disjoint allocators; a single
/// allocator is an explicit mutable counter, never global state.
#[derive(Debug, Clone)]
pub struct FreshVars {
    n_original: usize,
    next: u32,
}

impl FreshVars {
    /// Allocator for auxiliaries above `n_original` variables.
    pub fn new(n_original: usize) -> Self {
        FreshVars {
            n_original,
            next: n_original as u32 + 1,
        }
    }

    pub fn fresh(&mut self) -> VarId {
        let v = VarId::new(self.next);
        self.next += 1;
        v
    }

    pub fn n_original(&self) -> usize {
        self.n_original
    }

    /// Total universe size including every auxiliary allocated so far.
    pub fn universe(&self) -> usize {
        (self.next - 1) as usize
    }

    /// Auxiliaries allocated so far, in creation order.
    pub fn allocated(&self) -> Vec<VarId> {
        (self.n_original as u32 + 1..self.next)
            .map(VarId::new)
            .collect()
    }
}
