//! Exact pseudo-Boolean polynomial algebra and quadratization.
//!
//! A pseudo-Boolean function maps binary vectors to the rationals and has
//! a unique multilinear polynomial representation. Minimizing a
//! high-degree function is commonly reduced to the quadratic case by
//! finding a quadratic `g(x, w)` over fresh binary variables with
//! `f(x) = min_w g(x, w)` for every `x`. This crate provides:
//!
//! - [`pbf`]: the canonical polynomial representation over exact
//!   rationals, plus posiform-style literal products ([`literal`]);
//! - [`termwise`]: the per-monomial quadratization rules (one-auxiliary
//!   negative rule, negated-literal chain, complemented auxiliary, type-I
//!   two-auxiliary rule, the compact half-variable rule, and the
//!   Rosenberg big-M reduction);
//! - [`split`]: splitting one term through a system of indicator
//!   conjunctions;
//! - [`aggregate`]: splitting a common part away from many terms with a
//!   single shared auxiliary;
//! - [`verify`]: exhaustive oracles for the quadratization identity,
//!   submodularity, and size metrics;
//! - [`flowmin`]: exact minimization of submodular quadratics by min cut.
//!
//! Everything is deterministic: term maps iterate in degree-then-lex
//! order, rules allocate auxiliaries in a fixed order, and all arithmetic
//! is exact rational arithmetic.

pub mod aggregate;
pub mod error;
pub mod flowmin;
pub mod literal;
pub mod pbf;
pub mod quad;
pub mod rational;
pub mod split;
pub mod termwise;
pub mod var;
pub mod verify;

pub use error::{Error, Result};
pub use literal::{LitSet, LiteralForm};
pub use pbf::{Assignment, Pbf, VarSet};
pub use quad::{Method, Quadratization};
pub use rational::{rat, ratio, Rational};
pub use var::{FreshVars, Literal, VarId, VarKind};
pub use verify::{MinResult, QuadMetrics};
