//! The `.pbf` text format.
//!
//! ```text
//! # optional comment lines
//! p pbf <n>
//! <coefficient> <signed variable tokens...>
//! ```
//!
//! The coefficient is an exact rational (`3`, `-3/2`); a token `k > 0`
//! means `x_k` and `k < 0` means `!x_k`. A line holding only a
//! coefficient is a constant term. Duplicate term lines accumulate.
//! Emission is byte-stable: terms in degree-then-lex key order, single
//! spaces, `\n` line endings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use pbq_core::{LitSet, Literal, LiteralForm, Pbf, Rational, VarId};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing `p pbf <n>` header")]
    MissingHeader,

    #[error("line {line}: malformed header, expected `p pbf <n>`")]
    BadHeader { line: usize },

    #[error("line {line}: `{token}` is not a rational coefficient")]
    BadRational { line: usize, token: String },

    #[error("line {line}: `{token}` is not a nonzero variable index")]
    BadIndex { line: usize, token: String },

    #[error("line {line}: variable x{var} is out of range 1..={n}")]
    IndexOutOfRange { line: usize, var: u32, n: usize },

    #[error("line {line}: variable x{var} appears twice in one term")]
    DuplicateVariable { line: usize, var: u32 },
}

/// Exact rational from `n` or `n/d` with nonzero `d`.
fn parse_rational(token: &str, line: usize) -> Result<Rational, ParseError> {
    let bad = || ParseError::BadRational {
        line,
        token: token.to_string(),
    };
    let (numer, denom) = match token.split_once('/') {
        None => (BigInt::from_str(token).map_err(|_| bad())?, BigInt::from(1)),
        Some((n, d)) => (
            BigInt::from_str(n).map_err(|_| bad())?,
            BigInt::from_str(d).map_err(|_| bad())?,
        ),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Parses the grammar above into a literal-product polynomial over the
/// declared universe.
pub fn parse_pbf(text: &str) -> Result<LiteralForm, ParseError> {
    let mut n_vars: Option<usize> = None;
    let mut form: Option<LiteralForm> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match n_vars {
            None => {
                if tokens.len() != 3 || tokens[0] != "p" || tokens[1] != "pbf" {
                    return Err(ParseError::BadHeader { line });
                }
                let n: usize = tokens[2]
                    .parse()
                    .map_err(|_| ParseError::BadHeader { line })?;
                n_vars = Some(n);
                form = Some(LiteralForm::new(n));
            }
            Some(n) => {
                let coef = parse_rational(tokens[0], line)?;
                let mut lits = Vec::with_capacity(tokens.len() - 1);
                for token in &tokens[1..] {
                    let signed: i64 = token.parse().ok().filter(|k| *k != 0).ok_or_else(|| {
                        ParseError::BadIndex {
                            line,
                            token: token.to_string(),
                        }
                    })?;
                    let var = signed.unsigned_abs();
                    if var as usize > n {
                        return Err(ParseError::IndexOutOfRange {
                            line,
                            var: var as u32,
                            n,
                        });
                    }
                    let v = VarId::new(var as u32);
                    lits.push(if signed > 0 {
                        Literal::positive(v)
                    } else {
                        Literal::negated(v)
                    });
                }
                let mut sorted = lits.clone();
                sorted.sort_by_key(|l| l.var());
                if let Some(pair) = sorted.windows(2).find(|p| p[0].var() == p[1].var()) {
                    return Err(ParseError::DuplicateVariable {
                        line,
                        var: pair[0].var().id(),
                    });
                }
                let set = LitSet::from_literals(lits).expect("duplicates were rejected");
                form.as_mut().expect("header seen").push(coef, set);
            }
        }
    }
    form.ok_or(ParseError::MissingHeader)
}

/// Canonical emission: header, then one line per term in the canonical
/// degree-then-lex key order; only positive tokens appear.
pub fn emit_pbf(f: &Pbf) -> String {
    let mut out = format!("p pbf {}\n", f.n_vars());
    for (set, coef) in f.terms() {
        out.push_str(&coef.to_string());
        for v in set.iter() {
            out.push(' ');
            out.push_str(&v.id().to_string());
        }
        out.push('\n');
    }
    out
}

/// Emission of a literal form with signed tokens, in normalized term
/// order (used for posiform-style files; canonical functions should go
/// through [`emit_pbf`]).
pub fn emit_literal_pbf(form: &LiteralForm) -> String {
    let normalized = form.normalized();
    let mut out = format!("p pbf {}\n", normalized.n_vars());
    for (coef, lits) in normalized.terms() {
        out.push_str(&coef.to_string());
        for lit in lits.iter() {
            out.push(' ');
            if lit.is_negated() {
                out.push('-');
            }
            out.push_str(&lit.var().id().to_string());
        }
        out.push('\n');
    }
    out
}
