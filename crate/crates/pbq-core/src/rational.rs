//! Exact rational coefficients.
//!
//! All coefficients in this crate are arbitrary-precision rationals kept in
//! lowest terms with a positive denominator; `num_rational::BigRational`
//! maintains exactly that canonical form.

use num_bigint::BigInt;

pub use num_rational::BigRational as Rational;

/// Integer rational, `rat(3)` is `3/1`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fraction in lowest terms, `ratio(-3, 2)` is `-3/2`.
///
/// Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
