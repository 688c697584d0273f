//! Exact rational scalars. Every quantity in this crate is a
//! `BigRational`; floating point is deliberately absent, since the
//! classification conditions mix strict inequalities with exact
//! equalities and boundary cases flip verdicts.

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rational = BigRational;

/// Shorthand for a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
