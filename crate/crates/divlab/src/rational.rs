//! Exact rational scalars. `Rational` is an arbitrary-precision fraction,
//! always kept in lowest terms with a positive denominator by the backing
//! type; parsing and formatting use the canonical `p/q` (or bare `p`) form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q`. The numerator may carry a sign; the denominator must
/// be a bare positive integer. `2/4` is accepted and reduced to `1/2`.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let malformed = |reason: &'static str| Error::MalformedRational {
        input: input.to_string(),
        reason,
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(malformed("empty string"));
    }
    let (numer_str, denom_str) = match s.split_once('/') {
        None => (s, None),
        Some((n, d)) => (n, Some(d)),
    };
    let numer: BigInt = numer_str
        .parse()
        .map_err(|_| malformed("numerator is not an integer"))?;
    let denom: BigInt = match denom_str {
        None => BigInt::one(),
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err(malformed("denominator must be unsigned"));
            }
            d.parse()
                .map_err(|_| malformed("denominator is not an integer"))?
        }
    };
    if denom.is_zero() {
        return Err(malformed("denominator is zero"));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical display form. Integers print bare, everything else as `p/q`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn is_positive_integer(r: &Rational) -> bool {
    r.is_integer() && r.is_positive()
}
