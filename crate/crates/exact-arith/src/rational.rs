use crate::{ArithError, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

/// Exact rational number. The backing representation keeps values in lowest
/// terms with a positive denominator, so equality and hashing are canonical.
pub type Rational = BigRational;

/// `n/d` as a `Rational`. Panics if `d == 0`; intended for literals.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "rat: zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer literal as a `Rational`.
pub fn rint(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn abs(q: &Rational) -> Rational {
    num::Signed::abs(q)
}

/// `2^k` for any integer `k`, including negative exponents.
pub fn pow2(k: i32) -> Rational {
    let mag = BigInt::one() << k.unsigned_abs() as usize;
    if k >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// Renders in the textual format used by every file format here: an optional
/// sign, an integer, and a `/denominator` part only when the denominator is
/// not 1. Never decimal notation.
pub fn render(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses the `render` format. Whitespace is not allowed inside the literal.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || ArithError::Parse(format!("bad rational literal {s:?}"));
    let (numer_str, denom_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = numer_str.parse().map_err(|_| err())?;
    let denom: BigInt = match denom_str {
        Some(d) => {
            if d.starts_with('+') || d.starts_with('-') {
                return Err(err());
            }
            d.parse().map_err(|_| err())?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ArithError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(numer, denom))
}
