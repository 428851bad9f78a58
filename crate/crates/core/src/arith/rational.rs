//! Rational scalars. `BigRational` already keeps values reduced with a
//! positive denominator, so this module only adds constructors and the
//! canonical text form used in reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// `2^-k` as an exact rational.
pub fn dyadic_width(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

/// Canonical text: `p` for integers, `p/q` otherwise.
pub fn to_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q` or `2^-k`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some(exp) = s.strip_prefix("2^-") {
        let k: u32 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
        return Ok(dyadic_width(k));
    }
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: scale down by bit length first.
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = r.numer() >> shift;
        let d = r.denom() >> shift;
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
