//! Exact fractions for transport masses, costs and curvature values.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Renders as `num/den`, including integers (`2/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`. Denominator must be non-zero.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |msg: &str| Error::Parse {
        line: 0,
        msg: format!("{msg}: {s:?}"),
    };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad("bad numerator"))?;
    let den: i64 = den.parse().map_err(|_| bad("bad denominator"))?;
    if den == 0 {
        return Err(bad("zero denominator"));
    }
    // Ratio::new negates to normalise the sign, which overflows on MIN.
    if num == i64::MIN || den == i64::MIN {
        return Err(bad("value out of range"));
    }
    Ok(Rational::new(num, den))
}

pub fn ceil_div(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

pub fn floor(r: &Rational) -> i64 {
    r.floor().to_integer()
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> i64 {
    values
        .into_iter()
        .fold(1i64, |acc, r| acc.lcm(r.denom()))
}

pub fn max(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

pub fn one() -> Rational {
    Rational::one()
}
