//! Exact rational scalars.
//!
//! Everything in this crate is linear algebra over `ℚ`; `Rat` is the one
//! scalar type. Rendering follows the `p/q` convention used by the dataset
//! format and the reports (integers print without the denominator).

use alloc::string::String;
use alloc::format;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// `n/d` as an exact rational. Panics on `d = 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// True if `r` is an integer (denominator 1 after reduction).
pub fn is_integer(r: &Rat) -> bool {
    r.is_integer()
}

/// True if `r` is a nonnegative integer.
pub fn is_nonneg_integer(r: &Rat) -> bool {
    r.is_integer() && !r.is_negative()
}

/// Exact integer value, if `r` is an integer small enough for `usize`.
pub fn as_usize(r: &Rat) -> Option<usize> {
    if !r.is_integer() || r.is_negative() {
        return None;
    }
    let n = r.to_integer();
    let (_, digits) = n.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => usize::try_from(digits[0]).ok(),
        _ => None,
    }
}

/// Generalized binomial coefficient `binom(q, k) = q(q-1)…(q-k+1)/k!`.
pub fn binom(q: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= q - rint(i as i64);
        acc /= rint((i + 1) as i64);
    }
    acc
}

/// Render a rational exactly: `3/2`, `-1/3`, `7`.
pub fn render(r: &Rat) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p/q` or `p`. Used by the dataset format in the companion crate.
pub fn parse(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}
