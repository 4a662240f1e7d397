use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses `p/q`, `p` or a signed variant of either. No decimals.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::invalid(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: usize) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Smallest integer >= r (for r >= 0), as usize.
pub fn ceil_usize(r: &Rational) -> usize {
    let c = r.ceil().to_integer();
    if c.is_negative() {
        0
    } else {
        c.try_into().unwrap_or(usize::MAX)
    }
}

pub fn floor_usize(r: &Rational) -> usize {
    let f = r.floor().to_integer();
    if f.is_negative() {
        0
    } else {
        f.try_into().unwrap_or(usize::MAX)
    }
}

/// Rational bounds `lo < e < hi` from the first `terms` terms of sum 1/k!.
pub fn e_bounds(terms: u32) -> (Rational, Rational) {
    let mut sum = Rational::zero();
    let mut fact = BigInt::one();
    for k in 0..terms {
        if k > 0 {
            fact *= BigInt::from(k);
        }
        sum += BigRational::new(BigInt::one(), fact.clone());
    }
    // tail after 1/(t-1)! is below 2/t!
    let tail = BigRational::new(BigInt::from(2), fact * BigInt::from(terms));
    let hi = sum.clone() + tail;
    (sum, hi)
}

/// `ceil(q * e)` computed exactly, for rational q >= 0.
pub fn ceil_times_e(q: &Rational) -> usize {
    let mut terms = 20;
    loop {
        let (lo, hi) = e_bounds(terms);
        let a = ceil_usize(&(q * lo));
        let b = ceil_usize(&(q * hi));
        if a == b {
            return a;
        }
        terms += 20;
    }
}

/// Decides `a <= q * e` exactly (q > 0), refining bounds on e as needed.
pub fn le_times_e(a: &Rational, q: &Rational) -> bool {
    let mut terms = 20;
    loop {
        let (lo, hi) = e_bounds(terms);
        if *a <= q * lo {
            return true;
        }
        if *a > q * hi {
            return false;
        }
        terms += 20;
    }
}
