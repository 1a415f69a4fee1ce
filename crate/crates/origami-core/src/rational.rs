//! Helpers for exact rational arithmetic: parsing, decimal rendering and
//! perfect-square detection. No floating point is involved anywhere; decimal
//! input is converted exactly and decimal output is rounded from certified
//! rational values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// 10^k as an exact rational, for any integer k.
pub fn pow10(k: i32) -> BigRational {
    let base = BigInt::from(10);
    if k >= 0 {
        BigRational::from_integer(base.pow(k as u32))
    } else {
        BigRational::new(BigInt::one(), base.pow((-k) as u32))
    }
}

/// Parses "p/q", an integer, or a plain decimal like "-12.375" into an exact
/// rational. Decimal input never loses precision: the digits after the point
/// become an exact power-of-ten denominator.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::ParseError("empty rational literal".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::ParseError(format!("bad numerator in {s:?}")))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::ParseError(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::ParseError(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac_part.is_empty())
        {
            return Err(Error::ParseError(format!("bad decimal literal {s:?}")));
        }
        let digits = format!("{int_digits}{frac_part}");
        let num: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits
                .parse()
                .map_err(|_| Error::ParseError(format!("bad decimal literal {s:?}")))?
        };
        let den = BigInt::from(10).pow(frac_part.len() as u32);
        return Ok(BigRational::new(BigInt::from(sign) * num, den));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::ParseError(format!("bad integer literal {s:?}")))?;
    Ok(BigRational::from_integer(n))
}

/// Largest e with 10^e <= x, for x > 0.
fn floor_log10(x: &BigRational) -> i64 {
    debug_assert!(x.is_positive());
    let digits = |n: &BigInt| n.abs().to_string().len() as i64;
    let mut e = digits(x.numer()) - digits(x.denom());
    while pow10_i64(e) > *x {
        e -= 1;
    }
    while pow10_i64(e + 1) <= *x {
        e += 1;
    }
    e
}

fn pow10_i64(k: i64) -> BigRational {
    pow10(k.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Renders x rounded to `sig` significant digits (ties away from zero).
/// Trailing zeros in a fractional part are trimmed.
pub fn to_decimal_string(x: &BigRational, sig: usize) -> String {
    let sig = sig.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let a = x.abs();
    let mut e = floor_log10(&a);
    // Scale so the rounded mantissa has exactly `sig` digits.
    let k = sig as i64 - 1 - e;
    let scaled = &a * pow10_i64(k);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut m = (scaled + half).floor().to_integer();
    let ten_sig = BigInt::from(10).pow(sig as u32);
    if m == ten_sig {
        // Rounding carried into one more digit, e.g. 9.99 -> 10.0.
        m = BigInt::from(10).pow(sig as u32 - 1);
        e += 1;
    }
    let digits = m.to_string();
    debug_assert_eq!(digits.len(), sig);
    let body = if e >= sig as i64 - 1 {
        let zeros = (e - sig as i64 + 1) as usize;
        format!("{digits}{}", "0".repeat(zeros))
    } else if e >= 0 {
        let cut = (e + 1) as usize;
        let frac = trim_zeros(&digits[cut..]);
        if frac.is_empty() {
            digits[..cut].to_string()
        } else {
            format!("{}.{}", &digits[..cut], frac)
        }
    } else {
        let zeros = (-e - 1) as usize;
        let frac = trim_zeros(&format!("{}{}", "0".repeat(zeros), digits));
        if frac.is_empty() {
            "0".to_string()
        } else {
            format!("0.{frac}")
        }
    };
    if neg && body != "0" {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_zeros(s: &str) -> String {
    s.trim_end_matches('0').to_string()
}

/// Exact square root of a nonnegative rational, if the value is a perfect
/// square of a rational.
pub fn sqrt_exact(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(BigRational::zero());
    }
    let sn = x.numer().sqrt();
    let sd = x.denom().sqrt();
    if &(&sn * &sn) == x.numer() && &(&sd * &sd) == x.denom() {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Exact sign of a rational as -1, 0 or +1.
pub fn sign_rat(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Greatest common divisor of the numerators over lcm of denominators,
/// used to scale rational vectors to primitive integer form.
pub fn denominator_lcm<'a>(it: impl Iterator<Item = &'a BigRational>) -> BigInt {
    let mut l = BigInt::one();
    for r in it {
        l = l.lcm(r.denom());
    }
    l
}
