//! Exact rational scalars.
//!
//! Every coefficient in the engine is an arbitrary-precision rational number
//! kept in lowest terms with a positive denominator; `BigRational` already
//! maintains that invariant, so the engine uses it directly.

use crate::error::{EngineError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number, always normalized.
pub type ExactScalar = BigRational;

/// The rational number `n / d`.
///
/// # Panics
/// Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> ExactScalar {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational number.
pub fn qi(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `(-1)^k` as a rational number.
pub fn sign_of(odd: bool) -> ExactScalar {
    if odd {
        -ExactScalar::one()
    } else {
        ExactScalar::one()
    }
}

/// Formats a scalar as `n` or `n/d`.
pub fn fmt_scalar(c: &ExactScalar) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `n` or `n/d` (optionally signed) into a scalar.
pub fn parse_scalar(s: &str) -> Result<ExactScalar> {
    let s = s.trim();
    let bad = || EngineError::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Formats a coefficient in front of a monomial: `""`, `"-"`, `"3*"`, `"-1/2*"`.
pub(crate) fn fmt_coeff_prefix(c: &ExactScalar, has_factors: bool) -> String {
    if !has_factors {
        return fmt_scalar(c);
    }
    if c.is_one() {
        String::new()
    } else if (-c).is_one() {
        "-".to_string()
    } else {
        format!("{}*", fmt_scalar(c))
    }
}

/// Joins signed terms into `a + b - c` form.
pub(crate) fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

/// Splits `a + b - c` into signed term strings `["a", "b", "-c"]`.
///
/// Splitting happens only at top-level ` + ` / ` - ` separators, so nested
/// parentheses are left untouched.
pub(crate) fn split_terms(s: &str) -> Vec<String> {
    let s = s.trim();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
        if depth == 0
            && c == ' '
            && i + 2 < chars.len()
            && (chars[i + 1] == '+' || chars[i + 1] == '-')
            && chars[i + 2] == ' '
        {
            out.push(std::mem::take(&mut cur));
            if chars[i + 1] == '-' {
                cur.push('-');
            }
            i += 3;
            continue;
        }
        cur.push(c);
        i += 1;
    }
    out.push(cur);
    out.into_iter().map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

/// Parses a leading coefficient of a `coef*factor*factor` term.
///
/// Returns the coefficient and the remaining factor strings.
pub(crate) fn parse_coeff_and_factors(term: &str) -> Result<(ExactScalar, Vec<String>)> {
    let (neg, body) = match term.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, term.trim()),
    };
    let mut coeff = ExactScalar::one();
    let mut factors = Vec::new();
    for (i, f) in split_factors(body).into_iter().enumerate() {
        if i == 0 && f.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            coeff = parse_scalar(&f)?;
        } else {
            factors.push(f);
        }
    }
    if neg {
        coeff = -coeff;
    }
    Ok((coeff, factors))
}

/// Splits a product at top-level `*` separators.
fn split_factors(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == '*' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out.into_iter().map(|f| f.trim().to_string()).collect()
}
