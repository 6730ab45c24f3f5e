//! Parsers for q values, energy lists and β ranges.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};
use slfock::qarith::parse_rational;

/// Exact value of `"a/b"`, an integer, or a plain decimal such as `-0.25`.
/// Anything else that parses as a float is taken at its binary value.
pub fn exact_real(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.contains('/') {
        return parse_rational(s).map_err(|e| e.to_string());
    }
    if let Some(r) = decimal(s) {
        return Ok(r);
    }
    let x = f64::from_str(s).map_err(|_| format!("not a number: {s:?}"))?;
    BigRational::from_f64(x).ok_or_else(|| format!("not a finite number: {s:?}"))
}

fn decimal(s: &str) -> Option<BigRational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    let r = BigRational::new(num, den);
    Some(if neg { -r } else { r })
}

pub fn real(s: &str) -> Result<f64, String> {
    let x = exact_real(s)?.to_f64().ok_or_else(|| format!("out of range: {s:?}"))?;
    if !x.is_finite() {
        return Err(format!("out of range: {s:?}"));
    }
    Ok(x)
}

/// A real or complex q: `0.7`, `7/10`, `0.5+0.75i`, `1/2-3/4i`, `0.75i`.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(real(&t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => real(other)?,
    };
    Ok(Complex64::new(real(re)?, im))
}

/// `a:b:step`, inclusive of `b` up to rounding.
pub fn beta_range(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, step] = parts[..] else {
        return Err(format!("expected start:stop:step, got {s:?}"));
    };
    let (a, b, step) = (real(a)?, real(b)?, real(step)?);
    if step <= 0.0 || b < a {
        return Err(format!("empty or unbounded range {s:?}"));
    }
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| a + k as f64 * step).collect())
}

/// Comma separated list of exact reals.
pub fn levels(s: &str) -> Result<Vec<BigRational>, String> {
    s.split(',').map(exact_real).collect()
}
