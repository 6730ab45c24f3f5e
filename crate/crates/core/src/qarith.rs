//! Scalar arithmetic for the representation matrices.
//!
//! [`LaurentPoly`] is the exact scalar: a finite sum `Σ c_k q^k` with `k ∈ Z`
//! and arbitrary-precision rational `c_k`. It is kept in canonical form (no
//! zero coefficient is ever stored) so that equality is structural and a
//! relation holds exactly iff its residual matrix has no entries.
//!
//! The [`Scalar`] trait abstracts over the three scalar types the crate uses:
//! Laurent polynomials (generic q), rationals (q = 1) and complex floats
//! (numeric q).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QArithError {
    #[error("inexact Laurent division: ({num}) / ({den}) leaves a remainder")]
    InexactDivision { num: String, den: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("q-factorial of negative argument {0}")]
    NegativeFactorial(i64),
    #[error("cannot evaluate a Laurent polynomial at q = 0")]
    ZeroEvaluationPoint,
    #[error("numeric q = {0} is not allowed (q must avoid 0, 1 and -1)")]
    ForbiddenQ(Complex64),
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
}

/// Element of `Q[q, q⁻¹]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `coeff · q^exp`.
    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(k, BigRational::one())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Value at q = 1, i.e. the sum of the coefficients.
    pub fn at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Numeric value at `q`.
    pub fn evaluate(&self, q: Complex64) -> Result<Complex64, QArithError> {
        if q == Complex64::zero() {
            return Err(QArithError::ZeroEvaluationPoint);
        }
        Ok(self.terms.iter().fold(Complex64::zero(), |acc, (e, c)| acc + q.powi(*e as i32) * rational_to_f64(c)))
    }

    /// Quotient of an exact division in the Laurent ring.
    ///
    /// Fails if `den` does not divide `self`; the quotient of `num / den`, if
    /// it exists, has exponents between `min(num) - min(den)` and
    /// `max(num) - max(den)`, so long division from the top either clears the
    /// numerator inside that window or the division is not exact.
    pub fn divide_exact(&self, den: &LaurentPoly) -> Result<LaurentPoly, QArithError> {
        let (den_lo, den_hi) = match (den.min_exponent(), den.max_exponent()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(QArithError::DivisionByZero),
        };
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let inexact = || QArithError::InexactDivision { num: self.to_string(), den: den.to_string() };
        let floor = self.min_exponent().unwrap() - den_lo;
        let lead = den.terms[&den_hi].clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(top) = rem.max_exponent() {
            let exp = top - den_hi;
            if exp < floor {
                return Err(inexact());
            }
            let c = &rem.terms[&top] / &lead;
            rem = &rem - &den.shift(exp).scale(&c);
            quot.add_term(exp, c);
        }
        Ok(quot)
    }
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

/// The q-integer `[x] = (q^x - q^{-x}) / (q - q^{-1})`.
///
/// For `x > 0` this is `q^{x-1} + q^{x-3} + … + q^{1-x}`.
pub fn qint(x: i64) -> LaurentPoly {
    if x < 0 {
        return -qint(-x);
    }
    LaurentPoly::from_terms((0..x).map(|k| (x - 1 - 2 * k, BigRational::one())))
}

/// `[x]! = [1][2]…[x]`, with `[0]! = 1`.
pub fn qfactorial(x: i64) -> Result<LaurentPoly, QArithError> {
    if x < 0 {
        return Err(QArithError::NegativeFactorial(x));
    }
    Ok((1..=x).fold(LaurentPoly::one(), |acc, k| &acc * &qint(k)))
}

/// `q - q^{-1}` as a Laurent polynomial.
pub fn q_minus_qbar() -> LaurentPoly {
    LaurentPoly::from_terms([(1, BigRational::one()), (-1, -BigRational::one())])
}

pub fn divide_exact(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly, QArithError> {
    num.divide_exact(den)
}

pub fn evaluate(poly: &LaurentPoly, q: Complex64) -> Result<Complex64, QArithError> {
    poly.evaluate(q)
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, abs) = (c.is_negative(), c.abs());
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = abs.is_one();
            if !unit || *e == 0 {
                write!(f, "{abs}")?;
            }
            match *e {
                0 => {}
                1 if unit => f.write_str("q")?,
                1 => f.write_str("*q")?,
                _ if unit => write!(f, "q^{e}")?,
                _ => write!(f, "*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Formats a rational as `"num/den"`; the denominator is always written.
pub fn format_rational(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<BigRational, QArithError> {
    let bad = || QArithError::MalformedRational(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Serialized as `{"<exponent>": "<num>/<den>", …}` in descending exponent order.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in self.terms.iter().rev() {
            map.serialize_entry(&e.to_string(), &format_rational(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;
        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from exponent strings to rational strings")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<LaurentPoly, A::Error> {
                let mut out = LaurentPoly::zero();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    let e: i64 = k.parse().map_err(|_| de::Error::custom(format!("bad exponent {k:?}")))?;
                    let c = parse_rational(&v).map_err(de::Error::custom)?;
                    out.add_term(e, c);
                }
                Ok(out)
            }
        }
        deserializer.deserialize_map(PolyVisitor)
    }
}

/// Ring operations needed by the sparse matrix code.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + Zero + One + 'static {
    fn from_int(v: i64) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Size used for residual normalization. Zero iff `is_zero`.
    fn magnitude(&self) -> f64;
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::monomial(0, BigRational::one())
    }
}

impl Scalar for LaurentPoly {
    fn from_int(v: i64) -> Self {
        LaurentPoly::from_int(v)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    /// Largest absolute coefficient.
    fn magnitude(&self) -> f64 {
        self.terms.values().map(|c| rational_to_f64(&c.abs())).fold(0.0, f64::max)
    }
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.abs())
    }
}

impl Scalar for Complex64 {
    fn from_int(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Scalar mode of a computation session.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarMode {
    Exact,
    Numeric(Complex64),
}

impl ScalarMode {
    /// Numeric mode at `q`; rejects the points where `q - q⁻¹` vanishes or q = 0.
    pub fn numeric(q: Complex64) -> Result<Self, QArithError> {
        if !is_generic_q(q) {
            return Err(QArithError::ForbiddenQ(q));
        }
        Ok(ScalarMode::Numeric(q))
    }
}

pub(crate) fn is_generic_q(q: Complex64) -> bool {
    let one = Complex64::one();
    q != Complex64::zero() && q != one && q != -one
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, r(c, 1))))
    }

    #[test]
    fn qint_small_values() {
        assert!(qint(0).is_zero());
        assert!(qint(1).is_one());
        assert_eq!(qint(3), poly(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(qint(-2), poly(&[(1, -1), (-1, -1)]));
    }

    #[test]
    fn qint_matches_defining_quotient() {
        // (q^x - q^-x) / (q - q^-1), computed by the division routine.
        for x in -6..=6 {
            let num = poly(&[(x, 1), (-x, -1)]);
            assert_eq!(num.divide_exact(&q_minus_qbar()).unwrap(), qint(x), "x = {x}");
        }
    }

    #[test]
    fn qfactorial_values() {
        assert!(qfactorial(0).unwrap().is_one());
        assert_eq!(qfactorial(2).unwrap(), poly(&[(1, 1), (-1, 1)]));
        // (q + q^-1)(q^2 + 1 + q^-2) = q^3 + 2q + 2q^-1 + q^-3
        assert_eq!(qfactorial(3).unwrap(), poly(&[(3, 1), (1, 2), (-1, 2), (-3, 1)]));
        assert_eq!(qfactorial(-1), Err(QArithError::NegativeFactorial(-1)));
    }

    #[test]
    fn divide_exact_cases() {
        let num = poly(&[(2, 1), (-2, -1)]);
        assert_eq!(num.divide_exact(&q_minus_qbar()).unwrap(), qint(2));
        assert!(LaurentPoly::zero().divide_exact(&q_minus_qbar()).unwrap().is_zero());
        assert!(matches!(q_minus_qbar().divide_exact(&num), Err(QArithError::InexactDivision { .. })));
        assert_eq!(num.divide_exact(&LaurentPoly::zero()), Err(QArithError::DivisionByZero));
        // 1 / (1 + q) is a power series, not a Laurent polynomial.
        assert!(LaurentPoly::one().divide_exact(&poly(&[(0, 1), (1, 1)])).is_err());
        // Monomials are units.
        assert_eq!(LaurentPoly::one().divide_exact(&LaurentPoly::q_pow(3)).unwrap(), LaurentPoly::q_pow(-3));
    }

    #[test]
    fn evaluate_values() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(qint(3).evaluate(one).unwrap(), Complex64::new(3.0, 0.0));
        assert_eq!(qint(2).evaluate(Complex64::new(2.0, 0.0)).unwrap().re, 2.5);
        assert!(LaurentPoly::zero().evaluate(Complex64::new(0.3, 0.1)).unwrap().is_zero());
        assert_eq!(qint(2).evaluate(Complex64::zero()), Err(QArithError::ZeroEvaluationPoint));
        assert_eq!(qint(5).at_one(), r(5, 1));
    }

    #[test]
    fn json_format() {
        let s = serde_json::to_string(&qint(3)).unwrap();
        assert_eq!(s, r#"{"2":"1/1","0":"1/1","-2":"1/1"}"#);
        let back: LaurentPoly = serde_json::from_str(r#"{"-1":"3/6","4":"-2"}"#).unwrap();
        assert_eq!(back, LaurentPoly::from_terms([(-1, r(1, 2)), (4, r(-2, 1))]));
        assert_eq!(serde_json::to_string(&LaurentPoly::zero()).unwrap(), "{}");
    }

    #[test]
    fn display() {
        assert_eq!(qint(3).to_string(), "q^2 + 1 + q^-2");
        assert_eq!((-qint(2)).to_string(), "-q - q^-1");
        assert_eq!(LaurentPoly::monomial(1, r(3, 2)).to_string(), "3/2*q");
    }

    #[test]
    fn numeric_mode_excludes_degenerate_q() {
        for q in [0.0, 1.0, -1.0] {
            assert!(ScalarMode::numeric(Complex64::new(q, 0.0)).is_err());
        }
        assert!(ScalarMode::numeric(Complex64::new(0.5, 0.75)).is_ok());
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let p = poly(&[(1, 1), (0, 2)]);
        let diff = &p - &p;
        assert!(diff.is_zero());
        assert_eq!(diff.num_terms(), 0);
        assert_eq!(LaurentPoly::monomial(5, r(0, 1)), LaurentPoly::zero());
    }
}
