//! Exact scalars: rationals and Gaussian rationals.
//!
//! A [`Scalar`] is always stored as a pair of arbitrary-precision rationals.
//! Real-mode values simply carry a zero imaginary part, so one type serves
//! both fields and every arithmetic path stays exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::interval::Interval;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Builds a rational from a numerator/denominator pair of machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.25"`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::MalformedScalar(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let int_value = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(int_digits).map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac_value = BigInt::from_str(frac_part).map_err(|_| bad())?;
        let mut value = BigRational::new(int_value * &scale + frac_value, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let n = BigInt::from_str(s).map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact square root of a non-negative rational, when it exists.
pub fn rational_sqrt_exact(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Rational enclosure of `sqrt(q)` of width at most `2^-bits`.
pub fn rational_sqrt_enclosure(q: &Rational, bits: u32) -> Interval {
    assert!(!q.is_negative(), "square root of a negative rational");
    if let Some(r) = rational_sqrt_exact(q) {
        return Interval::point(r);
    }
    // sqrt(p/d) = sqrt(p*d)/d; scale by 4^bits so the integer root has `bits` fractional bits.
    let p = q.numer();
    let d = q.denom();
    let scale = BigInt::one() << (2 * bits as usize);
    let s = (p * d * &scale).sqrt();
    let denom = d * (BigInt::one() << bits as usize);
    let lo = BigRational::new(s.clone(), denom.clone());
    let hi = BigRational::new(s + BigInt::one(), denom);
    Interval::new(lo, hi)
}

/// Largest rational of the form `k / 2^bits` not exceeding `sqrt(q)`.
pub fn rational_sqrt_lower(q: &Rational, bits: u32) -> Rational {
    rational_sqrt_enclosure(q, bits).lo().clone()
}

/// Field of scalars a function space lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => f.write_str("real"),
            Field::Complex => f.write_str("complex"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "real" => Ok(Field::Real),
            "complex" => Ok(Field::Complex),
            other => Err(Error::Schema(format!("unknown field '{other}'"))),
        }
    }
}

/// Exact Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Scalar { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::real(rat_int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Scalar::real(rat(n, d))
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, always an exact rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `|z|` when it is rational.
    pub fn modulus_exact(&self) -> Option<Rational> {
        if self.is_real() {
            return Some(self.re.abs());
        }
        rational_sqrt_exact(&self.norm_sqr())
    }

    /// Rational enclosure of `|z|` of width at most `2^-bits`.
    pub fn modulus_enclosure(&self, bits: u32) -> Interval {
        match self.modulus_exact() {
            Some(m) => Interval::point(m),
            None => rational_sqrt_enclosure(&self.norm_sqr(), bits),
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.norm_sqr().is_one()
    }

    /// Unimodular phase `z/|z|`, available when the modulus is rational.
    pub fn phase_exact(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let m = self.modulus_exact()?;
        Some(Scalar::new(&self.re / &m, &self.im / &m))
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero scalar");
        let n = self.norm_sqr();
        Scalar::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn scale(&self, q: &Rational) -> Scalar {
        Scalar::new(&self.re * q, &self.im * q)
    }

    /// Ordering of real scalars; `None` when either side is non-real.
    pub fn partial_cmp_real(&self, other: &Scalar) -> Option<Ordering> {
        if self.is_real() && other.is_real() {
            Some(self.re.cmp(&other.re))
        } else {
            None
        }
    }

    /// Parses `"p/q"`-style text (real) or `"a+bi"`-free pairs via [`Scalar::from_parts`].
    pub fn parse(text: &str) -> Result<Scalar, Error> {
        Ok(Scalar::real(parse_rational(text)?))
    }

    pub fn from_parts(re: &str, im: &str) -> Result<Scalar, Error> {
        Ok(Scalar::new(parse_rational(re)?, parse_rational(im)?))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", format_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", format_rational(&self.im))
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", format_rational(&self.re), format_rational(&-self.im.clone()))
        } else {
            write!(f, "{}+{}i", format_rational(&self.re), format_rational(&self.im))
        }
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::real(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_real() && rhs.is_real() {
            return Scalar::real(&self.re * &rhs.re);
        }
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        if rhs.is_real() {
            assert!(!rhs.re.is_zero(), "division by zero scalar");
            return Scalar::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// JSON form: a `"p/q"` string for reals, `{"re": .., "im": ..}` otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Text(String),
    Number(serde_json::Number),
    Pair { re: ScalarPart, im: ScalarPart },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarPart {
    Text(String),
    Number(serde_json::Number),
}

impl ScalarPart {
    fn to_rational(&self) -> Result<Rational, Error> {
        match self {
            ScalarPart::Text(s) => parse_rational(s),
            ScalarPart::Number(n) => parse_rational(&n.to_string()),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_real() {
            ScalarRepr::Text(format_rational(&self.re)).serialize(serializer)
        } else {
            ScalarRepr::Pair {
                re: ScalarPart::Text(format_rational(&self.re)),
                im: ScalarPart::Text(format_rational(&self.im)),
            }
            .serialize(serializer)
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        let parsed = match repr {
            ScalarRepr::Text(s) => Scalar::parse(&s),
            ScalarRepr::Number(n) => Scalar::parse(&n.to_string()),
            ScalarRepr::Pair { re, im } => re
                .to_rational()
                .and_then(|r| im.to_rational().map(|i| Scalar::new(r, i))),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// Serde helper for bare rationals stored as `"p/q"` strings.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde helper for vectors of rationals.
pub mod rational_vec_serde {
    use super::*;

    pub fn serialize<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let texts: Vec<String> = v.iter().map(format_rational).collect();
        texts.serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign_of(q: &Rational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), rat_int(-4));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn pythagorean_modulus_is_exact() {
        let z = Scalar::new(rat(3, 5), rat(4, 5));
        assert_eq!(z.modulus_exact(), Some(rat_int(1)));
        assert!(z.is_unimodular());
        let w = Scalar::new(rat_int(1), rat_int(1));
        assert_eq!(w.modulus_exact(), None);
        let enc = w.modulus_enclosure(40);
        assert!(enc.width() <= rat(1, 1 << 40));
        assert!(enc.lo() * enc.lo() <= rat_int(2));
        assert!(enc.hi() * enc.hi() >= rat_int(2));
    }

    #[test]
    fn complex_arithmetic() {
        let z = Scalar::new(rat(1, 2), rat(-3, 4));
        let w = Scalar::new(rat(2, 1), rat(1, 3));
        let prod = &z * &w;
        assert_eq!(&prod / &w, z);
        assert_eq!(&z * &z.inv(), Scalar::one());
        assert_eq!((&z * &z.conj()).re(), &z.norm_sqr());
    }

    #[test]
    fn json_round_trip() {
        let z = Scalar::new(rat(3, 5), rat(-4, 5));
        let text = serde_json::to_string(&z).unwrap();
        assert_eq!(text, r#"{"re":"3/5","im":"-4/5"}"#);
        let back: Scalar = serde_json::from_str(&text).unwrap();
        assert_eq!(back, z);
        let r: Scalar = serde_json::from_str("\"-7/3\"").unwrap();
        assert_eq!(r, Scalar::from_frac(-7, 3));
        let n: Scalar = serde_json::from_str("2").unwrap();
        assert_eq!(n, Scalar::from_int(2));
    }
}
