//! Exact scalars: rationals, Gaussian rationals `Q(i)`, the extended value
//! `inf` of the Riemann sphere and the adjoined impossible value `bot`.
//!
//! Plain field arithmetic on [`GaussianRational`] never produces `bot`;
//! dividing by zero is an [`Error::DivisionByZero`]. Only the pointed layer
//! ([`PointedScalar`]) totalizes the partial operations.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always stored with a positive reduced
/// denominator.
pub type Rational = BigRational;

/// An element `re + im*i` of the Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(Rational::from_integer(n.into()), Rational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(Rational::new(num.into(), den.into()), Rational::zero())
    }

    /// `a + b*i` with integer parts.
    pub fn from_parts(a: i64, b: i64) -> Self {
        Self::new(Rational::from_integer(a.into()), Rational::from_integer(b.into()))
    }

    pub fn i() -> Self {
        Self::from_parts(0, 1)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `|a|^2`
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Re-canonicalize both components. Values built through the public API
    /// are already canonical, so this is the identity on them.
    pub fn canonical(&self) -> Self {
        Self::new(
            Rational::new(self.re.numer().clone(), self.re.denom().clone()),
            Rational::new(self.im.numer().clone(), self.im.denom().clone()),
        )
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::new(r, Rational::zero())
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::new(&self.re * &rhs.re, Rational::zero());
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, im: &Rational| -> fmt::Result {
            if im.is_one() {
                write!(f, "i")
            } else if *im == -Rational::one() {
                write!(f, "-i")
            } else {
                write!(f, "{im}*i")
            }
        };
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            imag(f, &self.im)
        } else {
            write!(f, "{}", self.re)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
            imag(f, &self.im)
        }
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    if s.is_empty() {
        return None;
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if s.contains('/') {
            return None;
        }
        let neg = whole.starts_with('-');
        let whole = whole.trim_start_matches(['-', '+']);
        let digits = format!("{whole}{frac}");
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = digits.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(num, den);
        return Some(if neg { -r } else { r });
    }
    let s = s.strip_prefix('+').unwrap_or(s);
    Rational::from_str(s).ok()
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = || Error::parse(0, format!("invalid scalar `{text}`"));
        let mut s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        while s.starts_with('(') && s.ends_with(')') && s.len() >= 2 {
            s = s[1..s.len() - 1].to_string();
        }
        if s.is_empty() {
            return Err(err());
        }
        // split into signed terms at + / - that are not exponent/fraction signs
        let bytes = s.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for k in 1..bytes.len() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'/' | b'*') {
                terms.push(&s[start..k]);
                start = k;
            }
        }
        terms.push(&s[start..]);
        let mut acc = GaussianRational::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let value = if body == "i" {
                GaussianRational::i()
            } else if let Some(c) = body.strip_suffix("*i").or_else(|| body.strip_suffix('i')) {
                GaussianRational::new(Rational::zero(), parse_rational(c).ok_or_else(err)?)
            } else if let Some(c) = body.strip_prefix("i*") {
                GaussianRational::new(Rational::zero(), parse_rational(c).ok_or_else(err)?)
            } else {
                GaussianRational::from(parse_rational(body).ok_or_else(err)?)
            };
            if neg {
                acc -= &value;
            } else {
                acc += &value;
            }
        }
        Ok(acc)
    }
}

macro_rules! serde_via_string {
    ($t:ty) => {
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
        impl<'de> serde::Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = <String as serde::Deserialize>::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

pub(crate) use serde_via_string;

serde_via_string!(GaussianRational);

/// Gaussian integers, used to clear denominators and take contents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianInteger {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInteger {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigInt::zero(), BigInt::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    /// Exact quotient if `o` divides `self`.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        let n = o.norm();
        if n.is_zero() {
            return None;
        }
        let t = self.mul(&Self::new(o.re.clone(), -&o.im));
        if (&t.re % &n).is_zero() && (&t.im % &n).is_zero() {
            Some(Self::new(t.re / &n, t.im / &n))
        } else {
            None
        }
    }

    fn div_round(&self, o: &Self) -> Self {
        let n = o.norm();
        let t = self.mul(&Self::new(o.re.clone(), -&o.im));
        let round = |x: &BigInt| -> BigInt {
            // nearest integer to x / n, n > 0
            let two = BigInt::from(2);
            (x * &two + &n).div_floor(&(&n * &two))
        };
        Self::new(round(&t.re), round(&t.im))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let q = a.div_round(&b);
            let r = a.sub(&q.mul(&b));
            a = b;
            b = r;
        }
        a
    }

    /// The unit `u` in `{1, i, -1, -i}` moving `self` into the half-open
    /// first quadrant `re > 0, im >= 0`.
    pub fn normalizing_unit(&self) -> GaussianRational {
        let candidates = [
            GaussianInteger::new(self.re.clone(), self.im.clone()),
            GaussianInteger::new(-&self.im, self.re.clone()),
            GaussianInteger::new(-&self.re, -&self.im),
            GaussianInteger::new(self.im.clone(), -&self.re),
        ];
        for (k, c) in candidates.iter().enumerate() {
            if c.re.is_positive() && !c.im.is_negative() {
                return GaussianRational::i_pow(k as i64);
            }
        }
        GaussianRational::one()
    }

    pub fn to_rational(&self) -> GaussianRational {
        GaussianRational::new(
            Rational::from_integer(self.re.clone()),
            Rational::from_integer(self.im.clone()),
        )
    }

    pub fn from_rational(g: &GaussianRational) -> Option<Self> {
        if g.re.is_integer() && g.im.is_integer() {
            Some(Self::new(g.re.to_integer(), g.im.to_integer()))
        } else {
            None
        }
    }
}

/// Scale a list of Gaussian rationals (not all zero) to coprime Gaussian
/// integers, with `pivot(values)` unit-normalized. Returns the scale factor
/// that was applied.
pub fn primitive_scale(values: &[&GaussianRational], pivot: &GaussianRational) -> GaussianRational {
    let mut lcm = BigInt::one();
    for v in values {
        lcm = lcm.lcm(&v.denominator_lcm());
    }
    let lcm_q = GaussianRational::from(Rational::from_integer(lcm));
    let mut content = GaussianInteger::zero();
    for v in values {
        if let Some(g) = GaussianInteger::from_rational(&(*v * &lcm_q)) {
            content = content.gcd(&g);
        }
    }
    if content.is_zero() {
        return GaussianRational::one();
    }
    let scale = lcm_q.checked_div(&content.to_rational()).expect("content is nonzero");
    let scaled_pivot = pivot * &scale;
    let unit = GaussianInteger::from_rational(&scaled_pivot)
        .map(|g| g.normalizing_unit())
        .unwrap_or_else(GaussianRational::one);
    &scale * &unit
}

/// A point of the Riemann sphere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtScalar {
    Finite(GaussianRational),
    Infinity,
}

impl ExtScalar {
    pub fn int(n: i64) -> Self {
        ExtScalar::Finite(GaussianRational::from_integer(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtScalar::Infinity)
    }

    pub fn finite(&self) -> Option<&GaussianRational> {
        match self {
            ExtScalar::Finite(g) => Some(g),
            ExtScalar::Infinity => None,
        }
    }

    /// Homogeneous coordinates `[z : 1]` or `[1 : 0]`.
    pub fn to_homogeneous(&self) -> (GaussianRational, GaussianRational) {
        match self {
            ExtScalar::Finite(g) => (g.clone(), GaussianRational::one()),
            ExtScalar::Infinity => (GaussianRational::one(), GaussianRational::zero()),
        }
    }

    /// `[a : b]`, or `None` for the zero vector.
    pub fn from_homogeneous(a: &GaussianRational, b: &GaussianRational) -> Option<Self> {
        if b.is_zero() {
            if a.is_zero() {
                None
            } else {
                Some(ExtScalar::Infinity)
            }
        } else {
            Some(ExtScalar::Finite(a.checked_div(b).expect("nonzero")))
        }
    }
}

impl From<GaussianRational> for ExtScalar {
    fn from(g: GaussianRational) -> Self {
        ExtScalar::Finite(g)
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtScalar::Finite(g) => write!(f, "{g}"),
            ExtScalar::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "oo" => Ok(ExtScalar::Infinity),
            other => Ok(ExtScalar::Finite(other.parse()?)),
        }
    }
}

serde_via_string!(ExtScalar);

/// A point of the Riemann sphere, or the impossible outcome `bot`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointedScalar {
    Value(ExtScalar),
    Bottom,
}

impl PointedScalar {
    pub fn int(n: i64) -> Self {
        PointedScalar::Value(ExtScalar::int(n))
    }

    pub fn infinity() -> Self {
        PointedScalar::Value(ExtScalar::Infinity)
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, PointedScalar::Bottom)
    }

    pub fn value(&self) -> Option<&ExtScalar> {
        match self {
            PointedScalar::Value(v) => Some(v),
            PointedScalar::Bottom => None,
        }
    }

    fn from_homogeneous(a: &GaussianRational, b: &GaussianRational) -> Self {
        ExtScalar::from_homogeneous(a, b)
            .map(PointedScalar::Value)
            .unwrap_or(PointedScalar::Bottom)
    }

    /// Apply a bilinear map given on homogeneous coordinates, with `bot`
    /// absorbing and a zero image sent to `bot`.
    pub fn bilinear<F>(w: &Self, z: &Self, map: F) -> Self
    where
        F: Fn(
            &(GaussianRational, GaussianRational),
            &(GaussianRational, GaussianRational),
        ) -> (GaussianRational, GaussianRational),
    {
        match (w, z) {
            (PointedScalar::Value(w), PointedScalar::Value(z)) => {
                let (a, b) = map(&w.to_homogeneous(), &z.to_homogeneous());
                Self::from_homogeneous(&a, &b)
            }
            _ => PointedScalar::Bottom,
        }
    }
}

impl From<ExtScalar> for PointedScalar {
    fn from(v: ExtScalar) -> Self {
        PointedScalar::Value(v)
    }
}

impl From<GaussianRational> for PointedScalar {
    fn from(g: GaussianRational) -> Self {
        PointedScalar::Value(ExtScalar::Finite(g))
    }
}

impl fmt::Display for PointedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointedScalar::Value(v) => write!(f, "{v}"),
            PointedScalar::Bottom => write!(f, "bot"),
        }
    }
}

impl FromStr for PointedScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "bot" | "⊥" => Ok(PointedScalar::Bottom),
            other => Ok(PointedScalar::Value(other.parse()?)),
        }
    }
}

serde_via_string!(PointedScalar);

/// Pointed product: `bot` at `(inf, 0)` and `(0, inf)`.
pub fn ext_mul(w: &PointedScalar, z: &PointedScalar) -> PointedScalar {
    PointedScalar::bilinear(w, z, |(w0, w1), (z0, z1)| (w0 * z0, w1 * z1))
}

/// Pointed sum: `bot` at `(inf, inf)`.
pub fn ext_add(w: &PointedScalar, z: &PointedScalar) -> PointedScalar {
    PointedScalar::bilinear(w, z, |(w0, w1), (z0, z1)| (w0 * z1 + w1 * z0, w1 * z1))
}

/// `1/z` on the sphere: swaps `0` and `inf`.
pub fn ext_inv(z: &PointedScalar) -> PointedScalar {
    match z {
        PointedScalar::Value(v) => {
            let (a, b) = v.to_homogeneous();
            PointedScalar::from_homogeneous(&b, &a)
        }
        PointedScalar::Bottom => PointedScalar::Bottom,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn p(s: &str) -> PointedScalar {
        s.parse().unwrap()
    }

    #[test]
    fn field_examples() {
        assert_eq!(g("1+i") * g("1-i"), g("2"));
        assert_eq!(g("i").inv().unwrap(), g("-i"));
        assert_eq!(g("3/2") + g("1/3"), g("11/6"));
        assert_eq!(g("0").inv(), Err(Error::DivisionByZero));
        assert_eq!(g("1").checked_div(&g("0")), Err(Error::DivisionByZero));
    }

    #[test]
    fn scalar_text_roundtrip() {
        for s in ["0", "-3/2", "i", "-i", "1+i", "1/2-3/4*i", "7*i", "-2+5*i"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g(" 1 + 2 * i "), GaussianRational::from_parts(1, 2));
        assert_eq!(g("(1-i)"), GaussianRational::from_parts(1, -1));
        assert_eq!(g("2i"), GaussianRational::from_parts(0, 2));
        assert_eq!(g("0.25"), GaussianRational::from_ratio(1, 4));
        assert!("1+".parse::<GaussianRational>().is_err());
        assert!("x".parse::<GaussianRational>().is_err());
        assert_eq!(p("inf").to_string(), "inf");
        assert_eq!(p("bot").to_string(), "bot");
    }

    #[test]
    fn pointed_products() {
        assert_eq!(ext_mul(&p("inf"), &p("0")), PointedScalar::Bottom);
        assert_eq!(ext_mul(&p("0"), &p("inf")), PointedScalar::Bottom);
        assert_eq!(ext_mul(&p("2"), &p("3")), p("6"));
        assert_eq!(ext_mul(&p("bot"), &p("5")), PointedScalar::Bottom);
        assert_eq!(ext_mul(&p("inf"), &p("-i")), p("inf"));
    }

    #[test]
    fn pointed_sums() {
        assert_eq!(ext_add(&p("inf"), &p("inf")), PointedScalar::Bottom);
        assert_eq!(ext_add(&p("inf"), &p("7")), p("inf"));
        assert_eq!(ext_add(&p("1"), &p("-1")), p("0"));
        assert_eq!(ext_add(&p("5"), &p("bot")), PointedScalar::Bottom);
    }

    #[test]
    fn pointed_inverse() {
        assert_eq!(ext_inv(&p("0")), p("inf"));
        assert_eq!(ext_inv(&p("inf")), p("0"));
        assert_eq!(ext_inv(&p("2+i")), p("2/5-1/5*i"));
        assert_eq!(ext_inv(&p("bot")), PointedScalar::Bottom);
    }

    #[test]
    fn gaussian_integer_gcd() {
        let a = GaussianInteger::new(2.into(), 0.into());
        let b = GaussianInteger::new(1.into(), 1.into());
        // 2 = -i (1+i)^2
        assert_eq!(a.gcd(&b).norm(), BigInt::from(2));
        let five = GaussianInteger::new(5.into(), 0.into());
        let t = GaussianInteger::new(2.into(), 1.into());
        assert_eq!(five.gcd(&t).norm(), BigInt::from(5));
        assert!(five.div_exact(&t).is_some());
    }

    #[test]
    fn primitive_scale_normalizes_pivot() {
        let vals = [g("1/2+1/2*i"), g("1")];
        let refs: Vec<&GaussianRational> = vals.iter().collect();
        let s = primitive_scale(&refs, &vals[1]);
        let scaled: Vec<GaussianRational> = vals.iter().map(|v| v * &s).collect();
        // (1+i, 2) has content (1+i); the pivot 1-i is rotated to 1+i
        assert_eq!(scaled[1], g("1+i"));
        assert_eq!(scaled[0], g("i"));
    }
}
