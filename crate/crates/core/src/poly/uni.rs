use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::fmt::write_terms;
use super::parse;
use crate::error::{Error, Result};
use crate::exactnum::{primitive_scale, GaussianInteger, GaussianRational};

type Gq = GaussianRational;

/// Dense univariate polynomial over `Q(i)`, ascending coefficients.
///
/// The coefficient list never ends in a zero; the zero polynomial is the
/// empty list. The variable name only affects printing and parsing.
#[derive(Clone, Debug)]
pub struct UniPoly {
    coeffs: Vec<Gq>,
    var: String,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

impl Hash for UniPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Default for UniPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Gq>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self {
            coeffs,
            var: "z".to_string(),
        }
    }

    pub fn with_var(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Ascending integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Gq::from_integer(c)).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(Gq::one())
    }

    pub fn constant(c: Gq) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn x() -> Self {
        Self::monomial(Gq::one(), 1)
    }

    pub fn monomial(c: Gq, k: usize) -> Self {
        let mut coeffs = vec![Gq::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `z - a`
    pub fn linear_root(a: &Gq) -> Self {
        Self::new(vec![-a, Gq::one()])
    }

    pub fn coeffs(&self) -> &[Gq] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Gq {
        self.coeffs.get(k).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Gq> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Gq) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect()).with_var(&self.var)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one().with_var(&self.var);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, z: &Gq) -> Gq {
        let mut acc = Gq::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * z;
            acc += c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Gq::from_integer(k as i64))
                .collect(),
        )
        .with_var(&self.var)
    }

    /// `self(g(z))`
    pub fn compose(&self, g: &UniPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc.with_var(&self.var)
    }

    /// `z^deg * self(1/z)`; `deg` must be at least the degree.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut coeffs = vec![Gq::zero(); deg + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[deg - k] = c.clone();
        }
        Self::new(coeffs).with_var(&self.var)
    }

    pub fn divrem(&self, b: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let lead = b
            .leading()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let lead_inv = lead.inv()?;
        let db = b.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero().with_var(&self.var), self.clone()));
        }
        let mut quot = vec![Gq::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + db] * &lead_inv;
            if !c.is_zero() {
                for (j, bc) in b.coeffs.iter().enumerate() {
                    let t = &c * bc;
                    rem[k + j] -= &t;
                }
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((Self::new(quot).with_var(&self.var), Self::new(rem).with_var(&self.var)))
    }

    pub fn rem(&self, b: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(b)?.1)
    }

    /// Quotient when `b` divides `self` exactly.
    pub fn div_exact(&self, b: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divrem(b)?;
        if !r.is_zero() {
            return Err(Error::domain(format!("{b} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        !self.is_zero() && other.rem(self).is_ok_and(|r| r.is_zero())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    /// Scalar multiple with coprime Gaussian integer coefficients and leading
    /// coefficient in the first quadrant (`re > 0, im >= 0`).
    pub fn primitive(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lead) => {
                let refs: Vec<&Gq> = self.coeffs.iter().filter(|c| !c.is_zero()).collect();
                self.scale(&primitive_scale(&refs, lead))
            }
        }
    }

    /// Whether `self` and `other` differ by a nonzero scalar factor.
    pub fn eq_up_to_scalar(&self, other: &UniPoly) -> bool {
        self.primitive() == other.primitive()
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::domain("gcd of two zero polynomials"));
        }
        let (mut x, mut y) = (a.monic(), b.monic());
        while !y.is_zero() {
            let r = x.rem(&y)?;
            x = y;
            y = r.monic();
        }
        Ok(x.monic().with_var(&a.var))
    }

    /// Largest `k` such that `mu^k` divides `self`. `mu` must be nonconstant
    /// and `self` nonzero.
    pub fn multiplicity_of(&self, mu: &UniPoly) -> usize {
        if mu.is_constant() || self.is_zero() {
            return 0;
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            match cur.divrem(mu) {
                Ok((q, r)) if r.is_zero() => {
                    k += 1;
                    cur = q;
                }
                _ => return k,
            }
        }
    }

    /// Order of vanishing at `z0`.
    pub fn order_at(&self, z0: &Gq) -> usize {
        self.multiplicity_of(&Self::linear_root(z0))
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        Self::gcd(self, &self.derivative()).is_ok_and(|g| g.is_constant())
    }

    /// Yun's square-free decomposition. Factors are pairwise coprime,
    /// square-free, primitive, and their powers multiply to `self` up to a
    /// unit.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::domain("square-free decomposition of zero"));
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let a = self.monic();
        let b = a.derivative();
        let mut c = Self::gcd(&a, &b)?;
        let mut w = a.div_exact(&c)?;
        let mut i = 1;
        while !c.is_constant() {
            let y = Self::gcd(&w, &c)?;
            let z = w.div_exact(&y)?;
            if !z.is_constant() {
                out.push((z.primitive().with_var(&self.var), i));
            }
            i += 1;
            c = c.div_exact(&y)?;
            w = y;
        }
        if !w.is_constant() {
            out.push((w.primitive().with_var(&self.var), i));
        }
        Ok(out)
    }

    pub fn squarefree_part(&self) -> Result<UniPoly> {
        let mut acc = Self::one().with_var(&self.var);
        for (f, _) in self.squarefree_decomposition()? {
            acc = &acc * &f;
        }
        Ok(acc.primitive())
    }

    /// All roots lying in `Q(i)`, with multiplicities, in a deterministic
    /// order (zero first, then by real part, then imaginary part).
    ///
    /// Candidates come from the Gaussian divisors of the end coefficients,
    /// found by trial division up to `10^7`; a norm with two prime factors
    /// above that bound may lose candidates.
    pub fn rational_roots(&self) -> Vec<(Gq, usize)> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let zero_order = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let rest = Self::new(self.coeffs[zero_order..].to_vec());
        if zero_order > 0 {
            roots.push((Gq::zero(), zero_order));
        }
        if rest.is_constant() {
            return roots;
        }
        let mut cur = rest.squarefree_part().expect("nonzero");
        let a0 = GaussianInteger::from_rational(&cur.coeffs[0]).expect("primitive");
        let an = GaussianInteger::from_rational(cur.leading().unwrap()).expect("primitive");
        let numer = gaussian_divisors(&a0);
        let denom = gaussian_divisors(&an);
        let mut approx = cur.f64_coeffs();
        'search: for gamma in &denom {
            let g = gamma.to_rational();
            let gf = g.to_f64_pair();
            for beta in &numer {
                let b = beta.to_rational();
                let base = cdiv(b.to_f64_pair(), gf);
                for k in 0..4 {
                    if cur.is_constant() {
                        break 'search;
                    }
                    let unit = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)][k];
                    if !maybe_root(&approx, cmul(base, unit)) {
                        continue;
                    }
                    let cand = &b.checked_div(&g).unwrap() * &Gq::i_pow(k as i64);
                    if cur.eval(&cand).is_zero() {
                        cur = cur.div_exact(&Self::linear_root(&cand)).unwrap();
                        approx = cur.f64_coeffs();
                        roots.push((cand.clone(), rest.order_at(&cand)));
                    }
                }
            }
        }
        roots.sort_by(|(a, _), (b, _)| (&a.re, &a.im).cmp(&(&b.re, &b.im)));
        roots
    }

    fn f64_coeffs(&self) -> Vec<(f64, f64)> {
        self.coeffs.iter().map(|c| c.to_f64_pair()).collect()
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => self.var.clone(),
                    _ => format!("{}^{k}", self.var),
                };
                (c.clone(), mono)
            });
        write_terms(f, terms)
    }
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cdiv(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let n = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
}

/// Floating-point filter: `false` only when `z` is clearly not a root, so
/// exact evaluation is needed only for near-roots or on overflow.
fn maybe_root(coeffs: &[(f64, f64)], z: (f64, f64)) -> bool {
    let r = z.0.hypot(z.1);
    let mut v = (0.0, 0.0);
    let mut bound = 0.0;
    for c in coeffs.iter().rev() {
        v = cmul(v, z);
        v = (v.0 + c.0, v.1 + c.1);
        bound = bound * r + c.0.hypot(c.1);
    }
    let mag = v.0.hypot(v.1);
    !(mag.is_finite() && bound.is_finite()) || mag <= 1e-6 * bound
}

/// Rational primes dividing `n` (n > 0), by trial division.
fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(10_000_000u64);
    while &p * &p <= n && p < limit {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Gaussian primes above the rational prime `p`, up to units.
fn gaussian_primes_over(p: &BigInt) -> Vec<GaussianInteger> {
    let two = BigInt::from(2u32);
    if *p == two {
        return vec![GaussianInteger::new(BigInt::one(), BigInt::one())];
    }
    if (p % BigInt::from(4u32)) == BigInt::from(3u32) {
        return vec![GaussianInteger::new(p.clone(), BigInt::zero())];
    }
    // p = a^2 + b^2
    let mut a = BigInt::one();
    while &a * &a < *p {
        let rest = p - &a * &a;
        let b = rest.sqrt();
        if &b * &b == rest {
            return vec![GaussianInteger::new(a.clone(), b.clone()), GaussianInteger::new(a, -b)];
        }
        a += 1u32;
    }
    vec![GaussianInteger::new(p.clone(), BigInt::zero())]
}

/// Divisors of a nonzero Gaussian integer, one representative per class of
/// associates.
fn gaussian_divisors(a: &GaussianInteger) -> Vec<GaussianInteger> {
    let mut factors: Vec<(GaussianInteger, u32)> = Vec::new();
    for p in prime_factors(&a.norm()) {
        for pi in gaussian_primes_over(&p) {
            let mut e = 0;
            let mut cur = a.clone();
            while let Some(q) = cur.div_exact(&pi) {
                e += 1;
                cur = q;
            }
            if e > 0 {
                factors.push((pi, e));
            }
        }
    }
    let mut divs = vec![GaussianInteger::new(BigInt::one(), BigInt::zero())];
    for (pi, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = acc.mul(&pi);
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UniPoly::new(out).with_var(&self.var)
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero().with_var(&self.var);
        }
        let mut out = vec![Gq::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        UniPoly::new(out).with_var(&self.var)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect()).with_var(&self.var)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl FromStr for UniPoly {
    type Err = Error;

    /// Parses a polynomial in a single variable (any name; `i` is the
    /// imaginary unit). Division is only allowed by constants.
    fn from_str(s: &str) -> Result<Self> {
        let ast = parse::parse(s)?;
        let var = parse::single_variable(&ast)?.unwrap_or_else(|| "z".to_string());
        let (num, den) = parse::eval_univariate(&ast, &var)?;
        if !den.is_constant() {
            return Err(Error::parse(0, format!("`{s}` is not a polynomial")));
        }
        let c = den.coeff(0).inv()?;
        Ok(num.scale(&c).with_var(&var))
    }
}

impl serde::Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<Gq> = Vec::deserialize(d)?;
        Ok(UniPoly::new(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> UniPoly {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p("z+1") * p("z-1"), p("z^2-1"));
        let (q, r) = p("z^2-1").divrem(&p("z-1")).unwrap();
        assert_eq!((q, r), (p("z+1"), UniPoly::zero()));
        let lhs = p("z^5-5z") - p("z") * p("5z^4-1");
        assert_eq!(lhs, p("-4z^5-4z"));
        assert_eq!(lhs, p("-4*z*(z^4+1)"));
        assert!(p("z").divrem(&UniPoly::zero()).is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(UniPoly::gcd(&p("z^2-1"), &p("z^2-2z+1")).unwrap(), p("z-1"));
        assert_eq!(UniPoly::gcd(&p("z^5-5z"), &p("5z^4-1")).unwrap(), UniPoly::one());
        assert_eq!(UniPoly::gcd(&UniPoly::zero(), &p("3z^3")).unwrap(), p("z^3"));
        assert!(UniPoly::gcd(&UniPoly::zero(), &UniPoly::zero()).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("z^5-5z").derivative(), p("5z^4-5"));
        assert_eq!(p("7").derivative(), UniPoly::zero());
        assert_eq!(p("z^8+14z^4+1").derivative(), p("8z^7+56z^3"));
    }

    #[test]
    fn squarefree_examples() {
        let a = p("z^2*(z-1)^3");
        assert_eq!(a.squarefree_decomposition().unwrap(), vec![(p("z"), 2), (p("z-1"), 3)]);
        let f = p("z^8+14z^4+1");
        assert_eq!(f.squarefree_decomposition().unwrap(), vec![(f.clone(), 1)]);
        let shor = p("9(z-1)^2 z^2 (z+1)^2 (z^2-z+1)^2 (z^2+z+1)^2");
        let dec = shor.squarefree_decomposition().unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[0].1, 2);
        assert_eq!(dec[0].0, p("(z-1) z (z+1) (z^2-z+1) (z^2+z+1)"));
        assert!(UniPoly::zero().squarefree_decomposition().is_err());
    }

    #[test]
    fn rational_root_examples() {
        let shor_r = p("(z-1)z(z+1)(z^2+1)(z^2-z-1)(z^2+z-1)");
        let roots: Vec<Gq> = shor_r.rational_roots().into_iter().map(|(r, _)| r).collect();
        let expect: Vec<Gq> = ["-1", "-i", "0", "i", "1"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(roots, expect);
        assert_eq!(p("-4z(z^4+1)").rational_roots(), vec![(Gq::zero(), 1)]);
        let r = p("z^2+1").rational_roots();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|(x, m)| *m == 1 && x.re.is_zero()));
    }

    #[test]
    fn rational_roots_gaussian_and_multiple() {
        // (2z - (1+i))^2 (3z + 2i)
        let f = p("(2z-1-i)^2 (3z+2i)");
        let roots = f.rational_roots();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&("1/2+1/2*i".parse().unwrap(), 2)));
        assert!(roots.contains(&("-2/3*i".parse().unwrap(), 1)));
        for (r, _) in roots {
            assert!(f.eval(&r).is_zero());
        }
    }

    #[test]
    fn display_is_descending_with_explicit_stars() {
        assert_eq!(p("3z^3 + z^9").to_string(), "z^9 + 3*z^3");
        assert_eq!(p("-4z^5-4z").to_string(), "-4*z^5 - 4*z");
        assert_eq!(p("(1+i) z^2 - i z + 1/2").to_string(), "(1+i)*z^2 - i*z + 1/2");
        assert_eq!(p("z**2 + 1").to_string(), "z^2 + 1");
        assert_eq!(UniPoly::zero().to_string(), "0");
        let s = p("(1+i) z^2 - i z + 1/2").to_string();
        assert_eq!(p(&s), p("(1+i) z^2 - i z + 1/2"));
    }

    #[test]
    fn parse_accepts_either_order() {
        assert_eq!(p("1 + 2*z + z^2"), p("z^2 + 2*z + 1"));
        assert!("1/z".parse::<UniPoly>().is_err());
        assert!("z + w".parse::<UniPoly>().is_err());
    }
}
