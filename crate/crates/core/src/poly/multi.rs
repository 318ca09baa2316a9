use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::fmt::write_terms;
use super::UniPoly;
use crate::error::{Error, Result};
use crate::exactnum::{primitive_scale, GaussianRational};

type Gq = GaussianRational;

/// Sparse polynomial in a fixed number of variables over `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Vec<u32>, Gq>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Gq) -> Self {
        Self::monomial(arity, vec![0; arity], c)
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Gq::one())
    }

    /// The variable `z_{j+1}`.
    pub fn var(arity: usize, j: usize) -> Self {
        let mut e = vec![0; arity];
        e[j] = 1;
        Self::monomial(arity, e, Gq::one())
    }

    pub fn monomial(arity: usize, exps: Vec<u32>, c: Gq) -> Self {
        assert_eq!(exps.len(), arity);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { arity, terms }
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Vec<u32>, Gq)>) -> Self {
        let mut out = Self::zero(arity);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<u32>, c: Gq) {
        assert_eq!(e.len(), self.arity);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Gq::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Gq)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, j: usize) -> u32 {
        self.terms.keys().map(|e| e[j]).max().unwrap_or(0)
    }

    /// Coefficient of `z_j^k`, as a polynomial in the same variables.
    pub fn coeff_in(&self, j: usize, k: u32) -> MultiPoly {
        Self::from_terms(
            self.arity,
            self.terms.iter().filter(|(e, _)| e[j] == k).map(|(e, c)| {
                let mut e = e.clone();
                e[j] = 0;
                (e, c.clone())
            }),
        )
    }

    pub fn scale(&self, c: &Gq) -> Self {
        Self::from_terms(self.arity, self.terms.iter().map(|(e, v)| (e.clone(), v * c)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.arity);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Gq]) -> Result<Gq> {
        if point.len() != self.arity {
            return Err(Error::Dimension(format!(
                "expected {} values, got {}",
                self.arity,
                point.len()
            )));
        }
        let mut acc = Gq::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= &x.pow(k);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitutes the same variable for every `z_j`.
    pub fn diagonal(&self) -> UniPoly {
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![Gq::zero(); deg + 1];
        for (e, c) in &self.terms {
            let k: u32 = e.iter().sum();
            coeffs[k as usize] += c;
        }
        UniPoly::new(coeffs)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_gcd(&self) -> Vec<u32> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.arity];
        };
        let mut g = first.clone();
        for e in it {
            for (a, b) in g.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        g
    }

    /// Divides every term by the monomial `z^m`; every exponent must be at
    /// least `m`.
    pub fn div_monomial(&self, m: &[u32]) -> Self {
        Self::from_terms(
            self.arity,
            self.terms.iter().map(|(e, c)| {
                let e = e.iter().zip(m).map(|(a, b)| a - b).collect();
                (e, c.clone())
            }),
        )
    }

    /// Scale factor giving coprime Gaussian integer coefficients with the
    /// leading coefficient (greatest exponent in graded order) normalized.
    pub fn primitive_factor(&self) -> Gq {
        match self.leading_term() {
            None => Gq::one(),
            Some((_, lead)) => {
                let refs: Vec<&Gq> = self.terms.values().collect();
                primitive_scale(&refs, lead)
            }
        }
    }

    /// Greatest term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &Gq)> {
        self.terms.iter().max_by(|(a, _), (b, _)| graded_cmp(a, b))
    }

    /// `sum_k P_k * num^k * den^(D-k)` where `P_k` is the coefficient of
    /// `z_j^k` and `D` the degree in `z_j`: the numerator of `P` after
    /// substituting `z_j = num/den`, over the denominator `den^D`. All three
    /// polynomials share the same variables.
    pub fn subst_homogeneous(&self, j: usize, num: &MultiPoly, den: &MultiPoly) -> Result<MultiPoly> {
        if num.arity != self.arity || den.arity != self.arity || j >= self.arity {
            return Err(Error::Dimension("substitution arity mismatch".into()));
        }
        let d = self.degree_in(j);
        let mut acc = Self::zero(self.arity);
        for k in 0..=d {
            let pk = self.coeff_in(j, k);
            if !pk.is_zero() {
                acc = &acc + &(&(&pk * &num.pow(k)) * &den.pow(d - k));
            }
        }
        Ok(acc)
    }

    /// Formats with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named { p: self, names }
    }
}

fn graded_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

struct Named<'a> {
    p: &'a MultiPoly,
    names: &'a [String],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Vec<u32>, &Gq)> = self.p.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| graded_cmp(b, a));
        write_terms(
            f,
            terms.into_iter().map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .zip(self.names)
                    .filter(|(&k, _)| k > 0)
                    .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
                    .collect();
                (c.clone(), mono.join("*"))
            }),
        )
    }
}

/// Default variable names `z1, ..., zn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|j| format!("z{j}")).collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.arity);
        fmt::Display::fmt(&Named { p: self, names: &names }, f)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut acc: BTreeMap<Vec<u32>, Gq> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Gq::zero) += &(ca * cb);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly {
            arity: self.arity,
            terms: acc,
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}
