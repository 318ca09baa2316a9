//! Rational functions on the Riemann sphere.
//!
//! A [`MeroFn`] is kept reduced and canonically scaled, so structural
//! equality is equality of functions. Ramification is read off the
//! Wronskian `W = p'q - pq'`, which vanishes to order `m - 1` at every
//! finite point of multiplicity `m`, poles included.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{primitive_scale, ExtScalar, GaussianRational};
use crate::poly::{default_names, parse, MultiPoly, UniPoly};
use crate::projective::Mobius;

type Gq = GaussianRational;

/// Reduced rational function `p/q` in one variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMero")]
pub struct MeroFn {
    num: UniPoly,
    den: UniPoly,
}

#[derive(Deserialize)]
struct RawMero {
    num: UniPoly,
    den: UniPoly,
}

impl TryFrom<RawMero> for MeroFn {
    type Error = Error;
    fn try_from(raw: RawMero) -> Result<Self> {
        MeroFn::reduce(raw.num, raw.den)
    }
}

/// Branch points: square-free factors of the Wronskian with their order
/// `m - 1`, plus the order at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDivisor {
    pub finite: Vec<(UniPoly, usize)>,
    pub infinity_order: usize,
}

impl BranchDivisor {
    /// Total order, each factor counted with its degree.
    pub fn total(&self) -> usize {
        self.finite.iter().map(|(f, e)| f.degree_or_zero() * e).sum::<usize>() + self.infinity_order
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhAudit {
    pub lhs: usize,
    pub rhs: usize,
    pub ok: bool,
}

impl MeroFn {
    /// Cancels `gcd(p, q)` and applies the canonical scaling: coprime
    /// Gaussian integer coefficients with the leading coefficient of `q`
    /// in the first quadrant.
    pub fn reduce(p: UniPoly, q: UniPoly) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::domain("denominator is zero"));
        }
        if p.is_zero() {
            return Ok(Self::constant(Gq::zero()));
        }
        let g = UniPoly::gcd(&p, &q)?;
        if g.is_constant() {
            Ok(Self::normalized(p, q))
        } else {
            Ok(Self::normalized(p.div_exact(&g)?, q.div_exact(&g)?))
        }
    }

    /// Canonical scaling of a coprime pair with `q` nonzero.
    fn normalized(p: UniPoly, q: UniPoly) -> Self {
        if p.is_zero() {
            return Self::constant(Gq::zero());
        }
        let refs: Vec<&Gq> = p.coeffs().iter().chain(q.coeffs()).filter(|c| !c.is_zero()).collect();
        let s = primitive_scale(&refs, q.leading().expect("nonzero"));
        Self {
            num: p.scale(&s).with_var("z"),
            den: q.scale(&s).with_var("z"),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self::reduce(p, UniPoly::one()).expect("denominator is one")
    }

    pub fn constant(c: Gq) -> Self {
        if c.is_zero() {
            return Self {
                num: UniPoly::zero(),
                den: UniPoly::one(),
            };
        }
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn identity() -> Self {
        Self::from_poly(UniPoly::x())
    }

    /// `1/z`
    pub fn reciprocal_map() -> Self {
        Self::reduce(UniPoly::one(), UniPoly::x()).expect("nonzero")
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree_or_zero().max(self.den.degree_or_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn eval(&self, z: &ExtScalar) -> ExtScalar {
        match z {
            ExtScalar::Finite(z) => ExtScalar::from_homogeneous(&self.num.eval(z), &self.den.eval(z))
                .expect("reduced numerator and denominator share no root"),
            ExtScalar::Infinity => {
                let d = self.degree();
                ExtScalar::from_homogeneous(&self.num.coeff(d), &self.den.coeff(d))
                    .expect("one of the two leading coefficients is nonzero")
            }
        }
    }

    /// `self(g(z))`
    pub fn compose(&self, g: &MeroFn) -> Result<Self> {
        let d = self.degree();
        let a_pows: Vec<UniPoly> = powers(&g.num, d);
        let b_pows: Vec<UniPoly> = powers(&g.den, d);
        let homog = |p: &UniPoly| {
            let mut acc = UniPoly::zero();
            for (k, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&a_pows[k] * &b_pows[d - k]).scale(c);
                }
            }
            acc
        };
        let (n, m) = (homog(&self.num), homog(&self.den));
        if m.is_zero() {
            return Err(Error::domain("composition has zero denominator"));
        }
        // coprime forms evaluated at a coprime pair have no common root
        Ok(Self::normalized(n, m))
    }

    pub fn deriv(&self) -> Self {
        let w = self.raw_wronskian();
        Self::reduce(w, &self.den * &self.den).expect("denominator is nonzero")
    }

    fn raw_wronskian(&self) -> UniPoly {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    /// `p'q - pq'` for the canonical `p/q`.
    pub fn wronskian(&self) -> Result<UniPoly> {
        let w = self.raw_wronskian();
        if w.is_zero() {
            return Err(Error::domain("constant function has no Wronskian"));
        }
        Ok(w)
    }

    /// `f(1/z)`, which has the same ramification at 0 as `f` has at infinity.
    pub fn at_infinity_chart(&self) -> Self {
        self.compose(&Self::reciprocal_map()).expect("1/z is nonconstant")
    }

    /// Number of sheets meeting at the point.
    pub fn ramification_at(&self, z: &ExtScalar) -> Result<usize> {
        match z {
            ExtScalar::Finite(z0) => Ok(1 + self.wronskian()?.order_at(z0)),
            ExtScalar::Infinity => self.at_infinity_chart().ramification_at(&ExtScalar::Finite(Gq::zero())),
        }
    }

    /// `1 + max{k : mu^k | W}` for square-free `mu`; this is the least
    /// ramification index over the roots of `mu`.
    pub fn ramification_on(&self, mu: &UniPoly) -> Result<usize> {
        if mu.is_constant() {
            return Err(Error::domain("constant polynomial has no roots"));
        }
        if !mu.is_squarefree() {
            return Err(Error::domain(format!("{mu} is not square-free")));
        }
        Ok(1 + self.wronskian()?.multiplicity_of(mu))
    }

    pub fn branch_divisor(&self) -> Result<BranchDivisor> {
        let w = self.wronskian()?;
        let finite = w.squarefree_decomposition()?;
        let infinity_order = self.ramification_at(&ExtScalar::Infinity)? - 1;
        Ok(BranchDivisor { finite, infinity_order })
    }

    /// Total branching against `2(d - 1)`.
    pub fn rh_audit(&self) -> Result<RhAudit> {
        let lhs = self.branch_divisor()?.total();
        let rhs = 2 * (self.degree() - 1);
        Ok(RhAudit {
            lhs,
            rhs,
            ok: lhs == rhs,
        })
    }

    /// `p - z q`, made primitive; its roots are the finite fixed points.
    pub fn r_polynomial(&self) -> UniPoly {
        (&self.num - &(&UniPoly::x() * &self.den)).primitive()
    }

    /// Whether infinity is a fixed point.
    pub fn fixes_infinity(&self) -> bool {
        self.num.degree_or_zero() > self.den.degree_or_zero()
    }

    /// `m^-1 ∘ self ∘ m`
    pub fn mobius_conjugate(&self, m: &Mobius) -> Result<Self> {
        m.inverse().to_merofn().compose(&self.compose(&m.to_merofn())?)
    }

    /// Post-composition by a Möbius map, `m ∘ self`.
    pub fn mobius_after(&self, m: &Mobius) -> Result<Self> {
        m.to_merofn().compose(self)
    }
}

fn powers(p: &UniPoly, d: usize) -> Vec<UniPoly> {
    let mut out = Vec::with_capacity(d + 1);
    out.push(UniPoly::one());
    for k in 1..=d {
        out.push(&out[k - 1] * p);
    }
    out
}

impl fmt::Display for MeroFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl FromStr for MeroFn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let ast = parse::parse(s)?;
        let var = parse::single_variable(&ast)?.unwrap_or_else(|| "z".to_string());
        let (n, d) = parse::eval_univariate(&ast, &var)?;
        Self::reduce(n, d)
    }
}

/// Rational function of several variables. Only monomial content is
/// cancelled; equality is by cross-multiplication.
#[derive(Clone, Debug, Deserialize)]
#[serde(try_from = "RawMulti")]
pub struct MultiMeroFn {
    num: MultiPoly,
    den: MultiPoly,
    vars: Vec<String>,
}

#[derive(Deserialize)]
struct RawMulti {
    num: String,
    den: String,
    vars: Vec<String>,
}

impl TryFrom<RawMulti> for MultiMeroFn {
    type Error = Error;
    fn try_from(raw: RawMulti) -> Result<Self> {
        let poly = |s: &str| -> Result<MultiPoly> {
            let ast = parse::parse(s)?;
            let (n, d) = parse::eval_multivariate(&ast, &raw.vars)?;
            if !d.is_constant() || d.is_zero() {
                return Err(Error::domain("expected a polynomial"));
            }
            let c = d.terms().next().expect("nonzero").1.inv()?;
            Ok(n.scale(&c))
        };
        Self::with_vars(poly(&raw.num)?, poly(&raw.den)?, raw.vars)
    }
}

impl Serialize for MultiMeroFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MultiMeroFn", 3)?;
        st.serialize_field("num", &self.num.display_with(&self.vars).to_string())?;
        st.serialize_field("den", &self.den.display_with(&self.vars).to_string())?;
        st.serialize_field("vars", &self.vars)?;
        st.end()
    }
}

impl MultiMeroFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        let n = num.arity();
        Self::with_vars(num, den, default_names(n))
    }

    pub fn with_vars(num: MultiPoly, den: MultiPoly, vars: Vec<String>) -> Result<Self> {
        if num.arity() != den.arity() || vars.len() != num.arity() {
            return Err(Error::Dimension("numerator, denominator and variables disagree".into()));
        }
        if den.is_zero() {
            return Err(Error::domain("denominator is zero"));
        }
        let arity = num.arity();
        if num.is_zero() {
            return Ok(Self {
                num,
                den: MultiPoly::one(arity),
                vars,
            });
        }
        let gn = num.monomial_gcd();
        let gd = den.monomial_gcd();
        let g: Vec<u32> = gn.iter().zip(&gd).map(|(a, b)| *a.min(b)).collect();
        let (num, den) = (num.div_monomial(&g), den.div_monomial(&g));
        let refs: Vec<&Gq> = num.terms().chain(den.terms()).map(|(_, c)| c).collect();
        let s = primitive_scale(&refs, den.leading_term().expect("nonzero").1);
        Ok(Self {
            num: num.scale(&s),
            den: den.scale(&s),
            vars,
        })
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Renames the variables without changing the function.
    pub fn rename(mut self, vars: Vec<String>) -> Result<Self> {
        if vars.len() != self.arity() {
            return Err(Error::Dimension("wrong number of variable names".into()));
        }
        self.vars = vars;
        Ok(self)
    }

    /// Value at a point of `(Q(i) ∪ {∞})^n`. A coordinate at infinity is
    /// handled by the chart `z_j = 1/t` at `t = 0`. Returns `None` when
    /// numerator and denominator both vanish there.
    pub fn eval(&self, point: &[ExtScalar]) -> Result<Option<ExtScalar>> {
        if point.len() != self.arity() {
            return Err(Error::Dimension(format!(
                "expected {} values, got {}",
                self.arity(),
                point.len()
            )));
        }
        let (mut n, mut d) = (self.num.clone(), self.den.clone());
        let mut finite = Vec::with_capacity(point.len());
        for (j, z) in point.iter().enumerate() {
            match z {
                ExtScalar::Finite(v) => finite.push(v.clone()),
                ExtScalar::Infinity => {
                    let top = n.degree_in(j).max(d.degree_in(j));
                    n = n.coeff_in(j, top);
                    d = d.coeff_in(j, top);
                    finite.push(Gq::zero());
                }
            }
        }
        Ok(ExtScalar::from_homogeneous(&n.eval(&finite)?, &d.eval(&finite)?))
    }

    /// Sets every variable equal to `z`.
    pub fn diagonal(&self) -> Result<MeroFn> {
        let n = self.num.diagonal();
        let d = self.den.diagonal();
        if d.is_zero() {
            return Err(Error::domain("diagonal has zero denominator"));
        }
        MeroFn::reduce(n, d)
    }

    /// Substitutes `g` (in the same variables) for variable `j`.
    pub fn substitute(&self, j: usize, g: &MultiMeroFn) -> Result<Self> {
        if g.arity() != self.arity() || j >= self.arity() {
            return Err(Error::Dimension("substitution arity mismatch".into()));
        }
        let dn = self.num.degree_in(j);
        let dd = self.den.degree_in(j);
        let top = dn.max(dd);
        let n = &self.num.subst_homogeneous(j, &g.num, &g.den)? * &g.den.pow(top - dn);
        let d = &self.den.subst_homogeneous(j, &g.num, &g.den)? * &g.den.pow(top - dd);
        Self::with_vars(n, d, self.vars.clone())
    }

    pub fn from_merofn(f: &MeroFn) -> Self {
        let lift = |p: &UniPoly| {
            MultiPoly::from_terms(
                1,
                p.coeffs().iter().enumerate().map(|(k, c)| (vec![k as u32], c.clone())),
            )
        };
        Self::with_vars(lift(f.num()), lift(f.den()), vec!["z".into()]).expect("valid")
    }

    /// Parses with variables listed in natural order of their names.
    pub fn parse_with_vars(s: &str, vars: Option<Vec<String>>) -> Result<Self> {
        let ast = parse::parse(s)?;
        let vars = vars.unwrap_or_else(|| parse::variables(&ast));
        let (n, d) = parse::eval_multivariate(&ast, &vars)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::with_vars(n, d, vars)
    }
}

impl PartialEq for MultiMeroFn {
    fn eq(&self, other: &Self) -> bool {
        self.arity() == other.arity() && &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for MultiMeroFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.display_with(&self.vars);
        if self.den == MultiPoly::one(self.arity()) {
            write!(f, "{n}")
        } else {
            write!(f, "({n})/({})", self.den.display_with(&self.vars))
        }
    }
}

impl FromStr for MultiMeroFn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_vars(s, None)
    }
}
