//! Pointed projective spaces, Möbius maps and the octahedral symmetry of
//! the single-qubit Clifford group.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{primitive_scale, serde_via_string, ExtScalar, GaussianRational};
use crate::merofn::MeroFn;
use crate::poly::UniPoly;

type Gq = GaussianRational;

/// A point of `P(C^d) ∪ {⊥}`, stored with its last nonzero coordinate
/// equal to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointedProjPoint {
    Bottom,
    Point(Vec<Gq>),
}

impl PointedProjPoint {
    /// The class of `v`; the zero vector gives `⊥`.
    pub fn new(v: Vec<Gq>) -> Self {
        match v.iter().rposition(|c| !c.is_zero()) {
            None => Self::Bottom,
            Some(k) => {
                let s = v[k].inv().expect("nonzero");
                Self::Point(v.iter().map(|c| c * &s).collect())
            }
        }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&c| Gq::from_integer(c)).collect())
    }

    /// `[z : 1]`, or `[1 : 0]` for infinity.
    pub fn from_ext(z: &ExtScalar) -> Self {
        let (a, b) = z.to_homogeneous();
        Self::new(vec![a, b])
    }

    /// The sphere coordinate of a point of `P^1`.
    pub fn to_ext(&self) -> Option<ExtScalar> {
        match self {
            Self::Point(v) if v.len() == 2 => ExtScalar::from_homogeneous(&v[0], &v[1]),
            _ => None,
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Self::Bottom)
    }

    pub fn coords(&self) -> Option<&[Gq]> {
        match self {
            Self::Point(v) => Some(v),
            Self::Bottom => None,
        }
    }
}

impl fmt::Display for PointedProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Bottom => f.write_str("bot"),
            Self::Point(v) => {
                let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                write!(f, "[{}]", parts.join(":"))
            }
        }
    }
}

impl FromStr for PointedProjPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "bot" || t == "⊥" {
            return Ok(Self::Bottom);
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let v = inner.split(':').map(|c| c.parse::<Gq>()).collect::<Result<Vec<_>>>()?;
            let p = Self::new(v);
            if p.is_bottom() {
                return Err(Error::parse(0, "the zero vector is not a projective point"));
            }
            return Ok(p);
        }
        Ok(Self::from_ext(&t.parse()?))
    }
}

/// Dense matrix over `Q(i)`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Gq>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Gq>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&c| Gq::from_integer(c)).collect()).expect("entry count matches")
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for k in 0..n {
            m.entries[k * n + k] = Gq::one();
        }
        m
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Gq::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Gq {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Gq) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zero(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let t = a * o.get(k, c);
                    out.entries[r * o.cols + c] += &t;
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut out = Self::zero(self.rows * o.rows, self.cols * o.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..o.rows {
                    for c2 in 0..o.cols {
                        out.set(r1 * o.rows + r2, c1 * o.cols + c2, a * o.get(r2, c2));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Gq]) -> Result<Vec<Gq>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Gq::zero();
                for (c, x) in v.iter().enumerate() {
                    acc += &(self.get(r, c) * x);
                }
                acc
            })
            .collect())
    }
}

/// `[T v]`, or `⊥` when `T v = 0` or the input is `⊥`.
pub fn proj_apply(t: &Matrix, x: &PointedProjPoint) -> Result<PointedProjPoint> {
    match x {
        PointedProjPoint::Bottom => Ok(PointedProjPoint::Bottom),
        PointedProjPoint::Point(v) => Ok(PointedProjPoint::new(t.apply(v)?)),
    }
}

/// Pointed Segre map: Kronecker product of representatives.
pub fn segre(points: &[PointedProjPoint]) -> PointedProjPoint {
    let mut acc = vec![Gq::one()];
    for p in points {
        match p {
            PointedProjPoint::Bottom => return PointedProjPoint::Bottom,
            PointedProjPoint::Point(v) => {
                acc = acc.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect();
            }
        }
    }
    PointedProjPoint::new(acc)
}

/// `z ↦ (az + b)/(cz + d)` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mobius {
    a: Gq,
    b: Gq,
    c: Gq,
    d: Gq,
}

impl Mobius {
    pub fn new(a: Gq, b: Gq, c: Gq, d: Gq) -> Result<Self> {
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(Error::domain("singular Möbius matrix"));
        }
        let entries = [&a, &b, &c, &d];
        let pivot = entries.iter().find(|e| !e.is_zero()).expect("nonsingular");
        let nonzero: Vec<&Gq> = entries.iter().copied().filter(|e| !e.is_zero()).collect();
        let s = primitive_scale(&nonzero, pivot);
        Ok(Self {
            a: &a * &s,
            b: &b * &s,
            c: &c * &s,
            d: &d * &s,
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1).expect("nonsingular")
    }

    /// `S(z) = -iz`, the class of `diag(1, i)`.
    pub fn s() -> Self {
        Self::new(Gq::one(), Gq::zero(), Gq::zero(), Gq::i()).expect("nonsingular")
    }

    /// `H(z) = (z + 1)/(z - 1)`
    pub fn h() -> Self {
        Self::from_ints(1, 1, 1, -1).expect("nonsingular")
    }

    pub fn entries(&self) -> [&Gq; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::new(
            2,
            2,
            vec![self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()],
        )
        .expect("2x2")
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::Dimension("Möbius maps come from 2x2 matrices".into()));
        }
        Self::new(
            m.get(0, 0).clone(),
            m.get(0, 1).clone(),
            m.get(1, 0).clone(),
            m.get(1, 1).clone(),
        )
    }

    pub fn apply(&self, z: &ExtScalar) -> ExtScalar {
        let (x, y) = z.to_homogeneous();
        let u = &(&self.a * &x) + &(&self.b * &y);
        let v = &(&self.c * &x) + &(&self.d * &y);
        ExtScalar::from_homogeneous(&u, &v).expect("nonsingular")
    }

    /// `self ∘ other`
    pub fn compose(&self, o: &Mobius) -> Mobius {
        Self::from_matrix(&self.to_matrix().mul(&o.to_matrix()).expect("2x2")).expect("nonsingular")
    }

    /// Adjugate.
    pub fn inverse(&self) -> Mobius {
        Self::new(self.d.clone(), -&self.b, -&self.c, self.a.clone()).expect("nonsingular")
    }

    pub fn to_merofn(&self) -> MeroFn {
        MeroFn::reduce(
            UniPoly::new(vec![self.b.clone(), self.a.clone()]),
            UniPoly::new(vec![self.d.clone(), self.c.clone()]),
        )
        .expect("nonsingular")
    }

    /// `c z^2 + (d - a) z - b`, whose roots are the finite fixed points.
    pub fn fixed_point_polynomial(&self) -> UniPoly {
        UniPoly::new(vec![-&self.b, &self.d - &self.a, self.c.clone()])
    }

    /// Numerator of `mu(g(z))` after clearing `(cz + d)^degree`, where
    /// `degree >= deg(mu)` and the excess counts infinity as a root.
    pub fn pullback_numerator(&self, mu: &UniPoly, degree: usize) -> UniPoly {
        let top = degree.max(mu.degree_or_zero());
        let lin_a = UniPoly::new(vec![self.b.clone(), self.a.clone()]);
        let lin_c = UniPoly::new(vec![self.d.clone(), self.c.clone()]);
        let mut acc = UniPoly::zero();
        for (k, m) in mu.coeffs().iter().enumerate() {
            if !m.is_zero() {
                acc = &acc + &(&lin_a.pow(k as u32) * &lin_c.pow((top - k) as u32)).scale(m);
            }
        }
        acc
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for Mobius {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .ok_or_else(|| Error::parse(0, "expected [[a,b],[c,d]]"))?;
        let rows: Vec<&str> = inner.split("],[").collect();
        if rows.len() != 2 {
            return Err(Error::parse(0, "expected two rows"));
        }
        let mut e = Vec::with_capacity(4);
        for r in rows {
            let cells: Vec<&str> = r.split(',').collect();
            if cells.len() != 2 {
                return Err(Error::parse(0, "expected two entries per row"));
            }
            for c in cells {
                e.push(c.parse::<Gq>()?);
            }
        }
        let [a, b, c, d]: [Gq; 4] = e.try_into().expect("four entries");
        Self::new(a, b, c, d)
    }
}

serde_via_string!(Mobius);

/// The 24 Möbius images of the single-qubit Clifford group, in
/// breadth-first order from the identity with generators `S` then `H`.
pub fn clifford_group() -> &'static [Mobius] {
    static GROUP: OnceLock<Vec<Mobius>> = OnceLock::new();
    GROUP.get_or_init(|| {
        let gens = [Mobius::s(), Mobius::h()];
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([Mobius::identity()]);
        seen.insert(Mobius::identity());
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let next = s.compose(&g);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
            out.push(g);
            assert!(out.len() <= 48, "Clifford closure did not terminate");
        }
        out
    })
}

/// `{z, -z, 1/z, -1/z}`: the images of `I, Z, X, Y`.
pub fn pauli_group() -> [Mobius; 4] {
    [
        Mobius::identity(),
        Mobius::from_ints(-1, 0, 0, 1).expect("nonsingular"),
        Mobius::from_ints(0, 1, 1, 0).expect("nonsingular"),
        Mobius::from_ints(0, -1, 1, 0).expect("nonsingular"),
    ]
}

/// Klein's octahedral invariant `108 z^4 (z^4 - 1)^4 / (z^8 + 14 z^4 + 1)^3`.
pub fn octahedral_e7() -> &'static MeroFn {
    static E7: OnceLock<MeroFn> = OnceLock::new();
    E7.get_or_init(|| "108 z^4 (z^4-1)^4 / (z^8+14z^4+1)^3".parse().expect("valid expression"))
}

/// Whether `w` and `z` lie in the same Clifford orbit.
pub fn same_orbit(w: &ExtScalar, z: &ExtScalar) -> bool {
    let e = octahedral_e7();
    e.eval(w) == e.eval(z)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateClass {
    Stabilizer,
    #[serde(rename = "H")]
    H,
    #[serde(rename = "F")]
    F,
    Other,
    Mixed,
}

impl fmt::Display for StateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateClass::Stabilizer => "stabilizer",
            StateClass::H => "H",
            StateClass::F => "F",
            StateClass::Other => "other",
            StateClass::Mixed => "mixed",
        })
    }
}

/// Product of the catalog polynomials of a class (finite part).
pub fn catalog_polynomial(class: StateClass) -> Option<UniPoly> {
    let s = match class {
        StateClass::Stabilizer => "z (z^2-1) (z^2+1)",
        StateClass::H => "(z^2-2z-1)(z^2+2z-1)(z^4+6z^2+1)(z^4+1)",
        StateClass::F => "z^8+14z^4+1",
        StateClass::Other | StateClass::Mixed => return None,
    };
    Some(s.parse().expect("valid polynomial"))
}

const CATALOG_CLASSES: [StateClass; 3] = [StateClass::Stabilizer, StateClass::H, StateClass::F];

/// Irreducible factors over `Q(i)` of the catalog polynomials, each with its
/// class; `None` stands for the point at infinity. Obtained by splitting the
/// fixed-point polynomials of the Clifford elements.
pub fn catalog_atoms() -> &'static [(StateClass, Option<UniPoly>)] {
    static ATOMS: OnceLock<Vec<(StateClass, Option<UniPoly>)>> = OnceLock::new();
    ATOMS.get_or_init(|| {
        let mut found: Vec<UniPoly> = Vec::new();
        let mut push = |p: UniPoly| {
            let p = p.primitive();
            if !p.is_constant() && !found.contains(&p) {
                found.push(p);
            }
        };
        for g in clifford_group().iter().skip(1) {
            let mut fp = g.fixed_point_polynomial();
            for (r, m) in fp.rational_roots() {
                let lin = UniPoly::linear_root(&r);
                fp = fp.div_exact(&lin.pow(m as u32)).expect("root");
                push(lin);
            }
            push(fp);
        }
        let mut out: Vec<(StateClass, Option<UniPoly>)> = vec![(StateClass::Stabilizer, None)];
        for class in CATALOG_CLASSES {
            let cat = catalog_polynomial(class).expect("catalog class");
            let mut members: Vec<UniPoly> = found.iter().filter(|a| a.divides(&cat)).cloned().collect();
            members.sort_by_key(|a| (a.degree(), a.to_string()));
            out.extend(members.into_iter().map(|a| (class, Some(a))));
        }
        out
    })
}

/// Class of the roots of a square-free polynomial.
pub fn classify_polynomial(mu: &UniPoly) -> Result<StateClass> {
    if mu.is_zero() {
        return Err(Error::domain("zero polynomial"));
    }
    if mu.is_constant() {
        return Ok(StateClass::Other);
    }
    if !mu.is_squarefree() {
        return Err(Error::domain(format!("{mu} is not square-free")));
    }
    let mut rest = mu.clone();
    let mut classes = Vec::new();
    for class in CATALOG_CLASSES {
        let cat = catalog_polynomial(class).expect("catalog class");
        let g = UniPoly::gcd(&rest, &cat)?;
        if !g.is_constant() {
            classes.push(class);
            rest = rest.div_exact(&g)?;
        }
    }
    if !rest.is_constant() {
        classes.push(StateClass::Other);
    }
    Ok(match classes.as_slice() {
        [one] => *one,
        _ => StateClass::Mixed,
    })
}

pub fn classify_point(z: &ExtScalar) -> StateClass {
    match z {
        ExtScalar::Infinity => StateClass::Stabilizer,
        ExtScalar::Finite(z0) => classify_polynomial(&UniPoly::linear_root(z0)).expect("linear is square-free"),
    }
}
