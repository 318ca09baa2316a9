//! Projective semantics of the ZXW spiders.
//!
//! Projectivizing the two-input, one-output spiders gives three pointed
//! monoids on the Riemann sphere:
//!
//! | spider | operation | unit | undefined at |
//! |---|---|---|---|
//! | Z | `wz` | `1` | `(0, ∞)`, `(∞, 0)` |
//! | X | `(wz + 1)/(w + z)` | `∞` | `(1, -1)`, `(-1, 1)` |
//! | W | `w + z` | `0` | `(∞, ∞)` |
//!
//! Expressions such as `r(z1, g(z2, 3), mobius([[1,1],[1,-1]], z3))` build
//! trees of these operations and can be evaluated at points or as rational
//! functions of their variables.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{ext_add, ext_mul, ExtScalar, GaussianRational, PointedScalar};
use crate::merofn::MultiMeroFn;
use crate::poly::parse::natural_sort;
use crate::poly::MultiPoly;
use crate::projective::{Matrix, Mobius};

type Gq = GaussianRational;

/// Most legs accepted by [`spider_matrix`].
pub const MAX_LEGS: usize = 12;

/// Most variables accepted by [`eval_symbolic`].
pub const MAX_SYMBOLIC_VARS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Z,
    X,
    W,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Z, Color::X, Color::W];

    pub fn unit(self) -> PointedScalar {
        match self {
            Color::Z => PointedScalar::int(1),
            Color::X => PointedScalar::infinity(),
            Color::W => PointedScalar::int(0),
        }
    }

    pub fn op(self, w: &PointedScalar, z: &PointedScalar) -> PointedScalar {
        match self {
            Color::Z => gmul(w, z),
            Color::X => rmid(w, z),
            Color::W => wadd(w, z),
        }
    }

    /// Bilinear form of the operation on homogeneous pairs.
    fn homogeneous<T>(self, (w0, w1): (&T, &T), (z0, z1): (&T, &T)) -> (T, T)
    where
        for<'a> &'a T: std::ops::Add<&'a T, Output = T> + std::ops::Mul<&'a T, Output = T>,
    {
        match self {
            Color::Z => (w0 * z0, w1 * z1),
            Color::X => (&(w0 * z0) + &(w1 * z1), &(w0 * z1) + &(w1 * z0)),
            Color::W => (&(w0 * z1) + &(w1 * z0), w1 * z1),
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Z => "Z",
            Color::X => "X",
            Color::W => "W",
        })
    }
}

impl FromStr for Color {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" | "z" | "g" => Ok(Color::Z),
            "X" | "x" | "r" => Ok(Color::X),
            "W" | "w" => Ok(Color::W),
            other => Err(Error::parse(0, format!("unknown spider colour `{other}`"))),
        }
    }
}

/// Z-spider monoid: `wz`.
pub fn gmul(w: &PointedScalar, z: &PointedScalar) -> PointedScalar {
    ext_mul(w, z)
}

/// X-spider monoid: `(wz + 1)/(w + z)`.
pub fn rmid(w: &PointedScalar, z: &PointedScalar) -> PointedScalar {
    PointedScalar::bilinear(w, z, |(w0, w1), (z0, z1)| Color::X.homogeneous((w0, w1), (z0, z1)))
}

/// W-spider monoid: `w + z`.
pub fn wadd(w: &PointedScalar, z: &PointedScalar) -> PointedScalar {
    ext_add(w, z)
}

/// A spider with `outputs` and `inputs` legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpiderSpec {
    pub color: Color,
    pub outputs: usize,
    pub inputs: usize,
    /// Ignored for W.
    pub phase: Gq,
}

/// `|+>^m <+|^n + a |->^m <-|^n` with `|±Z> = (1,0), (0,1)` and
/// `|±X> = (1, ±1)` left unnormalized. W exists in the shapes `1 ← 2` and
/// `1 ← 0`.
pub fn spider_matrix(spec: &SpiderSpec) -> Result<Matrix> {
    let (m, n) = (spec.outputs, spec.inputs);
    if m + n == 0 {
        return Err(Error::Dimension("a spider needs at least one leg".into()));
    }
    if m + n > MAX_LEGS {
        return Err(Error::TooLarge(format!("{} legs; at most {MAX_LEGS}", m + n)));
    }
    let (rows, cols) = (1usize << m, 1usize << n);
    match spec.color {
        Color::W => match (m, n) {
            (1, 2) => Ok(Matrix::from_ints(2, 4, &[0, 1, 1, 0, 0, 0, 0, 1])),
            (1, 0) => Ok(Matrix::from_ints(2, 1, &[0, 1])),
            _ => Err(Error::Dimension("W spiders have shape 1<-2 or 1<-0".into())),
        },
        _ if spec.phase.is_zero() => Err(Error::domain("spider phase must be nonzero")),
        Color::Z => {
            let mut t = Matrix::zero(rows, cols);
            t.set(0, 0, Gq::one());
            let corner = t.get(rows - 1, cols - 1) + &spec.phase;
            t.set(rows - 1, cols - 1, corner);
            Ok(t)
        }
        Color::X => {
            let mut t = Matrix::zero(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    let parity = (r.count_ones() + c.count_ones()) % 2;
                    let v = if parity == 0 {
                        &Gq::one() + &spec.phase
                    } else {
                        &Gq::one() - &spec.phase
                    };
                    t.set(r, c, v);
                }
            }
            Ok(t)
        }
    }
}

/// Expression tree over the three spider monoids.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SpiderExpr {
    Var(String),
    Const(PointedScalar),
    GMul(Vec<SpiderExpr>),
    RMid(Vec<SpiderExpr>),
    WAdd(Vec<SpiderExpr>),
    Mobius(Mobius, Box<SpiderExpr>),
}

impl SpiderExpr {
    fn node(color: Color, children: Vec<SpiderExpr>) -> Self {
        match color {
            Color::Z => SpiderExpr::GMul(children),
            Color::X => SpiderExpr::RMid(children),
            Color::W => SpiderExpr::WAdd(children),
        }
    }

    fn as_node(&self) -> Option<(Color, &[SpiderExpr])> {
        match self {
            SpiderExpr::GMul(c) => Some((Color::Z, c)),
            SpiderExpr::RMid(c) => Some((Color::X, c)),
            SpiderExpr::WAdd(c) => Some((Color::W, c)),
            _ => None,
        }
    }

    /// Distinct variable names, `z2` before `z10`.
    pub fn variables(&self) -> Vec<String> {
        fn walk(e: &SpiderExpr, out: &mut Vec<String>) {
            match e {
                SpiderExpr::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                SpiderExpr::Const(_) => {}
                SpiderExpr::Mobius(_, c) => walk(c, out),
                _ => {
                    for c in e.as_node().expect("node").1 {
                        walk(c, out);
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        natural_sort(&mut out);
        out
    }
}

impl fmt::Display for SpiderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpiderExpr::Var(v) => f.write_str(v),
            SpiderExpr::Const(c) => write!(f, "{c}"),
            SpiderExpr::Mobius(m, c) => write!(f, "mobius({m}, {c})"),
            _ => {
                let (color, children) = self.as_node().expect("node");
                let name = match color {
                    Color::Z => "g",
                    Color::X => "r",
                    Color::W => "w",
                };
                write!(f, "{name}(")?;
                for (k, c) in children.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{c}`")))
        }
    }

    fn ident(&self) -> Option<&'a str> {
        let r = self.rest();
        let end = r
            .char_indices()
            .find(|(_, c)| !(c.is_alphanumeric() || *c == '_'))
            .map_or(r.len(), |(k, _)| k);
        let word = &r[..end];
        word.chars()
            .next()
            .filter(|c| c.is_alphabetic() || *c == '_')
            .map(|_| word)
    }

    /// Text up to the next `,` or `)` outside brackets.
    fn atom(&mut self) -> &'a str {
        let r = self.rest();
        let mut depth = 0i32;
        let mut end = r.len();
        for (k, c) in r.char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' if depth > 0 => depth -= 1,
                ',' | ')' if depth == 0 => {
                    end = k;
                    break;
                }
                _ => {}
            }
        }
        self.pos += end;
        r[..end].trim()
    }

    fn expr(&mut self) -> Result<SpiderExpr> {
        self.skip_ws();
        let start = self.pos;
        if let Some(word) = self.ident() {
            let after = self.pos + word.len();
            let is_call = self.src[after..].trim_start().starts_with('(');
            if is_call {
                self.pos = after;
                self.expect('(')?;
                return match word {
                    "g" | "r" | "w" => {
                        let color: Color = word.parse()?;
                        let mut children = Vec::new();
                        if !self.eat(')') {
                            loop {
                                children.push(self.expr()?);
                                if self.eat(')') {
                                    break;
                                }
                                self.expect(',')?;
                            }
                        }
                        Ok(SpiderExpr::node(color, children))
                    }
                    "mobius" => {
                        self.skip_ws();
                        let mstart = self.pos;
                        let text = self.atom();
                        let m: Mobius = text
                            .parse()
                            .map_err(|e: Error| Error::parse(mstart, format!("bad Möbius matrix: {e}")))?;
                        self.expect(',')?;
                        let child = self.expr()?;
                        self.expect(')')?;
                        Ok(SpiderExpr::Mobius(m, Box::new(child)))
                    }
                    other => Err(Error::parse(start, format!("unknown function `{other}`"))),
                };
            }
            let next = self.src[after..].trim_start();
            let ends = next.is_empty() || next.starts_with([',', ')']);
            if ends && !matches!(word, "i" | "inf" | "bot") {
                self.pos = after;
                return Ok(SpiderExpr::Var(word.to_string()));
            }
        }
        let text = self.atom();
        if text.is_empty() {
            return Err(Error::parse(start, "expected an expression"));
        }
        text.parse::<PointedScalar>()
            .map(SpiderExpr::Const)
            .map_err(|_| Error::parse(start, format!("bad literal `{text}`")))
    }
}

impl FromStr for SpiderExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(Error::parse(p.pos, "trailing input"));
        }
        Ok(e)
    }
}

/// Bottom-up evaluation; `bot` propagates.
pub fn eval_pointwise(e: &SpiderExpr, env: &HashMap<String, PointedScalar>) -> Result<PointedScalar> {
    match e {
        SpiderExpr::Var(v) => env.get(v).cloned().ok_or_else(|| Error::Unbound(v.clone())),
        SpiderExpr::Const(c) => Ok(c.clone()),
        SpiderExpr::Mobius(m, c) => Ok(match eval_pointwise(c, env)? {
            PointedScalar::Value(z) => PointedScalar::Value(m.apply(&z)),
            PointedScalar::Bottom => PointedScalar::Bottom,
        }),
        _ => {
            let (color, children) = e.as_node().expect("node");
            let mut acc: Option<PointedScalar> = None;
            for c in children {
                let v = eval_pointwise(c, env)?;
                acc = Some(match acc {
                    None => v,
                    Some(a) => color.op(&a, &v),
                });
            }
            Ok(acc.unwrap_or_else(|| color.unit()))
        }
    }
}

type Pair = (MultiPoly, MultiPoly);

fn symbolic(e: &SpiderExpr, vars: &[String]) -> Result<Pair> {
    let k = vars.len();
    let constant = |z: &ExtScalar| {
        let (a, b) = z.to_homogeneous();
        (MultiPoly::constant(k, a), MultiPoly::constant(k, b))
    };
    let pair = match e {
        SpiderExpr::Var(v) => {
            let j = vars
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| Error::Unbound(v.clone()))?;
            (MultiPoly::var(k, j), MultiPoly::one(k))
        }
        SpiderExpr::Const(PointedScalar::Value(z)) => constant(z),
        SpiderExpr::Const(PointedScalar::Bottom) => {
            return Err(Error::domain("bot has no symbolic value"));
        }
        SpiderExpr::Mobius(m, c) => {
            let (n, d) = symbolic(c, vars)?;
            let [a, b, cc, dd] = m.entries();
            (&n.scale(a) + &d.scale(b), &n.scale(cc) + &d.scale(dd))
        }
        _ => {
            let (color, children) = e.as_node().expect("node");
            let mut acc: Option<Pair> = None;
            for c in children {
                let (z0, z1) = symbolic(c, vars)?;
                acc = Some(match acc {
                    None => (z0, z1),
                    Some((w0, w1)) => color.homogeneous((&w0, &w1), (&z0, &z1)),
                });
            }
            match acc {
                Some(p) => p,
                None => constant(color.unit().value().expect("unit")),
            }
        }
    };
    let (n, d) = pair;
    let g: Vec<u32> = n
        .monomial_gcd()
        .iter()
        .zip(d.monomial_gcd())
        .map(|(a, b)| {
            if n.is_zero() {
                b
            } else if d.is_zero() {
                *a
            } else {
                (*a).min(b)
            }
        })
        .collect();
    Ok((n.div_monomial(&g), d.div_monomial(&g)))
}

/// The expression as a rational function of its variables, composed on
/// homogeneous pairs. Points where pointwise evaluation gives `bot` are not
/// recorded.
pub fn eval_symbolic(e: &SpiderExpr) -> Result<MultiMeroFn> {
    let vars = e.variables();
    if vars.len() > MAX_SYMBOLIC_VARS {
        return Err(Error::TooLarge(format!(
            "{} variables; at most {MAX_SYMBOLIC_VARS}",
            vars.len()
        )));
    }
    let (n, d) = symbolic(e, &vars)?;
    match (n.is_zero(), d.is_zero()) {
        (true, true) => Err(Error::domain("expression is bot everywhere")),
        (false, true) => Err(Error::domain("expression is constantly infinite")),
        _ => MultiMeroFn::with_vars(n, d, vars),
    }
}

/// A failed monoid law with its arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidFailure {
    pub law: &'static str,
    pub args: Vec<PointedScalar>,
}

impl fmt::Display for MonoidFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(|a| a.to_string()).collect();
        write!(f, "{} fails at ({})", self.law, args.join(", "))
    }
}

/// `0, ±1, ±i, 2, -1/2, ∞, bot`
pub fn default_samples() -> Vec<PointedScalar> {
    ["0", "1", "-1", "i", "-i", "2", "-1/2", "inf", "bot"]
        .iter()
        .map(|s| s.parse().expect("valid"))
        .collect()
}

/// Checks associativity and both unit laws on every combination of samples.
pub fn verify_spider_monoid(color: Color, samples: &[PointedScalar]) -> std::result::Result<(), MonoidFailure> {
    let u = color.unit();
    for a in samples {
        if color.op(&u, a) != *a {
            return Err(MonoidFailure {
                law: "left unit",
                args: vec![a.clone()],
            });
        }
        if color.op(a, &u) != *a {
            return Err(MonoidFailure {
                law: "right unit",
                args: vec![a.clone()],
            });
        }
        for b in samples {
            let ab = color.op(a, b);
            for c in samples {
                if color.op(&ab, c) != color.op(a, &color.op(b, c)) {
                    return Err(MonoidFailure {
                        law: "associativity",
                        args: vec![a.clone(), b.clone(), c.clone()],
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::{proj_apply, segre, PointedProjPoint};

    fn p(s: &str) -> PointedScalar {
        s.parse().unwrap()
    }

    fn e(s: &str) -> SpiderExpr {
        s.parse().unwrap()
    }

    fn spec(color: Color, m: usize, n: usize) -> SpiderSpec {
        SpiderSpec {
            color,
            outputs: m,
            inputs: n,
            phase: Gq::one(),
        }
    }

    #[test]
    fn spider_matrices() {
        assert_eq!(
            spider_matrix(&spec(Color::Z, 1, 2)).unwrap(),
            Matrix::from_ints(2, 4, &[1, 0, 0, 0, 0, 0, 0, 1])
        );
        assert_eq!(
            spider_matrix(&spec(Color::X, 1, 2)).unwrap(),
            Matrix::from_ints(2, 4, &[2, 0, 0, 2, 0, 2, 2, 0])
        );
        assert_eq!(
            spider_matrix(&spec(Color::W, 1, 2)).unwrap(),
            Matrix::from_ints(2, 4, &[0, 1, 1, 0, 0, 0, 0, 1])
        );
        assert!(spider_matrix(&spec(Color::W, 2, 2)).is_err());
        assert!(spider_matrix(&spec(Color::Z, 7, 6)).is_err());
        let zero_phase = SpiderSpec {
            phase: Gq::zero(),
            ..spec(Color::Z, 1, 1)
        };
        assert!(spider_matrix(&zero_phase).is_err());
    }

    #[test]
    fn one_legged_phase_action() {
        // diag(1, a) sends [z : 1] to [z : a], i.e. z ↦ z/a
        let a = Gq::from_integer(3);
        let t = spider_matrix(&SpiderSpec {
            phase: a,
            ..spec(Color::Z, 1, 1)
        })
        .unwrap();
        let out = proj_apply(&t, &PointedProjPoint::from_ext(&ExtScalar::int(6))).unwrap();
        assert_eq!(out.to_ext(), Some(ExtScalar::int(2)));
    }

    #[test]
    fn projectivized_spiders_match_tables() {
        for color in Color::ALL {
            let t = spider_matrix(&spec(color, 1, 2)).unwrap();
            for w in default_samples() {
                for z in default_samples() {
                    let v = color.op(&w, &z);
                    let lift = |s: &PointedScalar| match s {
                        PointedScalar::Value(x) => PointedProjPoint::from_ext(x),
                        PointedScalar::Bottom => PointedProjPoint::Bottom,
                    };
                    let image = proj_apply(&t, &segre(&[lift(&w), lift(&z)])).unwrap();
                    assert_eq!(image, lift(&v), "{color} at ({w}, {z})");
                }
            }
        }
    }

    #[test]
    fn monoid_table_examples() {
        assert_eq!(rmid(&p("1"), &p("-1")), PointedScalar::Bottom);
        assert_eq!(rmid(&p("-1"), &p("1")), PointedScalar::Bottom);
        assert_eq!(rmid(&p("inf"), &p("5")), p("5"));
        assert_eq!(rmid(&p("inf"), &p("inf")), p("inf"));
        assert_eq!(rmid(&p("2"), &p("3")), p("7/5"));
        assert_eq!(wadd(&p("inf"), &p("inf")), PointedScalar::Bottom);
        assert_eq!(gmul(&p("0"), &p("inf")), PointedScalar::Bottom);
    }

    #[test]
    fn monoid_laws() {
        for color in Color::ALL {
            assert_eq!(verify_spider_monoid(color, &default_samples()), Ok(()));
        }
    }

    #[test]
    fn lorentz_chart() {
        for w in default_samples() {
            for z in default_samples() {
                let inv = crate::exactnum::ext_inv;
                let lhs = inv(&rmid(&inv(&w), &inv(&z)));
                let rhs = PointedScalar::bilinear(&w, &z, |(w0, w1), (z0, z1)| {
                    (&(w0 * z1) + &(w1 * z0), &(w0 * z0) + &(w1 * z1))
                });
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(
            e("g(z1, z2, z3)"),
            SpiderExpr::GMul(vec![
                SpiderExpr::Var("z1".into()),
                SpiderExpr::Var("z2".into()),
                SpiderExpr::Var("z3".into())
            ])
        );
        assert_eq!(e("g()"), SpiderExpr::GMul(vec![]));
        assert_eq!(e("r(1+i, -1/2)").to_string(), "r(1+i, -1/2)");
        assert_eq!(e("w(inf, bot, i)").to_string(), "w(inf, bot, i)");
        let m = e("mobius([[1,1],[1,-1]], r(z1, z2))");
        assert_eq!(m.to_string(), "mobius([[1,1],[1,-1]], r(z1, z2))");
        assert_eq!(e(&m.to_string()), m);
        assert_eq!(e("x"), SpiderExpr::Var("x".into()));
        for bad in [
            "g(z1,",
            "q(z1)",
            "g(z1) z2",
            "r(,)",
            "mobius([[1,0],[0,0]], z)",
            "g(1+)",
        ] {
            assert!(matches!(bad.parse::<SpiderExpr>(), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn pointwise_examples() {
        let env = HashMap::new();
        assert_eq!(eval_pointwise(&e("r(1, -1)"), &env).unwrap(), PointedScalar::Bottom);
        assert_eq!(eval_pointwise(&e("w(inf, inf)"), &env).unwrap(), PointedScalar::Bottom);
        assert_eq!(eval_pointwise(&e("r(r(2, 3), 0)"), &env).unwrap(), p("5/7"));
        assert_eq!(eval_pointwise(&e("g()"), &env).unwrap(), p("1"));
        assert_eq!(eval_pointwise(&e("r()"), &env).unwrap(), p("inf"));
        assert_eq!(eval_pointwise(&e("w()"), &env).unwrap(), p("0"));
        assert_eq!(eval_pointwise(&e("g(z)"), &env), Err(Error::Unbound("z".into())));
        let env: HashMap<String, PointedScalar> = [("z".to_string(), p("1"))].into();
        assert_eq!(eval_pointwise(&e("mobius([[1,1],[1,-1]], z)"), &env).unwrap(), p("inf"));
    }

    #[test]
    fn symbolic_examples() {
        let f = eval_symbolic(&e("r(z1, r(z2, z3))")).unwrap();
        assert_eq!(f.to_string(), "(z1*z2*z3 + z1 + z2 + z3)/(z1*z2 + z1*z3 + z2*z3 + 1)");
        assert_eq!(f.diagonal().unwrap(), "(z^3+3z)/(3z^2+1)".parse().unwrap());
        assert_eq!(eval_symbolic(&e("g(z1, z2, z3)")).unwrap().to_string(), "z1*z2*z3");
        let sum = eval_symbolic(&e("w(z1, z2)")).unwrap();
        assert_eq!(sum.diagonal().unwrap(), "2z".parse().unwrap());
        assert!(eval_symbolic(&e("g(bot, z)")).is_err());
        let many = "g(a1, a2, a3, a4, a5, a6, a7, a8, a9)";
        assert!(matches!(eval_symbolic(&e(many)), Err(Error::TooLarge(_))));
    }

    #[test]
    fn symbolic_matches_pointwise_on_grid() {
        let exprs = [
            "r(z1, r(z2, z3))",
            "w(g(z1, z2), z3)",
            "g(r(z1, 2), w(z2, z3))",
            "mobius([[1,i],[0,1]], r(z1, z1, z2))",
        ];
        let grid: Vec<PointedScalar> = default_samples().into_iter().filter(|s| !s.is_bottom()).collect();
        for s in exprs {
            let ex = e(s);
            let f = eval_symbolic(&ex).unwrap();
            let vars = ex.variables();
            let mut idx = vec![0usize; vars.len()];
            loop {
                let env: HashMap<String, PointedScalar> =
                    vars.iter().cloned().zip(idx.iter().map(|&k| grid[k].clone())).collect();
                let pw = eval_pointwise(&ex, &env).unwrap();
                if let PointedScalar::Value(v) = pw {
                    let pt: Vec<ExtScalar> = idx.iter().map(|&k| grid[k].value().unwrap().clone()).collect();
                    assert_eq!(f.eval(&pt).unwrap(), Some(v), "{s} at {pt:?}");
                }
                let mut j = 0;
                while j < idx.len() {
                    idx[j] += 1;
                    if idx[j] < grid.len() {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
                if j == idx.len() {
                    break;
                }
            }
        }
    }
}
