//! Recursive-descent parser for rational expressions over `Q(i)`.
//!
//! Grammar: `+ - * /`, `^` or `**` with an integer exponent, parentheses,
//! decimal or integer literals, the imaginary unit `i` and identifiers.
//! Juxtaposition is multiplication (`3z^2`, `(z+1)(z-1)`).

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{MultiPoly, UniPoly};
use crate::error::{Error, Result};
use crate::exactnum::GaussianRational;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Ast {
    Num(GaussianRational),
    Var(String),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_ascii_digit() || chars[k].1 == '.') {
                k += 1;
            }
            let text: String = chars[start..k].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Num(text)));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            let text: String = chars[start..k].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Ident(text)));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' if chars.get(k + 1).is_some_and(|&(_, d)| d == '*') => {
                k += 1;
                Tok::Caret
            }
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(Error::parse(pos, format!("unexpected character `{c}`"))),
        };
        out.push((pos, tok));
        k += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let e = self.exponent()?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Minus) => Ok(-self.exponent()?),
            Some(Tok::Num(t)) => t
                .parse::<i64>()
                .map_err(|_| Error::parse(pos, format!("bad exponent `{t}`"))),
            Some(Tok::LParen) => {
                let e = self.exponent()?;
                self.expect_rparen()?;
                Ok(e)
            }
            _ => Err(Error::parse(pos, "expected an integer exponent")),
        }
    }

    fn expect_rparen(&mut self) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::RParen) => Ok(()),
            _ => Err(Error::parse(pos, "expected `)`")),
        }
    }

    fn primary(&mut self) -> Result<Ast> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(t)) => Ok(Ast::Num(
                t.parse().map_err(|_| Error::parse(pos, format!("bad number `{t}`")))?,
            )),
            Some(Tok::Ident(name)) if name == "i" => Ok(Ast::Num(GaussianRational::i())),
            Some(Tok::Ident(name)) => Ok(Ast::Var(name)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Some(t) => Err(Error::parse(pos, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(pos, "unexpected end of input")),
        }
    }
}

pub(crate) fn parse(s: &str) -> Result<Ast> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: s.len(),
    };
    let ast = p.expr()?;
    if p.at < p.toks.len() {
        return Err(Error::parse(p.pos(), "trailing input"));
    }
    Ok(ast)
}

fn collect(ast: &Ast, out: &mut BTreeSet<String>) {
    match ast {
        Ast::Num(_) => {}
        Ast::Var(v) => {
            out.insert(v.clone());
        }
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => {
            collect(a, out);
            collect(b, out);
        }
        Ast::Neg(a) | Ast::Pow(a, _) => collect(a, out),
    }
}

/// Variable names, ordered so that a trailing number sorts numerically
/// (`z2` before `z10`).
pub(crate) fn variables(ast: &Ast) -> Vec<String> {
    let mut set = BTreeSet::new();
    collect(ast, &mut set);
    let mut v: Vec<String> = set.into_iter().collect();
    natural_sort(&mut v);
    v
}

pub(crate) fn natural_sort(v: &mut [String]) {
    v.sort_by_key(|s| {
        let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (stem, num) = s.split_at(s.len() - digits);
        (stem.to_string(), num.parse::<u64>().unwrap_or(0), s.clone())
    });
}

pub(crate) fn single_variable(ast: &Ast) -> Result<Option<String>> {
    let vars = variables(ast);
    match vars.len() {
        0 => Ok(None),
        1 => Ok(vars.into_iter().next()),
        _ => Err(Error::parse(
            0,
            format!("expected one variable, found {}", vars.join(", ")),
        )),
    }
}

/// Operations shared by the two polynomial carriers.
trait Ring: Clone {
    fn num(&self, c: &GaussianRational) -> Self;
    fn var(&self, name: &str) -> Result<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

#[derive(Clone)]
struct Uni<'a>(UniPoly, &'a str);

impl Ring for Uni<'_> {
    fn num(&self, c: &GaussianRational) -> Self {
        Uni(UniPoly::constant(c.clone()), self.1)
    }
    fn var(&self, name: &str) -> Result<Self> {
        if name == self.1 {
            Ok(Uni(UniPoly::x(), self.1))
        } else {
            Err(Error::Unbound(name.to_string()))
        }
    }
    fn add(&self, o: &Self) -> Self {
        Uni(&self.0 + &o.0, self.1)
    }
    fn sub(&self, o: &Self) -> Self {
        Uni(&self.0 - &o.0, self.1)
    }
    fn mul(&self, o: &Self) -> Self {
        Uni(&self.0 * &o.0, self.1)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

#[derive(Clone)]
struct Multi<'a>(MultiPoly, &'a [String]);

impl Ring for Multi<'_> {
    fn num(&self, c: &GaussianRational) -> Self {
        Multi(MultiPoly::constant(self.1.len(), c.clone()), self.1)
    }
    fn var(&self, name: &str) -> Result<Self> {
        let j = self
            .1
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Unbound(name.to_string()))?;
        Ok(Multi(MultiPoly::var(self.1.len(), j), self.1))
    }
    fn add(&self, o: &Self) -> Self {
        Multi(&self.0 + &o.0, self.1)
    }
    fn sub(&self, o: &Self) -> Self {
        Multi(&self.0 - &o.0, self.1)
    }
    fn mul(&self, o: &Self) -> Self {
        Multi(&self.0 * &o.0, self.1)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

fn eval<R: Ring>(ast: &Ast, unit: &R) -> Result<(R, R)> {
    let one = || unit.num(&GaussianRational::one());
    Ok(match ast {
        Ast::Num(c) => (unit.num(c), one()),
        Ast::Var(v) => (unit.var(v)?, one()),
        Ast::Add(a, b) | Ast::Sub(a, b) => {
            let (an, ad) = eval(a, unit)?;
            let (bn, bd) = eval(b, unit)?;
            let l = an.mul(&bd);
            let r = bn.mul(&ad);
            let num = if matches!(ast, Ast::Add(..)) {
                l.add(&r)
            } else {
                l.sub(&r)
            };
            (num, ad.mul(&bd))
        }
        Ast::Mul(a, b) => {
            let (an, ad) = eval(a, unit)?;
            let (bn, bd) = eval(b, unit)?;
            (an.mul(&bn), ad.mul(&bd))
        }
        Ast::Div(a, b) => {
            let (an, ad) = eval(a, unit)?;
            let (bn, bd) = eval(b, unit)?;
            if bn.is_zero() {
                return Err(Error::DivisionByZero);
            }
            (an.mul(&bd), ad.mul(&bn))
        }
        Ast::Neg(a) => {
            let (n, d) = eval(a, unit)?;
            (unit.num(&GaussianRational::zero()).sub(&n), d)
        }
        Ast::Pow(a, e) => {
            let (n, d) = eval(a, unit)?;
            let (n, d) = if *e < 0 {
                if n.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                (d, n)
            } else {
                (n, d)
            };
            let k = e.unsigned_abs();
            let (mut pn, mut pd) = (one(), one());
            for _ in 0..k {
                pn = pn.mul(&n);
                pd = pd.mul(&d);
            }
            (pn, pd)
        }
    })
}

/// Numerator and denominator of a univariate expression, not reduced.
pub(crate) fn eval_univariate(ast: &Ast, var: &str) -> Result<(UniPoly, UniPoly)> {
    let (n, d) = eval(ast, &Uni(UniPoly::zero(), var))?;
    Ok((n.0.with_var(var), d.0.with_var(var)))
}

/// Numerator and denominator over the given variables, not reduced.
pub(crate) fn eval_multivariate(ast: &Ast, vars: &[String]) -> Result<(MultiPoly, MultiPoly)> {
    let (n, d) = eval(ast, &Multi(MultiPoly::zero(vars.len()), vars))?;
    Ok((n.0, d.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let ast = parse("-z^2").unwrap();
        assert!(matches!(ast, Ast::Neg(_)));
        let (n, d) = eval_univariate(&parse("2^-1 z").unwrap(), "z").unwrap();
        assert_eq!(
            n.scale(&d.coeff(0).inv().unwrap()),
            UniPoly::x().scale(&GaussianRational::from_ratio(1, 2))
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse("z + $") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse("(z+1").is_err());
        assert!(parse("").is_err());
        assert!(parse("z^z").is_err());
        assert_eq!(
            eval_univariate(&parse("1/(z-z)").unwrap(), "z").unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn variable_order_is_natural() {
        let ast = parse("z10 + z2 + z1").unwrap();
        assert_eq!(variables(&ast), ["z1", "z2", "z10"]);
    }
}
