//! Pauli operators in symplectic form and stabilizer codes with one
//! logical qubit.
//!
//! A Pauli operator is `i^λ X^x Z^u`; with this convention `Y = iXZ` and
//! every Hermitian Pauli string parses with `λ ≡ x·u (mod 2)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::serde_via_string;
use crate::poly::{MultiPoly, UniPoly};

/// Largest generator count accepted by group enumeration.
pub const MAX_ENUMERATED_GENERATORS: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliOp {
    n: usize,
    lambda: u8,
    x: Vec<u64>,
    u: Vec<u64>,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

fn get_bit(v: &[u64], j: usize) -> bool {
    v[j / 64] >> (j % 64) & 1 == 1
}

fn set_bit(v: &mut [u64], j: usize, b: bool) {
    if b {
        v[j / 64] |= 1 << (j % 64);
    } else {
        v[j / 64] &= !(1 << (j % 64));
    }
}

fn dot(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(p, q)| (p & q).count_ones()).sum()
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            lambda: 0,
            x: vec![0; words(n)],
            u: vec![0; words(n)],
        }
    }

    pub fn from_bits(lambda: u8, x: &[bool], u: &[bool]) -> Result<Self> {
        if x.len() != u.len() {
            return Err(Error::Dimension("x and u parts differ in length".into()));
        }
        let mut op = Self::identity(x.len());
        op.lambda = lambda % 4;
        for j in 0..x.len() {
            set_bit(&mut op.x, j, x[j]);
            set_bit(&mut op.u, j, u[j]);
        }
        Ok(op)
    }

    /// `X^{⊗n}` or `Z^{⊗n}`.
    pub fn all_x(n: usize) -> Self {
        let mut op = Self::identity(n);
        for j in 0..n {
            set_bit(&mut op.x, j, true);
        }
        op
    }

    pub fn all_z(n: usize) -> Self {
        let mut op = Self::identity(n);
        for j in 0..n {
            set_bit(&mut op.u, j, true);
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> u8 {
        self.lambda
    }

    pub fn x(&self, j: usize) -> bool {
        get_bit(&self.x, j)
    }

    pub fn u(&self, j: usize) -> bool {
        get_bit(&self.u, j)
    }

    /// X part as a mask; requires `n <= 64`.
    pub fn x_mask(&self) -> u64 {
        debug_assert!(self.n <= 64);
        self.x.first().copied().unwrap_or(0)
    }

    pub fn u_mask(&self) -> u64 {
        debug_assert!(self.n <= 64);
        self.u.first().copied().unwrap_or(0)
    }

    pub fn with_phase(mut self, lambda: u8) -> Self {
        self.lambda = lambda % 4;
        self
    }

    fn check_size(&self, o: &PauliOp) -> Result<()> {
        if self.n != o.n {
            return Err(Error::Dimension(format!(
                "Pauli operators on {} and {} qubits",
                self.n, o.n
            )));
        }
        Ok(())
    }

    /// `self · o`
    pub fn mul(&self, o: &PauliOp) -> Result<PauliOp> {
        self.check_size(o)?;
        let twist = dot(&self.u, &o.x);
        Ok(Self {
            n: self.n,
            lambda: ((self.lambda as u32 + o.lambda as u32 + 2 * twist) % 4) as u8,
            x: self.x.iter().zip(&o.x).map(|(a, b)| a ^ b).collect(),
            u: self.u.iter().zip(&o.u).map(|(a, b)| a ^ b).collect(),
        })
    }

    pub fn adjoint(&self) -> PauliOp {
        let xu = dot(&self.x, &self.u);
        Self {
            lambda: ((8 - self.lambda as u32 + 2 * xu) % 4) as u8,
            ..self.clone()
        }
    }

    pub fn commutes(&self, o: &PauliOp) -> Result<bool> {
        self.check_size(o)?;
        Ok((dot(&self.x, &o.u) + dot(&self.u, &o.x)).is_multiple_of(2))
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.u)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn is_hermitian(&self) -> bool {
        (self.lambda as u32 + dot(&self.x, &self.u)).is_multiple_of(2)
    }

    /// Identity tensor factor up to phase.
    pub fn is_scalar(&self) -> bool {
        self.x.iter().chain(&self.u).all(|&w| w == 0)
    }

    pub fn is_x_type(&self) -> bool {
        self.u.iter().all(|&w| w == 0)
    }

    pub fn is_z_type(&self) -> bool {
        self.x.iter().all(|&w| w == 0)
    }

    /// Conjugation by `H^{⊗n}`: swaps `x` and `u`, with `HYH = -Y`.
    pub fn hadamard_conjugate(&self) -> PauliOp {
        let xu = dot(&self.x, &self.u);
        Self {
            n: self.n,
            lambda: ((self.lambda as u32 + 2 * xu) % 4) as u8,
            x: self.u.clone(),
            u: self.x.clone(),
        }
    }

    /// `self` acting on qubits `offset..offset + self.n` of an `n`-qubit
    /// register.
    pub fn embed(&self, n: usize, offset: usize) -> PauliOp {
        let mut op = Self::identity(n);
        op.lambda = self.lambda;
        for j in 0..self.n {
            set_bit(&mut op.x, offset + j, self.x(j));
            set_bit(&mut op.u, offset + j, self.u(j));
        }
        op
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ys = dot(&self.x, &self.u);
        let shown = (self.lambda as u32 + 4 - ys % 4) % 4;
        f.write_str(["", "i", "-", "-i"][shown as usize])?;
        for j in 0..self.n {
            f.write_str(match (self.x(j), self.u(j)) {
                (false, false) => "I",
                (true, false) => "X",
                (false, true) => "Z",
                (true, true) => "Y",
            })?;
        }
        Ok(())
    }
}

impl FromStr for PauliOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (mut lambda, body) = if let Some(r) = t.strip_prefix("-i") {
            (3u32, r)
        } else if let Some(r) = t.strip_prefix('-') {
            (2, r)
        } else if let Some(r) = t.strip_prefix('+') {
            (0, r)
        } else if let Some(r) = t.strip_prefix('i') {
            (1, r)
        } else {
            (0, t)
        };
        let body = body.trim();
        if body.is_empty() {
            return Err(Error::parse(0, "empty Pauli string"));
        }
        let mut x = Vec::new();
        let mut u = Vec::new();
        for (pos, c) in body.chars().enumerate() {
            let (a, b) = match c {
                'I' | '.' => (false, false),
                'X' => (true, false),
                'Z' => (false, true),
                'Y' => {
                    lambda += 1;
                    (true, true)
                }
                _ => {
                    return Err(Error::parse(
                        pos + t.len() - body.len(),
                        format!("invalid Pauli character `{c}`"),
                    ))
                }
            };
            x.push(a);
            u.push(b);
        }
        Self::from_bits((lambda % 4) as u8, &x, &u)
    }
}

serde_via_string!(PauliOp);

/// Rank over `F_2` of the symplectic rows `[x | u]`.
fn symplectic_rank(ops: &[PauliOp]) -> usize {
    let mut rows: Vec<Vec<u64>> = ops.iter().map(|g| g.x.iter().chain(&g.u).copied().collect()).collect();
    let bits = rows.first().map_or(0, |r| r.len() * 64);
    let mut rank = 0;
    for col in 0..bits {
        let Some(p) = (rank..rows.len()).find(|&r| get_bit(&rows[r], col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && get_bit(row, col) {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn check_commuting_independent(gens: &[PauliOp]) -> Result<()> {
    for (i, g) in gens.iter().enumerate() {
        for h in &gens[i + 1..] {
            if !g.commutes(h)? {
                return Err(Error::InvalidCode(format!("{g} and {h} anticommute")));
            }
        }
    }
    if symplectic_rank(gens) != gens.len() {
        return Err(Error::InvalidCode("generators are not independent".into()));
    }
    Ok(())
}

/// All `2^m` products of commuting independent generators, with exact
/// phases, in Gray-code order starting from the identity.
pub fn enumerate_group(gens: &[PauliOp]) -> Result<Vec<PauliOp>> {
    let n = gens.first().map_or(0, |g| g.n);
    if gens.iter().any(|g| g.n != n) {
        return Err(Error::Dimension("generators act on different qubit counts".into()));
    }
    if gens.len() > MAX_ENUMERATED_GENERATORS {
        return Err(Error::TooLarge(format!(
            "{} generators; enumeration is limited to {MAX_ENUMERATED_GENERATORS}",
            gens.len()
        )));
    }
    check_commuting_independent(gens)?;
    let inverses: Vec<PauliOp> = gens.iter().map(PauliOp::adjoint).collect();
    let total = 1usize << gens.len();
    let mut out = Vec::with_capacity(total);
    let mut cur = PauliOp::identity(n);
    out.push(cur.clone());
    for k in 1..total {
        let j = k.trailing_zeros() as usize;
        let on = (k ^ (k >> 1)) >> j & 1 == 1;
        cur = cur.mul(if on { &gens[j] } else { &inverses[j] })?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// Counts of each weight `0..=n`, as the polynomial
/// `sum_g x^(n - w(g)) y^w(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEnumerator {
    pub n: usize,
    pub counts: Vec<u64>,
}

impl WeightEnumerator {
    pub fn of(n: usize, ops: &[PauliOp]) -> Self {
        let mut counts = vec![0; n + 1];
        for g in ops {
            counts[g.weight()] += 1;
        }
        Self { n, counts }
    }

    /// `W(z, 1)`
    pub fn at_y_one(&self) -> UniPoly {
        let mut c = vec![0i64; self.n + 1];
        for (w, &k) in self.counts.iter().enumerate() {
            c[self.n - w] += k as i64;
        }
        UniPoly::from_ints(&c)
    }

    /// `W(1, z)`
    pub fn at_x_one(&self) -> UniPoly {
        UniPoly::from_ints(&self.counts.iter().map(|&k| k as i64).collect::<Vec<_>>())
    }

    /// As a polynomial in `(x, y)`.
    pub fn to_multipoly(&self) -> MultiPoly {
        MultiPoly::from_terms(
            2,
            self.counts
                .iter()
                .enumerate()
                .map(|(w, &k)| (vec![(self.n - w) as u32, w as u32], (k as i64).into())),
        )
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x".to_string(), "y".to_string()];
        let p = self.to_multipoly();
        let shown = p.display_with(&names);
        write!(f, "{shown}")
    }
}

/// Weight enumerator of the group generated by `gens`.
pub fn weight_enumerator(n: usize, gens: &[PauliOp]) -> Result<WeightEnumerator> {
    Ok(WeightEnumerator::of(n, &enumerate_group(gens)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCode")]
pub struct StabCode {
    n: usize,
    generators: Vec<PauliOp>,
    logical_x: PauliOp,
    logical_z: PauliOp,
    distance: Option<u32>,
}

#[derive(Deserialize)]
struct RawCode {
    generators: Vec<PauliOp>,
    logical_x: PauliOp,
    logical_z: PauliOp,
    distance: Option<u32>,
}

impl TryFrom<RawCode> for StabCode {
    type Error = Error;
    fn try_from(raw: RawCode) -> Result<Self> {
        StabCode::new(raw.generators, raw.logical_x, raw.logical_z, raw.distance)
    }
}

impl StabCode {
    /// Builds and validates a code.
    pub fn new(
        generators: Vec<PauliOp>,
        logical_x: PauliOp,
        logical_z: PauliOp,
        distance: Option<u32>,
    ) -> Result<Self> {
        let code = Self {
            n: logical_x.n,
            generators,
            logical_x,
            logical_z,
            distance,
        };
        code.validate()?;
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    pub fn logical_x(&self) -> &PauliOp {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &PauliOp {
        &self.logical_z
    }

    pub fn distance(&self) -> Option<u32> {
        self.distance
    }

    pub fn with_distance(mut self, d: Option<u32>) -> Self {
        self.distance = d;
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCode(m));
        if self.logical_z.n != self.n || self.generators.iter().any(|g| g.n != self.n) {
            return bad("operators act on different qubit counts".into());
        }
        if self.generators.len() + 1 != self.n {
            return bad(format!(
                "{} generators on {} qubits; exactly one logical qubit is supported",
                self.generators.len(),
                self.n
            ));
        }
        for g in &self.generators {
            if !g.is_hermitian() {
                return bad(format!("generator {g} is not Hermitian"));
            }
        }
        check_commuting_independent(&self.generators)?;
        // With independent generators no nontrivial product is a scalar, so
        // enumeration only confirms what independence already implies.
        if self.generators.len() <= 20 {
            for g in enumerate_group(&self.generators)?.iter().skip(1) {
                if g.is_scalar() {
                    return bad(format!("the group contains {g}"));
                }
            }
        }
        for (name, l) in [("X", &self.logical_x), ("Z", &self.logical_z)] {
            if !l.is_hermitian() {
                return bad(format!("logical {name} = {l} is not Hermitian"));
            }
            for g in &self.generators {
                if !l.commutes(g)? {
                    return bad(format!("logical {name} = {l} anticommutes with {g}"));
                }
            }
        }
        if self.logical_x.commutes(&self.logical_z)? {
            return bad("logical X and Z commute".into());
        }
        Ok(())
    }

    /// Generators split into pure X-type and pure Z-type sets, when the
    /// stabilizer group admits such a generating set.
    pub fn css_split(&self) -> Option<(Vec<PauliOp>, Vec<PauliOp>)> {
        let zs = pure_subgroup(&self.generators, |g| &g.x);
        let xs = pure_subgroup(&self.generators, |g| &g.u);
        (xs.len() + zs.len() == self.generators.len()).then_some((xs, zs))
    }

    pub fn is_css(&self) -> bool {
        self.css_split().is_some()
    }

    /// Conjugation by `H^{⊗n}`, with the logical operators exchanging roles.
    pub fn dual(&self) -> StabCode {
        Self {
            n: self.n,
            generators: self.generators.iter().map(PauliOp::hadamard_conjugate).collect(),
            logical_x: self.logical_z.hadamard_conjugate(),
            logical_z: self.logical_x.hadamard_conjugate(),
            distance: self.distance,
        }
    }

    /// `outer` with each qubit encoded into a block of `inner`: the inner
    /// generators on every block, plus the outer generators and logicals
    /// with `X` and `Z` on qubit `j` replaced by the inner logicals on
    /// block `j`. Its decoder is `f_outer ∘ f_inner`.
    pub fn concat(outer: &StabCode, inner: &StabCode) -> Result<StabCode> {
        let nb = inner.n;
        let n = outer.n * nb;
        let mut gens = Vec::with_capacity(n - 1);
        for j in 0..outer.n {
            for g in &inner.generators {
                gens.push(g.embed(n, j * nb));
            }
        }
        let lx: Vec<PauliOp> = (0..outer.n).map(|j| inner.logical_x.embed(n, j * nb)).collect();
        let lz: Vec<PauliOp> = (0..outer.n).map(|j| inner.logical_z.embed(n, j * nb)).collect();
        let lift = |g: &PauliOp| -> Result<PauliOp> {
            let mut acc = PauliOp::identity(n).with_phase(g.lambda);
            for j in 0..outer.n {
                if g.x(j) {
                    acc = acc.mul(&lx[j])?;
                }
                if g.u(j) {
                    acc = acc.mul(&lz[j])?;
                }
            }
            Ok(acc)
        };
        for g in &outer.generators {
            gens.push(lift(g)?);
        }
        let distance = match (outer.distance, inner.distance) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        Self::new(gens, lift(&outer.logical_x)?, lift(&outer.logical_z)?, distance)
    }

    /// The code file text.
    pub fn to_file_string(&self) -> String {
        let mut s = String::from("[stabilizers]\n");
        for g in &self.generators {
            s.push_str(&format!("{g}\n"));
        }
        s.push_str(&format!(
            "[logical_x]\n{}\n[logical_z]\n{}\n",
            self.logical_x, self.logical_z
        ));
        if let Some(d) = self.distance {
            s.push_str(&format!("[distance]\n{d}\n"));
        }
        s
    }
}

/// Generators of the subgroup where the part selected by `part` vanishes,
/// by elimination on that part with exact phase tracking.
fn pure_subgroup(gens: &[PauliOp], part: impl Fn(&PauliOp) -> &Vec<u64>) -> Vec<PauliOp> {
    let mut rows = gens.to_vec();
    let n = rows.first().map_or(0, |g| g.n);
    let mut used = vec![false; rows.len()];
    for col in 0..n {
        let Some(p) = (0..rows.len()).find(|&r| !used[r] && get_bit(part(&rows[r]), col)) else {
            continue;
        };
        used[p] = true;
        let pivot = rows[p].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != p && get_bit(part(row), col) {
                *row = row.mul(&pivot).expect("same size");
            }
        }
    }
    rows.into_iter().zip(used).filter(|(_, u)| !u).map(|(g, _)| g).collect()
}

impl FromStr for StabCode {
    type Err = Error;

    /// Parses the sectioned code file format.
    fn from_str(text: &str) -> Result<Self> {
        #[derive(PartialEq)]
        enum Sec {
            None,
            Stab,
            Lx,
            Lz,
            Dist,
        }
        let mut sec = Sec::None;
        let mut gens = Vec::new();
        let mut lx = None;
        let mut lz = None;
        let mut distance = None;
        let mut offset = 0;
        for raw in text.lines() {
            let pos = offset;
            offset += raw.len() + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') {
                let (head, rest) = match line.find(']') {
                    Some(k) => (&line[..=k], line[k + 1..].trim()),
                    None => return Err(Error::parse(pos, format!("unterminated section `{line}`"))),
                };
                sec = match head {
                    "[stabilizers]" => Sec::Stab,
                    "[logical_x]" => Sec::Lx,
                    "[logical_z]" => Sec::Lz,
                    "[distance]" => Sec::Dist,
                    _ => return Err(Error::parse(pos, format!("unknown section `{head}`"))),
                };
                if rest.is_empty() {
                    continue;
                }
                if sec != Sec::Dist {
                    return Err(Error::parse(pos, format!("unexpected text after {head}")));
                }
                distance = Some(parse_distance(rest, pos)?);
                continue;
            }
            let op = || line.parse::<PauliOp>().map_err(|e| shift(e, pos));
            match sec {
                Sec::None => return Err(Error::parse(pos, "content before the first section")),
                Sec::Stab => gens.push(op()?),
                Sec::Lx if lx.is_none() => lx = Some(op()?),
                Sec::Lz if lz.is_none() => lz = Some(op()?),
                Sec::Lx | Sec::Lz => return Err(Error::parse(pos, "a logical section holds one operator")),
                Sec::Dist if distance.is_none() => distance = Some(parse_distance(line, pos)?),
                Sec::Dist => return Err(Error::parse(pos, "duplicate distance")),
            }
        }
        let lx = lx.ok_or_else(|| Error::parse(text.len(), "missing [logical_x]"))?;
        let lz = lz.ok_or_else(|| Error::parse(text.len(), "missing [logical_z]"))?;
        Self::new(gens, lx, lz, distance)
    }
}

fn parse_distance(s: &str, pos: usize) -> Result<u32> {
    match s.parse::<u32>() {
        Ok(d) if d > 0 => Ok(d),
        _ => Err(Error::parse(pos, format!("bad distance `{s}`"))),
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

impl fmt::Display for StabCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_file_string())
    }
}
