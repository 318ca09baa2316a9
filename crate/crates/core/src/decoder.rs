//! Meromorphic decoders of stabilizer codes and their distillation
//! analysis.
//!
//! The decoder is read off one row of the logical projector: with
//! `G0 = <S ∪ {L_Z}>`, `|0_L><0_L|` is proportional to the sum of `G0`, so
//! for a computational basis state `a` the pair
//! `(sum_g <a| g |ψ⊗n>, sum_g <a| g L_X |ψ⊗n>)` is a scalar multiple of
//! `(<0_L|ψ⊗n>, <1_L|ψ⊗n>)` with `ψ = [z : 1]`. Each group element
//! contributes a single monomial, so no state vector is ever built.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{ExtScalar, GaussianRational};
use crate::merofn::{BranchDivisor, MeroFn, MultiMeroFn, RhAudit};
use crate::poly::{MultiPoly, UniPoly};
use crate::projective::{
    catalog_atoms, catalog_polynomial, classify_point, clifford_group, octahedral_e7, pauli_group, Mobius, StateClass,
};
use crate::stabcode::{enumerate_group, PauliOp, StabCode, WeightEnumerator, MAX_ENUMERATED_GENERATORS};

type Gq = GaussianRational;

/// Largest qubit count for the multivariate decoder.
pub const MAX_MULTI_QUBITS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Op {
    lam: u32,
    x: u64,
    u: u64,
}

impl Op {
    fn of(p: &PauliOp) -> Self {
        Self {
            lam: p.lambda() as u32,
            x: p.x_mask(),
            u: p.u_mask(),
        }
    }

    fn mul(self, o: Op) -> Op {
        Op {
            lam: (self.lam + o.lam + 2 * (self.u & o.x).count_ones()) & 3,
            x: self.x ^ o.x,
            u: self.u ^ o.u,
        }
    }

    /// Phase exponent and set of positions contributing `z` for the basis
    /// state `a`: positions where `a_j = x_j` give `z`, the rest `(-1)^u_j`.
    fn term(self, a: u64, full: u64) -> (u32, u64) {
        let d = (a ^ self.x) & full;
        let sign = (self.u & d).count_ones() & 1;
        ((self.lam + 2 * sign) & 3, !d & full)
    }
}

struct Prepared {
    n: usize,
    full: u64,
    gens: Vec<Op>,
    lx: Op,
}

impl Prepared {
    fn new(code: &StabCode) -> Result<Self> {
        let n = code.n();
        if n > 64 {
            return Err(Error::TooLarge(format!("{n} qubits; the decoder handles at most 64")));
        }
        let m = code.generators().len() + 1;
        if m > MAX_ENUMERATED_GENERATORS {
            return Err(Error::TooLarge(format!(
                "2^{m} group elements; at most 2^{MAX_ENUMERATED_GENERATORS} are enumerated"
            )));
        }
        let mut gens: Vec<Op> = code.generators().iter().map(Op::of).collect();
        gens.push(Op::of(code.logical_z()));
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(Self {
            n,
            full,
            gens,
            lx: Op::of(&code.logical_x().adjoint()),
        })
    }

    /// Folds over every element of `G0` in parallel chunks of a Gray-code
    /// walk. Generators are Hermitian and commute, so each step multiplies
    /// by a single generator.
    fn fold<A, I, V, M>(&self, init: I, visit: V, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        V: Fn(&mut A, Op) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        let m = self.gens.len();
        let chunk_bits = m.min(12);
        let chunks = 1u64 << (m - chunk_bits);
        let gens = &self.gens;
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c << chunk_bits;
                let mut acc = init();
                let g0 = start ^ (start >> 1);
                let mut cur = Op { lam: 0, x: 0, u: 0 };
                for (j, g) in gens.iter().enumerate() {
                    if g0 >> j & 1 == 1 {
                        cur = cur.mul(*g);
                    }
                }
                visit(&mut acc, cur);
                for k in start + 1..start + (1u64 << chunk_bits) {
                    cur = cur.mul(gens[k.trailing_zeros() as usize]);
                    visit(&mut acc, cur);
                }
                acc
            })
            .reduce(&init, &merge)
    }
}

const UNITS: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

fn add_unit(slot: &mut (i64, i64), k: u32) {
    let (a, b) = UNITS[k as usize];
    slot.0 += a;
    slot.1 += b;
}

fn to_gaussian((re, im): (i64, i64)) -> Gq {
    Gq::from_parts(re, im)
}

/// Lexicographically `k`-th basis state, `a_0` most significant.
fn basis_state(n: usize, k: u64) -> u64 {
    (0..n).fold(0, |a, j| a | ((k >> (n - 1 - j) & 1) << j))
}

fn uni_components(pre: &Prepared, a: u64) -> (UniPoly, UniPoly) {
    let n = pre.n;
    let zero = || (vec![(0i64, 0i64); n + 1], vec![(0i64, 0i64); n + 1]);
    let (p, q) = pre.fold(
        zero,
        |acc, g| {
            let (k, mask) = g.term(a, pre.full);
            add_unit(&mut acc.0[mask.count_ones() as usize], k);
            let (k, mask) = g.mul(pre.lx).term(a, pre.full);
            add_unit(&mut acc.1[mask.count_ones() as usize], k);
        },
        |mut x, y| {
            for (s, t) in x.0.iter_mut().zip(y.0).chain(x.1.iter_mut().zip(y.1)) {
                s.0 += t.0;
                s.1 += t.1;
            }
            x
        },
    );
    (
        UniPoly::new(p.into_iter().map(to_gaussian).collect()),
        UniPoly::new(q.into_iter().map(to_gaussian).collect()),
    )
}

/// Unreduced decoder components `(p_a, q_a)` for the basis state `a`,
/// given as bits `a_0 .. a_{n-1}`.
pub fn decoder_components(code: &StabCode, a: &[bool]) -> Result<(UniPoly, UniPoly)> {
    let pre = Prepared::new(code)?;
    if a.len() != pre.n {
        return Err(Error::Dimension(format!(
            "basis state of length {} for {} qubits",
            a.len(),
            pre.n
        )));
    }
    let mask = a.iter().enumerate().fold(0u64, |m, (j, &b)| m | (u64::from(b) << j));
    Ok(uni_components(&pre, mask))
}

/// Decoder computed from a chosen reference basis state; `None` when both
/// components vanish there.
pub fn mero_decoder_at(code: &StabCode, a: &[bool]) -> Result<Option<MeroFn>> {
    let (p, q) = decoder_components(code, a)?;
    if q.is_zero() && p.is_zero() {
        return Ok(None);
    }
    if q.is_zero() {
        return Err(Error::domain("decoder is constant infinity"));
    }
    MeroFn::reduce(p, q).map(Some)
}

/// The meromorphic decoder `f = p/q` of a code with one logical qubit.
pub fn mero_decoder(code: &StabCode) -> Result<MeroFn> {
    let pre = Prepared::new(code)?;
    let states = 1u64.checked_shl(pre.n as u32).unwrap_or(u64::MAX);
    for k in 0..states {
        let a = basis_state(pre.n, k);
        let (p, q) = uni_components(&pre, a);
        if !(p.is_zero() && q.is_zero()) {
            return MeroFn::reduce(p, q);
        }
    }
    Err(Error::domain("every basis state gives 0/0"))
}

/// The decoder as a function of one variable per qubit.
pub fn mero_decoder_multi(code: &StabCode) -> Result<MultiMeroFn> {
    let pre = Prepared::new(code)?;
    let n = pre.n;
    if n > MAX_MULTI_QUBITS {
        return Err(Error::TooLarge(format!(
            "{n} qubits; the multivariate decoder handles at most {MAX_MULTI_QUBITS}"
        )));
    }
    let size = 1usize << n;
    for k in 0..size as u64 {
        let a = basis_state(n, k);
        let (p, q) = pre.fold(
            || (vec![(0i64, 0i64); size], vec![(0i64, 0i64); size]),
            |acc, g| {
                let (k, mask) = g.term(a, pre.full);
                add_unit(&mut acc.0[mask as usize], k);
                let (k, mask) = g.mul(pre.lx).term(a, pre.full);
                add_unit(&mut acc.1[mask as usize], k);
            },
            |mut x, y| {
                for (s, t) in x.0.iter_mut().zip(y.0).chain(x.1.iter_mut().zip(y.1)) {
                    s.0 += t.0;
                    s.1 += t.1;
                }
                x
            },
        );
        let build = |v: Vec<(i64, i64)>| {
            MultiPoly::from_terms(
                n,
                v.into_iter()
                    .enumerate()
                    .map(|(mask, c)| ((0..n).map(|j| (mask >> j & 1) as u32).collect(), to_gaussian(c))),
            )
        };
        let (p, q) = (build(p), build(q));
        if p.is_zero() && q.is_zero() {
            continue;
        }
        return MultiMeroFn::new(p, q);
    }
    Err(Error::domain("every basis state gives 0/0"))
}

fn has_standard_logicals(code: &StabCode) -> bool {
    code.logical_x() == &PauliOp::all_x(code.n()) && code.logical_z() == &PauliOp::all_z(code.n())
}

fn x_part(code: &StabCode) -> Result<Vec<PauliOp>> {
    if !has_standard_logicals(code) {
        return Err(Error::domain("requires logical operators X^n and Z^n"));
    }
    code.css_split()
        .map(|(xs, _)| xs)
        .ok_or_else(|| Error::domain("not a CSS code"))
}

/// `W(z, 1) / W(1, z)` for the weight enumerator of the X-type stabilizers.
pub fn css_decoder(code: &StabCode) -> Result<MeroFn> {
    let w = WeightEnumerator::of(code.n(), &enumerate_group(&x_part(code)?)?);
    MeroFn::reduce(w.at_y_one(), w.at_x_one())
}

/// Whether the general components at the first admissible basis state are
/// proportional to `(W_<S_X>(z, 1), W_{L_X <S_X>}(z, 1))`.
pub fn css_components_match(code: &StabCode) -> Result<bool> {
    let group = enumerate_group(&x_part(code)?)?;
    let n = code.n();
    let shifted: Vec<PauliOp> = group.iter().map(|g| g.mul(code.logical_x())).collect::<Result<_>>()?;
    let w1 = WeightEnumerator::of(n, &group).at_y_one();
    let w2 = WeightEnumerator::of(n, &shifted).at_y_one();
    let pre = Prepared::new(code)?;
    for k in 0..1u64 << n.min(63) {
        let (p, q) = uni_components(&pre, basis_state(n, k));
        if p.is_zero() && q.is_zero() {
            continue;
        }
        let same_ratio = &p * &w2 == &q * &w1;
        return Ok(same_ratio && !p.is_zero() && p.eq_up_to_scalar(&w1));
    }
    Ok(false)
}

/// Whether `f = H ∘ f^T ∘ H` with `f^T` the decoder of the dual code.
pub fn dual_decoder_identity(code: &StabCode) -> Result<bool> {
    let f = mero_decoder(code)?;
    let ft = mero_decoder(&code.dual())?;
    Ok(ft.mobius_conjugate(&Mobius::h())? == f)
}

/// Whether `g = P1 ∘ f ∘ P2` for Pauli Möbius maps `P1, P2`.
pub fn equal_up_to_pauli(f: &MeroFn, g: &MeroFn) -> Result<bool> {
    for p1 in pauli_group() {
        let left = f.mobius_after(&p1)?;
        for p2 in pauli_group() {
            if &left.compose(&p2.to_merofn())? == g {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub point: ExtScalar,
    pub class: StateClass,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedFactor {
    pub factor: UniPoly,
    pub class: StateClass,
    /// Least ramification index over the roots.
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordDistilled {
    pub factor: UniPoly,
    pub class: StateClass,
    pub witness: Mobius,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityReport {
    pub image: ExtScalar,
    pub fixed: bool,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistillReport {
    pub f: MeroFn,
    pub r: UniPoly,
    pub wronskian: UniPoly,
    pub rh: RhAudit,
    #[serde(rename = "fixed")]
    pub fixed_rational: Vec<FixedPoint>,
    pub fixed_algebraic: Vec<FixedFactor>,
    pub infinity: InfinityReport,
    pub coherent: Vec<FixedPoint>,
    pub coherent_algebraic: Vec<FixedFactor>,
    pub clifford_distilled: Vec<CliffordDistilled>,
    pub branch: BranchDivisor,
}

/// Square-free part of `poly` without its `Q(i)` roots, split by catalog.
fn algebraic_factors(f: &MeroFn, poly: &UniPoly) -> Result<Vec<FixedFactor>> {
    if poly.is_constant() {
        return Ok(Vec::new());
    }
    let mut rest = poly.squarefree_part()?;
    for (root, _) in rest.rational_roots() {
        rest = rest.div_exact(&UniPoly::linear_root(&root))?;
    }
    let mut out = Vec::new();
    for class in [StateClass::Stabilizer, StateClass::H, StateClass::F] {
        if rest.is_constant() {
            break;
        }
        let g = UniPoly::gcd(&rest, &catalog_polynomial(class).expect("catalog"))?;
        if !g.is_constant() {
            rest = rest.div_exact(&g)?;
            let factor = g.primitive();
            out.push(FixedFactor {
                order: f.ramification_on(&factor)?,
                factor,
                class,
            });
        }
    }
    if !rest.is_constant() {
        let factor = rest.primitive();
        out.push(FixedFactor {
            order: f.ramification_on(&factor)?,
            factor,
            class: StateClass::Other,
        });
    }
    Ok(out)
}

fn rational_points(f: &MeroFn, poly: &UniPoly) -> Result<Vec<FixedPoint>> {
    if poly.is_zero() {
        return Err(Error::domain("f is the identity; every point is fixed"));
    }
    poly.rational_roots()
        .into_iter()
        .map(|(z0, _)| {
            let point = ExtScalar::Finite(z0);
            Ok(FixedPoint {
                order: f.ramification_at(&point)?,
                class: classify_point(&point),
                point,
            })
        })
        .collect()
}

/// Whether `E7 ∘ f ≡ E7` modulo `mu`, i.e. on the roots of `mu`.
fn e7_agrees_mod(f: &MeroFn, mu: &UniPoly) -> Result<bool> {
    let red = |a: &UniPoly| a.rem(mu);
    let mul = |a: &UniPoly, b: &UniPoly| red(&(a * b));
    let p = red(f.num())?;
    let q = red(f.den())?;
    let p4 = mul(&mul(&p, &p)?, &mul(&p, &p)?)?;
    let q4 = mul(&mul(&q, &q)?, &mul(&q, &q)?)?;
    let d = &p4 - &q4;
    let d2 = mul(&d, &d)?;
    let a = mul(&mul(&p4, &q4)?, &mul(&d2, &d2)?)?.scale(&Gq::from_integer(108));
    let inner = red(&(&(&mul(&p4, &p4)? + &mul(&p4, &q4)?.scale(&Gq::from_integer(14))) + &mul(&q4, &q4)?))?;
    let b = mul(&inner, &mul(&inner, &inner)?)?;
    let e7 = octahedral_e7();
    let a0 = red(e7.num())?;
    let b0 = red(e7.den())?;
    Ok(red(&(&mul(&a, &b0)? - &mul(&a0, &b)?))?.is_zero())
}

/// A Clifford `g` with `f = g` on the roots of `mu`.
fn clifford_witness(f: &MeroFn, mu: &UniPoly) -> Result<Option<Mobius>> {
    for g in clifford_group() {
        let [a, b, c, d] = g.entries();
        let lin_ab = UniPoly::new(vec![b.clone(), a.clone()]);
        let lin_cd = UniPoly::new(vec![d.clone(), c.clone()]);
        let diff = &(f.num() * &lin_cd) - &(f.den() * &lin_ab);
        if diff.rem(mu)?.is_zero() {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// Distillation analysis of a nonconstant decoder.
pub fn analyze(f: &MeroFn) -> Result<DistillReport> {
    if f.is_constant() {
        return Err(Error::domain("constant decoder"));
    }
    let r = f.r_polynomial();
    let wronskian = f.wronskian()?;
    let rh = f.rh_audit()?;
    let fixed_rational = rational_points(f, &r)?;
    let fixed_algebraic = algebraic_factors(f, &r)?;
    let coherent_poly = UniPoly::gcd(&r, &wronskian)?;
    let coherent = rational_points(f, &coherent_poly)?;
    let coherent_algebraic = algebraic_factors(f, &coherent_poly)?;
    let image = f.eval(&ExtScalar::Infinity);
    let infinity = InfinityReport {
        fixed: image == ExtScalar::Infinity,
        order: f.ramification_at(&ExtScalar::Infinity)?,
        image,
    };
    let mut clifford_distilled = Vec::new();
    for (class, atom) in catalog_atoms() {
        let Some(mu) = atom else { continue };
        if !e7_agrees_mod(f, mu)? {
            continue;
        }
        if let Some(witness) = clifford_witness(f, mu)? {
            clifford_distilled.push(CliffordDistilled {
                factor: mu.clone(),
                class: *class,
                witness,
                order: f.ramification_on(mu)?,
            });
        }
    }
    Ok(DistillReport {
        f: f.clone(),
        r,
        wronskian,
        rh,
        fixed_rational,
        fixed_algebraic,
        infinity,
        coherent,
        coherent_algebraic,
        clifford_distilled,
        branch: f.branch_divisor()?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbePoint {
    pub point: ExtScalar,
    pub image: ExtScalar,
    pub order: usize,
    pub pass: bool,
}

/// Ramification at `0, 1, -1, ∞` against the declared distance.
pub fn conjecture_probe(code: &StabCode) -> Result<Vec<ProbePoint>> {
    let d = code
        .distance()
        .ok_or_else(|| Error::domain("the code declares no distance"))?;
    x_part(code)?;
    let f = mero_decoder(code)?;
    let stab: Vec<ExtScalar> = ["0", "1", "-1", "i", "-i", "inf"]
        .iter()
        .map(|s| s.parse().expect("valid"))
        .collect();
    ["0", "1", "-1", "inf"]
        .iter()
        .map(|s| {
            let point: ExtScalar = s.parse().expect("valid");
            let image = f.eval(&point);
            let order = f.ramification_at(&point)?;
            Ok(ProbePoint {
                pass: order >= d as usize && stab.contains(&image),
                point,
                image,
                order,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(gens: &[&str], lx: &str, lz: &str, d: Option<u32>) -> StabCode {
        StabCode::new(
            gens.iter().map(|g| g.parse().unwrap()).collect(),
            lx.parse().unwrap(),
            lz.parse().unwrap(),
            d,
        )
        .unwrap()
    }

    fn f(s: &str) -> MeroFn {
        s.parse().unwrap()
    }

    fn rep_x() -> StabCode {
        code(&["XX.", ".XX"], "XXX", "ZZZ", Some(1))
    }

    fn rep_z() -> StabCode {
        code(&["ZZ.", ".ZZ"], "XXX", "ZZZ", Some(1))
    }

    fn five(lx: &str) -> StabCode {
        code(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"], lx, "ZZZZZ", Some(3))
    }

    fn steane() -> StabCode {
        code(
            &["...XXXX", ".XX..XX", "X.X.X.X", "...ZZZZ", ".ZZ..ZZ", "Z.Z.Z.Z"],
            "XXXXXXX",
            "ZZZZZZZ",
            Some(3),
        )
    }

    #[test]
    fn repetition_decoders() {
        assert_eq!(mero_decoder(&rep_z()).unwrap(), f("z^3"));
        assert_eq!(mero_decoder(&rep_x()).unwrap(), f("(z^3+3z)/(3z^2+1)"));
        let g: MultiMeroFn = "(z1+z2+z3+z1 z2 z3)/(1+z1 z2+z1 z3+z2 z3)".parse().unwrap();
        assert_eq!(mero_decoder_multi(&rep_x()).unwrap(), g);
        assert_eq!(mero_decoder_multi(&rep_z()).unwrap(), "z1 z2 z3".parse().unwrap());
    }

    #[test]
    fn five_qubit_decoder() {
        assert_eq!(mero_decoder(&five("-XXXXX")).unwrap(), f("(z^5-5z)/(5z^4-1)"));
        let plus = mero_decoder(&five("XXXXX")).unwrap();
        assert_eq!(plus, f("-(z^5-5z)/(5z^4-1)"));
        assert!(equal_up_to_pauli(&plus, &f("(z^5-5z)/(5z^4-1)")).unwrap());
    }

    #[test]
    fn steane_decoders_agree() {
        let s = steane();
        assert_eq!(mero_decoder(&s).unwrap(), f("(z^7+7z^3)/(7z^4+1)"));
        assert_eq!(css_decoder(&s).unwrap(), f("(z^7+7z^3)/(7z^4+1)"));
        assert!(css_components_match(&s).unwrap());
        assert_eq!(
            mero_decoder_multi(&s).unwrap().diagonal().unwrap(),
            mero_decoder(&s).unwrap()
        );
    }

    #[test]
    fn css_decoder_preconditions() {
        assert!(css_decoder(&five("XXXXX")).is_err());
        let moved = code(&["XX.", ".XX"], "X..", "ZZZ", None);
        assert!(css_decoder(&moved).is_err());
        assert_eq!(css_decoder(&rep_z()).unwrap(), mero_decoder(&rep_z()).unwrap());
        assert_eq!(css_decoder(&rep_x()).unwrap(), mero_decoder(&rep_x()).unwrap());
    }

    #[test]
    fn reference_state_does_not_matter() {
        for c in [five("-XXXXX"), steane(), rep_x()] {
            let want = mero_decoder(&c).unwrap();
            let n = c.n();
            let mut hits = 0;
            for k in 0..(1u64 << n) {
                let a: Vec<bool> = (0..n).map(|j| k >> j & 1 == 1).collect();
                if let Some(g) = mero_decoder_at(&c, &a).unwrap() {
                    assert_eq!(g, want);
                    hits += 1;
                }
            }
            assert!(hits > 0);
        }
    }

    #[test]
    fn dual_identity() {
        assert!(dual_decoder_identity(&steane()).unwrap());
        assert!(dual_decoder_identity(&rep_x()).unwrap());
        assert!(dual_decoder_identity(&five("-XXXXX")).unwrap());
    }

    #[test]
    fn concatenation_composes_decoders() {
        let shor = StabCode::concat(&rep_x(), &rep_z()).unwrap();
        let fs = mero_decoder(&shor).unwrap();
        assert_eq!(fs, f("(z^9+3z^3)/(3z^6+1)"));
        let composed = mero_decoder(&rep_x())
            .unwrap()
            .compose(&mero_decoder(&rep_z()).unwrap())
            .unwrap();
        assert_eq!(fs, composed);
        assert_eq!(css_decoder(&shor).unwrap(), fs);
    }

    #[test]
    fn shor_report() {
        let rep = analyze(&f("(z^9+3z^3)/(3z^6+1)")).unwrap();
        let pts: Vec<String> = rep.fixed_rational.iter().map(|p| p.point.to_string()).collect();
        assert_eq!(pts, ["-1", "-i", "0", "i", "1"]);
        let coh: Vec<(String, usize)> = rep.coherent.iter().map(|p| (p.point.to_string(), p.order)).collect();
        assert_eq!(coh, [("-1".into(), 3), ("0".into(), 3), ("1".into(), 3)]);
        assert!(rep.rh.ok);
    }

    #[test]
    fn five_qubit_report() {
        let rep = analyze(&f("(z^5-5z)/(5z^4-1)")).unwrap();
        assert_eq!(rep.fixed_rational.len(), 1);
        assert_eq!(rep.fixed_rational[0].point, ExtScalar::int(0));
        assert_eq!(rep.fixed_algebraic.len(), 1);
        assert_eq!(rep.fixed_algebraic[0].factor, "z^4+1".parse().unwrap());
        assert_eq!(rep.fixed_algebraic[0].class, StateClass::H);
        let fs: Vec<&CliffordDistilled> = rep
            .clifford_distilled
            .iter()
            .filter(|c| c.class == StateClass::F)
            .collect();
        let mut prod = UniPoly::one();
        for c in &fs {
            assert_eq!(c.order, 2);
            prod = &prod * &c.factor;
        }
        assert!(prod.eq_up_to_scalar(&"z^8+14z^4+1".parse().unwrap()));
        for c in &rep.clifford_distilled {
            let [a, b, cc, d] = c.witness.entries();
            let diff = &(rep.f.num() * &UniPoly::new(vec![d.clone(), cc.clone()]))
                - &(rep.f.den() * &UniPoly::new(vec![b.clone(), a.clone()]));
            assert!(c.factor.divides(&diff));
        }
    }

    #[test]
    fn steane_report() {
        let rep = analyze(&f("(z^7+7z^3)/(7z^4+1)")).unwrap();
        let pts: Vec<String> = rep.fixed_rational.iter().map(|p| p.point.to_string()).collect();
        assert_eq!(pts, ["-1", "0", "1"]);
        assert_eq!(rep.fixed_algebraic.len(), 1);
        assert_eq!(rep.fixed_algebraic[0].class, StateClass::H);
        assert_eq!(rep.fixed_algebraic[0].order, 1);
        assert_eq!(rep.fixed_algebraic[0].factor, "(z^2-2z-1)(z^2+2z-1)".parse().unwrap());
    }

    #[test]
    fn e7_congruence_on_h_states() {
        let rm = f("(z^15+15z^7)/(15z^8+1)");
        for mu in ["z^2-i", "z^2+i", "z^4+1"] {
            assert!(e7_agrees_mod(&rm, &mu.parse().unwrap()).unwrap(), "{mu}");
        }
        assert!(!e7_agrees_mod(&f("2z"), &"z^2-i".parse().unwrap()).unwrap());
        let rep = analyze(&rm).unwrap();
        let hs: Vec<String> = rep
            .clifford_distilled
            .iter()
            .filter(|c| c.class == StateClass::H)
            .map(|c| format!("{} {}", c.factor, c.order))
            .collect();
        assert_eq!(hs, ["z^2 + i 3", "z^2 - i 3"]);
    }

    #[test]
    fn probe_examples() {
        let orders = |c: &StabCode| -> Vec<(usize, bool)> {
            conjecture_probe(c).unwrap().iter().map(|p| (p.order, p.pass)).collect()
        };
        assert_eq!(orders(&steane()), vec![(3, true); 4]);
        let shor = StabCode::concat(&rep_x(), &rep_z()).unwrap().with_distance(Some(3));
        assert_eq!(orders(&shor), vec![(3, true); 4]);
        assert!(conjecture_probe(&steane().with_distance(None)).is_err());
        assert!(conjecture_probe(&five("XXXXX")).is_err());
    }
}
