use merodec::exactnum::ExtScalar;
use merodec::projective::{clifford_group, Mobius};
use merodec::stabcode::{enumerate_group, PauliOp};
use merodec::{GaussianRational, MeroFn, StabCode, UniPoly};
use proptest::prelude::*;

type Gq = GaussianRational;

fn gq() -> impl Strategy<Value = Gq> {
    (-6i64..=6, -6i64..=6, 1i64..=4)
        .prop_map(|(a, b, d)| Gq::from_parts(a, b).checked_div(&Gq::from_integer(d)).unwrap())
}

fn poly(max_len: usize) -> impl Strategy<Value = UniPoly> {
    proptest::collection::vec(gq(), 0..=max_len).prop_map(UniPoly::new)
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = UniPoly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn merofn_of_degree(max_len: usize) -> impl Strategy<Value = MeroFn> {
    (nonzero_poly(max_len), nonzero_poly(max_len)).prop_filter_map("reduces", |(p, q)| MeroFn::reduce(p, q).ok())
}

fn merofn() -> impl Strategy<Value = MeroFn> {
    merofn_of_degree(4)
}

fn ext() -> impl Strategy<Value = ExtScalar> {
    prop_oneof![4 => gq().prop_map(ExtScalar::Finite), 1 => Just(ExtScalar::Infinity)]
}

fn pauli(n: usize) -> impl Strategy<Value = PauliOp> {
    (
        0u8..4,
        proptest::collection::vec(any::<bool>(), n),
        proptest::collection::vec(any::<bool>(), n),
    )
        .prop_map(|(l, x, u)| PauliOp::from_bits(l, &x, &u).unwrap())
}

proptest! {
    #[test]
    fn divrem_reconstructs(a in poly(7), b in nonzero_poly(4)) {
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_and_cofactors_are_coprime(a in nonzero_poly(4), b in nonzero_poly(4), c in nonzero_poly(3)) {
        let (x, y) = (&a * &c, &b * &c);
        let g = UniPoly::gcd(&x, &y).unwrap();
        prop_assert!(g.divides(&x) && g.divides(&y));
        prop_assert!(c.divides(&g));
        let cx = x.div_exact(&g).unwrap();
        let cy = y.div_exact(&g).unwrap();
        prop_assert!(UniPoly::gcd(&cx, &cy).unwrap().is_constant());
    }

    #[test]
    fn squarefree_decomposition_reconstructs(a in nonzero_poly(3), b in nonzero_poly(3)) {
        let p = &(&a * &a) * &(&b * &a);
        let parts = p.squarefree_decomposition().unwrap();
        let mut prod = UniPoly::one();
        for (f, k) in &parts {
            prop_assert!(f.is_squarefree());
            prod = &prod * &f.pow(*k as u32);
        }
        prop_assert!(prod.eq_up_to_scalar(&p));
    }

    #[test]
    fn derivative_obeys_product_rule(a in poly(5), b in poly(5)) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn planted_roots_are_found(
        roots in proptest::collection::vec((gq(), 1usize..3), 1..4),
    ) {
        // z^2 + 2 has no roots in Q(i)
        let mut p = UniPoly::from_ints(&[2, 0, 1]);
        for (r, k) in &roots {
            p = &p * &UniPoly::linear_root(r).pow(*k as u32);
        }
        let found = p.rational_roots();
        for (r, _) in &roots {
            let total: usize = roots.iter().filter(|(s, _)| s == r).map(|(_, k)| k).sum();
            prop_assert!(found.contains(&(r.clone(), total)));
        }
        for (r, k) in &found {
            prop_assert_eq!(p.order_at(r), *k);
        }
    }

    #[test]
    fn poly_text_round_trips(a in poly(6)) {
        prop_assert_eq!(a.to_string().parse::<UniPoly>().unwrap(), a);
    }

    #[test]
    fn merofn_text_round_trips(f in merofn()) {
        prop_assert_eq!(f.to_string().parse::<MeroFn>().unwrap(), f);
    }

    #[test]
    fn composition_is_associative(f in merofn_of_degree(3), g in merofn_of_degree(3), h in merofn_of_degree(3)) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_evaluates_and_multiplies_degree(f in merofn(), g in merofn(), z in ext()) {
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.degree(), f.degree() * g.degree());
        if !g.is_constant() {
            prop_assert_eq!(fg.eval(&z), f.eval(&g.eval(&z)));
        }
    }

    #[test]
    fn riemann_hurwitz_holds(f in merofn()) {
        prop_assume!(!f.is_constant());
        let audit = f.rh_audit().unwrap();
        prop_assert!(audit.ok);
        prop_assert_eq!(audit.lhs, 2 * f.degree() - 2);
    }

    #[test]
    fn mobius_action_is_functorial(a in 0usize..24, b in 0usize..24, z in ext()) {
        let g = &clifford_group()[a];
        let h = &clifford_group()[b];
        prop_assert_eq!(g.compose(h).apply(&z), g.apply(&h.apply(&z)));
        prop_assert_eq!(g.inverse().apply(&g.apply(&z)), z.clone());
        prop_assert_eq!(g.to_merofn().eval(&z), g.apply(&z));
    }

    #[test]
    fn mobius_conjugation_preserves_degree(f in merofn(), a in 0usize..24) {
        let g: &Mobius = &clifford_group()[a];
        let c = f.mobius_conjugate(g).unwrap();
        prop_assert_eq!(c.degree(), f.degree());
        prop_assert_eq!(c.mobius_conjugate(&g.inverse()).unwrap(), f);
    }

    #[test]
    fn pauli_product_is_associative(a in pauli(5), b in pauli(5), c in pauli(5)) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pauli_commutation_matches_products(a in pauli(6), b in pauli(6)) {
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        prop_assert_eq!(a.commutes(&b).unwrap(), ab == ba);
        prop_assert!(a.mul(&a.adjoint()).unwrap().is_scalar());
        prop_assert_eq!(a.to_string().parse::<PauliOp>().unwrap(), a);
    }
}

fn corpus(name: &str) -> StabCode {
    let path = format!("{}/../../codes/{name}.code", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap().parse().unwrap()
}

#[test]
fn group_enumeration_has_full_size() {
    for name in ["rep3x", "five13", "steane", "shor", "rm15"] {
        let code = corpus(name);
        for m in 0..=code.generators().len().min(8) {
            let g = enumerate_group(&code.generators()[..m]).unwrap();
            assert_eq!(g.len(), 1 << m, "{name} {m}");
        }
    }
}

#[test]
fn dual_is_an_involution() {
    for name in ["rep3x", "rep3z", "five13", "steane", "shor", "rm15"] {
        let code = corpus(name);
        assert_eq!(code.dual().dual(), code, "{name}");
    }
}

#[test]
fn code_files_round_trip() {
    for name in ["rep3x", "rep3z", "five13", "steane", "shor", "rm15"] {
        let code = corpus(name);
        assert_eq!(code.to_file_string().parse::<StabCode>().unwrap(), code, "{name}");
    }
}
