//! The decoder against a dense state-vector computation: project a basis
//! state onto the code space, read off `<0_L|ψ⊗n>` and `<1_L|ψ⊗n>` with
//! `ψ = z|0> + |1>`, and compare the reduced ratio.

use std::path::PathBuf;

use merodec::decoder::{mero_decoder, mero_decoder_multi};
use merodec::{GaussianRational, MeroFn, StabCode, UniPoly};
use proptest::prelude::*;

type C = (i64, i64);

fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// A Pauli string as an overall phase `i^k` and one letter per qubit.
fn parse_pauli(s: &str) -> (u8, Vec<char>) {
    let (k, body) = if let Some(r) = s.strip_prefix("-i") {
        (3, r)
    } else if let Some(r) = s.strip_prefix('-') {
        (2, r)
    } else if let Some(r) = s.strip_prefix('i') {
        (1, r)
    } else {
        (0, s.strip_prefix('+').unwrap_or(s))
    };
    (k, body.chars().map(|c| if c == '.' { 'I' } else { c }).collect())
}

fn unit(k: u8) -> C {
    [(1, 0), (0, 1), (-1, 0), (0, -1)][k as usize % 4]
}

/// Dense action on a vector indexed by basis states, qubit `j` at bit `j`.
fn apply(p: &(u8, Vec<char>), v: &[C]) -> Vec<C> {
    let mut out = vec![(0, 0); v.len()];
    for (b, &amp) in v.iter().enumerate() {
        if amp == (0, 0) {
            continue;
        }
        let mut target = b;
        let mut ph = p.0;
        for (j, &c) in p.1.iter().enumerate() {
            let bit = b >> j & 1;
            match c {
                'I' => {}
                'X' => target ^= 1 << j,
                'Z' => ph += 2 * bit as u8,
                'Y' => {
                    target ^= 1 << j;
                    ph += 1 + 2 * bit as u8;
                }
                other => panic!("letter {other}"),
            }
        }
        let t = cmul(amp, unit(ph));
        out[target].0 += t.0;
        out[target].1 += t.1;
    }
    out
}

fn oracle(code: &StabCode) -> MeroFn {
    let n = code.n();
    let mut projectors: Vec<(u8, Vec<char>)> = code.generators().iter().map(|g| parse_pauli(&g.to_string())).collect();
    projectors.push(parse_pauli(&code.logical_z().to_string()));
    let lx = parse_pauli(&code.logical_x().to_string());
    for b in 0..1usize << n {
        let mut v = vec![(0, 0); 1 << n];
        v[b] = (1, 0);
        for p in &projectors {
            let pv = apply(p, &v);
            for (x, y) in v.iter_mut().zip(pv) {
                x.0 += y.0;
                x.1 += y.1;
            }
        }
        if v.iter().all(|&c| c == (0, 0)) {
            continue;
        }
        let one = apply(&lx, &v);
        let overlap = |w: &[C]| {
            let mut coeffs = vec![GaussianRational::from_integer(0); n + 1];
            for (idx, &(re, im)) in w.iter().enumerate() {
                let deg = n - idx.count_ones() as usize;
                coeffs[deg] = &coeffs[deg] + &GaussianRational::from_parts(re, -im);
            }
            UniPoly::new(coeffs)
        };
        return MeroFn::reduce(overlap(&v), overlap(&one)).unwrap();
    }
    panic!("empty code space");
}

fn corpus(name: &str) -> StabCode {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "codes", &format!("{name}.code")]
        .iter()
        .collect();
    std::fs::read_to_string(path).unwrap().parse().unwrap()
}

#[test]
fn corpus_matches_dense_oracle() {
    for name in ["rep3x", "rep3z", "five13", "steane", "shor"] {
        let code = corpus(name);
        assert_eq!(mero_decoder(&code).unwrap(), oracle(&code), "{name}");
    }
}

#[test]
fn reed_muller_matches_dense_oracle() {
    let code = corpus("rm15");
    assert_eq!(mero_decoder(&code).unwrap(), oracle(&code));
}

#[test]
fn multivariate_diagonal_is_univariate() {
    for name in ["rep3x", "five13", "steane", "shor"] {
        let code = corpus(name);
        let multi = mero_decoder_multi(&code).unwrap();
        assert_eq!(multi.diagonal().unwrap(), mero_decoder(&code).unwrap(), "{name}");
    }
}

/// Conjugates qubit `j` by `H` (`gate = 1`) or `S` (`gate = 2`), as text.
fn local_clifford(s: &str, gates: &[u8], perm: &[usize]) -> String {
    let (mut k, letters) = parse_pauli(s);
    let mut out = vec!['I'; letters.len()];
    for (j, &c) in letters.iter().enumerate() {
        let c2 = match (gates[j], c) {
            (1, 'X') => 'Z',
            (1, 'Z') => 'X',
            (1, 'Y') => {
                k += 2;
                'Y'
            }
            (2, 'X') => 'Y',
            (2, 'Y') => {
                k += 2;
                'X'
            }
            (_, c) => c,
        };
        out[perm[j]] = c2;
    }
    let prefix = ["", "i", "-", "-i"][k as usize % 4];
    format!("{prefix}{}", out.into_iter().collect::<String>())
}

fn transformed(code: &StabCode, gates: &[u8], perm: &[usize]) -> StabCode {
    let map = |p: &merodec::PauliOp| local_clifford(&p.to_string(), gates, perm).parse().unwrap();
    StabCode::new(
        code.generators().iter().map(map).collect(),
        map(code.logical_x()),
        map(code.logical_z()),
        None,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn locally_transformed_codes_match_oracle(
        which in 0usize..4,
        gates in proptest::collection::vec(0u8..3, 9),
        keys in proptest::collection::vec(any::<u32>(), 9),
    ) {
        let code = corpus(["rep3x", "five13", "steane", "shor"][which]);
        let n = code.n();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&j| keys[j]);
        let t = transformed(&code, &gates[..n], &perm);
        prop_assert_eq!(mero_decoder(&t).unwrap(), oracle(&t));
    }
}
