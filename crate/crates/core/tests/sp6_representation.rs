//! Floating-point cross-check of the sp(6) enveloping-algebra results in
//! the representation ad⊗ad⊗ad. Symmetrization is done here by direct
//! recursion over arrangements, without any PBW reordering, so it does not
//! share code with the exact engine.

use std::collections::HashMap;

use casimir_core::builtins;
use casimir_core::contraction::{decompose_casimir, to_chain_coordinates};
use casimir_core::enveloping::Enveloping;
use casimir_core::invariants::charpoly_invariants;
use casimir_core::{check_chain, BiDegree, LieAlgebra, Poly, UEElement};
use rand::{Rng, SeedableRng};

const N: usize = 21;
const RANK: usize = 3;

fn adjoint(alg: &LieAlgebra) -> Vec<Vec<f64>> {
    (0..N)
        .map(|i| {
            let mut m = vec![0.0; N * N];
            for j in 0..N {
                for (k, c) in alg.bracket(i, j) {
                    m[k * N + j] = c.re.to_f64();
                }
            }
            m
        })
        .collect()
}

/// `X_g` acting on a vector of the tensor cube.
fn act(ad: &[Vec<f64>], g: usize, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    for pos in 0..RANK {
        let stride = N.pow((RANK - 1 - pos) as u32);
        for (idx, &x) in v.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let j = (idx / stride) % N;
            let base = idx - j * stride;
            for k in 0..N {
                let c = ad[g][k * N + j];
                if c != 0.0 {
                    out[base + k * stride] += c * x;
                }
            }
        }
    }
    out
}

fn apply_ue(ad: &[Vec<f64>], u: &UEElement, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    let mut suffixes: HashMap<Vec<usize>, Vec<f64>> = HashMap::new();
    for (w, c) in u.terms() {
        let letters: Vec<usize> = w.letters().collect();
        let mut cur = v.to_vec();
        for s in (0..letters.len()).rev() {
            cur = match suffixes.get(&letters[s..]) {
                Some(x) => x.clone(),
                None => {
                    let x = act(ad, letters[s], &cur);
                    suffixes.insert(letters[s..].to_vec(), x.clone());
                    x
                }
            };
        }
        for (o, x) in out.iter_mut().zip(&cur) {
            *o += c.re.to_f64() * x;
        }
    }
    out
}

/// `Sym(p) v`, summing over distinct arrangements of each monomial.
fn sym_apply(ad: &[Vec<f64>], p: &Poly, v: &[f64]) -> Vec<f64> {
    fn arrangements(ms: Vec<usize>, ad: &[Vec<f64>], v: &[f64], memo: &mut HashMap<Vec<usize>, Vec<f64>>) -> Vec<f64> {
        if ms.is_empty() {
            return v.to_vec();
        }
        if let Some(x) = memo.get(&ms) {
            return x.clone();
        }
        let mut acc = vec![0.0; v.len()];
        let mut k = 0;
        while k < ms.len() {
            let g = ms[k];
            let mut rest = ms.clone();
            rest.remove(k);
            let y = act(ad, g, &arrangements(rest, ad, v, memo));
            for (a, b) in acc.iter_mut().zip(&y) {
                *a += b;
            }
            while k < ms.len() && ms[k] == g {
                k += 1;
            }
        }
        memo.insert(ms, acc.clone());
        acc
    }
    let fact = |k: u32| (1..=k).map(f64::from).product::<f64>();
    let mut memo = HashMap::new();
    let mut out = vec![0.0; v.len()];
    for (m, c) in p.terms() {
        let letters: Vec<usize> = m.letters();
        let weight = m.pairs().map(|(_, e)| fact(e)).product::<f64>() / fact(m.degree());
        let y = arrangements(letters, ad, v, &mut memo);
        for (o, x) in out.iter_mut().zip(&y) {
            *o += weight * c.re.to_f64() * x;
        }
    }
    out
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Slow (about a minute); run with `--ignored`.
#[test]
#[ignore]
fn sp6_components_do_not_commute_in_tensor_cube() {
    let chain = builtins::sp6_unitary_chain();
    let alg = check_chain(&builtins::sp6(), &chain).unwrap().algebra;
    let ad = adjoint(&alg);
    let cs = charpoly_invariants(&builtins::sp6_template(), None).unwrap();
    let c4 = to_chain_coordinates(&cs[&4], &chain).unwrap();
    let c6 = to_chain_coordinates(&cs[&6], &chain).unwrap();
    let a = decompose_casimir(&alg, chain.sub_dim, &c4).unwrap().components[&BiDegree::new(2, 2)].clone();
    let b = decompose_casimir(&alg, chain.sub_dim, &c6).unwrap().components[&BiDegree::new(4, 2)].clone();

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
    let v: Vec<f64> = (0..N.pow(RANK as u32)).map(|_| rng.gen_range(-1.0..1.0)).collect();

    let mut engine = Enveloping::new(&alg);
    let (ua, ub) = (engine.symmetrize(&a).unwrap(), engine.symmetrize(&b).unwrap());
    let scale = max_abs(&sym_apply(&ad, &a, &v)).max(max_abs(&sym_apply(&ad, &b, &v)));
    assert!(max_diff(&apply_ue(&ad, &ua, &v), &sym_apply(&ad, &a, &v)) < 1e-9 * scale);
    assert!(max_diff(&apply_ue(&ad, &ub, &v), &sym_apply(&ad, &b, &v)) < 1e-9 * scale);

    let ab = sym_apply(&ad, &a, &sym_apply(&ad, &b, &v));
    let ba = sym_apply(&ad, &b, &sym_apply(&ad, &a, &v));
    let rel = max_diff(&ab, &ba) / max_abs(&ab);
    eprintln!("relative size of [Sym a, Sym b] v: {rel:.3e}");
    assert!(rel > 1e-6, "commutator vanishes in the tensor cube");

    let exact = engine.commutator(&ua, &ub).unwrap();
    let via_engine = apply_ue(&ad, &exact, &v);
    assert!(max_diff(&via_engine, &ab.iter().zip(&ba).map(|(x, y)| x - y).collect::<Vec<_>>()) < 1e-6 * max_abs(&ab));
}
