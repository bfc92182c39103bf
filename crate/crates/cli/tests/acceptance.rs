//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The sp(6) exact commutator table is optional in CI and required for a
//! release. By default only its cheapest pair is computed; set
//! `CASIMIR_RELEASE=1` for the full table, which then gates the exit code.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use casimir_core::builtins;
use casimir_core::contraction::{contract, contract_in_chain_basis, decompose_casimir, to_chain_coordinates};
use casimir_core::enveloping::{normal_order_by_rewriting, poisson_bracket, Enveloping, Strategy};
use casimir_core::invariants::{
    charpoly_invariants, count_invariants, in_span, is_invariant, is_subgroup_scalar, solve_invariants_degree,
    DEFAULT_MONOMIAL_CAP,
};
use casimir_core::poly::bidegree_split;
use casimir_core::{
    check_chain, jacobian_independent, parse_poly, BiDegree, ChainSpec, LieAlgebra, Matrix, MatrixTemplate, Monomial,
    Poly, Scalar, UEElement,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CASES: usize = 200;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(t: Instant, budget: Duration) -> bool {
    t.elapsed() <= budget
}

fn casimir(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_casimir")).args(args).output().expect("run casimir");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

/// Casimirs of a built-in template in chain coordinates, with the chain-basis algebra.
fn chain_casimirs(alg: &LieAlgebra, chain: &ChainSpec, t: &MatrixTemplate) -> (LieAlgebra, Vec<(u32, Poly)>) {
    let in_chain = check_chain(alg, chain).unwrap().algebra;
    let cs = charpoly_invariants(t, None)
        .unwrap()
        .into_iter()
        .map(|(d, p)| (d, to_chain_coordinates(&p, chain).unwrap()))
        .collect();
    (in_chain, cs)
}

fn component(alg: &LieAlgebra, sub_dim: usize, p: &Poly, paper: (u32, u32)) -> Poly {
    let d = decompose_casimir(alg, sub_dim, p).unwrap();
    d.components[&BiDegree::new(paper.1, paper.0)].clone()
}

fn criterion_1() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for name in ["builtin:sp6", "builtin:su22"] {
        let t = Instant::now();
        let (code, out) = casimir(&["validate", name]);
        let ok = code == 0 && out.contains("exact pass") && within(t, Duration::from_secs(5));
        pass &= ok;
        details.push(format!("{name} exit {code} in {:.2?}", t.elapsed()));
    }
    outcome(pass, details.join(", "))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let sp6 = builtins::sp6();
    let contracted = contract(&sp6, &builtins::sp6_unitary_chain()).unwrap();
    let got = [
        ("sp6", count_invariants(&sp6, 0, 5), 3),
        ("su22", count_invariants(&builtins::su22(), 0, 5), 3),
        ("sp6 contracted", count_invariants(&contracted, 0, 5), 3),
        ("su2", count_invariants(&builtins::su2(), 0, 5), 1),
    ];
    let pass = got.iter().all(|(_, n, want)| n == want) && within(t, Duration::from_secs(30));
    let detail = got.iter().map(|(name, n, _)| format!("{name}={n}")).collect::<Vec<_>>().join(" ");
    outcome(pass, format!("{detail} in {:.2?}", t.elapsed()))
}

fn criterion_3() -> Outcome {
    let (c1, a) = casimir(&["counts", "--dims", "14,2,6,2,0"]);
    let (c2, b) = casimir(&["counts", "--dims", "15,3,3,3,0"]);
    let (c3, c) = casimir(&["counts", "builtin:su22"]);
    let pass = c1 == 0 && c2 == 0 && c3 == 0 && a.contains("n=2 ") && b.contains("n=3 ") && c.contains("racah=3\n");
    outcome(pass, "n=2 for (14,2,6,2,0), n=3 for (15,3,3,3,0), su(2,2) Racah number 3")
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let mut details = Vec::new();
    let mut pass = true;
    for (alg, tpl, want) in
        [(builtins::sp6(), builtins::sp6_template(), vec![2, 4, 6]), (builtins::su22(), builtins::su22_template(), vec![2, 3, 4])]
    {
        let cs = charpoly_invariants(&tpl, None).unwrap();
        let degrees: Vec<u32> = cs.keys().copied().collect();
        let ok = degrees == want && cs.values().all(|p| is_invariant(&alg, p));
        pass &= ok;
        details.push(format!("{} degrees {degrees:?} invariant={ok}", alg.name()));
    }
    // The printed sp(6) entry (6,5) = -X(2,3) must fail; the template carries -X(3,2).
    let mut literal = builtins::sp6_template();
    literal.entries[5][4] = parse_poly("-x5", literal.nvars).unwrap();
    let cs = charpoly_invariants(&literal, Some(&[4, 6])).unwrap();
    let literal_fails = cs.values().all(|p| !is_invariant(&builtins::sp6(), p));
    pass &= literal_fails && within(t, Duration::from_secs(120));
    details.push(format!("uncorrected (6,5) entry rejected={literal_fails}"));
    outcome(pass, format!("{} in {:.2?}", details.join(", "), t.elapsed()))
}

fn criterion_5() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    let cases = [
        (builtins::sp6(), builtins::sp6_unitary_chain(), builtins::sp6_template(), vec![(2, 2), (4, 3), (6, 4)]),
        (builtins::su22(), builtins::su22_cartan_chain(), builtins::su22_template(), vec![(2, 2), (3, 3), (4, 4)]),
    ];
    for (alg, chain, tpl, want) in cases {
        let (in_chain, cs) = chain_casimirs(&alg, &chain, &tpl);
        let got: Vec<(u32, usize)> =
            cs.iter().map(|(d, p)| (*d, decompose_casimir(&in_chain, chain.sub_dim, p).unwrap().len())).collect();
        pass &= got == want;
        details.push(format!("{} {got:?}", alg.name()));
        if alg.name() == "su22" {
            let c3 = &cs.iter().find(|(d, _)| *d == 3).unwrap().1;
            let no_t1 = decompose_casimir(&in_chain, chain.sub_dim, c3).unwrap().components.keys().all(|b| b.comp_deg != 1);
            pass &= no_t1;
            details.push(format!("su22 C3 without t^1 component={no_t1}"));
        }
    }
    outcome(pass, details.join(", "))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let mut pass = true;
    let mut checked = 0;
    let cases = [
        (builtins::sp6(), builtins::sp6_unitary_chain(), builtins::sp6_template()),
        (builtins::su22(), builtins::su22_cartan_chain(), builtins::su22_template()),
    ];
    for (alg, chain, tpl) in cases {
        let (in_chain, cs) = chain_casimirs(&alg, &chain, &tpl);
        let contracted = contract_in_chain_basis(&in_chain, chain.sub_dim);
        for (_, p) in &cs {
            let d = decompose_casimir(&in_chain, chain.sub_dim, p).unwrap();
            for c in d.components.values() {
                pass &= is_subgroup_scalar(&in_chain, chain.sub_dim, c);
                checked += 1;
            }
            pass &= is_invariant(&contracted, d.top().unwrap().1);
        }
    }
    pass &= within(t, Duration::from_secs(120));
    outcome(pass, format!("{checked} components are subgroup scalars, 6 top components contracted invariants, {:.2?}", t.elapsed()))
}

fn criterion_7() -> Outcome {
    let chain = builtins::sp6_unitary_chain();
    let (in_chain, cs) = chain_casimirs(&builtins::sp6(), &chain, &builtins::sp6_template());
    let c = |d: u32| cs.iter().find(|(k, _)| *k == d).unwrap().1.clone();
    let got = [
        component(&in_chain, chain.sub_dim, &c(4), (2, 2)).term_count(),
        component(&in_chain, chain.sub_dim, &c(6), (2, 4)).term_count(),
        component(&in_chain, chain.sub_dim, &c(6), (4, 2)).term_count(),
    ];
    outcome(got == [126, 686, 444], format!("C_(2,2) {}, C_(2,4) {}, C_(4,2) {} terms", got[0], got[1], got[2]))
}

fn all_pairs_commute(alg: &LieAlgebra, ops: &[(String, Poly)]) -> (bool, usize) {
    let mut engine = Enveloping::new(alg);
    let syms: Vec<UEElement> = ops.iter().map(|(_, p)| engine.symmetrize(p).unwrap()).collect();
    let mut pairs = 0;
    let mut ok = true;
    for i in 0..syms.len() {
        for j in i + 1..syms.len() {
            pairs += 1;
            let c = engine.commutator(&syms[i], &syms[j]).unwrap();
            if !c.is_zero() {
                ok = false;
                println!("    [{}, {}] has {} words", ops[i].0, ops[j].0, c.term_count());
            }
        }
    }
    (ok, pairs)
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let chain = builtins::su22_cartan_chain();
    let (alg, cs) = chain_casimirs(&builtins::su22(), &chain, &builtins::su22_template());
    let n = alg.dim();
    let c = |d: u32| cs.iter().find(|(k, _)| *k == d).unwrap().1.clone();
    let s = chain.sub_dim;
    let mut ops: Vec<(String, Poly)> = (0..3).map(|i| (format!("H{}", i + 1), Poly::var(n, i))).collect();
    ops.extend([2, 3, 4].map(|d| (format!("C{d}"), c(d))));
    let labels = [("C_(3,0)", 3, (3, 0)), ("C_(4,0)", 4, (4, 0)), ("C_(3,1)", 4, (3, 1))];
    ops.extend(labels.iter().map(|(name, d, paper)| (name.to_string(), component(&alg, s, &c(*d), *paper))));
    let (commute, pairs) = all_pairs_commute(&alg, &ops);
    let polys: Vec<Poly> = ops.iter().map(|(_, p)| p.clone()).collect();
    let cert = jacobian_independent(&polys, 0);
    let independent = cert.as_ref().is_some_and(|c| c.verify(&polys));

    // The text also names C_(2,1) in place of C_(3,0); check that triple too.
    let mut alt = ops.clone();
    alt[6] = ("C_(2,1)".into(), component(&alg, s, &c(3), (2, 1)));
    let (alt_commute, _) = all_pairs_commute(&alg, &alt);

    let pass = commute && independent && within(t, Duration::from_secs(600));
    outcome(
        pass,
        format!(
            "{pairs} pairs exact-commute={commute}, Jacobian certificate={independent}, C_(2,1) variant commutes={alt_commute}, {:.2?}",
            t.elapsed()
        ),
    )
}

/// Returns the outcome and whether it gates this run: the prefilter always
/// does, the exact part only in release mode.
fn criterion_9(release: bool) -> (Outcome, bool) {
    let t = Instant::now();
    let chain = builtins::sp6_unitary_chain();
    let (alg, cs) = chain_casimirs(&builtins::sp6(), &chain, &builtins::sp6_template());
    let c = |d: u32| cs.iter().find(|(k, _)| *k == d).unwrap().1.clone();
    let s = chain.sub_dim;
    let ops = [
        ("C_(2,2)", component(&alg, s, &c(4), (2, 2))),
        ("C_(4,2)", component(&alg, s, &c(6), (4, 2))),
        ("C_(2,4)", component(&alg, s, &c(6), (2, 4))),
    ];
    let poisson = (0..3).all(|i| (i + 1..3).all(|j| poisson_bracket(&alg, &ops[i].1, &ops[j].1).unwrap().is_zero()));
    let poisson_time = t.elapsed();
    let poisson_ok = poisson && poisson_time <= Duration::from_secs(300);

    let pairs: &[(usize, usize)] = if release { &[(0, 1), (0, 2), (1, 2)] } else { &[(0, 1)] };
    let mut engine = Enveloping::new(&alg);
    let syms: Vec<UEElement> = ops.iter().map(|(_, p)| engine.symmetrize(p).unwrap()).collect();
    let mut nonzero = Vec::new();
    for &(i, j) in pairs {
        let comm = engine.commutator(&syms[i], &syms[j]).unwrap();
        if !comm.is_zero() {
            let mut by_degree = BTreeMap::new();
            for (w, _) in comm.terms() {
                *by_degree.entry(w.len()).or_insert(0usize) += 1;
            }
            nonzero.push(format!("[{}, {}] = {} words {by_degree:?}", ops[i].0, ops[j].0, comm.term_count()));
        }
    }
    let exact = nonzero.is_empty();
    let scope = if release { "full table" } else { "cheapest pair only" };
    let detail = format!(
        "Poisson prefilter {} in {poisson_time:.2?}; exact ({scope}) {}{}; {:.2?}",
        if poisson_ok { "pass" } else { "FAIL" },
        if exact { "zero" } else { "NONZERO: " },
        nonzero.join("; "),
        t.elapsed()
    );
    (outcome(poisson_ok && exact, detail), release || !poisson_ok)
}

fn criterion_10() -> Outcome {
    let su2 = builtins::su2();
    let hand = parse_poly("x0^2 + x1^2 + x2^2", 3).unwrap();
    let basis = solve_invariants_degree(&su2, 2, DEFAULT_MONOMIAL_CAP).unwrap();
    let su2_ok = basis.len() == 1 && in_span(&hand, &basis) && is_invariant(&su2, &hand);

    let sp6 = builtins::sp6();
    let basis = solve_invariants_degree(&sp6, 2, DEFAULT_MONOMIAL_CAP).unwrap();
    let c2 = charpoly_invariants(&builtins::sp6_template(), Some(&[2])).unwrap()[&2].clone();
    let sp6_ok = basis.len() == 1 && basis[0].proportionality(&c2).is_some();
    outcome(su2_ok && sp6_ok, format!("su(2) quadratic in span={su2_ok}, sp(6) degree-2 nullspace proportional to C2={sp6_ok}"))
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_terms: usize, max_deg: u32) -> Poly {
    let terms = (0..rng.gen_range(1..=max_terms)).map(|_| {
        let deg = rng.gen_range(0..=max_deg);
        let m = Monomial::from_pairs((0..deg).map(|_| (rng.gen_range(0..n), 1)));
        let c = Scalar::new(rng.gen_range(-4..=4i64).into(), rng.gen_range(-1..=1i64).into());
        (m, c)
    });
    Poly::from_terms(n, terms.collect::<Vec<_>>()).unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Vec<usize> {
    (0..rng.gen_range(0..=max_len)).map(|_| rng.gen_range(0..n)).collect()
}

fn random_ue(rng: &mut ChaCha8Rng, engine: &mut Enveloping, n: usize) -> UEElement {
    let mut acc = UEElement::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        let w = random_word(rng, n, 3);
        let c = Scalar::from_int(rng.gen_range(-3..=3));
        acc = acc.add(&engine.normal_order(&w).unwrap().scale(&c));
    }
    acc
}

fn block_permutation(rng: &mut ChaCha8Rng, n: usize, s: usize) -> Matrix {
    let mut sub: Vec<usize> = (0..s).collect();
    let mut rest: Vec<usize> = (s..n).collect();
    sub.shuffle(rng);
    rest.shuffle(rng);
    let order: Vec<usize> = sub.into_iter().chain(rest).collect();
    let mut rows = vec![vec![Scalar::ZERO; n]; n];
    for (i, &j) in order.iter().enumerate() {
        rows[i][j] = Scalar::ONE;
    }
    Matrix::from_rows(rows)
}

fn criterion_11() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let sp6_chain = builtins::sp6_unitary_chain();
    let sp6 = check_chain(&builtins::sp6(), &sp6_chain).unwrap().algebra;
    let su22 = builtins::su22();
    let mut failures: BTreeMap<&str, usize> = BTreeMap::new();
    let mut fail = |name: &'static str, ok: bool| {
        let e = failures.entry(name).or_insert(0);
        if !ok {
            *e += 1;
        }
    };

    let mut engine = Enveloping::new(&sp6);
    for _ in 0..CASES {
        let w = random_word(&mut rng, sp6.dim(), 6);
        let fast = engine.normal_order(&w).unwrap();
        let ok = fast == normal_order_by_rewriting(&sp6, &w, Strategy::LeftmostInversion)
            && fast == normal_order_by_rewriting(&sp6, &w, Strategy::RightmostInversion);
        fail("PBW confluence", ok);
    }

    let mut engine = Enveloping::new(&su22);
    let n = su22.dim();
    for _ in 0..CASES {
        let (a, b, c) = (random_ue(&mut rng, &mut engine, n), random_ue(&mut rng, &mut engine, n), random_ue(&mut rng, &mut engine, n));
        let (ab, bc) = (engine.multiply(&a, &b).unwrap(), engine.multiply(&b, &c).unwrap());
        let ab_c = engine.multiply(&ab, &c).unwrap();
        let a_bc = engine.multiply(&a, &bc).unwrap();
        fail("UE associativity", ab_c == a_bc);
    }
    for _ in 0..CASES {
        let (a, b, c) = (random_ue(&mut rng, &mut engine, n), random_ue(&mut rng, &mut engine, n), random_ue(&mut rng, &mut engine, n));
        let mut cyc = |x: &UEElement, y: &UEElement, z: &UEElement| {
            let yz = engine.commutator(y, z).unwrap();
            engine.commutator(x, &yz).unwrap()
        };
        let sum = cyc(&a, &b, &c).add(&cyc(&b, &c, &a)).add(&cyc(&c, &a, &b));
        fail("UE Jacobi", sum.is_zero());
    }

    let n = sp6.dim();
    for _ in 0..CASES {
        let (f, g, h) = (random_poly(&mut rng, n, 4, 3), random_poly(&mut rng, n, 4, 3), random_poly(&mut rng, n, 3, 2));
        let fg = poisson_bracket(&sp6, &f, &g).unwrap();
        let gf = poisson_bracket(&sp6, &g, &f).unwrap();
        fail("Poisson antisymmetry", (&fg + &gf).is_zero());
        let lhs = poisson_bracket(&sp6, &f, &(&g * &h)).unwrap();
        let rhs = &(&fg * &h) + &(&g * &poisson_bracket(&sp6, &f, &h).unwrap());
        fail("Poisson Leibniz", lhs == rhs);
    }

    for _ in 0..CASES {
        let p = random_poly(&mut rng, n, 8, 5);
        let s = rng.gen_range(0..=n);
        let d = bidegree_split(&p, s);
        let homogeneous = d.components.iter().all(|(b, c)| c.terms().all(|(m, _)| m.bidegree(s) == *b));
        fail("bidegree reconstruction", d.reconstruct() == p && homogeneous);
        fail("parse/print round trip", parse_poly(&p.to_string(), n).unwrap() == p);
    }

    let su22_chain = builtins::su22_cartan_chain();
    let bases = [(sp6.clone(), sp6_chain.sub_dim), (check_chain(&su22, &su22_chain).unwrap().algebra, su22_chain.sub_dim)];
    for k in 0..CASES {
        let (alg, s) = &bases[k % 2];
        let permuted = alg.change_basis(&block_permutation(&mut rng, alg.dim(), *s), None).unwrap();
        let once = contract_in_chain_basis(&permuted, *s);
        let twice = contract_in_chain_basis(&once, *s);
        let d = alg.dim();
        let rr_zero = (*s..d).all(|i| (*s..d).all(|j| once.bracket(i, j).is_empty()));
        fail("contraction idempotence", once.constants() == twice.constants());
        fail("contraction [R,R]=0 and Jacobi", rr_zero && once.validate_jacobi().passed());
    }

    let pass = failures.values().all(|&f| f == 0) && within(t, Duration::from_secs(300));
    let detail = failures.iter().map(|(k, f)| format!("{k} {f}/{CASES}")).collect::<Vec<_>>().join(", ");
    outcome(pass, format!("failures: {detail}; {:.2?}", t.elapsed()))
}

fn main() {
    let release = std::env::var("CASIMIR_RELEASE").is_ok_and(|v| v == "1");
    let mut gate_failed = false;
    let mut report = |n: usize, o: Outcome, gating: bool| {
        let status = if o.pass { "PASS" } else { "FAIL" };
        let note = if !o.pass && !gating { " (not gating this run)" } else { "" };
        println!("criterion {n:>2}: {status}{note}  {}", o.detail);
        gate_failed |= gating && !o.pass;
    };
    report(1, criterion_1(), true);
    report(2, criterion_2(), true);
    report(3, criterion_3(), true);
    report(4, criterion_4(), true);
    report(5, criterion_5(), true);
    report(6, criterion_6(), true);
    // Soft gate: a mismatch is recorded, criterion 6 is the hard gate.
    report(7, criterion_7(), false);
    report(8, criterion_8(), true);
    let (o9, gating) = criterion_9(release);
    report(9, o9, gating);
    report(10, criterion_10(), true);
    report(11, criterion_11(), true);
    if gate_failed {
        std::process::exit(1);
    }
}
