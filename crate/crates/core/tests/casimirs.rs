use casimir_core::builtins;
use casimir_core::contraction::{contract, decompose_casimir, to_chain_coordinates};
use casimir_core::invariants::{charpoly_invariants, is_invariant, template_report};
use casimir_core::{check_chain, Poly};

fn chain_casimirs(template: &casimir_core::MatrixTemplate, chain: &casimir_core::ChainSpec) -> Vec<(u32, Poly)> {
    charpoly_invariants(template, None)
        .unwrap()
        .into_iter()
        .map(|(d, p)| (d, to_chain_coordinates(&p, chain).unwrap()))
        .collect()
}

#[test]
fn sp6_template_gives_invariants() {
    let alg = builtins::sp6();
    let rep = template_report(&alg, &builtins::sp6_template()).unwrap();
    let summary: Vec<_> = rep.iter().map(|c| (c.degree, c.term_count, c.invariant, c.imaginary_terms)).collect();
    eprintln!("{summary:?}");
    assert!(rep.iter().all(|c| c.invariant));
    assert_eq!(rep.iter().map(|c| c.degree).collect::<Vec<_>>(), vec![2, 4, 6]);
}

#[test]
fn su22_template_gives_invariants() {
    let alg = builtins::su22();
    let rep = template_report(&alg, &builtins::su22_template()).unwrap();
    let summary: Vec<_> = rep.iter().map(|c| (c.degree, c.term_count, c.invariant, c.imaginary_terms)).collect();
    eprintln!("{summary:?}");
    assert!(rep.iter().all(|c| c.invariant));
}

#[test]
fn sp6_decomposition_patterns() {
    let alg = builtins::sp6();
    let chain = builtins::sp6_unitary_chain();
    let report = check_chain(&alg, &chain).unwrap();
    let contracted = contract(&alg, &chain).unwrap();
    for (d, p) in chain_casimirs(&builtins::sp6_template(), &chain) {
        let dec = decompose_casimir(&report.algebra, chain.sub_dim, &p).unwrap();
        let shape: Vec<_> = dec.components.iter().map(|(b, q)| (b.paper_style(), q.term_count())).collect();
        eprintln!("C{d}: {shape:?}");
        let (_, top) = dec.top().unwrap();
        assert!(is_invariant(&contracted, top));
    }
}

#[test]
fn su22_decomposition_patterns() {
    let alg = builtins::su22();
    let chain = builtins::su22_cartan_chain();
    let report = check_chain(&alg, &chain).unwrap();
    let contracted = contract(&alg, &chain).unwrap();
    for (d, p) in chain_casimirs(&builtins::su22_template(), &chain) {
        let dec = decompose_casimir(&report.algebra, chain.sub_dim, &p).unwrap();
        let shape: Vec<_> = dec.components.iter().map(|(b, q)| (b.paper_style(), q.term_count())).collect();
        eprintln!("C{d}: {shape:?}");
        let (_, top) = dec.top().unwrap();
        assert!(is_invariant(&contracted, top));
    }
}
