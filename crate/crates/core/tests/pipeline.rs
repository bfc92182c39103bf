use casimir_core::builtins;
use casimir_core::mlp::{solve, CasimirSource, SolveOptions, Verdict};

#[test]
fn su22_pipeline_exact() {
    let t = std::time::Instant::now();
    let rep = solve(
        &builtins::su22(),
        &builtins::su22_cartan_chain(),
        &CasimirSource::Template(builtins::su22_template()),
        &SolveOptions::default(),
    )
    .unwrap();
    eprintln!("{}", rep.summary());
    eprintln!("elapsed {:?}", t.elapsed());
    assert_eq!(rep.counts.needed, 3);
    assert_eq!(rep.final_set.len(), 9);
    assert!(rep.commutation.iter().all(|p| p.verdict == Verdict::ExactPass));
}

#[test]
fn sp6_pipeline_poisson() {
    let t = std::time::Instant::now();
    let options = SolveOptions { exact_commutators: false, ..SolveOptions::default() };
    let rep = solve(
        &builtins::sp6(),
        &builtins::sp6_unitary_chain(),
        &CasimirSource::Template(builtins::sp6_template()),
        &options,
    )
    .unwrap();
    eprintln!("{}", rep.summary());
    eprintln!("elapsed {:?}", t.elapsed());
    assert_eq!(rep.counts.needed, 3);
    assert!(rep.commutation.iter().all(|p| p.verdict == Verdict::PoissonPass));
}

// Currently fails: the symmetrized sp(6) components do not commute exactly
// (a third-order remainder survives), so no candidate set is accepted.
#[test]
#[ignore]
fn sp6_pipeline_exact() {
    let t = std::time::Instant::now();
    let rep = solve(
        &builtins::sp6(),
        &builtins::sp6_unitary_chain(),
        &CasimirSource::Template(builtins::sp6_template()),
        &SolveOptions { max_alternatives: 0, ..SolveOptions::default() },
    )
    .unwrap();
    eprintln!("{}", rep.summary());
    eprintln!("elapsed {:?}", t.elapsed());
    assert!(rep.commutation.iter().all(|p| p.verdict == Verdict::ExactPass));
}
