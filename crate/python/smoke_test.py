"""Smoke test for the casimir extension module.

Build and install first:  cd crates/python && maturin develop --release
"""

import json

import casimir


def main():
    su2 = casimir.LieAlgebra.load("builtin:su2")
    assert su2.dim == 3
    assert su2.validate_jacobi()
    assert su2.count_invariants(seed=0) == 1

    c2 = casimir.Poly("x0^2 + x1^2 + x2^2", 3)
    assert su2.is_invariant(c2)
    assert not su2.is_invariant(casimir.Poly("x0^2", 3))
    (basis,) = su2.solve_invariants(2)
    assert basis.term_count() == 3

    x0 = casimir.Poly("x0", 3)
    assert su2.poisson_bracket(c2, x0).is_zero()
    sym = su2.symmetrize(c2)
    gen = su2.symmetrize(x0)
    assert su2.commutator(sym, gen).is_zero()
    assert not su2.commutator(su2.symmetrize(casimir.Poly("x1", 3)), gen).is_zero()

    needed, available, _ = casimir.mlp_counts(14, 2, 6, 2, 0)
    assert (needed, available) == (2, 4)
    assert casimir.jacobian_independent([x0, casimir.Poly("x1", 3)]) is not None
    assert casimir.jacobian_independent([x0, x0 * x0]) is None

    su22 = casimir.LieAlgebra.load("builtin:su22")
    chain = casimir.Chain.load("builtin:su22_cartan")
    assert su22.count_invariants() == 3
    report = json.loads(casimir.solve_mlp(su22, chain, "builtin:su22_template"))
    assert report["counts"]["needed"] == 3
    assert len(report["final_set"]) == 9
    print("smoke test ok:", ", ".join(report["final_set"]))


if __name__ == "__main__":
    main()
