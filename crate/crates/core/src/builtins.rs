//! Built-in algebras, reduction chains and characteristic-polynomial
//! templates: `su(2)`, `sp(6,R)` in the Racah realization with its unitary
//! chain, and `su(2,2)` with its Cartan chain.

use crate::algebra::{ChainSpec, Combination, LieAlgebra};
use crate::error::{Error, Result};
use crate::invariants::MatrixTemplate;
use crate::io;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub const SP6_ALGEBRA: &str = include_str!("../data/sp6.alg.json");
pub const SP6_UNITARY_CHAIN: &str = include_str!("../data/sp6_unitary.chain.json");
pub const SP6_TEMPLATE: &str = include_str!("../data/sp6.template.json");
pub const SU22_ALGEBRA: &str = include_str!("../data/su22.alg.json");
pub const SU22_CARTAN_CHAIN: &str = include_str!("../data/su22_cartan.chain.json");
pub const SU22_TEMPLATE: &str = include_str!("../data/su22.template.json");
pub const SU2_ALGEBRA: &str = include_str!("../data/su2.alg.json");

/// Names accepted after the `builtin:` prefix.
pub const NAMES: &[&str] = &[
    "sp6",
    "sp6_unitary",
    "sp6_template",
    "su22",
    "su22_cartan",
    "su22_template",
    "su2",
];

/// Text of a built-in data file, by name (with or without `builtin:`).
pub fn data(name: &str) -> Result<&'static str> {
    let key = name.strip_prefix("builtin:").unwrap_or(name);
    Ok(match key {
        "sp6" => SP6_ALGEBRA,
        "sp6_unitary" | "sp6_chain" => SP6_UNITARY_CHAIN,
        "sp6_template" => SP6_TEMPLATE,
        "su22" => SU22_ALGEBRA,
        "su22_cartan" | "su22_chain" => SU22_CARTAN_CHAIN,
        "su22_template" => SU22_TEMPLATE,
        "su2" => SU2_ALGEBRA,
        other => return Err(Error::Parse(format!("unknown built-in {other:?}; known: {}", NAMES.join(", ")))),
    })
}

fn single(k: usize, c: i64) -> Combination {
    vec![(k, Scalar::from_int(c))]
}

/// `su(2)` with the cyclic brackets `[X_1, X_2] = X_3` and permutations.
pub fn su2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        "su2",
        vec!["X1".into(), "X2".into(), "X3".into()],
        [(0, 1, single(2, 1)), (1, 2, single(0, 1)), (0, 2, single(1, -1))],
    )
    .expect("su(2) brackets are well formed")
}

fn sgn(i: i32) -> i64 {
    if i > 0 {
        1
    } else {
        -1
    }
}

/// Labels `(i, j)` of the 21 independent generators `X_{i,j}` of `sp(6)`:
/// `X_{i,j}` with `i, j > 0`, then `X_{-i,j}` and `X_{i,-j}` with `i <= j`.
pub fn sp6_labels() -> Vec<(i32, i32)> {
    let mut v = Vec::with_capacity(21);
    for i in 1..=3 {
        for j in 1..=3 {
            v.push((i, j));
        }
    }
    for i in 1..=3 {
        for j in i..=3 {
            v.push((-i, j));
        }
    }
    for i in 1..=3 {
        for j in i..=3 {
            v.push((i, -j));
        }
    }
    v
}

/// Index and sign of `X_{i,j}` in terms of the chosen representatives,
/// using `X_{i,j} = -ε_i ε_j X_{-j,-i}`.
fn sp6_canonical(labels: &[(i32, i32)], i: i32, j: i32) -> (usize, i64) {
    if let Some(k) = labels.iter().position(|&l| l == (i, j)) {
        return (k, 1);
    }
    let k = labels
        .iter()
        .position(|&l| l == (-j, -i))
        .expect("every X_{i,j} has a representative");
    (k, -sgn(i) * sgn(j))
}

/// `sp(6,R)` in the Racah realization, brackets
/// `[X_ij, X_kl] = δ_jk X_il − δ_il X_kj + ε_iε_j δ_{j,−l} X_{k,−i} − ε_iε_j δ_{i,−k} X_{−j,l}`.
pub fn sp6() -> LieAlgebra {
    let labels = sp6_labels();
    let names = labels.iter().map(|(i, j)| format!("X({i},{j})")).collect();
    let mut brackets = Vec::new();
    for (a, &(i, j)) in labels.iter().enumerate() {
        for (b, &(k, l)) in labels.iter().enumerate().skip(a + 1) {
            let e = sgn(i) * sgn(j);
            let mut terms = Vec::new();
            let mut push = |c: i64, (x, y): (i32, i32)| {
                let (idx, s) = sp6_canonical(&labels, x, y);
                terms.push((idx, Scalar::from_int(c * s)));
            };
            if j == k {
                push(1, (i, l));
            }
            if i == l {
                push(-1, (k, j));
            }
            if j == -l {
                push(e, (k, -i));
            }
            if i == -k {
                push(-e, (-j, l));
            }
            brackets.push((a, b, terms));
        }
    }
    LieAlgebra::from_brackets("sp6", names, brackets).expect("sp(6) brackets are well formed")
}

/// The `su(3)×u(1) ⊂ sp(6)` chain: `H_1 = X_11 − X_22`, `H_2 = X_22 − X_33`,
/// `H_3 = X_11 + X_22 + X_33` and the six off-diagonal `X_{i,j}` span the
/// subalgebra; the twelve `X_{−i,j}`, `X_{i,−j}` span the complement.
pub fn sp6_unitary_chain() -> ChainSpec {
    let labels = sp6_labels();
    let idx = |l: (i32, i32)| labels.iter().position(|&m| m == l).unwrap();
    let n = labels.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut names = Vec::with_capacity(n);
    let mut row = |pairs: &[((i32, i32), i64)], name: String| {
        let mut r = vec![Scalar::ZERO; n];
        for &(l, c) in pairs {
            r[idx(l)] = Scalar::from_int(c);
        }
        rows.push(r);
        names.push(name);
    };
    row(&[((1, 1), 1), ((2, 2), -1)], "H1".into());
    row(&[((2, 2), 1), ((3, 3), -1)], "H2".into());
    row(&[((1, 1), 1), ((2, 2), 1), ((3, 3), 1)], "H3".into());
    for &(i, j) in &labels {
        if i > 0 && j > 0 && i != j {
            row(&[((i, j), 1)], format!("X({i},{j})"));
        }
    }
    for &(i, j) in &labels {
        if i < 0 || j < 0 {
            row(&[((i, j), 1)], format!("X({i},{j})"));
        }
    }
    ChainSpec::new(Some(Matrix::from_rows(rows)), 9).with_names(names)
}

const SU22_METRIC: [i64; 4] = [1, 1, -1, -1];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum U22 {
    E(usize, usize),
    F(usize, usize),
}

/// `su(2,2)` spanned by `E_{μν}` (μ<ν), `F_{μν}` (μ<ν) and the Cartan
/// elements `H_μ = g_{μ+1,μ+1} F_{μμ} − g_{μμ} F_{μ+1,μ+1}`.
///
/// Built from the `u(2,2)` brackets; the central element `g^{μμ} F_{μμ}` is
/// split off and the closure of the traceless part is checked.
pub fn su22() -> LieAlgebra {
    let g = |a: usize, b: usize| if a == b { SU22_METRIC[a] } else { 0 };
    let mut u = Vec::new();
    for m in 0..4 {
        for n in m + 1..4 {
            u.push(U22::E(m, n));
        }
    }
    for m in 0..4 {
        for n in m..4 {
            u.push(U22::F(m, n));
        }
    }
    let pos = |x: U22| u.iter().position(|&y| y == x).unwrap();
    // E_{μν} = −E_{νμ}, E_{μμ} = 0, F symmetric.
    let e = |m: usize, n: usize| -> Option<(usize, i64)> {
        match m.cmp(&n) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some((pos(U22::E(m, n)), 1)),
            std::cmp::Ordering::Greater => Some((pos(U22::E(n, m)), -1)),
        }
    };
    let f = |m: usize, n: usize| -> Option<(usize, i64)> { Some((pos(U22::F(m.min(n), m.max(n))), 1)) };
    let bracket = |x: U22, y: U22| -> Combination {
        let mut terms = Vec::new();
        let mut add = |c: i64, t: Option<(usize, i64)>| {
            if let (true, Some((k, s))) = (c != 0, t) {
                terms.push((k, Scalar::from_int(c * s)));
            }
        };
        match (x, y) {
            (U22::E(m, n), U22::E(l, s)) => {
                add(g(m, l), e(n, s));
                add(g(m, s), e(l, n));
                add(-g(n, l), e(m, s));
                add(-g(n, s), e(l, m));
            }
            (U22::E(m, n), U22::F(l, s)) => {
                add(g(m, l), f(n, s));
                add(g(m, s), f(l, n));
                add(-g(n, l), f(m, s));
                add(-g(n, s), f(l, m));
            }
            (U22::F(l, s), U22::E(m, n)) => {
                add(-g(m, l), f(n, s));
                add(-g(m, s), f(l, n));
                add(g(n, l), f(m, s));
                add(g(n, s), f(l, m));
            }
            (U22::F(m, n), U22::F(l, s)) => {
                add(g(m, l), e(n, s));
                add(g(n, l), e(m, s));
                add(-g(n, s), e(l, m));
                add(-g(m, s), e(l, n));
            }
        }
        terms
    };
    let u_names = u
        .iter()
        .map(|x| match x {
            U22::E(m, n) => format!("E{}{}", m + 1, n + 1),
            U22::F(m, n) => format!("F{}{}", m + 1, n + 1),
        })
        .collect();
    let mut brackets = Vec::new();
    for a in 0..u.len() {
        for b in a + 1..u.len() {
            brackets.push((a, b, bracket(u[a], u[b])));
        }
    }
    let u22 = LieAlgebra::from_brackets("u22", u_names, brackets).expect("u(2,2) brackets are well formed");

    // New basis: E (6), off-diagonal F (6), H1..H3, central element.
    let dim = u.len();
    let mut rows = Vec::new();
    let mut names = Vec::new();
    let unit = |k: usize, c: i64| {
        let mut r = vec![Scalar::ZERO; dim];
        r[k] = Scalar::from_int(c);
        r
    };
    for (k, x) in u.iter().enumerate() {
        if let U22::E(m, n) = x {
            rows.push(unit(k, 1));
            names.push(format!("E{}{}", m + 1, n + 1));
        }
    }
    for (k, x) in u.iter().enumerate() {
        if let U22::F(m, n) = x {
            if m != n {
                rows.push(unit(k, 1));
                names.push(format!("F{}{}", m + 1, n + 1));
            }
        }
    }
    for mu in 0..3 {
        let mut r = vec![Scalar::ZERO; dim];
        r[pos(U22::F(mu, mu))] = Scalar::from_int(SU22_METRIC[mu + 1]);
        r[pos(U22::F(mu + 1, mu + 1))] = Scalar::from_int(-SU22_METRIC[mu]);
        rows.push(r);
        names.push(format!("H{}", mu + 1));
    }
    let mut z = vec![Scalar::ZERO; dim];
    for mu in 0..4 {
        z[pos(U22::F(mu, mu))] = Scalar::from_int(SU22_METRIC[mu]);
    }
    rows.push(z);
    names.push("Z".into());
    let rebased = u22
        .change_basis(&Matrix::from_rows(rows), Some(names))
        .expect("u(2,2) basis change is invertible");
    rebased
        .restrict(&(0..15).collect::<Vec<_>>(), "su22")
        .expect("traceless part of u(2,2) is closed")
}

/// The Cartan chain of `su(2,2)`: `H_1, H_2, H_3` first, then the twelve
/// root-vector combinations `E_{μν}`, `F_{μν}`.
pub fn su22_cartan_chain() -> ChainSpec {
    let order: Vec<usize> = (12..15).chain(0..12).collect();
    let mut rows = vec![vec![Scalar::ZERO; 15]; 15];
    for (r, &k) in order.iter().enumerate() {
        rows[r][k] = Scalar::ONE;
    }
    let base = su22();
    let names = order.iter().map(|&k| base.names()[k].clone()).collect();
    ChainSpec::new(Some(Matrix::from_rows(rows)), 3).with_names(names)
}

pub fn sp6_template() -> MatrixTemplate {
    io::template_from_json(SP6_TEMPLATE).expect("shipped sp(6) template parses")
}

pub fn su22_template() -> MatrixTemplate {
    io::template_from_json(SU22_TEMPLATE).expect("shipped su(2,2) template parses")
}

/// Loads an algebra from `builtin:<name>` or a file path.
pub fn load_algebra(spec: &str) -> Result<LieAlgebra> {
    if spec.starts_with("builtin:") {
        io::algebra_from_json(data(spec)?)
    } else {
        io::algebra_from_json(&io::read_text(std::path::Path::new(spec))?)
    }
}

pub fn load_chain(spec: &str) -> Result<ChainSpec> {
    if spec.starts_with("builtin:") {
        io::chain_from_json(data(spec)?)
    } else {
        io::chain_from_json(&io::read_text(std::path::Path::new(spec))?)
    }
}

pub fn load_template(spec: &str) -> Result<MatrixTemplate> {
    if spec.starts_with("builtin:") {
        io::template_from_json(data(spec)?)
    } else {
        io::template_from_json(&io::read_text(std::path::Path::new(spec))?)
    }
}

/// The default chain and template shipped for a built-in algebra name.
pub fn companions(algebra: &str) -> Option<(&'static str, &'static str)> {
    match algebra.strip_prefix("builtin:").unwrap_or(algebra) {
        "sp6" => Some(("builtin:sp6_unitary", "builtin:sp6_template")),
        "su22" => Some(("builtin:su22_cartan", "builtin:su22_template")),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(sp6().dim(), 21);
        assert_eq!(su22().dim(), 15);
        assert_eq!(su2().dim(), 3);
    }

    #[test]
    fn builtins_satisfy_jacobi() {
        assert!(su2().validate_jacobi().passed());
        assert!(sp6().validate_jacobi().passed());
        assert!(su22().validate_jacobi().passed());
    }

    #[test]
    fn sp6_sample_bracket() {
        // [X_{1,2}, X_{2,1}] = X_{1,1} − X_{2,2}
        let a = sp6();
        let labels = sp6_labels();
        let idx = |l| labels.iter().position(|&m| m == l).unwrap();
        let got = a.bracket(idx((1, 2)), idx((2, 1))).to_vec();
        assert_eq!(got, vec![(idx((1, 1)), Scalar::ONE), (idx((2, 2)), -Scalar::ONE)]);
    }

    #[test]
    fn su22_sample_bracket() {
        // [E_12, E_13] = g_11 E_23 = E_23
        let a = su22();
        let idx = |n: &str| a.names().iter().position(|m| m == n).unwrap();
        assert_eq!(a.bracket(idx("E12"), idx("E13")).to_vec(), vec![(idx("E23"), Scalar::ONE)]);
    }

    #[test]
    fn shipped_algebra_files_match_constructors() {
        assert_eq!(io::algebra_from_json(SP6_ALGEBRA).unwrap(), sp6());
        assert_eq!(io::algebra_from_json(SU22_ALGEBRA).unwrap(), su22());
        assert_eq!(io::algebra_from_json(SU2_ALGEBRA).unwrap(), su2());
        assert_eq!(io::chain_from_json(SP6_UNITARY_CHAIN).unwrap(), sp6_unitary_chain());
        assert_eq!(io::chain_from_json(SU22_CARTAN_CHAIN).unwrap(), su22_cartan_chain());
    }

    /// Rewrites the shipped data files from the constructors.
    #[test]
    #[ignore]
    fn regenerate_data_files() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
        let write = |f: &str, text: String| std::fs::write(dir.join(f), text + "\n").unwrap();
        write("sp6.alg.json", io::algebra_to_json(&sp6()));
        write("su22.alg.json", io::algebra_to_json(&su22()));
        write("su2.alg.json", io::algebra_to_json(&su2()));
        write("sp6_unitary.chain.json", io::chain_to_json(&sp6_unitary_chain()));
        write("su22_cartan.chain.json", io::chain_to_json(&su22_cartan_chain()));
    }

    #[test]
    fn unknown_builtin() {
        assert!(data("builtin:g2").is_err());
    }
}
