//! Generators as coadjoint vector fields `X̂_i = C_ij^k x_k ∂/∂x_j`,
//! invariance tests, invariant counting and two independent ways of
//! producing polynomial invariants: an exact nullspace solver per degree
//! and characteristic polynomials of matrix templates.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Poly};
use crate::scalar::{Rational, Scalar};
use crate::sparse::SparseEchelon;

/// Bound `B` for random sample coordinates drawn from `{-B..B} \ {0}`.
pub const SAMPLE_BOUND: i64 = 100;
pub const DEFAULT_RETRIES: usize = 5;
/// Default cap on the monomial basis size of [`solve_invariants_degree`].
pub const DEFAULT_MONOMIAL_CAP: usize = 200_000;

/// `X̂_i p = Σ_{j,k} C_ij^k x_k ∂p/∂x_j`.
pub fn apply_generator(alg: &LieAlgebra, i: usize, p: &Poly) -> Result<Poly> {
    let n = alg.dim();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, dim: n });
    }
    if p.nvars() != n {
        return Err(Error::Dimension(format!("polynomial in {} variables, algebra of dimension {n}", p.nvars())));
    }
    Ok(apply_unchecked(alg, i, p))
}

fn apply_unchecked(alg: &LieAlgebra, i: usize, p: &Poly) -> Poly {
    let n = alg.dim();
    let mut acc: FxHashMap<Monomial, Scalar> = FxHashMap::default();
    for (m, c) in p.terms() {
        for (j, e) in m.pairs() {
            let br = alg.bracket(i, j);
            if br.is_empty() {
                continue;
            }
            let (_, rest) = m.lower(j).expect("variable present");
            let base = c.scale(&Rational::from_integer(e as i64));
            for (k, ck) in br {
                *acc.entry(rest.mul(&Monomial::var(*k))).or_default() += &(&base * ck);
            }
        }
    }
    Poly::from_map_unchecked(n, acc)
}

/// True iff every generator's vector field annihilates `p`.
pub fn is_invariant(alg: &LieAlgebra, p: &Poly) -> bool {
    annihilated_by(alg, 0..alg.dim(), p)
}

/// True iff `p` is annihilated by the first `sub_dim` generators, i.e. is a
/// subgroup scalar for the chain whose basis `alg` is already written in.
pub fn is_subgroup_scalar(alg: &LieAlgebra, sub_dim: usize, p: &Poly) -> bool {
    annihilated_by(alg, 0..sub_dim.min(alg.dim()), p)
}

fn annihilated_by(alg: &LieAlgebra, gens: std::ops::Range<usize>, p: &Poly) -> bool {
    if p.nvars() != alg.dim() {
        return false;
    }
    gens.into_par_iter().all(|i| apply_unchecked(alg, i, p).is_zero())
}

/// The commutator matrix `(C_ij^k x_k)` evaluated at `point`.
pub fn commutator_matrix(alg: &LieAlgebra, point: &[Scalar]) -> Matrix {
    let n = alg.dim();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut v = Scalar::ZERO;
            for (k, c) in alg.bracket(i, j) {
                v += &(c * &point[*k]);
            }
            m[(i, j)] = v;
        }
    }
    m
}

/// Deterministic stream of random nonzero integer points.
pub struct PointSampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed), bound: SAMPLE_BOUND }
    }

    pub fn next_point(&mut self, n: usize) -> Vec<Scalar> {
        (0..n)
            .map(|_| {
                let mut v = 0;
                while v == 0 {
                    v = self.rng.gen_range(-self.bound..=self.bound);
                }
                Scalar::from_int(v)
            })
            .collect()
    }
}

/// `N(g) = dim g − max rank (C_ij^k x_k)` over `retries` random points.
pub fn count_invariants(alg: &LieAlgebra, seed: u64, retries: usize) -> usize {
    let n = alg.dim();
    let mut sampler = PointSampler::new(seed);
    let mut best = 0;
    for _ in 0..retries.max(1) {
        let point = sampler.next_point(n);
        best = best.max(commutator_matrix(alg, &point).rank());
        if best == n {
            break;
        }
    }
    n - best
}

/// Number of internal labels `(dim − N)/2`.
pub fn internal_label_count(dim: usize, invariants: usize) -> Result<usize> {
    if invariants > dim || !(dim - invariants).is_multiple_of(2) {
        return Err(Error::NonIntegerLabelCount(format!(
            "(dim {dim} - N {invariants})/2 is not a nonnegative integer; re-run with more retries"
        )));
    }
    Ok((dim - invariants) / 2)
}

/// Racah number `(dim − 3·rank)/2` of a semisimple algebra.
pub fn racah_number(dim: usize, rank: usize) -> Result<usize> {
    if 3 * rank > dim || !(dim - 3 * rank).is_multiple_of(2) {
        return Err(Error::NonIntegerLabelCount(format!("(dim {dim} - 3*rank {rank})/2 is not a nonnegative integer")));
    }
    Ok((dim - 3 * rank) / 2)
}

/// All monomials of total degree `d` in `n` variables, ascending graded-lex.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, start: usize, left: u32, cur: &mut Vec<(usize, u32)>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_pairs(cur.iter().copied()));
            return;
        }
        for v in start..n {
            for e in (1..=left).rev() {
                cur.push((v, e));
                rec(n, v + 1, left - e, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 0, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Basis of the homogeneous degree-`d` polynomial invariants, computed as
/// the exact nullspace of `p ↦ (X̂_1 p, …, X̂_n p)` on the monomial basis.
pub fn solve_invariants_degree(alg: &LieAlgebra, d: u32, cap: usize) -> Result<Vec<Poly>> {
    if d == 0 {
        return Err(Error::DegreeCap("degree must be at least 1".into()));
    }
    let n = alg.dim();
    let size = binomial(n + d as usize - 1, d as usize).unwrap_or(usize::MAX);
    if size > cap {
        return Err(Error::MonomialCap { size, cap });
    }
    let basis = monomials_of_degree(n, d);
    let index: FxHashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
    // Equation rows: one per (generator, target monomial); columns are the
    // unknown coefficients. Built per generator in parallel, merged in order.
    let per_gen: Vec<Vec<Vec<(usize, Scalar)>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rows: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
            for (col, m) in basis.iter().enumerate() {
                let image = apply_unchecked(alg, i, &Poly::monomial(n, m.clone(), Scalar::ONE));
                for (tm, c) in image.terms() {
                    rows.entry(index[tm]).or_default().push((col, c.clone()));
                }
            }
            rows.into_values().collect()
        })
        .collect();
    let mut ech = SparseEchelon::new(basis.len());
    for rows in per_gen {
        for row in rows {
            ech.insert(row);
            if ech.rank() == basis.len() {
                return Ok(Vec::new());
            }
        }
    }
    Ok(ech
        .nullspace()
        .into_iter()
        .map(|v| {
            let terms = basis.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero());
            Poly::from_terms(n, terms).expect("basis monomials are in range")
        })
        .collect())
}

/// Whether `p` lies in the linear span of `basis` (exact).
pub fn in_span(p: &Poly, basis: &[Poly]) -> bool {
    let mut monos: Vec<Monomial> = basis.iter().chain(std::iter::once(p)).flat_map(|q| q.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let col = |q: &Poly| monos.iter().map(|m| q.coeff(m)).collect::<Vec<_>>();
    let rows: Vec<Vec<Scalar>> = basis.iter().map(col).collect();
    let r = if rows.is_empty() { 0 } else { Matrix::from_rows(rows.clone()).rank() };
    let mut with = rows;
    with.push(col(p));
    Matrix::from_rows(with).rank() == r
}

/// An `N×N` matrix of polynomials whose characteristic polynomial yields
/// Casimir functions: `det(T·Id − scale·A) = T^N + Σ_k C_k T^{N−k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTemplate {
    pub name: String,
    pub nvars: usize,
    pub entries: Vec<Vec<Poly>>,
    pub scale: Scalar,
    /// Degrees of the coefficients that are expected to be invariants.
    pub degrees: Vec<u32>,
    pub comment: Option<String>,
}

impl MatrixTemplate {
    pub fn size(&self) -> usize {
        self.entries.len()
    }
}

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// elimination; every division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<Poly>>, nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(nvars, Scalar::ONE);
    }
    let mut sign = Scalar::ONE;
    let mut prev = Poly::constant(nvars, Scalar::ONE);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Poly::zero(nvars),
            }
        }
        let pivot = m[k][k].clone();
        let updates: Vec<(usize, Vec<Poly>)> = (k + 1..n)
            .into_par_iter()
            .map(|i| {
                let row = (k + 1..n)
                    .map(|j| {
                        let num = &(&pivot * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                        num.exact_div(&prev).expect("Bareiss division is exact")
                    })
                    .collect();
                (i, row)
            })
            .collect();
        for (i, row) in updates {
            for (off, v) in row.into_iter().enumerate() {
                m[i][k + 1 + off] = v;
            }
            m[i][k] = Poly::zero(nvars);
        }
        prev = pivot;
    }
    m[n - 1][n - 1].scale(&sign)
}

/// All coefficients `C_k` (k = 0..N) of `det(T·Id − scale·A)` as polynomials
/// in the template variables; `C_0 = 1`.
pub fn characteristic_coefficients(t: &MatrixTemplate) -> Result<Vec<Poly>> {
    let n = t.size();
    if t.entries.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("template is not square".into()));
    }
    let nv = t.nvars;
    let tvar = nv;
    let mut m = Vec::with_capacity(n);
    for (i, row) in t.entries.iter().enumerate() {
        let mut r = Vec::with_capacity(n);
        for (j, e) in row.iter().enumerate() {
            if e.nvars() != nv {
                return Err(Error::Dimension(format!("template entry ({i},{j}) has {} variables, expected {nv}", e.nvars())));
            }
            // Entries of T·Id − scale·A in the ring extended by T.
            let mut v = e.with_nvars(nv + 1)?.scale(&-t.scale.clone());
            if i == j {
                v = &v + &Poly::var(nv + 1, tvar);
            }
            r.push(v);
        }
        m.push(r);
    }
    let det = bareiss_determinant(m, nv + 1);
    let by_power = det.coefficients_in(tvar);
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let c = by_power.get(n - k).cloned().unwrap_or_else(|| Poly::zero(nv + 1));
        coeffs.push(strip_var(&c, nv)?);
    }
    Ok(coeffs)
}

fn strip_var(p: &Poly, nvars: usize) -> Result<Poly> {
    p.with_nvars(nvars)
}

/// Casimir candidates from a template, keyed by degree. Degrees come from
/// `degrees` when given, otherwise from the template itself.
pub fn charpoly_invariants(t: &MatrixTemplate, degrees: Option<&[u32]>) -> Result<BTreeMap<u32, Poly>> {
    let coeffs = characteristic_coefficients(t)?;
    let wanted = degrees.unwrap_or(&t.degrees);
    let mut out = BTreeMap::new();
    for &d in wanted {
        let c = coeffs
            .get(d as usize)
            .ok_or_else(|| Error::Dimension(format!("degree {d} exceeds template size {}", t.size())))?;
        out.insert(d, c.clone());
    }
    Ok(out)
}

/// Checks a template against an algebra: every requested coefficient must
/// be invariant. Returns the imaginary-part term counts for the realness
/// report.
pub fn template_report(alg: &LieAlgebra, t: &MatrixTemplate) -> Result<Vec<TemplateCheck>> {
    if t.nvars != alg.dim() {
        return Err(Error::Dimension(format!("template in {} variables, algebra of dimension {}", t.nvars, alg.dim())));
    }
    Ok(charpoly_invariants(t, None)?
        .into_iter()
        .map(|(degree, p)| TemplateCheck {
            degree,
            term_count: p.term_count(),
            invariant: is_invariant(alg, &p),
            imaginary_terms: p.imag_part().term_count(),
            poly: p,
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct TemplateCheck {
    pub degree: u32,
    pub poly: Poly,
    pub term_count: usize,
    pub invariant: bool,
    pub imaginary_terms: usize,
}
