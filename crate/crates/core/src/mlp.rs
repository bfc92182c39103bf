//! The labelling-operator pipeline for a chain `s ⊃ s'`: Casimirs of both
//! algebras, their bi-degree decompositions, selection of functionally
//! independent subgroup scalars and certification of a commuting family.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{check_chain, ChainSpec, LieAlgebra};
use crate::contraction::{compute_lprime, contract_in_chain_basis, decompose_casimir, mlp_counts, to_chain_coordinates, MLPCounts};
use crate::enveloping::{poisson_bracket, Enveloping, Limits, UEElement};
use crate::error::{Error, Result};
use crate::invariants::{
    charpoly_invariants, count_invariants, is_invariant, is_subgroup_scalar, solve_invariants_degree, MatrixTemplate,
    PointSampler, DEFAULT_MONOMIAL_CAP, DEFAULT_RETRIES,
};
use crate::io;
use crate::linalg::Matrix;
use crate::poly::{BiDegree, Decomposition, Poly};
use crate::scalar::Scalar;

/// Proof that a family of polynomials is functionally independent: a
/// nonzero Jacobian minor at an explicit rational point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianCertificate {
    pub variables: Vec<usize>,
    #[serde(serialize_with = "io::ser_display_vec")]
    pub point: Vec<Scalar>,
    pub seed: u64,
    pub attempt: usize,
    #[serde(serialize_with = "io::ser_display")]
    pub determinant: Scalar,
}

impl JacobianCertificate {
    /// Recomputes the minor; true iff it matches the recorded nonzero value.
    pub fn verify(&self, polys: &[Poly]) -> bool {
        if polys.len() != self.variables.len() || self.determinant.is_zero() {
            return false;
        }
        jacobian_minor(polys, &self.variables, &self.point).is_some_and(|d| d == self.determinant)
    }
}

fn gradient_rows(polys: &[Poly], point: &[Scalar]) -> Option<Vec<Vec<Scalar>>> {
    polys
        .iter()
        .map(|p| {
            if p.nvars() != point.len() {
                return None;
            }
            Some((0..point.len()).map(|v| p.partial_unchecked(v).eval(point).expect("matching arity")).collect())
        })
        .collect()
}

fn jacobian_minor(polys: &[Poly], vars: &[usize], point: &[Scalar]) -> Option<Scalar> {
    let rows = gradient_rows(polys, point)?;
    let minor: Vec<Vec<Scalar>> = rows.iter().map(|r| vars.iter().map(|&v| r.get(v).cloned()).collect::<Option<_>>()).collect::<Option<_>>()?;
    Some(Matrix::from_rows(minor).determinant())
}

/// Searches for a variable subset with nonvanishing Jacobian minor at a
/// seeded random point. `None` means dependent (probabilistic).
pub fn jacobian_independent(polys: &[Poly], seed: u64) -> Option<JacobianCertificate> {
    jacobian_independent_with_retries(polys, seed, DEFAULT_RETRIES)
}

pub fn jacobian_independent_with_retries(polys: &[Poly], seed: u64, retries: usize) -> Option<JacobianCertificate> {
    let n = polys.first().map_or(0, Poly::nvars);
    if polys.iter().any(|p| p.nvars() != n) || polys.len() > n {
        return None;
    }
    if polys.is_empty() {
        return Some(JacobianCertificate { variables: vec![], point: vec![], seed, attempt: 0, determinant: Scalar::ONE });
    }
    let mut sampler = PointSampler::new(seed);
    for attempt in 0..retries.max(1) {
        let point = sampler.next_point(n);
        let rows = gradient_rows(polys, &point)?;
        let echelon = Matrix::from_rows(rows).rref();
        if echelon.pivots.len() < polys.len() {
            continue;
        }
        // Pivot columns of the row-reduced Jacobian are independent columns.
        let variables = echelon.pivots.clone();
        let determinant = jacobian_minor(polys, &variables, &point)?;
        if !determinant.is_zero() {
            return Some(JacobianCertificate { variables, point, seed, attempt, determinant });
        }
    }
    None
}

/// Where the Casimir functions of `s` come from.
#[derive(Clone, Debug)]
pub enum CasimirSource {
    /// Characteristic polynomial of a matrix template.
    Template(MatrixTemplate),
    /// Exact degree-by-degree nullspace solver.
    Solver,
    /// Named polynomials in the algebra's original coordinates.
    Polys(Vec<(String, Poly)>),
}

impl CasimirSource {
    fn label(&self) -> &'static str {
        match self {
            CasimirSource::Template(_) => "charpoly",
            CasimirSource::Solver => "pde",
            CasimirSource::Polys(_) => "files",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub seed: u64,
    /// Highest degree searched by the solver; also the symmetrization cap.
    pub max_degree: u32,
    /// Certify commutation exactly in `U(s)`; otherwise Poisson only.
    pub exact_commutators: bool,
    pub retries: usize,
    /// Number of alternative commuting subsets listed in the report.
    pub max_alternatives: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { seed: 0, max_degree: 8, exact_commutators: true, retries: DEFAULT_RETRIES, max_alternatives: 8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    Casimir,
    SubalgebraCasimir,
    Candidate,
}

/// An operator of the pipeline, identified by `id`, as a polynomial in
/// chain-basis coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct Operator {
    pub id: String,
    pub kind: OperatorKind,
    pub degree: u32,
    pub source: String,
    pub term_count: usize,
    #[serde(skip)]
    pub poly: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateEntry {
    pub id: String,
    pub casimir: String,
    pub bidegree: [u32; 2],
    /// `(complement degree, subalgebra degree)`.
    pub paper_style: [u32; 2],
    pub term_count: usize,
    pub subgroup_scalar: bool,
    pub eligible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded: Option<&'static str>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PoissonPass,
    ExactPass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairVerdict {
    pub left: String,
    pub right: String,
    pub verdict: Verdict,
    pub method: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Independence {
    pub operators: Vec<String>,
    pub certificate: Option<JacobianCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Inputs {
    pub algebra: String,
    pub algebra_sha256: String,
    pub chain_sha256: String,
    pub source: &'static str,
    pub source_sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MLPReport {
    pub format_version: u32,
    pub tool_version: &'static str,
    pub seed: u64,
    pub inputs: Inputs,
    pub counts: MLPCounts,
    pub casimirs: Vec<Operator>,
    pub subalgebra_casimirs: Vec<Operator>,
    pub candidates: Vec<CandidateEntry>,
    pub selected: Vec<String>,
    pub independence: Independence,
    pub exact_commutators: bool,
    pub commutation: Vec<PairVerdict>,
    pub final_set: Vec<String>,
    /// Other independent subsets whose pairs pass the Poisson test.
    pub alternatives: Vec<Vec<String>>,
    /// Complement generators fixed by the subalgebra; such directions can
    /// label states but are not produced by contraction.
    pub trivial_complement: Vec<String>,
}

impl MLPReport {
    pub fn to_json(&self) -> String {
        io::to_json(self)
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let c = &self.counts;
        let _ = writeln!(s, "algebra {} (sha256 {}), source {}, seed {}, version {}", self.inputs.algebra, &self.inputs.algebra_sha256[..12], self.inputs.source, self.seed, self.tool_version);
        let _ = writeln!(s, "dim s = {}, N(s) = {}, dim s' = {}, N(s') = {}, l' = {}", c.dim_s, c.n_s, c.dim_h, c.n_h, c.l_prime);
        let _ = writeln!(s, "needed labels n = {}, available m = {}", c.needed, c.available);
        let ids = |ops: &[Operator]| ops.iter().map(|o| format!("{} (degree {})", o.id, o.degree)).collect::<Vec<_>>().join(", ");
        let _ = writeln!(s, "Casimirs of s: {}", ids(&self.casimirs));
        let _ = writeln!(s, "Casimirs of s': {}", ids(&self.subalgebra_casimirs));
        for cand in &self.candidates {
            let note = cand.excluded.map(|e| format!(" [{e}]")).unwrap_or_default();
            let _ = writeln!(s, "  {}: {} terms, subgroup scalar {}{}", cand.id, cand.term_count, cand.subgroup_scalar, note);
        }
        let _ = writeln!(s, "selected: {}", self.selected.join(", "));
        match &self.independence.certificate {
            Some(cert) => {
                let _ = writeln!(s, "independent: Jacobian minor {} on variables {:?}", cert.determinant, cert.variables);
            }
            None => {
                let _ = writeln!(s, "independence: dependent (probabilistic)");
            }
        }
        let mode = if self.exact_commutators { "exact" } else { "poisson-only (necessary, not sufficient)" };
        let fails = self.commutation.iter().filter(|p| p.verdict == Verdict::Fail).count();
        let _ = writeln!(s, "commutation ({mode}): {} pairs, {fails} failing", self.commutation.len());
        let _ = writeln!(s, "final set: {}", self.final_set.join(", "));
        for alt in &self.alternatives {
            let _ = writeln!(s, "alternative: {}", alt.join(", "));
        }
        if !self.trivial_complement.is_empty() {
            let _ = writeln!(s, "complement generators fixed by s': {}", self.trivial_complement.join(", "));
        }
        s
    }
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Casimirs of `alg` by the degree solver: accepts basis invariants degree
/// by degree while they stay functionally independent, until `count`.
pub fn solver_casimirs(alg: &LieAlgebra, count: usize, max_degree: u32, seed: u64) -> Result<Vec<Poly>> {
    let mut found: Vec<Poly> = Vec::new();
    for d in 1..=max_degree {
        if found.len() == count {
            break;
        }
        for p in solve_invariants_degree(alg, d, DEFAULT_MONOMIAL_CAP)? {
            let mut trial = found.clone();
            trial.push(p.clone());
            if jacobian_independent(&trial, seed).is_some() {
                found.push(p);
                if found.len() == count {
                    break;
                }
            }
        }
    }
    Ok(found)
}

/// Components eligible as labelling operators, in selection order:
/// ascending total degree, ascending complement degree, then graded-lex on
/// the leading monomial. Degree-2 and pure-subalgebra components are
/// excluded.
fn ordered_candidates(decomps: &[(String, Decomposition)]) -> Vec<(String, BiDegree, Poly)> {
    let mut out: Vec<(String, BiDegree, Poly)> = Vec::new();
    for (name, d) in decomps {
        for (b, p) in &d.components {
            if b.total() > 2 && b.comp_deg > 0 {
                out.push((candidate_id(name, *b), *b, p.clone()));
            }
        }
    }
    out.sort_by(|a, b| {
        a.1.total()
            .cmp(&b.1.total())
            .then(a.1.comp_deg.cmp(&b.1.comp_deg))
            .then_with(|| b.2.leading().map(|(m, _)| m.clone()).cmp(&a.2.leading().map(|(m, _)| m.clone())))
            .then_with(|| a.0.cmp(&b.0))
    });
    out
}

fn candidate_id(casimir: &str, b: BiDegree) -> String {
    let (k, l) = b.paper_style();
    format!("{casimir}_({k},{l})")
}

/// Greedy selection of `needed` candidates in selection order, each
/// accepted only if it stays Jacobian-independent of `fixed` and the
/// candidates already chosen.
pub fn select_candidates(decomps: &[(String, Decomposition)], fixed: &[Poly], needed: usize, seed: u64) -> Result<Vec<(String, Poly)>> {
    let mut chosen: Vec<(String, Poly)> = Vec::new();
    if needed == 0 {
        return Ok(chosen);
    }
    for (id, _, p) in ordered_candidates(decomps) {
        let mut family: Vec<Poly> = fixed.to_vec();
        family.extend(chosen.iter().map(|(_, q)| q.clone()));
        family.push(p.clone());
        if jacobian_independent(&family, seed).is_some() {
            chosen.push((id, p));
            if chosen.len() == needed {
                return Ok(chosen);
            }
        }
    }
    Err(Error::InsufficientCandidates { needed, found: chosen.len() })
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let cur = idx.clone()?;
        let mut next = cur.clone();
        let mut i = k;
        idx = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                break Some(next);
            }
        };
        Some(cur)
    })
}

/// Exact check that `Sym p` commutes with the generators `gens`.
fn commutes_with_generators(engine: &Enveloping<'_>, sym: &UEElement, gens: std::ops::Range<usize>) -> Result<bool> {
    let dim = sym.dim();
    let results: Vec<Result<bool>> = gens
        .into_par_iter()
        .map(|g| {
            let mut e = engine.clone();
            Ok(e.commutator(sym, &UEElement::generator(dim, g))?.is_zero())
        })
        .collect();
    results.into_iter().try_fold(true, |acc, r| Ok(acc && r?))
}

fn exact_commute(engine: &Enveloping<'_>, a: &UEElement, b: &UEElement) -> Result<bool> {
    let mut e = engine.clone();
    Ok(e.commutator(a, b)?.is_zero())
}

/// Runs the pipeline: Casimirs, decomposition, selection and commutation.
pub fn solve(alg: &LieAlgebra, chain: &ChainSpec, source: &CasimirSource, options: &SolveOptions) -> Result<MLPReport> {
    let report = check_chain(alg, chain)?;
    let chain_alg = &report.algebra;
    let s = chain.sub_dim;
    let n = alg.dim();
    let seed = options.seed;
    let subalgebra = chain_alg.restrict(&(0..s).collect::<Vec<_>>(), format!("{}_sub", alg.name()))?;
    let n_s = count_invariants(alg, seed, options.retries);
    let n_h = count_invariants(&subalgebra, seed, options.retries);

    // Casimirs of s, in original coordinates first.
    let (named, source_text): (Vec<(String, Poly)>, String) = match source {
        CasimirSource::Template(t) => {
            if t.nvars != n {
                return Err(Error::Dimension(format!("template in {} variables, algebra of dimension {n}", t.nvars)));
            }
            let polys = charpoly_invariants(t, None)?;
            (polys.into_iter().map(|(d, p)| (format!("C{d}"), p)).collect(), io::template_to_json(t))
        }
        CasimirSource::Solver => {
            let polys = solver_casimirs(alg, n_s, options.max_degree, seed)?;
            (name_by_degree(polys), String::new())
        }
        CasimirSource::Polys(v) => (v.clone(), io::polys_to_json(v)),
    };
    let mut casimirs = Vec::new();
    for (id, p) in named {
        if !is_invariant(alg, &p) {
            return Err(Error::NotACasimir);
        }
        let q = to_chain_coordinates(&p, chain)?;
        casimirs.push(Operator {
            degree: q.degree().unwrap_or(0),
            term_count: q.term_count(),
            kind: OperatorKind::Casimir,
            source: source.label().to_string(),
            id,
            poly: q,
        });
    }

    let sub_polys = solver_casimirs(&subalgebra, n_h, options.max_degree, seed)?;
    let subalgebra_casimirs: Vec<Operator> = sub_polys
        .into_iter()
        .enumerate()
        .map(|(k, p)| {
            let q = p.with_nvars(n).expect("subalgebra variables come first");
            Operator {
                id: format!("S{}", k + 1),
                kind: OperatorKind::SubalgebraCasimir,
                degree: q.degree().unwrap_or(0),
                source: "pde".into(),
                term_count: q.term_count(),
                poly: q,
            }
        })
        .collect();

    let casimir_polys: Vec<Poly> = casimirs.iter().map(|o| o.poly.clone()).collect();
    let l_prime = compute_lprime(&casimir_polys, s);
    let counts = mlp_counts(n, n_s, s, n_h, l_prime)?;

    let contracted = contract_in_chain_basis(chain_alg, s);
    let mut decomps = Vec::new();
    let mut candidates = Vec::new();
    for op in &casimirs {
        let d = decompose_casimir(chain_alg, s, &op.poly)?;
        for (b, p) in d.components.iter().rev() {
            let excluded = if b.total() <= 2 {
                Some("degree two")
            } else if b.comp_deg == 0 {
                Some("function of subalgebra variables")
            } else {
                None
            };
            candidates.push(CandidateEntry {
                id: candidate_id(&op.id, *b),
                casimir: op.id.clone(),
                bidegree: [b.sub_deg, b.comp_deg],
                paper_style: [b.comp_deg, b.sub_deg],
                term_count: p.term_count(),
                subgroup_scalar: is_subgroup_scalar(chain_alg, s, p),
                eligible: excluded.is_none(),
                excluded,
            });
        }
        debug_assert!(d.top().is_none_or(|(_, p)| is_invariant(&contracted, p)));
        decomps.push((op.id.clone(), d));
    }

    let mut fixed: Vec<Poly> = casimir_polys.clone();
    fixed.extend(subalgebra_casimirs.iter().map(|o| o.poly.clone()));
    let ordered = ordered_candidates(&decomps);
    let needed = counts.needed;

    let limits = Limits { sym_degree_cap: options.max_degree, ..Limits::default() };
    let mut engine = Enveloping::with_limits(chain_alg, limits);

    // Pairwise Poisson verdicts between candidates, computed lazily.
    let mut poisson: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut poisson_ok = |i: usize, j: usize| -> Result<bool> {
        let key = (i.min(j), i.max(j));
        if let Some(&v) = poisson.get(&key) {
            return Ok(v);
        }
        let v = poisson_bracket(chain_alg, &ordered[key.0].2, &ordered[key.1].2)?.is_zero();
        poisson.insert(key, v);
        Ok(v)
    };
    let mut exact: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut sym_cache: BTreeMap<usize, UEElement> = BTreeMap::new();

    let mut chosen: Option<(Vec<usize>, JacobianCertificate)> = None;
    let mut alternatives: Vec<Vec<String>> = Vec::new();
    if needed == 0 {
        let cert = jacobian_independent(&fixed, seed);
        chosen = cert.map(|c| (Vec::new(), c));
    } else {
        'subsets: for subset in combinations(ordered.len(), needed) {
            let mut family = fixed.clone();
            family.extend(subset.iter().map(|&i| ordered[i].2.clone()));
            let Some(cert) = jacobian_independent(&family, seed) else {
                continue;
            };
            for (a, &i) in subset.iter().enumerate() {
                for &j in &subset[a + 1..] {
                    if !poisson_ok(i, j)? {
                        continue 'subsets;
                    }
                }
            }
            if chosen.is_some() {
                if alternatives.len() < options.max_alternatives {
                    alternatives.push(subset.iter().map(|&i| ordered[i].0.clone()).collect());
                    continue;
                }
                break;
            }
            if options.exact_commutators {
                for &i in &subset {
                    if let std::collections::btree_map::Entry::Vacant(e) = sym_cache.entry(i) {
                        e.insert(engine.symmetrize(&ordered[i].2)?);
                    }
                }
                let mut pairs: Vec<(usize, usize)> = Vec::new();
                for (a, &i) in subset.iter().enumerate() {
                    for &j in &subset[a + 1..] {
                        if !exact.contains_key(&(i, j)) {
                            pairs.push((i, j));
                        }
                    }
                }
                // Cheapest pairs first.
                pairs.sort_by_key(|&(i, j)| sym_cache[&i].term_count() * sym_cache[&j].term_count());
                let verdicts: Vec<Result<bool>> =
                    pairs.par_iter().map(|&(i, j)| exact_commute(&engine, &sym_cache[&i], &sym_cache[&j])).collect();
                for (&pair, v) in pairs.iter().zip(verdicts) {
                    exact.insert(pair, v?);
                }
                let all = subset
                    .iter()
                    .enumerate()
                    .all(|(a, &i)| subset[a + 1..].iter().all(|&j| exact[&(i, j)]));
                if !all {
                    continue;
                }
            }
            chosen = Some((subset, cert));
        }
    }
    let Some((subset, certificate)) = chosen else {
        let failing: Vec<String> =
            exact.iter().filter(|(_, ok)| !**ok).map(|(&(i, j), _)| format!("[{}, {}]", ordered[i].0, ordered[j].0)).collect();
        if !failing.is_empty() {
            return Err(Error::NoCommutingSubset { needed, pairs: failing });
        }
        let found = match select_candidates(&decomps, &fixed, needed, seed) {
            Ok(v) => v.len(),
            Err(Error::InsufficientCandidates { found, .. }) => found,
            Err(e) => return Err(e),
        };
        return Err(Error::InsufficientCandidates { needed, found });
    };

    let selected: Vec<String> = subset.iter().map(|&i| ordered[i].0.clone()).collect();
    let mut final_ops: Vec<Operator> = casimirs.clone();
    final_ops.extend(subalgebra_casimirs.iter().cloned());
    for &i in &subset {
        let (id, b, p) = &ordered[i];
        final_ops.push(Operator {
            id: id.clone(),
            kind: OperatorKind::Candidate,
            degree: b.total(),
            source: "decomposition".into(),
            term_count: p.term_count(),
            poly: p.clone(),
        });
    }

    let commutation = commutation_table(&final_ops, &subset, &poisson, &exact, &mut engine, chain_alg, s, options)?;

    let trivial_complement = report.trivial_complement.iter().map(|&k| chain_alg.names()[k].clone()).collect();
    let algebra_text = io::algebra_to_json(alg);
    Ok(MLPReport {
        format_version: io::FORMAT_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        seed,
        inputs: Inputs {
            algebra: alg.name().to_string(),
            algebra_sha256: sha256_hex(&algebra_text),
            chain_sha256: sha256_hex(&io::chain_to_json(chain)),
            source: source.label(),
            source_sha256: sha256_hex(&source_text),
        },
        counts,
        casimirs,
        subalgebra_casimirs,
        candidates,
        selected,
        independence: Independence { operators: final_ops.iter().map(|o| o.id.clone()).collect(), certificate: Some(certificate) },
        exact_commutators: options.exact_commutators,
        commutation,
        final_set: final_ops.iter().map(|o| o.id.clone()).collect(),
        alternatives,
        trivial_complement,
    })
}

fn name_by_degree(polys: Vec<Poly>) -> Vec<(String, Poly)> {
    let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
    polys
        .into_iter()
        .map(|p| {
            let d = p.degree().unwrap_or(0);
            let k = seen.entry(d).or_default();
            *k += 1;
            let id = if *k == 1 { format!("C{d}") } else { format!("C{d}.{k}") };
            (id, p)
        })
        .collect()
}

/// Verdicts for every pair of the final family. Pairs with a Casimir of
/// `s` are certified by centrality, pairs with a Casimir of `s'` by
/// invariance of the other operator under `s'`, candidate pairs directly.
#[allow(clippy::too_many_arguments)]
fn commutation_table(
    ops: &[Operator],
    subset: &[usize],
    poisson: &BTreeMap<(usize, usize), bool>,
    exact: &BTreeMap<(usize, usize), bool>,
    engine: &mut Enveloping<'_>,
    chain_alg: &LieAlgebra,
    sub_dim: usize,
    options: &SolveOptions,
) -> Result<Vec<PairVerdict>> {
    let dim = chain_alg.dim();
    // Which operators commute with all of s, and which with s'.
    let mut central = vec![false; ops.len()];
    let mut sub_invariant = vec![false; ops.len()];
    for (k, op) in ops.iter().enumerate() {
        if options.exact_commutators {
            match op.kind {
                OperatorKind::Casimir => {
                    let sym = engine.symmetrize(&op.poly)?;
                    central[k] = commutes_with_generators(engine, &sym, 0..dim)?;
                    sub_invariant[k] = central[k];
                }
                _ => {
                    let sym = engine.symmetrize(&op.poly)?;
                    sub_invariant[k] = commutes_with_generators(engine, &sym, 0..sub_dim)?;
                }
            }
        } else {
            central[k] = op.kind == OperatorKind::Casimir && is_invariant(chain_alg, &op.poly);
            sub_invariant[k] = central[k] || is_subgroup_scalar(chain_alg, sub_dim, &op.poly);
        }
    }
    let candidate_index = |k: usize| k.checked_sub(ops.len() - subset.len()).map(|c| subset[c]);
    let mut out = Vec::new();
    for a in 0..ops.len() {
        for b in a + 1..ops.len() {
            let (x, y) = (&ops[a], &ops[b]);
            let (verdict, method) = if central[a] || central[b] {
                (pass(options), "centrality")
            } else if (x.kind == OperatorKind::SubalgebraCasimir && sub_invariant[b])
                || (y.kind == OperatorKind::SubalgebraCasimir && sub_invariant[a])
            {
                (pass(options), "subalgebra invariance")
            } else if let (Some(i), Some(j)) = (candidate_index(a), candidate_index(b)) {
                let key = (i.min(j), i.max(j));
                let p = poisson.get(&key).copied().unwrap_or(false);
                if !p {
                    (Verdict::Fail, "poisson")
                } else if options.exact_commutators {
                    let e = exact.get(&(i, j)).or_else(|| exact.get(&(j, i))).copied().unwrap_or(false);
                    (if e { Verdict::ExactPass } else { Verdict::Fail }, "commutator")
                } else {
                    (Verdict::PoissonPass, "poisson")
                }
            } else {
                let p = poisson_bracket(chain_alg, &x.poly, &y.poly)?.is_zero();
                if !p {
                    (Verdict::Fail, "poisson")
                } else if options.exact_commutators {
                    let sx = engine.symmetrize(&x.poly)?;
                    let sy = engine.symmetrize(&y.poly)?;
                    let e = exact_commute(engine, &sx, &sy)?;
                    (if e { Verdict::ExactPass } else { Verdict::Fail }, "commutator")
                } else {
                    (Verdict::PoissonPass, "poisson")
                }
            };
            out.push(PairVerdict { left: x.id.clone(), right: y.id.clone(), verdict, method });
        }
    }
    Ok(out)
}

fn pass(options: &SolveOptions) -> Verdict {
    if options.exact_commutators {
        Verdict::ExactPass
    } else {
        Verdict::PoissonPass
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::poly::parse_poly;

    #[test]
    fn coordinate_functions_are_independent() {
        let polys = [parse_poly("x1", 3).unwrap(), parse_poly("x2", 3).unwrap()];
        let cert = jacobian_independent(&polys, 0).unwrap();
        assert_eq!(cert.variables, vec![1, 2]);
        assert_eq!(cert.determinant, Scalar::ONE);
        assert!(cert.verify(&polys));
    }

    #[test]
    fn square_is_dependent() {
        let polys = [parse_poly("x1", 3).unwrap(), parse_poly("x1^2", 3).unwrap()];
        assert!(jacobian_independent(&polys, 0).is_none());
    }

    #[test]
    fn combinations_in_order() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(2, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(1, 2).count(), 0);
    }

    #[test]
    fn su2_over_u1_needs_no_labels() {
        let alg = builtins::su2();
        let chain = ChainSpec::new(None, 1);
        let rep = solve(&alg, &chain, &CasimirSource::Solver, &SolveOptions::default()).unwrap();
        assert_eq!(rep.counts.needed, 0);
        assert!(rep.selected.is_empty());
        assert_eq!(rep.final_set, vec!["C2".to_string(), "S1".to_string()]);
        assert!(rep.commutation.iter().all(|p| p.verdict == Verdict::ExactPass));
    }
}
