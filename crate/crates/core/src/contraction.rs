//! The Inönü–Wigner contraction attached to a reduction chain, the
//! bi-degree decomposition of Casimir functions it induces, and the
//! counting formulas of the missing label problem.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{check_chain, ChainSpec, LieAlgebra};
use crate::error::{Error, Result};
use crate::invariants::{is_invariant, is_subgroup_scalar};
use crate::poly::{bidegree_split, Decomposition, Poly};

/// Limit `t → ∞` of the rescaling `X_i ↦ X_i` (subalgebra), `X_i ↦ X_i / t`
/// (complement). Brackets inside the subalgebra are kept, `[s', R]` keeps
/// its `R` part and `[R, R]` vanishes. The result is in the chain basis.
pub fn contract(alg: &LieAlgebra, chain: &ChainSpec) -> Result<LieAlgebra> {
    let report = check_chain(alg, chain)?;
    Ok(contract_in_chain_basis(&report.algebra, chain.sub_dim))
}

/// [`contract`] for an algebra already written in the chain basis.
pub fn contract_in_chain_basis(alg: &LieAlgebra, sub_dim: usize) -> LieAlgebra {
    let mut constants = BTreeMap::new();
    for (&(i, j), terms) in alg.constants() {
        let kept: Vec<_> = match (i < sub_dim, j < sub_dim) {
            (true, true) => terms.clone(),
            (true, false) | (false, true) => terms.iter().filter(|(k, _)| *k >= sub_dim).cloned().collect(),
            (false, false) => Vec::new(),
        };
        if !kept.is_empty() {
            constants.insert((i, j), kept);
        }
    }
    LieAlgebra::from_parts(format!("{}_contracted", alg.name()), alg.names().to_vec(), constants)
}

/// Expresses a polynomial written in the original algebra's coordinates in
/// the chain-basis coordinates: `x = M⁻¹ y`.
pub fn to_chain_coordinates(p: &Poly, chain: &ChainSpec) -> Result<Poly> {
    let n = p.nvars();
    if chain.basis_change.is_none() {
        return Ok(p.clone());
    }
    let inv = chain.coordinate_inverse(n)?;
    if inv.rows != n {
        return Err(Error::Dimension(format!("chain of dimension {} for polynomial in {n} variables", inv.rows)));
    }
    let images: Vec<Poly> = (0..n)
        .map(|b| {
            let terms = (0..n).filter(|&a| !inv[(b, a)].is_zero()).map(|a| Poly::var(n, a).scale(&inv[(b, a)]));
            terms.fold(Poly::zero(n), |acc, t| &acc + &t)
        })
        .collect();
    p.substitute(&images)
}

/// Splits a Casimir function (in chain-basis coordinates of `alg_chain`)
/// into bi-homogeneous components.
pub fn decompose_casimir(alg_chain: &LieAlgebra, sub_dim: usize, p: &Poly) -> Result<Decomposition> {
    if p.nvars() != alg_chain.dim() {
        return Err(Error::Dimension(format!("polynomial in {} variables, algebra of dimension {}", p.nvars(), alg_chain.dim())));
    }
    if !is_invariant(alg_chain, p) {
        return Err(Error::NotACasimir);
    }
    Ok(bidegree_split(p, sub_dim))
}

/// The component of maximal complement degree: a Casimir of the contraction.
pub fn contracted_invariant(d: &Decomposition) -> Poly {
    d.top().map(|(_, p)| p.clone()).unwrap_or_else(|| Poly::zero(d.source.nvars()))
}

/// Per-component summary used in decomposition reports.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub bidegree: [u32; 2],
    pub paper_style: [u32; 2],
    pub term_count: usize,
    pub subgroup_scalar: bool,
    pub contracted_invariant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub format_version: u32,
    pub source: String,
    pub degree: u32,
    pub components: Vec<ComponentReport>,
    #[serde(rename = "M")]
    pub max_comp_deg: u32,
    pub has_phi0: bool,
    pub independence_bound: usize,
    /// Whether the top component is invariant under the contracted algebra.
    pub contracted_invariant_verified: bool,
}

pub fn decomposition_report(source: &str, alg_chain: &LieAlgebra, contracted: &LieAlgebra, d: &Decomposition) -> DecompositionReport {
    let m = d.max_comp_deg();
    DecompositionReport {
        format_version: crate::io::FORMAT_VERSION,
        source: source.to_string(),
        degree: d.source.degree().unwrap_or(0),
        components: d
            .components
            .iter()
            .rev()
            .map(|(b, p)| ComponentReport {
                bidegree: [b.sub_deg, b.comp_deg],
                paper_style: [b.comp_deg, b.sub_deg],
                term_count: p.term_count(),
                subgroup_scalar: is_subgroup_scalar(alg_chain, d.sub_dim, p),
                contracted_invariant: b.comp_deg == m,
            })
            .collect(),
        max_comp_deg: m,
        has_phi0: d.phi0().is_some(),
        independence_bound: independence_bound(d),
        contracted_invariant_verified: is_invariant(contracted, &contracted_invariant(d)),
    }
}

/// Counting data of the missing label problem for a chain `s ⊃ s'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MLPCounts {
    pub dim_s: usize,
    pub n_s: usize,
    pub dim_h: usize,
    pub n_h: usize,
    pub l_prime: usize,
    /// Needed labels `n = ½(dim s − N(s) − dim h − N(h)) + l'`.
    pub needed: usize,
    /// Available labels `m = 2n`.
    pub available: usize,
    /// `m + N(s) + N(h) − l'`.
    pub total_solutions: usize,
}

pub fn mlp_counts(dim_s: usize, n_s: usize, dim_h: usize, n_h: usize, l_prime: usize) -> Result<MLPCounts> {
    let num = dim_s as i64 - n_s as i64 - dim_h as i64 - n_h as i64;
    if num % 2 != 0 {
        return Err(Error::ParityViolation(format!("dim_s - N_s - dim_h - N_h = {num} is odd")));
    }
    let needed = num / 2 + l_prime as i64;
    if needed < 0 {
        return Err(Error::ParityViolation(format!("needed label count {needed} is negative")));
    }
    let needed = needed as usize;
    let available = 2 * needed;
    let total = available as i64 + n_s as i64 + n_h as i64 - l_prime as i64;
    if total < 0 {
        return Err(Error::ParityViolation(format!("total solution count {total} is negative")));
    }
    Ok(MLPCounts { dim_s, n_s, dim_h, n_h, l_prime, needed, available, total_solutions: total as usize })
}

/// Number of members of a fundamental set of invariants (in chain-basis
/// coordinates) supported entirely on the subalgebra variables. The result
/// depends on the chosen fundamental set.
pub fn compute_lprime(invariants: &[Poly], sub_dim: usize) -> usize {
    invariants.iter().filter(|p| p.support().iter().all(|&v| v < sub_dim)).count()
}

/// Upper bound on the components functionally independent of the Casimirs:
/// `q − 2` when a pure-subalgebra component is present, `q − 1` otherwise
/// (clamped at zero).
pub fn independence_bound(d: &Decomposition) -> usize {
    let q = d.len();
    let drop = if d.phi0().is_some() { 2 } else { 1 };
    q.saturating_sub(drop)
}
