//! Lie algebras given by sparse structure constants, and reduction chains.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A sparse linear combination `Σ c_k X_k`, sorted by `k`, no zero entries.
pub type Combination = Vec<(usize, Scalar)>;

/// A finite-dimensional Lie algebra `[X_i, X_j] = C_ij^k X_k`.
///
/// Only the brackets with `i < j` are stored; the dense lookup table is
/// derived from them with the antisymmetric halves filled in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    names: Vec<String>,
    constants: BTreeMap<(usize, usize), Combination>,
    table: Vec<Combination>,
}

fn normalize(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Combination {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (k, c) in terms {
        *acc.entry(k).or_default() += &c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn negate(c: &Combination) -> Combination {
    c.iter().map(|(k, v)| (*k, -v)).collect()
}

impl LieAlgebra {
    /// Builds an algebra from brackets `(i, j, Σ c_k X_k)` with `i < j`.
    /// Each unordered pair may appear at most once.
    pub fn from_brackets(
        name: impl Into<String>,
        names: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, Combination)>,
    ) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::Dimension("algebra must have positive dimension".into()));
        }
        let mut constants = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, terms) in brackets {
            if i >= j {
                return Err(Error::Parse(format!("bracket ({i}, {j}) must have i < j")));
            }
            if j >= dim {
                return Err(Error::IndexOutOfRange { index: j, dim });
            }
            if let Some(&(k, _)) = terms.iter().find(|(k, _)| *k >= dim) {
                return Err(Error::IndexOutOfRange { index: k, dim });
            }
            let terms = normalize(terms);
            if !seen.insert((i, j)) {
                return Err(Error::Parse(format!("bracket ({i}, {j}) given twice")));
            }
            if !terms.is_empty() {
                constants.insert((i, j), terms);
            }
        }
        Ok(Self::assemble(name.into(), names, constants))
    }

    fn assemble(name: String, names: Vec<String>, constants: BTreeMap<(usize, usize), Combination>) -> Self {
        let dim = names.len();
        let mut table = vec![Vec::new(); dim * dim];
        for (&(i, j), c) in &constants {
            table[i * dim + j] = c.clone();
            table[j * dim + i] = negate(c);
        }
        LieAlgebra { name, names, constants, table }
    }

    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        let names = (0..dim).map(|i| format!("X{i}")).collect();
        Self::assemble(format!("abelian{dim}"), names, BTreeMap::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Stored structure constants, keyed by `(i, j)` with `i < j`.
    pub fn constants(&self) -> &BTreeMap<(usize, usize), Combination> {
        &self.constants
    }

    /// `[X_i, X_j]` as a sparse combination (empty when the bracket vanishes).
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.bracket(i, j)
            .iter()
            .find(|(m, _)| *m == k)
            .map(|(_, c)| c.clone())
            .unwrap_or(Scalar::ZERO)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// Bracket of two arbitrary combinations.
    pub fn bracket_combinations(&self, a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> Combination {
        let mut out = Vec::new();
        for (i, ca) in a {
            for (j, cb) in b {
                let f = ca * cb;
                out.extend(self.bracket(*i, *j).iter().map(|(k, c)| (*k, &f * c)));
            }
        }
        normalize(out)
    }

    /// Exact check of the Jacobi identity over all triples `i < j < k`.
    pub fn validate_jacobi(&self) -> JacobiReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, cm) in self.bracket(a, b) {
                            for (l, cl) in self.bracket(*m, c) {
                                *acc.entry(*l).or_default() += &(cm * cl);
                            }
                        }
                    }
                    for (l, residual) in acc {
                        if !residual.is_zero() {
                            violations.push(JacobiViolation { i, j, k, l, residual });
                        }
                    }
                }
            }
        }
        JacobiReport { violations }
    }

    /// Structure constants in the basis `Y_a = Σ_b M_ab X_b`.
    pub fn change_basis(&self, m: &Matrix, names: Option<Vec<String>>) -> Result<LieAlgebra> {
        let n = self.dim();
        if m.rows != n || m.cols != n {
            return Err(Error::Dimension(format!("basis change is {}x{}, algebra has dimension {n}", m.rows, m.cols)));
        }
        let inv = m.inverse().ok_or(Error::SingularBasisChange)?;
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(v) => return Err(Error::Dimension(format!("{} names for dimension {n}", v.len()))),
            None => (0..n).map(|a| format!("Y{a}")).collect(),
        };
        let rows: Vec<Combination> = (0..n)
            .map(|a| (0..n).filter(|&b| !m[(a, b)].is_zero()).map(|b| (b, m[(a, b)].clone())).collect())
            .collect();
        let mut constants = BTreeMap::new();
        for a in 0..n {
            for c in a + 1..n {
                let old = self.bracket_combinations(&rows[a], &rows[c]);
                let inv = &inv;
                let new = normalize(old.iter().flat_map(|(e, ce)| {
                    (0..n).filter(move |&f| !inv[(*e, f)].is_zero()).map(move |f| (f, ce * &inv[(*e, f)]))
                }));
                if !new.is_empty() {
                    constants.insert((a, c), new);
                }
            }
        }
        Ok(Self::assemble(self.name.clone(), names, constants))
    }

    /// The subalgebra spanned by the listed basis generators, re-indexed in
    /// the given order. Fails if the span is not closed under brackets.
    pub fn restrict(&self, indices: &[usize], name: impl Into<String>) -> Result<LieAlgebra> {
        let n = self.dim();
        let mut position = vec![None; n];
        for (new, &old) in indices.iter().enumerate() {
            if old >= n {
                return Err(Error::IndexOutOfRange { index: old, dim: n });
            }
            position[old] = Some(new);
        }
        let mut constants = BTreeMap::new();
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate().skip(a + 1) {
                let mut terms = Vec::new();
                for (k, c) in self.bracket(i, j) {
                    match position[*k] {
                        Some(p) => terms.push((p, c.clone())),
                        None => {
                            return Err(Error::ClosureViolation {
                                left: self.names[i].clone(),
                                right: self.names[j].clone(),
                                outside: self.names[*k].clone(),
                                coeff: c.to_string(),
                            })
                        }
                    }
                }
                let terms = normalize(terms);
                if !terms.is_empty() {
                    constants.insert((a, b), terms);
                }
            }
        }
        let names = indices.iter().map(|&i| self.names[i].clone()).collect();
        Ok(Self::assemble(name.into(), names, constants))
    }

    /// Replaces structure constants wholesale; used by contractions.
    pub(crate) fn from_parts(name: String, names: Vec<String>, constants: BTreeMap<(usize, usize), Combination>) -> Self {
        Self::assemble(name, names, constants)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    #[serde(serialize_with = "crate::io::ser_display")]
    pub residual: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A reduction chain `s ⊃ s'`: an optional basis change and the number of
/// leading generators of the new basis that span the subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub basis_change: Option<Matrix>,
    pub sub_dim: usize,
    pub names: Option<Vec<String>>,
}

/// Result of a successful [`check_chain`].
#[derive(Clone, Debug)]
pub struct ChainReport {
    /// The algebra rewritten in the chain basis.
    pub algebra: LieAlgebra,
    pub sub_dim: usize,
    pub complement_dim: usize,
    /// For each subalgebra generator, `ad X_i` restricted to the complement,
    /// as a `(n-s)×(n-s)` matrix acting on column vectors of coordinates.
    pub complement_action: Vec<Matrix>,
    /// Complement directions annihilated by the whole subalgebra action.
    pub trivial_complement: Vec<usize>,
}

impl ChainSpec {
    pub fn new(basis_change: Option<Matrix>, sub_dim: usize) -> Self {
        ChainSpec { basis_change, sub_dim, names: None }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        self.names = Some(names);
        self
    }

    fn validate_shape(&self, dim: usize) -> Result<()> {
        if self.sub_dim == 0 || self.sub_dim >= dim {
            return Err(Error::InvalidChain(format!("sub_dim must satisfy 0 < s < {dim}, got {}", self.sub_dim)));
        }
        if let Some(m) = &self.basis_change {
            if m.rows != dim || m.cols != dim {
                return Err(Error::InvalidChain(format!("basis change is {}x{}, expected {dim}x{dim}", m.rows, m.cols)));
            }
        }
        if let Some(names) = &self.names {
            if names.len() != dim {
                return Err(Error::InvalidChain(format!("{} names for dimension {dim}", names.len())));
            }
        }
        Ok(())
    }

    /// The algebra expressed in the chain basis.
    pub fn apply(&self, alg: &LieAlgebra) -> Result<LieAlgebra> {
        self.validate_shape(alg.dim())?;
        match &self.basis_change {
            Some(m) => alg.change_basis(m, self.names.clone()),
            None => {
                let mut a = alg.clone();
                if let Some(n) = &self.names {
                    a.names = n.clone();
                }
                Ok(a)
            }
        }
    }

    /// `y = M x`: old coordinates in terms of new ones are `x = M⁻¹ y`.
    /// Returns `M⁻¹` (identity when there is no basis change).
    pub fn coordinate_inverse(&self, dim: usize) -> Result<Matrix> {
        match &self.basis_change {
            Some(m) => m.inverse().ok_or(Error::SingularBasisChange),
            None => Ok(Matrix::identity(dim)),
        }
    }

    pub fn is_sub(&self, var: usize) -> bool {
        var < self.sub_dim
    }
}

/// Verifies that the first `s` chain-basis generators close under brackets
/// and computes the action of the subalgebra on the complement `R`.
pub fn check_chain(alg: &LieAlgebra, chain: &ChainSpec) -> Result<ChainReport> {
    let algebra = chain.apply(alg)?;
    let n = algebra.dim();
    let s = chain.sub_dim;
    for i in 0..s {
        for j in i + 1..s {
            if let Some((k, c)) = algebra.bracket(i, j).iter().find(|(k, _)| *k >= s) {
                return Err(Error::ClosureViolation {
                    left: algebra.names[i].clone(),
                    right: algebra.names[j].clone(),
                    outside: algebra.names[*k].clone(),
                    coeff: c.to_string(),
                });
            }
        }
    }
    let r = n - s;
    let complement_action: Vec<Matrix> = (0..s)
        .map(|i| {
            let mut m = Matrix::zeros(r, r);
            for a in 0..r {
                for (k, c) in algebra.bracket(i, s + a) {
                    if *k >= s {
                        m[(*k - s, a)] = c.clone();
                    }
                }
            }
            m
        })
        .collect();
    let trivial_complement = (0..r)
        .filter(|&a| (0..s).all(|i| algebra.bracket(i, s + a).is_empty()))
        .map(|a| s + a)
        .collect();
    Ok(ChainReport { algebra, sub_dim: s, complement_dim: r, complement_action, trivial_complement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn abelian_passes_jacobi() {
        assert!(LieAlgebra::abelian(5).validate_jacobi().passed());
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let a = builtins::su2();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a.bracket(i, j).to_vec(), negate(&a.bracket(j, i).to_vec()));
            }
        }
    }

    #[test]
    fn perturbed_algebra_fails_jacobi() {
        // so(3) with one constant doubled is no longer a Lie algebra.
        let x = |k: usize, c: i64| vec![(k, Scalar::from_int(c))];
        let bad = LieAlgebra::from_brackets(
            "bad",
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            [(0, 1, x(2, 1)), (1, 2, x(0, 1)), (0, 2, x(1, -2)), (0, 3, x(3, 1))],
        )
        .unwrap();
        let rep = bad.validate_jacobi();
        assert!(!rep.passed());
    }

    #[test]
    fn rejects_malformed_brackets() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(LieAlgebra::from_brackets("x", names.clone(), [(1, 0, vec![])]).is_err());
        assert!(LieAlgebra::from_brackets("x", names.clone(), [(0, 1, vec![(5, Scalar::ONE)])]).is_err());
        assert!(LieAlgebra::from_brackets("x", names, [(0, 1, vec![]), (0, 1, vec![])]).is_err());
    }

    #[test]
    fn singular_basis_change_is_rejected() {
        let a = builtins::su2();
        let err = a.change_basis(&Matrix::zeros(3, 3), None).unwrap_err();
        assert_eq!(err.to_string(), "non-invertible basis change");
    }

    #[test]
    fn identity_basis_change_is_noop() {
        let a = builtins::sp6();
        let b = a.change_basis(&Matrix::identity(21), Some(a.names().to_vec())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn restrict_detects_non_closure() {
        let a = builtins::su2();
        assert!(matches!(a.restrict(&[0, 1], "x"), Err(Error::ClosureViolation { .. })));
        assert_eq!(a.restrict(&[2], "u1").unwrap().dim(), 1);
    }
}
