//! Universal enveloping algebra in the PBW basis: normal ordering,
//! symmetrization of commutative polynomials, products, commutators and the
//! Lie–Poisson bracket used as a cheap necessary test for commutation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::invariants::is_subgroup_scalar;
use crate::poly::{BiDegree, Monomial, Poly};
use crate::scalar::{Rational, Scalar};

/// A PBW basis word `X_{i_1}^{a_1} ⋯ X_{i_r}^{a_r}` with `i_1 < … < i_r`,
/// stored as its nondecreasing sequence of letters.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UEWord(SmallVec<[u16; 8]>);

impl UEWord {
    pub fn empty() -> Self {
        UEWord(SmallVec::new())
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut letters: SmallVec<[u16; 8]> = SmallVec::new();
        for (g, e) in factors {
            letters.extend(std::iter::repeat_n(g as u16, e as usize));
        }
        letters.sort_unstable();
        UEWord(letters)
    }

    /// `(generator, exponent)` pairs with strictly increasing generators.
    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        let mut k = 0;
        std::iter::from_fn(move || {
            let g = *self.0.get(k)?;
            let start = k;
            while k < self.0.len() && self.0[k] == g {
                k += 1;
            }
            Some((g as usize, (k - start) as u32))
        })
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&g| g as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_monomial(&self) -> Monomial {
        Monomial::from_pairs(self.factors())
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        UEWord(m.letters().into_iter().map(|v| v as u16).collect())
    }

    fn prepend(&self, g: u16) -> UEWord {
        let mut v = SmallVec::with_capacity(self.0.len() + 1);
        v.push(g);
        v.extend_from_slice(&self.0);
        UEWord(v)
    }

    fn without_first(&self) -> UEWord {
        UEWord(SmallVec::from_slice(&self.0[1..]))
    }

    fn without(&self, pos: usize) -> UEWord {
        let mut v = self.0.clone();
        v.remove(pos);
        UEWord(v)
    }
}

impl Ord for UEWord {
    /// Shorter words first, then lexicographic on letters.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for UEWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for UEWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.factors().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "X{g}")?;
            } else {
                write!(f, "X{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UEWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `U(g)` as a combination of PBW words.
#[derive(Clone, PartialEq, Eq)]
pub struct UEElement {
    dim: usize,
    terms: BTreeMap<UEWord, Scalar>,
}

type Accumulator = FxHashMap<UEWord, Scalar>;

fn accumulate(acc: &mut Accumulator, w: &UEWord, c: Scalar) {
    match acc.get_mut(w) {
        Some(v) => *v += &c,
        None => {
            acc.insert(w.clone(), c);
        }
    }
}

impl UEElement {
    pub fn zero(dim: usize) -> Self {
        UEElement { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::from_terms(dim, [(UEWord::empty(), Scalar::ONE)])
    }

    pub fn generator(dim: usize, g: usize) -> Self {
        Self::from_terms(dim, [(UEWord::from_factors([(g, 1)]), Scalar::ONE)])
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (UEWord, Scalar)>) -> Self {
        let mut acc: BTreeMap<UEWord, Scalar> = BTreeMap::new();
        for (w, c) in terms {
            *acc.entry(w).or_default() += &c;
        }
        acc.retain(|_, c| !c.is_zero());
        UEElement { dim, terms: acc }
    }

    fn from_acc(dim: usize, acc: Accumulator) -> Self {
        UEElement { dim, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UEWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &UEWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or(Scalar::ZERO)
    }

    /// Filtration degree: the length of the longest word.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(UEWord::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &UEElement) -> UEElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            *out.terms.entry(w.clone()).or_default() += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn sub(&self, other: &UEElement) -> UEElement {
        self.add(&other.scale(&-Scalar::ONE))
    }

    pub fn scale(&self, c: &Scalar) -> UEElement {
        if c.is_zero() {
            return UEElement::zero(self.dim);
        }
        UEElement { dim: self.dim, terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    /// Top-filtration symbol as a commutative polynomial.
    pub fn symbol(&self) -> Poly {
        let d = self.degree();
        let terms = self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.to_monomial(), c.clone()));
        Poly::from_terms(self.dim, terms).expect("words use in-range generators")
    }

    /// The commutative polynomial with the same coefficients on each word.
    pub fn to_commutative(&self) -> Poly {
        Poly::from_terms(self.dim, self.terms.iter().map(|(w, c)| (w.to_monomial(), c.clone())))
            .expect("words use in-range generators")
    }
}

impl fmt::Display for UEElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UEElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Resource limits for enveloping-algebra computations.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Largest monomial degree accepted by [`Enveloping::symmetrize`].
    pub sym_degree_cap: u32,
    /// Largest filtration degree of a product.
    pub max_degree: usize,
    /// Ceiling on the number of words in any intermediate result.
    pub term_ceiling: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { sym_degree_cap: 8, max_degree: 16, term_ceiling: 5_000_000 }
    }
}

type Cached = Arc<Vec<(UEWord, Scalar)>>;

/// Normal-ordering engine for one algebra, with memoized reductions.
///
/// The memo tables are per engine; concurrent jobs should each clone or
/// create their own engine. Results never depend on cache state.
#[derive(Clone)]
pub struct Enveloping<'a> {
    alg: &'a LieAlgebra,
    limits: Limits,
    left: FxHashMap<(u16, UEWord), Cached>,
    arrangements: FxHashMap<UEWord, Arc<UEElement>>,
}

impl<'a> Enveloping<'a> {
    pub fn new(alg: &'a LieAlgebra) -> Self {
        Self::with_limits(alg, Limits::default())
    }

    pub fn with_limits(alg: &'a LieAlgebra, limits: Limits) -> Self {
        Enveloping { alg, limits, left: FxHashMap::default(), arrangements: FxHashMap::default() }
    }

    pub fn algebra(&self) -> &'a LieAlgebra {
        self.alg
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Number of memoized reductions.
    pub fn cache_size(&self) -> usize {
        self.left.len()
    }

    pub fn clear_cache(&mut self) {
        self.left.clear();
        self.arrangements.clear();
    }

    /// `X_g · w` in PBW form, for a normal-ordered word `w`.
    fn left_mul(&mut self, g: u16, w: &UEWord) -> Cached {
        if w.0.first().is_none_or(|&a| g <= a) {
            return Arc::new(vec![(w.prepend(g), Scalar::ONE)]);
        }
        let key = (g, w.clone());
        if let Some(c) = self.left.get(&key) {
            return c.clone();
        }
        let a = w.0[0];
        let rest = w.without_first();
        let mut acc = Accumulator::default();
        // X_g X_a rest = X_a (X_g rest) + [X_g, X_a] rest
        let inner = self.left_mul(g, &rest);
        for (u, cu) in inner.iter() {
            let outer = self.left_mul(a, u);
            for (v, cv) in outer.iter() {
                accumulate(&mut acc, v, cu * cv);
            }
        }
        let br: Vec<(usize, Scalar)> = self.alg.bracket(g as usize, a as usize).to_vec();
        for (k, ck) in br {
            let t = self.left_mul(k as u16, &rest);
            for (v, cv) in t.iter() {
                accumulate(&mut acc, v, &ck * cv);
            }
        }
        let mut out: Vec<(UEWord, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        let out = Arc::new(out);
        self.left.insert(key, out.clone());
        out
    }

    fn check_index(&self, g: usize) -> Result<()> {
        if g >= self.alg.dim() {
            return Err(Error::IndexOutOfRange { index: g, dim: self.alg.dim() });
        }
        Ok(())
    }

    /// `X_g · e`.
    pub fn left_multiply_generator(&mut self, g: usize, e: &UEElement) -> Result<UEElement> {
        self.check_index(g)?;
        let mut acc = Accumulator::default();
        for (w, c) in &e.terms {
            for (v, cv) in self.left_mul(g as u16, w).iter() {
                accumulate(&mut acc, v, c * cv);
            }
            if acc.len() > self.limits.term_ceiling {
                return Err(Error::TermCeiling { cap: self.limits.term_ceiling, checkpoint: None });
            }
        }
        Ok(UEElement::from_acc(self.alg.dim(), acc))
    }

    /// PBW normal form of an arbitrary product `X_{w_1} ⋯ X_{w_k}`.
    pub fn normal_order(&mut self, word: &[usize]) -> Result<UEElement> {
        let mut e = UEElement::one(self.alg.dim());
        for &g in word.iter().rev() {
            e = self.left_multiply_generator(g, &e)?;
        }
        Ok(e)
    }

    pub fn multiply(&mut self, a: &UEElement, b: &UEElement) -> Result<UEElement> {
        let n = self.alg.dim();
        if a.dim != n || b.dim != n {
            return Err(Error::Dimension("enveloping elements from different algebras".into()));
        }
        if a.degree() + b.degree() > self.limits.max_degree {
            return Err(Error::DegreeCap(format!(
                "product of filtration degree {} exceeds {}",
                a.degree() + b.degree(),
                self.limits.max_degree
            )));
        }
        let total = a.terms.len();
        let mut acc = Accumulator::default();
        for (idx, (u, cu)) in a.terms.iter().enumerate() {
            // u · b, folding u's letters onto b from the right.
            let mut cur: Vec<(UEWord, Scalar)> = b.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
            for &g in u.0.iter().rev() {
                let mut next = Accumulator::default();
                for (w, c) in &cur {
                    for (v, cv) in self.left_mul(g, w).iter() {
                        accumulate(&mut next, v, c * cv);
                    }
                }
                cur = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            }
            for (w, c) in cur {
                accumulate(&mut acc, &w, cu * &c);
            }
            if acc.len() > self.limits.term_ceiling {
                return Err(Error::TermCeiling {
                    cap: self.limits.term_ceiling,
                    checkpoint: Some(format!("left factor word {idx} of {total}")),
                });
            }
        }
        Ok(UEElement::from_acc(n, acc))
    }

    pub fn commutator(&mut self, a: &UEElement, b: &UEElement) -> Result<UEElement> {
        let ab = self.multiply(a, b)?;
        let ba = self.multiply(b, a)?;
        Ok(ab.sub(&ba))
    }

    /// Sum of the normal forms of all distinct orderings of a multiset.
    fn arrangement_sum(&mut self, multiset: &UEWord) -> Result<Arc<UEElement>> {
        if multiset.len() <= 1 {
            return Ok(Arc::new(UEElement::from_terms(self.alg.dim(), [(multiset.clone(), Scalar::ONE)])));
        }
        if let Some(e) = self.arrangements.get(multiset) {
            return Ok(e.clone());
        }
        // T(M) = Σ_{distinct g ∈ M} X_g · T(M − g)
        let mut acc = Accumulator::default();
        let mut k = 0;
        while k < multiset.len() {
            let g = multiset.0[k];
            let rest = multiset.without(k);
            let sub = self.arrangement_sum(&rest)?;
            for (w, c) in &sub.terms {
                for (v, cv) in self.left_mul(g, w).iter() {
                    accumulate(&mut acc, v, c * cv);
                }
            }
            while k < multiset.len() && multiset.0[k] == g {
                k += 1;
            }
        }
        let e = Arc::new(UEElement::from_acc(self.alg.dim(), acc));
        self.arrangements.insert(multiset.clone(), e.clone());
        Ok(e)
    }

    /// `Sym(x^a) = (1/k!) Σ_σ X_{σ(1)} ⋯ X_{σ(k)}`, extended linearly.
    pub fn symmetrize(&mut self, p: &Poly) -> Result<UEElement> {
        let n = self.alg.dim();
        if p.nvars() != n {
            return Err(Error::Dimension(format!("polynomial in {} variables, algebra of dimension {n}", p.nvars())));
        }
        if let Some(d) = p.degree() {
            if d > self.limits.sym_degree_cap {
                return Err(Error::DegreeCap(format!("symmetrization of degree {d} exceeds cap {}", self.limits.sym_degree_cap)));
            }
        }
        let mut acc = Accumulator::default();
        for (m, c) in p.terms() {
            let word = UEWord::from_monomial(m);
            let k = word.len() as i64;
            // Each distinct arrangement occurs Π a_g! times among the k! permutations.
            let mut weight = Rational::ONE;
            for (_, e) in word.factors() {
                weight = &weight * &factorial(e as i64);
            }
            weight = &weight / &factorial(k);
            let coeff = c.scale(&weight);
            let sum = self.arrangement_sum(&word)?;
            for (w, v) in &sum.terms {
                accumulate(&mut acc, w, &coeff * v);
            }
        }
        Ok(UEElement::from_acc(n, acc))
    }
}

fn factorial(k: i64) -> Rational {
    (1..=k).fold(Rational::ONE, |acc, i| &acc * &Rational::from_integer(i))
}

/// Reduction order for [`normal_order_by_rewriting`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftmostInversion,
    RightmostInversion,
}

/// Reference normal ordering by repeated adjacent swaps
/// `X_a X_b → X_b X_a + [X_a, X_b]`, with a choice of which inversion to
/// resolve first. Slow; intended for cross-checking [`Enveloping`].
pub fn normal_order_by_rewriting(alg: &LieAlgebra, word: &[usize], strategy: Strategy) -> UEElement {
    let mut pending: Vec<(Vec<usize>, Scalar)> = vec![(word.to_vec(), Scalar::ONE)];
    let mut done: BTreeMap<UEWord, Scalar> = BTreeMap::new();
    while let Some((w, c)) = pending.pop() {
        let inversions = (0..w.len().saturating_sub(1)).filter(|&k| w[k] > w[k + 1]);
        let pos = match strategy {
            Strategy::LeftmostInversion => inversions.min(),
            Strategy::RightmostInversion => inversions.max(),
        };
        match pos {
            None => {
                *done.entry(UEWord(w.iter().map(|&g| g as u16).collect())).or_default() += &c;
            }
            Some(k) => {
                let mut swapped = w.clone();
                swapped.swap(k, k + 1);
                pending.push((swapped, c.clone()));
                for (m, cm) in alg.bracket(w[k], w[k + 1]) {
                    let mut shorter = w[..k].to_vec();
                    shorter.push(*m);
                    shorter.extend_from_slice(&w[k + 2..]);
                    pending.push((shorter, &c * cm));
                }
            }
        }
    }
    UEElement::from_terms(alg.dim(), done)
}

/// Lie–Poisson bracket `{f, g} = C_ij^k x_k ∂_i f ∂_j g`.
pub fn poisson_bracket(alg: &LieAlgebra, f: &Poly, g: &Poly) -> Result<Poly> {
    let n = alg.dim();
    if f.nvars() != n || g.nvars() != n {
        return Err(Error::Dimension("poisson bracket operands must live in the algebra's coordinate ring".into()));
    }
    let df: Vec<(usize, Poly)> = f.support().into_iter().map(|i| (i, f.partial_unchecked(i))).collect();
    // {f, g} = Σ_j A_j ∂_j g with A_j = Σ_i C_ij^k x_k ∂_i f.
    let terms: Vec<Poly> = g
        .support()
        .into_par_iter()
        .map(|j| {
            let mut a = Poly::zero(n);
            for (i, fi) in &df {
                let br = alg.bracket(*i, j);
                if !br.is_empty() {
                    let lin = Poly::from_terms(n, br.iter().map(|(k, c)| (Monomial::var(*k), c.clone())))
                        .expect("bracket indices in range");
                    a = &a + &(fi * &lin);
                }
            }
            if a.is_zero() {
                a
            } else {
                &a * &g.partial_unchecked(j)
            }
        })
        .collect();
    Ok(terms.iter().fold(Poly::zero(n), |acc, t| &acc + t))
}

/// One bi-degree piece of a commutator's leading symbol.
#[derive(Clone, Debug)]
pub struct SymbolComponent {
    pub bidegree: BiDegree,
    pub symbol: Poly,
    pub subgroup_scalar: bool,
}

/// Leading symbol of `[a, b]` split by bi-degree; empty when `a` and `b`
/// commute. `engine` must use the algebra in chain basis.
pub fn commutator_bidegree_report(
    engine: &mut Enveloping<'_>,
    a: &UEElement,
    b: &UEElement,
    sub_dim: usize,
) -> Result<Vec<SymbolComponent>> {
    let c = engine.commutator(a, b)?;
    if c.is_zero() {
        return Ok(Vec::new());
    }
    let alg = engine.algebra();
    Ok(c.symbol()
        .bidegree_components(sub_dim)
        .into_iter()
        .map(|(bidegree, symbol)| {
            let subgroup_scalar = is_subgroup_scalar(alg, sub_dim, &symbol);
            SymbolComponent { bidegree, symbol, subgroup_scalar }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::poly::parse_poly;

    #[test]
    fn sorted_word_is_unchanged() {
        let a = builtins::su2();
        let mut e = Enveloping::new(&a);
        let r = e.normal_order(&[0, 1, 1, 2]).unwrap();
        assert_eq!(r.term_count(), 1);
        assert_eq!(r.coeff(&UEWord::from_factors([(0, 1), (1, 2), (2, 1)])), Scalar::ONE);
    }

    #[test]
    fn single_swap_su2() {
        // X2 X1 = X1 X2 − X3
        let a = builtins::su2();
        let mut e = Enveloping::new(&a);
        let r = e.normal_order(&[1, 0]).unwrap();
        let expected = UEElement::from_terms(
            3,
            [(UEWord::from_factors([(0, 1), (1, 1)]), Scalar::ONE), (UEWord::from_factors([(2, 1)]), -Scalar::ONE)],
        );
        assert_eq!(r, expected);
    }

    #[test]
    fn symmetrize_product_of_two() {
        // Sym(x0 x1) = X0 X1 − ½ [X0, X1] = X0 X1 − ½ X2 in su(2).
        let a = builtins::su2();
        let mut e = Enveloping::new(&a);
        let s = e.symmetrize(&parse_poly("x0*x1", 3).unwrap()).unwrap();
        let expected = UEElement::from_terms(
            3,
            [(UEWord::from_factors([(0, 1), (1, 1)]), Scalar::ONE), (UEWord::from_factors([(2, 1)]), Scalar::ratio(-1, 2))],
        );
        assert_eq!(s, expected);
        assert_eq!(e.symmetrize(&Poly::var(3, 1)).unwrap(), UEElement::generator(3, 1));
    }

    #[test]
    fn su2_casimir_is_central() {
        let a = builtins::su2();
        let mut e = Enveloping::new(&a);
        let c = e.symmetrize(&parse_poly("x0^2 + x1^2 + x2^2", 3).unwrap()).unwrap();
        for g in 0..3 {
            assert!(e.commutator(&c, &UEElement::generator(3, g)).unwrap().is_zero());
        }
    }

    #[test]
    fn defining_relation() {
        let a = builtins::sp6();
        let mut e = Enveloping::new(&a);
        for i in 0..21 {
            for j in 0..21 {
                let c = e.commutator(&UEElement::generator(21, i), &UEElement::generator(21, j)).unwrap();
                let expected = UEElement::from_terms(21, a.bracket(i, j).iter().map(|(k, v)| (UEWord::from_factors([(*k, 1)]), v.clone())));
                assert_eq!(c, expected);
            }
        }
    }

    #[test]
    fn degree_cap() {
        let a = builtins::su2();
        let mut e = Enveloping::with_limits(&a, Limits { sym_degree_cap: 2, ..Limits::default() });
        assert!(matches!(e.symmetrize(&parse_poly("x0^3", 3).unwrap()), Err(Error::DegreeCap(_))));
    }

    #[test]
    fn term_ceiling_reports_checkpoint() {
        let a = builtins::sp6();
        let mut e = Enveloping::with_limits(&a, Limits { term_ceiling: 3, ..Limits::default() });
        let x = e.symmetrize(&parse_poly("x9*x15 + x10*x16 + x1*x3", 21).unwrap());
        assert!(matches!(x, Err(Error::TermCeiling { .. })) || {
            let x = x.unwrap();
            matches!(e.multiply(&x, &x), Err(Error::TermCeiling { checkpoint: Some(_), .. }))
        });
    }

    #[test]
    fn poisson_self_bracket_vanishes() {
        let a = builtins::su2();
        let f = parse_poly("x0^2*x1 + x2", 3).unwrap();
        assert!(poisson_bracket(&a, &f, &f).unwrap().is_zero());
    }

    #[test]
    fn two_step_commutator_symbol() {
        // [X0, X1] = X1 on a 2-dim algebra; chain s = {X0}.
        let alg = LieAlgebra::from_brackets("aff", vec!["a".into(), "b".into()], [(0, 1, vec![(1, Scalar::ONE)])]).unwrap();
        let mut e = Enveloping::new(&alg);
        let a = e.symmetrize(&parse_poly("x0*x1", 2).unwrap()).unwrap();
        let b = e.symmetrize(&parse_poly("x1^2", 2).unwrap()).unwrap();
        let rep = commutator_bidegree_report(&mut e, &a, &b, 1).unwrap();
        assert_eq!(rep.len(), 1);
        assert_eq!(rep[0].bidegree, BiDegree::new(0, 3));
        assert!(rep[0].symbol.proportionality(&parse_poly("x1^3", 2).unwrap()).is_some());
    }
}
