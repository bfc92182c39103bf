//! Sparse multivariate polynomials with exact Gaussian-rational coefficients
//! in the commuting coordinates `x_0 .. x_{n-1}` of a Lie algebra.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// A monomial `Π x_v^{e_v}` stored as `(v, e)` pairs sorted by variable,
/// with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(u16, u16); 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: usize) -> Self {
        Monomial(smallvec::smallvec![(v as u16, 1)])
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs; repeated
    /// variables are merged and zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_default() += e;
        }
        Monomial(acc.into_iter().filter(|(_, e)| *e > 0).map(|(v, e)| (v as u16, e as u16)).collect())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (v as usize, e as u32))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.0.iter().find(|&&(w, _)| w as usize == v).map_or(0, |&(_, e)| e as u32)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| v as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    /// Lowers the exponent of `v` by one; returns the old exponent.
    pub fn lower(&self, v: usize) -> Option<(u32, Monomial)> {
        let pos = self.0.iter().position(|&(w, _)| w as usize == v)?;
        let mut out = self.0.clone();
        let e = out[pos].1;
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some((e as u32, Monomial(out)))
    }

    /// `(degree in variables < s, degree in variables >= s)`.
    pub fn bidegree(&self, s: usize) -> BiDegree {
        let mut b = BiDegree { sub_deg: 0, comp_deg: 0 };
        for &(v, e) in &self.0 {
            if (v as usize) < s {
                b.sub_deg += e as u32;
            } else {
                b.comp_deg += e as u32;
            }
        }
        b
    }

    /// The multiset of variables, each repeated by its exponent.
    pub fn letters(&self) -> Vec<usize> {
        self.0.iter().flat_map(|&(v, e)| std::iter::repeat_n(v as usize, e as usize)).collect()
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with `x_0 > x_1 > ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            for k in 0..a.len().min(b.len()) {
                if a[k].0 != b[k].0 {
                    // The side with the smaller variable index has a positive
                    // exponent where the other has zero.
                    return b[k].0.cmp(&a[k].0);
                }
                if a[k].1 != b[k].1 {
                    return a[k].1.cmp(&b[k].1);
                }
            }
            a.len().cmp(&b.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.pairs().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bi-degree of a monomial relative to a chain, always reported as
/// `(sub_deg, comp_deg)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiDegree {
    pub sub_deg: u32,
    pub comp_deg: u32,
}

impl BiDegree {
    pub fn new(sub_deg: u32, comp_deg: u32) -> Self {
        BiDegree { sub_deg, comp_deg }
    }

    pub fn total(&self) -> u32 {
        self.sub_deg + self.comp_deg
    }

    /// The `(complement, subalgebra)` order used in the literature's
    /// `C_(k,l)` subscripts.
    pub fn paper_style(&self) -> (u32, u32) {
        (self.comp_deg, self.sub_deg)
    }
}

impl std::ops::Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.sub_deg + o.sub_deg, self.comp_deg + o.comp_deg)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.sub_deg, self.comp_deg)
    }
}

/// A polynomial in `nvars` commuting variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(nvars, Monomial::one(), c)
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        assert!(v < nvars, "variable x{v} out of range for {nvars} variables");
        Self::monomial(nvars, Monomial::var(v), Scalar::ONE)
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// Collects terms, summing repeated monomials. Fails if a variable index
    /// is out of range.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Self> {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            if let Some(v) = m.max_var() {
                if v >= nvars {
                    return Err(Error::IndexOutOfRange { index: v, dim: nvars });
                }
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub(crate) fn from_map_unchecked(nvars: usize, map: FxHashMap<Monomial, Scalar>) -> Self {
        Poly { nvars, terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Same polynomial viewed in a ring with `nvars` variables.
    pub fn with_nvars(&self, nvars: usize) -> Result<Poly> {
        if let Some(v) = self.max_var() {
            if v >= nvars {
                return Err(Error::IndexOutOfRange { index: v, dim: nvars });
            }
        }
        Ok(Poly { nvars, terms: self.terms.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            Some(d) => it.all(|e| e == d),
            None => true,
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    /// Variables that occur with nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = self.terms.keys().flat_map(|m| m.pairs().map(|(v, _)| v)).collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dims(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension(format!("polynomials in {} and {} variables", self.nvars, other.nvars)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_dims(other)?;
        let mut acc: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += &(ca * cb);
            }
        }
        Ok(Poly::from_map_unchecked(self.nvars, acc))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Scalar::ONE);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `∂p/∂x_v`.
    pub fn partial(&self, v: usize) -> Result<Poly> {
        if v >= self.nvars {
            return Err(Error::IndexOutOfRange { index: v, dim: self.nvars });
        }
        Ok(self.partial_unchecked(v))
    }

    pub(crate) fn partial_unchecked(&self, v: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.lower(v) {
                out.add_term(rest, &c.scale(&Rational::from_integer(e as i64)));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!("point of length {} for {} variables", point.len(), self.nvars)));
        }
        let mut acc = Scalar::ZERO;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.pairs() {
                t = &t * &point[v].pow(e);
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitutes `x_v ↦ images[v]`, each image a polynomial in the target
    /// ring.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::Dimension(format!("{} images for {} variables", images.len(), self.nvars)));
        }
        let target = images.first().map_or(0, Poly::nvars);
        if images.iter().any(|p| p.nvars != target) {
            return Err(Error::Dimension("substitution images live in different rings".into()));
        }
        let mut powers: FxHashMap<(usize, u32), Poly> = FxHashMap::default();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (v, e) in m.pairs() {
                let pw = powers.entry((v, e)).or_insert_with(|| images[v].pow(e));
                t = &t * &*pw;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Real and imaginary parts of the coefficients.
    pub fn real_part(&self) -> Poly {
        self.map_coeffs(|c| Scalar::real(c.re.clone()))
    }

    pub fn imag_part(&self) -> Poly {
        self.map_coeffs(|c| Scalar::real(c.im.clone()))
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Exact division by a polynomial that is known to divide `self`.
    /// Returns `None` if the division leaves a remainder.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading()?;
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(lm)?;
            let c = rc * &lc_inv;
            for (dm, dc) in &d.terms {
                rem.add_term(dm.mul(&m), &-(dc * &c));
            }
            q.add_term(m, &c);
        }
        Some(q)
    }

    /// Multiplies by a scalar so that the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    /// `Some(c)` if `self == c · other` for a scalar `c`.
    pub fn proportionality(&self, other: &Poly) -> Option<Scalar> {
        if self.nvars != other.nvars || self.terms.len() != other.terms.len() {
            return None;
        }
        let (m0, c0) = other.leading()?;
        let ratio = &self.coeff(m0) / c0;
        (self == &other.scale(&ratio)).then_some(ratio)
    }

    /// Splits into bi-homogeneous components relative to a chain whose
    /// subalgebra is spanned by the first `sub_dim` variables.
    pub fn bidegree_components(&self, sub_dim: usize) -> BTreeMap<BiDegree, Poly> {
        let mut out: BTreeMap<BiDegree, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree(sub_dim))
                .or_insert_with(|| Poly::zero(self.nvars))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Coefficients of the powers of `x_v`: `p = Σ_k coeffs[k] x_v^k`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            let rest = Monomial(m.0.iter().copied().filter(|&(w, _)| w as usize != v).collect());
            if out.len() <= e {
                out.resize(e + 1, Poly::zero(self.nvars));
            }
            out[e].add_term(rest, c);
        }
        out
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Scalar::ONE)
    }
}

impl fmt::Display for Poly {
    /// Terms in descending graded-lex order, e.g. `2*x0^2*x3 - 1/2*x1 + 3`.
    /// Non-real coefficients are parenthesized: `(1+2i)*x0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = if c.re.is_zero() { c.im.is_negative() } else { c.is_real() && c.re.is_negative() };
            let mag = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = if mag.is_real() || mag.re.is_zero() { mag.to_string() } else { format!("({mag})") };
            match (m.is_one(), mag.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{coeff}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the canonical text form in a ring of `nvars` variables.
pub fn parse_poly(s: &str, nvars: usize) -> Result<Poly> {
    let err = |msg: &str, at: usize| Error::Parse(format!("{msg} at offset {at} in {s:?}"));
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let mut p = Poly::zero(nvars);
    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(err("empty polynomial", pos));
    }
    let mut first = true;
    while pos < chars.len() {
        skip_ws(&mut pos);
        let mut sign = Scalar::ONE;
        if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(err("expected '+' or '-'", pos));
        }
        first = false;
        let mut coeff = Scalar::ONE;
        let mut mono = Vec::new();
        let mut have_factor = false;
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                break;
            }
            let c = chars[pos];
            if c == '(' {
                let close = chars[pos..].iter().position(|&c| c == ')').ok_or_else(|| err("unclosed '('", pos))?;
                let inner: String = chars[pos + 1..pos + close].iter().collect();
                coeff = &coeff * &inner.parse::<Scalar>().map_err(|_| err("bad coefficient", pos))?;
                pos += close + 1;
            } else if c == 'x' {
                pos += 1;
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let v: usize = chars[start..pos].iter().collect::<String>().parse().map_err(|_| err("bad variable", start))?;
                if v >= nvars {
                    return Err(Error::IndexOutOfRange { index: v, dim: nvars });
                }
                let mut e = 1u32;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let s2 = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    e = chars[s2..pos].iter().collect::<String>().parse().map_err(|_| err("bad exponent", s2))?;
                }
                mono.push((v, e));
            } else if c.is_ascii_digit() || c == 'i' || c == 'I' {
                let start = pos;
                while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
                    pos += 1;
                }
                let mut text: String = chars[start..pos].iter().collect();
                if pos < chars.len() && (chars[pos] == 'i' || chars[pos] == 'I') {
                    text.push('i');
                    pos += 1;
                }
                coeff = &coeff * &text.parse::<Scalar>().map_err(|_| err("bad coefficient", start))?;
            } else {
                return Err(err(&format!("unexpected character {c:?}"), pos));
            }
            have_factor = true;
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                continue;
            }
            break;
        }
        if !have_factor {
            return Err(err("empty term", pos));
        }
        p.add_term(Monomial::from_pairs(mono), &(&sign * &coeff));
        skip_ws(&mut pos);
    }
    Ok(p)
}

impl FromStr for Poly {
    type Err = Error;
    /// Parses with the number of variables inferred from the largest index.
    fn from_str(s: &str) -> Result<Poly> {
        let p = parse_poly(s, u16::MAX as usize)?;
        let n = p.max_var().map_or(0, |v| v + 1);
        p.with_nvars(n)
    }
}

/// A Casimir (or any polynomial) split into bi-homogeneous components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub source: Poly,
    pub sub_dim: usize,
    pub components: BTreeMap<BiDegree, Poly>,
}

impl Decomposition {
    /// Largest complement degree among the components.
    pub fn max_comp_deg(&self) -> u32 {
        self.components.keys().map(|b| b.comp_deg).max().unwrap_or(0)
    }

    /// The component with complement degree 0, if present.
    pub fn phi0(&self) -> Option<(&BiDegree, &Poly)> {
        self.components.iter().find(|(b, _)| b.comp_deg == 0)
    }

    /// The component of maximal complement degree.
    pub fn top(&self) -> Option<(&BiDegree, &Poly)> {
        let m = self.max_comp_deg();
        self.components.iter().find(|(b, _)| b.comp_deg == m)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn reconstruct(&self) -> Poly {
        self.components.values().fold(Poly::zero(self.source.nvars()), |acc, c| &acc + c)
    }
}

/// Splits `p` (written in chain-basis variables) by bi-degree.
pub fn bidegree_split(p: &Poly, sub_dim: usize) -> Decomposition {
    Decomposition { source: p.clone(), sub_dim, components: p.bidegree_components(sub_dim) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Scalar {
        Scalar::ratio(a, b)
    }

    #[test]
    fn partial_power_rule() {
        let p = parse_poly("x0^2*x1", 2).unwrap();
        assert_eq!(p.partial(0).unwrap(), parse_poly("2*x0*x1", 2).unwrap());
        assert!(p.partial(5).is_err());
    }

    #[test]
    fn eval_sum_of_squares() {
        let p = parse_poly("x0^2 + x1^2", 2).unwrap();
        assert_eq!(p.eval(&[q(3, 1), q(4, 1)]).unwrap(), q(25, 1));
        assert!(p.eval(&[q(1, 1)]).is_err());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Poly::var(2, 0);
        let b = Poly::var(3, 0);
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn grlex_order() {
        let x0 = Monomial::var(0);
        let x1 = Monomial::var(1);
        let x1sq = Monomial::from_pairs([(1, 2)]);
        let x0x1 = x0.mul(&x1);
        assert!(x0 > x1);
        assert!(x1sq > x0);
        assert!(x0x1 > x1sq);
        assert!(Monomial::from_pairs([(0, 2)]) > x0x1);
        assert!(Monomial::one() < x1);
    }

    #[test]
    fn print_parse_round_trip() {
        let p = parse_poly("3 - x1 + 1/2*x0^2*x2 + (1+2i)*x2 - i*x0", 3).unwrap();
        let s = p.to_string();
        assert_eq!(s, "1/2*x0^2*x2 - i*x0 - x1 + (1+2i)*x2 + 3");
        assert_eq!(parse_poly(&s, 3).unwrap(), p);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let e = parse_poly("x0 + $", 2).unwrap_err().to_string();
        assert!(e.contains("offset 5"), "{e}");
        assert!(parse_poly("x9", 2).is_err());
    }

    #[test]
    fn bidegree_single_component() {
        let p = parse_poly("x0^2*x3", 5).unwrap();
        let d = bidegree_split(&p, 3);
        assert_eq!(d.components.len(), 1);
        assert!(d.components.contains_key(&BiDegree::new(2, 1)));
        assert_eq!(d.max_comp_deg(), 1);
        assert!(d.phi0().is_none());
    }

    #[test]
    fn exact_division() {
        let a = parse_poly("x0 + x1", 2).unwrap();
        let b = parse_poly("x0 - 2*x1 + 3", 2).unwrap();
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert!(parse_poly("x0^2 + 1", 2).unwrap().exact_div(&a).is_none());
    }

    #[test]
    fn substitution() {
        let p = parse_poly("x0*x1", 2).unwrap();
        let images = [parse_poly("x0 + x1", 2).unwrap(), parse_poly("x0 - x1", 2).unwrap()];
        assert_eq!(p.substitute(&images).unwrap(), parse_poly("x0^2 - x1^2", 2).unwrap());
    }
}
