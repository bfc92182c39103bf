use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use casimir_core::contraction;
use casimir_core::enveloping::{self, Enveloping};
use casimir_core::invariants;
use casimir_core::{builtins, io, mlp};

fn py_err(e: casimir_core::Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyArithmeticError::new_err(e.to_string())
    }
}

/// A Lie algebra given by exact structure constants.
#[pyclass(name = "LieAlgebra", module = "casimir", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLieAlgebra {
    inner: casimir_core::LieAlgebra,
}

#[pymethods]
impl PyLieAlgebra {
    /// Loads `builtin:<name>` or an algebra JSON file.
    #[staticmethod]
    fn load(spec: &str) -> PyResult<Self> {
        Ok(PyLieAlgebra { inner: builtins::load_algebra(spec).map_err(py_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyLieAlgebra { inner: io::algebra_from_json(text).map_err(py_err)? })
    }

    fn to_json(&self) -> String {
        io::algebra_to_json(&self.inner)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    /// `[X_i, X_j]` as a list of `(k, coefficient)` pairs.
    fn bracket(&self, i: usize, j: usize) -> PyResult<Vec<(usize, String)>> {
        let n = self.inner.dim();
        if i >= n || j >= n {
            return Err(PyValueError::new_err(format!("generator index out of range for dimension {n}")));
        }
        Ok(self.inner.bracket(i, j).iter().map(|(k, c)| (*k, c.to_string())).collect())
    }

    /// True iff the Jacobi identity holds exactly.
    fn validate_jacobi(&self) -> bool {
        self.inner.validate_jacobi().passed()
    }

    #[pyo3(signature = (seed=0, retries=invariants::DEFAULT_RETRIES))]
    fn count_invariants(&self, seed: u64, retries: usize) -> usize {
        invariants::count_invariants(&self.inner, seed, retries)
    }

    fn is_invariant(&self, p: &PyPoly) -> bool {
        invariants::is_invariant(&self.inner, &p.inner)
    }

    /// Basis of the degree-`d` polynomial invariants.
    fn solve_invariants(&self, degree: u32) -> PyResult<Vec<PyPoly>> {
        let v = invariants::solve_invariants_degree(&self.inner, degree, invariants::DEFAULT_MONOMIAL_CAP).map_err(py_err)?;
        Ok(v.into_iter().map(|inner| PyPoly { inner }).collect())
    }

    fn contract(&self, chain: &PyChain) -> PyResult<PyLieAlgebra> {
        Ok(PyLieAlgebra { inner: contraction::contract(&self.inner, &chain.inner).map_err(py_err)? })
    }

    /// The algebra rewritten in the chain basis.
    fn in_chain_basis(&self, chain: &PyChain) -> PyResult<PyLieAlgebra> {
        Ok(PyLieAlgebra { inner: casimir_core::check_chain(&self.inner, &chain.inner).map_err(py_err)?.algebra })
    }

    fn poisson_bracket(&self, f: &PyPoly, g: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly { inner: enveloping::poisson_bracket(&self.inner, &f.inner, &g.inner).map_err(py_err)? })
    }

    /// `Sym(p)` in the enveloping algebra.
    fn symmetrize(&self, p: &PyPoly) -> PyResult<PyUEElement> {
        let mut e = Enveloping::new(&self.inner);
        Ok(PyUEElement { inner: e.symmetrize(&p.inner).map_err(py_err)? })
    }

    fn multiply(&self, a: &PyUEElement, b: &PyUEElement) -> PyResult<PyUEElement> {
        let mut e = Enveloping::new(&self.inner);
        Ok(PyUEElement { inner: e.multiply(&a.inner, &b.inner).map_err(py_err)? })
    }

    fn commutator(&self, a: &PyUEElement, b: &PyUEElement) -> PyResult<PyUEElement> {
        let mut e = Enveloping::new(&self.inner);
        Ok(PyUEElement { inner: e.commutator(&a.inner, &b.inner).map_err(py_err)? })
    }

    fn __repr__(&self) -> String {
        format!("LieAlgebra({:?}, dim={})", self.inner.name(), self.inner.dim())
    }
}

/// A reduction chain: optional basis change and subalgebra dimension.
#[pyclass(name = "Chain", module = "casimir", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyChain {
    inner: casimir_core::ChainSpec,
}

#[pymethods]
impl PyChain {
    #[staticmethod]
    fn load(spec: &str) -> PyResult<Self> {
        Ok(PyChain { inner: builtins::load_chain(spec).map_err(py_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyChain { inner: io::chain_from_json(text).map_err(py_err)? })
    }

    fn to_json(&self) -> String {
        io::chain_to_json(&self.inner)
    }

    #[getter]
    fn sub_dim(&self) -> usize {
        self.inner.sub_dim
    }

    /// Rewrites a polynomial from original to chain-basis coordinates.
    fn to_chain_coordinates(&self, p: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly { inner: contraction::to_chain_coordinates(&p.inner, &self.inner).map_err(py_err)? })
    }
}

/// A polynomial with Gaussian-rational coefficients.
#[pyclass(name = "Poly", module = "casimir", frozen, from_py_object)]
#[derive(Clone)]
struct PyPoly {
    inner: casimir_core::Poly,
}

#[pymethods]
impl PyPoly {
    #[new]
    fn new(text: &str, nvars: usize) -> PyResult<Self> {
        Ok(PyPoly { inner: casimir_core::parse_poly(text, nvars).map_err(py_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPoly { inner: io::poly_from_json(text).map_err(py_err)? })
    }

    fn to_json(&self) -> String {
        io::poly_to_json(&self.inner, None)
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    fn term_count(&self) -> usize {
        self.inner.term_count()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Components keyed by `(subalgebra degree, complement degree)`.
    fn bidegree_components(&self, sub_dim: usize) -> Vec<((u32, u32), PyPoly)> {
        self.inner
            .bidegree_components(sub_dim)
            .into_iter()
            .map(|(b, p)| ((b.sub_deg, b.comp_deg), PyPoly { inner: p }))
            .collect()
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly { inner: self.inner.try_add(&other.inner).map_err(py_err)? })
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly { inner: self.inner.try_sub(&other.inner).map_err(py_err)? })
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly { inner: self.inner.try_mul(&other.inner).map_err(py_err)? })
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?}, nvars={})", self.inner.to_string(), self.inner.nvars())
    }
}

/// An element of the universal enveloping algebra in PBW form.
#[pyclass(name = "UEElement", module = "casimir", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyUEElement {
    inner: casimir_core::UEElement,
}

#[pymethods]
impl PyUEElement {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyUEElement { inner: io::ue_from_json(text).map_err(py_err)? })
    }

    fn to_json(&self) -> String {
        io::ue_to_json(&self.inner)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn term_count(&self) -> usize {
        self.inner.term_count()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    /// Leading symbol as a commutative polynomial.
    fn symbol(&self) -> PyPoly {
        PyPoly { inner: self.inner.symbol() }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Coefficients of the characteristic polynomial of a matrix template,
/// keyed by degree.
#[pyfunction]
#[pyo3(signature = (template, degrees=None))]
fn charpoly_invariants(template: &str, degrees: Option<Vec<u32>>) -> PyResult<Vec<(u32, PyPoly)>> {
    let t = builtins::load_template(template).map_err(py_err)?;
    let m = invariants::charpoly_invariants(&t, degrees.as_deref()).map_err(py_err)?;
    Ok(m.into_iter().map(|(d, p)| (d, PyPoly { inner: p })).collect())
}

/// `(needed, available, total_solutions)` for the counting formulas.
#[pyfunction]
fn mlp_counts(dim_s: usize, n_s: usize, dim_h: usize, n_h: usize, l_prime: usize) -> PyResult<(usize, usize, usize)> {
    let c = contraction::mlp_counts(dim_s, n_s, dim_h, n_h, l_prime).map_err(py_err)?;
    Ok((c.needed, c.available, c.total_solutions))
}

/// Jacobian certificate as `(variables, determinant)`, or `None` when the
/// family looks dependent.
#[pyfunction]
#[pyo3(signature = (polys, seed=0))]
fn jacobian_independent(polys: Vec<PyPoly>, seed: u64) -> Option<(Vec<usize>, String)> {
    let ps: Vec<_> = polys.into_iter().map(|p| p.inner).collect();
    mlp::jacobian_independent(&ps, seed).map(|c| (c.variables, c.determinant.to_string()))
}

/// Runs the labelling-operator pipeline and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (algebra, chain, template, seed=0, exact_commutators=true))]
fn solve_mlp(py: Python<'_>, algebra: &PyLieAlgebra, chain: &PyChain, template: &str, seed: u64, exact_commutators: bool) -> PyResult<String> {
    let t = builtins::load_template(template).map_err(py_err)?;
    let options = mlp::SolveOptions { seed, exact_commutators, ..mlp::SolveOptions::default() };
    let (alg, ch) = (algebra.inner.clone(), chain.inner.clone());
    let report = py
        .detach(move || mlp::solve(&alg, &ch, &mlp::CasimirSource::Template(t), &options))
        .map_err(py_err)?;
    Ok(report.to_json())
}

#[pymodule]
fn casimir(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLieAlgebra>()?;
    m.add_class::<PyChain>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyUEElement>()?;
    m.add_function(wrap_pyfunction!(charpoly_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(mlp_counts, m)?)?;
    m.add_function(wrap_pyfunction!(jacobian_independent, m)?)?;
    m.add_function(wrap_pyfunction!(solve_mlp, m)?)?;
    Ok(())
}
