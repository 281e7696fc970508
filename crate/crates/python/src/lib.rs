//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! reports with no rational content are returned as plain dicts.

use lieposet_core::cohomology::{self, Guards};
use lieposet_core::exactla::{fmt_rat, parse_rat, Rat};
use lieposet_core::indexfrob::{self, Functional, IndexOptions};
use lieposet_core::liealg::{LieAlg, Variant};
use lieposet_core::nerve;
use lieposet_core::poset::{self, Family};
use lieposet_core::suites::{self, pattern_rows, Suite};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, x: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((fmt_rat(x),))
}

fn fractions<'py>(py: Python<'py>, v: &[Rat]) -> PyResult<Bound<'py, PyList>> {
    let items = v.iter().map(|x| fraction(py, x)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// Accepts ints, Fractions or anything whose `str` is `p` or `p/q`.
fn rationals(values: &Bound<'_, PyAny>) -> PyResult<Vec<Rat>> {
    values
        .try_iter()?
        .map(|item| parse_rat(&item?.str()?.to_string()).map_err(value_error))
        .collect()
}

fn json_to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn parse_variant(s: &str) -> PyResult<Variant> {
    s.parse().map_err(value_error)
}

#[pyclass(name = "Poset", module = "lieposet", frozen)]
struct PyPoset {
    inner: poset::Poset,
}

#[pymethods]
impl PyPoset {
    #[new]
    #[pyo3(signature = (family, elements, relations))]
    fn new(family: &str, elements: Vec<i32>, relations: Vec<(i32, i32)>) -> PyResult<Self> {
        let family: Family = family.parse().map_err(value_error)?;
        let inner = poset::Poset::new(family, elements, relations).map_err(value_error)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: poset::parse_poset(text).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn chain(n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: poset::Poset::chain(n).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn antichain(n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: poset::Poset::antichain(n).map_err(value_error)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_document()).map_err(value_error)
    }

    #[getter]
    fn family(&self) -> String {
        self.inner.family().to_string()
    }

    #[getter]
    fn elements(&self) -> Vec<i32> {
        self.inner.elements().to_vec()
    }

    /// The transitively closed relation.
    #[getter]
    fn relations(&self) -> Vec<(i32, i32)> {
        self.inner.relation().iter().copied().collect()
    }

    fn hasse(&self) -> Vec<(i32, i32)> {
        self.inner.hasse().into_iter().collect()
    }

    fn height(&self) -> usize {
        self.inner.height()
    }

    fn family_violations(&self) -> Vec<String> {
        self.inner
            .validate_family()
            .violations
            .iter()
            .map(|v| format!("condition {}: {}", v.condition, v.detail))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Poset(family={:?}, hasse={:?})", self.family(), self.hasse())
    }
}

#[pyclass(name = "LieAlgebra", module = "lieposet", frozen)]
struct PyLieAlgebra {
    inner: LieAlg,
}

#[pymethods]
impl PyLieAlgebra {
    #[new]
    #[pyo3(signature = (poset, variant = "gl"))]
    fn new(poset: &PyPoset, variant: &str) -> PyResult<Self> {
        let inner = LieAlg::build(&poset.inner, parse_variant(variant)?).map_err(value_error)?;
        Ok(Self { inner })
    }

    /// The model algebra with `[d_i, e_i] = e_i`.
    #[staticmethod]
    fn phi(n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: LieAlg::phi(n).map_err(value_error)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn cartan_count(&self) -> usize {
        self.inner.cartan_count()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn sparsity_pattern(&self) -> Option<Vec<String>> {
        self.inner.sparsity_pattern().map(|g| pattern_rows(&g))
    }

    fn derived_series(&self) -> Vec<usize> {
        self.inner.derived_series().dims
    }

    fn is_two_step(&self) -> bool {
        self.inner.derived_series().is_two_step()
    }

    fn center_dim(&self) -> usize {
        self.inner.center().dim()
    }

    fn check_jacobi(&self) -> bool {
        self.inner.check_jacobi().is_ok()
    }

    fn bracket<'py>(
        &self,
        py: Python<'py>,
        x: &Bound<'py, PyAny>,
        y: &Bound<'py, PyAny>,
    ) -> PyResult<Bound<'py, PyList>> {
        let v = self.inner.bracket(&rationals(x)?, &rationals(y)?).map_err(value_error)?;
        fractions(py, &v)
    }

    /// `(i, j, k, c)` for every nonzero `[x_i, x_j]` component with `i < j`.
    fn structure_constants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let dump = self.inner.dump();
        let items = dump
            .structure
            .iter()
            .map(|(i, j, k, c)| {
                let f = fraction(py, &parse_rat(c).map_err(value_error)?)?;
                Ok((*i, *j, *k, f))
            })
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, items)
    }

    fn __repr__(&self) -> String {
        format!("LieAlgebra(dim={}, cartan_count={})", self.dim(), self.cartan_count())
    }
}

fn options(seed: u64, trials: usize, bound: i64) -> IndexOptions {
    IndexOptions {
        trials,
        entry_bound: bound,
        seed,
    }
}

#[pyfunction]
#[pyo3(signature = (algebra, seed, trials = 3, bound = 1_000_000))]
fn index<'py>(
    py: Python<'py>,
    algebra: &PyLieAlgebra,
    seed: u64,
    trials: usize,
    bound: i64,
) -> PyResult<Bound<'py, PyDict>> {
    let cert = indexfrob::index(&algebra.inner, &options(seed, trials, bound)).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("index", cert.index)?;
    d.set_item("certified_frobenius", cert.certified_frobenius)?;
    d.set_item("failure_bound", cert.failure_bound)?;
    match &cert.witness {
        Some(w) => d.set_item("witness", fractions(py, &w.coords)?)?,
        None => d.set_item("witness", py.None())?,
    }
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (algebra, seed))]
fn frobenius_functional<'py>(
    py: Python<'py>,
    algebra: &PyLieAlgebra,
    seed: u64,
) -> PyResult<Option<Bound<'py, PyList>>> {
    let f = indexfrob::frobenius_functional(&algebra.inner, &IndexOptions::with_seed(seed))
        .map_err(value_error)?;
    f.map(|f| fractions(py, &f.coords)).transpose()
}

#[pyfunction]
fn principal_element<'py>(
    py: Python<'py>,
    algebra: &PyLieAlgebra,
    functional: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyList>> {
    let f = Functional::new(rationals(functional)?);
    let p = indexfrob::principal_element(&algebra.inner, &f).map_err(value_error)?;
    fractions(py, &p)
}

#[pyfunction]
fn spectrum<'py>(
    py: Python<'py>,
    algebra: &PyLieAlgebra,
    functional: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyDict>> {
    let f = Functional::new(rationals(functional)?);
    let s = indexfrob::spectrum(&algebra.inner, &f).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("char_poly", s.char_poly.to_string())?;
    d.set_item("coefficients", fractions(py, s.char_poly.coeffs())?)?;
    d.set_item("principal_element", fractions(py, &s.principal_element)?)?;
    d.set_item("multiplicity_of_0", s.multiplicity_of_0)?;
    d.set_item("multiplicity_of_1", s.multiplicity_of_1)?;
    d.set_item("binary", s.binary)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (algebra, seed))]
fn normalize_to_phi<'py>(py: Python<'py>, algebra: &PyLieAlgebra, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let n = indexfrob::normalize_to_phi(&algebra.inner, &IndexOptions::with_seed(seed)).map_err(value_error)?;
    let columns = (0..n.change_of_basis.n_cols())
        .map(|c| fractions(py, &n.change_of_basis.column(c)))
        .collect::<PyResult<Vec<_>>>()?;
    let d = PyDict::new(py);
    d.set_item("n", n.n)?;
    d.set_item("verified", n.verified)?;
    d.set_item("change_of_basis_columns", PyList::new(py, columns)?)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (algebra, degree, max_dim = 12, max_degree = 3))]
fn cohomology_dim<'py>(
    py: Python<'py>,
    algebra: &PyLieAlgebra,
    degree: usize,
    max_dim: usize,
    max_degree: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let guards = Guards { max_degree, max_dim };
    let dims = py
        .detach(|| cohomology::cohomology_dim_guarded(&algebra.inner, degree, &guards))
        .map_err(value_error)?;
    json_to_py(py, &dims)
}

#[pyfunction]
#[pyo3(signature = (poset, variant = "gl"))]
fn verify_eq1<'py>(py: Python<'py>, poset: &PyPoset, variant: &str) -> PyResult<Bound<'py, PyAny>> {
    let r = cohomology::verify_eq1(&poset.inner, parse_variant(variant)?).map_err(value_error)?;
    json_to_py(py, &r)
}

#[pyfunction]
fn simplicial_cohomology_dim(poset: &PyPoset, degree: usize) -> PyResult<usize> {
    nerve::simplicial_cohomology_dim(&poset.inner, degree).map_err(value_error)
}

#[pyfunction]
fn euler_characteristic(poset: &PyPoset) -> i64 {
    nerve::euler_characteristic(&poset.inner)
}

#[pyfunction]
fn enumerate_height_one(n: usize) -> PyResult<Vec<PyPoset>> {
    let posets = poset::enumerate_height_one(n).map_err(value_error)?;
    Ok(posets.into_iter().map(|inner| PyPoset { inner }).collect())
}

/// Runs a verification suite and returns its report.
#[pyfunction]
fn verify<'py>(py: Python<'py>, suite: &str, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(value_error)?;
    let report = py.detach(|| suites::run(suite, seed));
    json_to_py(py, &report)
}

#[pymodule]
fn lieposet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoset>()?;
    m.add_class::<PyLieAlgebra>()?;
    m.add_function(wrap_pyfunction!(index, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_functional, m)?)?;
    m.add_function(wrap_pyfunction!(principal_element, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_to_phi, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology_dim, m)?)?;
    m.add_function(wrap_pyfunction!(verify_eq1, m)?)?;
    m.add_function(wrap_pyfunction!(simplicial_cohomology_dim, m)?)?;
    m.add_function(wrap_pyfunction!(euler_characteristic, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_height_one, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
