//! Python bindings. Groups are given as `builtin:<name>`, inline JSON or a
//! path, as on the command line. Reports come back as plain dicts.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use nilmult::engine::{self, DEFAULT_BAR_ORDER_CAP};
use nilmult::io::{grammar, input};
use nilmult::{Error, FgAbelianGroup, HallBasis};

create_exception!(nilmult_py, NilmultError, PyException);
create_exception!(nilmult_py, ParseError, NilmultError);
create_exception!(nilmult_py, HypothesisError, NilmultError);
create_exception!(nilmult_py, ResourceLimitError, NilmultError);
create_exception!(nilmult_py, MissingDataError, NilmultError);

fn err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Parse(_) | Error::Json(_) | Error::Invalid(_) => ParseError::new_err(msg),
        Error::HypothesisFailed { .. } => HypothesisError::new_err(msg),
        Error::ResourceLimit { .. } | Error::Overflow(_) => ResourceLimitError::new_err(msg),
        Error::MissingData(_) | Error::Unsupported(_) => MissingDataError::new_err(msg),
        _ => NilmultError::new_err(msg),
    }
}

fn to_dict<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| err(e.into()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A finitely generated abelian group in invariant-factor form.
#[pyclass(name = "AbelianGroup", module = "nilmult_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyAbelianGroup(FgAbelianGroup);

#[pymethods]
impl PyAbelianGroup {
    /// Direct sum of cyclic groups of the given orders, `0` meaning `Z`.
    #[new]
    #[pyo3(signature = (orders=Vec::new()))]
    fn new(orders: Vec<u64>) -> PyResult<Self> {
        FgAbelianGroup::from_cyclic_factors(orders).map(Self).map_err(err)
    }

    #[getter]
    fn free_rank(&self) -> usize {
        self.0.free_rank()
    }

    #[getter]
    fn invariant_factors(&self) -> Vec<String> {
        self.0.invariant_factors().iter().map(|d| d.to_string()).collect()
    }

    fn is_trivial(&self) -> bool {
        self.0.is_trivial()
    }

    fn direct_sum(&self, other: &Self) -> Self {
        Self(self.0.direct_sum(&other.0))
    }

    fn tensor(&self, other: &Self) -> Self {
        Self(self.0.tensor(&other.0))
    }

    fn tor(&self, other: &Self) -> Self {
        Self(self.0.tor(&other.0))
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_dict(py, &self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AbelianGroup({})", self.0)
    }
}

/// Number of basic commutators of weight `w` on `n` generators.
#[pyfunction]
fn witt(n: usize, w: usize) -> u128 {
    nilmult::hall::witt(n, w)
}

/// Hall basic commutators on `n` generators through weight `w`.
#[pyfunction]
fn hall_basis(n: usize, w: usize) -> PyResult<Vec<String>> {
    let b = HallBasis::generate(n, w).map_err(err)?;
    Ok((0..b.len()).map(|i| b.element(i).to_string()).collect())
}

/// Exponents of the collected normal form of `word` in the free nilpotent
/// group of class `c` on `n` generators.
#[pyfunction]
fn collect(word: &str, n: usize, c: usize) -> PyResult<Vec<i64>> {
    let w = grammar::parse_word(word).map_err(|e| err(e.into()))?;
    let e = nilmult::nilpotent::collect(&w, n, c).map_err(err)?;
    Ok(e.exponents().to_vec())
}

/// `M^(c)` of the abelian group with the given cyclic orders.
#[pyfunction]
fn multiplier(orders: Vec<u64>, c: usize) -> PyResult<PyAbelianGroup> {
    nilmult::nilpotent::nilpotent_multiplier_abelian(&orders, c)
        .map(PyAbelianGroup)
        .map_err(err)
}

/// Second homology of a finite group table via the bar complex.
#[pyfunction]
#[pyo3(signature = (table, order_cap=DEFAULT_BAR_ORDER_CAP))]
fn bar_h2(table: &str, order_cap: usize) -> PyResult<PyAbelianGroup> {
    let t = input::load_table(table).map_err(err)?;
    t.bar_h2(order_cap).map(PyAbelianGroup).map_err(err)
}

fn pair(g: &str, h: &str, cap: usize) -> PyResult<(engine::GroupDatum, engine::GroupDatum)> {
    Ok((
        input::load_datum(g, cap).map_err(err)?,
        input::load_datum(h, cap).map_err(err)?,
    ))
}

/// Report on `M^(c)(G * H)`.
#[pyfunction]
#[pyo3(signature = (g, h, c, order_cap=DEFAULT_BAR_ORDER_CAP))]
fn free_product(py: Python<'_>, g: &str, h: &str, c: usize, order_cap: usize) -> PyResult<Py<PyAny>> {
    let (g, h) = pair(g, h, order_cap)?;
    to_dict(py, &engine::free_product_report(&g, &h, c, order_cap).map_err(err)?)
}

/// `M^(c)(G * H)`, raising `HypothesisError` when no conclusion is available.
#[pyfunction]
#[pyo3(signature = (g, h, c, order_cap=DEFAULT_BAR_ORDER_CAP))]
fn free_product_multiplier(g: &str, h: &str, c: usize, order_cap: usize) -> PyResult<PyAbelianGroup> {
    let (g, h) = pair(g, h, order_cap)?;
    engine::free_product_multiplier(&g, &h, c, order_cap)
        .map(PyAbelianGroup)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (g, h, order_cap=DEFAULT_BAR_ORDER_CAP))]
fn formula_i(py: Python<'_>, g: &str, h: &str, order_cap: usize) -> PyResult<Py<PyAny>> {
    let (g, h) = pair(g, h, order_cap)?;
    to_dict(py, &engine::formula_i(&g, &h, order_cap).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (g, h, order_cap=DEFAULT_BAR_ORDER_CAP))]
fn corollary(py: Python<'_>, g: &str, h: &str, order_cap: usize) -> PyResult<Py<PyAny>> {
    let (g, h) = pair(g, h, order_cap)?;
    to_dict(py, &engine::corollary_classifier(&g, &h, order_cap))
}

#[pymodule]
fn nilmult_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyAbelianGroup>()?;
    m.add("NilmultError", py.get_type::<NilmultError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("HypothesisError", py.get_type::<HypothesisError>())?;
    m.add("ResourceLimitError", py.get_type::<ResourceLimitError>())?;
    m.add("MissingDataError", py.get_type::<MissingDataError>())?;
    m.add_function(wrap_pyfunction!(witt, m)?)?;
    m.add_function(wrap_pyfunction!(hall_basis, m)?)?;
    m.add_function(wrap_pyfunction!(collect, m)?)?;
    m.add_function(wrap_pyfunction!(multiplier, m)?)?;
    m.add_function(wrap_pyfunction!(bar_h2, m)?)?;
    m.add_function(wrap_pyfunction!(free_product, m)?)?;
    m.add_function(wrap_pyfunction!(free_product_multiplier, m)?)?;
    m.add_function(wrap_pyfunction!(formula_i, m)?)?;
    m.add_function(wrap_pyfunction!(corollary, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use pyo3::types::PyDict;

    use super::*;

    #[test]
    fn module_exposes_engine() {
        Python::initialize();
        Python::attach(|py| {
            let m = PyModule::new(py, "nilmult_py").unwrap();
            nilmult_py(&m).unwrap();
            let w: u128 = m.getattr("witt").unwrap().call1((3, 4)).unwrap().extract().unwrap();
            assert_eq!(w, 18);
            let g = m.getattr("multiplier").unwrap().call1((vec![2u64, 2], 1)).unwrap();
            assert_eq!(g.str().unwrap().to_string(), "Z_2");
            let r = m
                .getattr("free_product")
                .unwrap()
                .call1(("builtin:Z2", "builtin:Z2", 2))
                .unwrap();
            let r = r.cast::<PyDict>().unwrap();
            assert!(r.get_item("conclusion").unwrap().unwrap().is_none());
            let e = m
                .getattr("free_product_multiplier")
                .unwrap()
                .call1(("builtin:Z2", "builtin:Z2", 2))
                .unwrap_err();
            assert!(e.is_instance_of::<HypothesisError>(py));
            assert!(e.is_instance_of::<NilmultError>(py));
        });
    }
}
