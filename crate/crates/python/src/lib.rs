//! Python module `dqw`: graphs, analysis reports, the factorization of
//! the squared Grover walk and walk co-simulation.

use dqw_core::arcs::build_arc_space;
use dqw_core::factor::{factorize_with_tolerance, grover_walk, PRODUCT_TOL};
use dqw_core::graph::{build_family, check_distance_regular, Family, Graph};
use dqw_core::report::{analysis_report, factorization_report};
use dqw_core::walks::{deviation_series, ArcState};
use dqw_core::Error;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

/// Input and hypothesis errors become `ValueError`; failed numerical
/// checks become `ArithmeticError`.
fn to_py(e: Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyArithmeticError::new_err(e.to_string())
    }
}

/// Connected regular simple graph.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    /// Graph from a named family, e.g. `Graph.family("hypercube", [3])`.
    #[staticmethod]
    #[pyo3(signature = (name, params = Vec::new()))]
    fn family(name: &str, params: Vec<i64>) -> PyResult<Self> {
        let family: Family = name.parse().map_err(to_py)?;
        let inner = build_family(family, &params).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_edges(n: usize, edges: Vec<[usize; 2]>) -> PyResult<Self> {
        let inner = Graph::from_edges(n, &edges).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = Graph::from_json(text).map_err(to_py)?;
        Ok(Self { inner })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn diameter(&self) -> usize {
        self.inner.diameter()
    }

    #[getter]
    fn edges(&self) -> Vec<[usize; 2]> {
        self.inner.edges()
    }

    fn adjacency(&self) -> Vec<Vec<i64>> {
        self.inner.adjacency().to_rows()
    }

    fn is_distance_regular(&self) -> bool {
        check_distance_regular(&self.inner).is_drg()
    }

    /// `(b, c)` for distance-regular graphs, otherwise `None`.
    fn intersection_array(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        check_distance_regular(&self.inner)
            .numbers()
            .map(|p| p.intersection_array())
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, degree={}, family={:?})",
            self.inner.n(),
            self.inner.degree(),
            self.inner.family()
        )
    }
}

/// Coefficients `t_i` with `U² = Π exp(t_i S(Y_i))` and their error bounds.
#[pyclass(name = "Factorization", frozen, get_all)]
struct PyFactorization {
    t: Vec<f64>,
    gram_rank: usize,
    residual: f64,
    product_error: f64,
    commutator_error: f64,
}

#[pymethods]
impl PyFactorization {
    fn __repr__(&self) -> String {
        format!("Factorization(t={:?}, product_error={:.3e})", self.t, self.product_error)
    }
}

/// JSON report of the exact identity checks.
#[pyfunction]
fn analyze(graph: &PyGraph) -> PyResult<String> {
    Ok(analysis_report(&graph.inner).map_err(to_py)?.to_json())
}

/// Factors U²; raises if a hypothesis fails or the product error reaches `tol`.
#[pyfunction]
#[pyo3(signature = (graph, tol = PRODUCT_TOL))]
fn factorize(graph: &PyGraph, tol: f64) -> PyResult<PyFactorization> {
    let r = factorize_with_tolerance(&graph.inner, tol).map_err(to_py)?;
    Ok(PyFactorization {
        t: r.t,
        gram_rank: r.gram_rank,
        residual: r.residual,
        product_error: r.product_error,
        commutator_error: r.commutator_error,
    })
}

/// Full factorization report as JSON; a product error above `tol` is
/// recorded in the checks rather than raised.
#[pyfunction]
#[pyo3(signature = (graph, tol = PRODUCT_TOL))]
fn factorization_report_json(graph: &PyGraph, tol: f64) -> PyResult<String> {
    let (report, _) = factorization_report(&graph.inner, tol).map_err(to_py)?;
    Ok(report.to_json())
}

/// Transition matrix of the Grover walk on arcs sorted by (tail, head).
#[pyfunction]
fn walk_matrix(graph: &PyGraph) -> PyResult<Vec<Vec<f64>>> {
    let w = grover_walk(&build_arc_space(&graph.inner)).map_err(to_py)?;
    Ok(w.transition.to_rows())
}

/// Arcs `(tail, head)` in the order used by the walk.
#[pyfunction]
fn arcs(graph: &PyGraph) -> Vec<(usize, usize)> {
    build_arc_space(&graph.inner).arcs().to_vec()
}

/// `[(m, ‖U^{2m}ψ − Π exp(m t_i S(Y_i))ψ‖)]` for m = 1..max_m, from a
/// single arc or the uniform state.
#[pyfunction]
#[pyo3(signature = (graph, max_m, start_arc = None))]
fn simulate(graph: &PyGraph, max_m: usize, start_arc: Option<usize>) -> PyResult<Vec<(usize, f64)>> {
    let res = factorize_with_tolerance(&graph.inner, PRODUCT_TOL).map_err(to_py)?;
    let w = grover_walk(&build_arc_space(&graph.inner)).map_err(to_py)?;
    let psi = match start_arc {
        Some(a) => ArcState::basis(w.arc_count(), a),
        None => ArcState::uniform(w.arc_count()),
    }
    .map_err(to_py)?;
    deviation_series(&w, &res, &psi, max_m).map_err(to_py)
}

#[pymodule]
fn dqw(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyFactorization>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(factorization_report_json, m)?)?;
    m.add_function(wrap_pyfunction!(walk_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(arcs, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
