//! Python bindings: graphs, constructions, colorings, tiling decomposition,
//! closed forms, and the small-n oracles.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rainbow_ch::construct::{
    build_construction, build_lower_bound_coloring, closed_form_edges, ConstructionSpec, Family,
};
use rainbow_ch::formula::{self, PartitionStats, ProblemParams};
use rainbow_ch::graph::Graph;
use rainbow_ch::oracle::{
    ar_oracle as ar_oracle_impl, ex_oracle as ex_oracle_impl, ArOracleOptions, ArOracleOutcome,
    ExOracleOptions, ExOracleOutcome,
};
use rainbow_ch::rainbow::{find_rainbow_tiling, representative_graph, EdgeColoring};
use rainbow_ch::search::{SearchOutcome, DEFAULT_BUDGET};
use rainbow_ch::tiling::{
    ideal_partition, maximal_tiling_triple, max_tiling_number, partition_stats, PartitionOptions,
};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Undirected simple graph on up to 256 vertices.
#[pyclass(name = "Graph", skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::from_edges(n, edges).map_err(err)? })
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::complete(n).map_err(err)? })
    }

    #[staticmethod]
    fn from_graph6(s: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::from_graph6(s).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(u16, u16)> {
        self.inner.edges()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn triangles(&self) -> Vec<[u16; 3]> {
        self.inner.triangles()
    }

    fn complement(&self) -> PyGraph {
        PyGraph { inner: self.inner.complement() }
    }

    fn min_degree(&self) -> usize {
        self.inner.min_degree()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite()
    }

    fn to_graph6(&self) -> String {
        self.inner.to_graph6()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    /// Exact maximum number of vertex-disjoint triangles.
    #[pyo3(signature = (budget = DEFAULT_BUDGET))]
    fn max_tiling_number(&self, budget: u64) -> PyResult<usize> {
        match max_tiling_number(&self.inner, budget) {
            SearchOutcome::Complete(v) => Ok(v),
            SearchOutcome::Indeterminate { nodes_used } => Err(PyRuntimeError::new_err(format!(
                "indeterminate after {nodes_used} nodes"
            ))),
        }
    }

    /// Lexicographically maximal tiling triple as a dict with keys
    /// `triangles`, `matching`, `singletons`.
    #[pyo3(signature = (budget = DEFAULT_BUDGET))]
    fn maximal_tiling_triple<'py>(&self, py: Python<'py>, budget: u64) -> PyResult<Bound<'py, PyDict>> {
        let triple = match maximal_tiling_triple(&self.inner, budget) {
            SearchOutcome::Complete(t) => t,
            SearchOutcome::Indeterminate { nodes_used } => {
                return Err(PyRuntimeError::new_err(format!(
                    "indeterminate after {nodes_used} nodes"
                )))
            }
        };
        let d = PyDict::new(py);
        d.set_item("triangles", triple.triangles.clone())?;
        d.set_item("matching", triple.matching.clone())?;
        d.set_item("singletons", triple.singletons.clone())?;
        Ok(d)
    }

    /// Ideal-partition counter vector (t1, t2, t3, t4, m, i).
    #[pyo3(signature = (budget = DEFAULT_BUDGET))]
    fn partition_stats(&self, budget: u64) -> PyResult<(u64, u64, u64, u64, u64, u64)> {
        let triple = match maximal_tiling_triple(&self.inner, budget) {
            SearchOutcome::Complete(t) => t,
            SearchOutcome::Indeterminate { nodes_used } => {
                return Err(PyRuntimeError::new_err(format!(
                    "indeterminate after {nodes_used} nodes"
                )))
            }
        };
        let p = ideal_partition(&self.inner, &triple, &PartitionOptions::default()).map_err(err)?;
        let s = partition_stats(&p, &triple);
        Ok((s.tau1, s.tau2, s.tau3, s.tau4, s.mu, s.iota))
    }
}

/// Total surjective edge coloring of K_n.
#[pyclass(name = "EdgeColoring", skip_from_py_object)]
#[derive(Clone)]
struct PyColoring {
    inner: EdgeColoring,
}

#[pymethods]
impl PyColoring {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn num_colors(&self) -> u32 {
        self.inner.num_colors()
    }

    fn color(&self, u: usize, v: usize) -> u32 {
        self.inner.color(u, v)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("colorings serialize")
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyColoring { inner: serde_json::from_str(text).map_err(err)? })
    }

    fn representative_graph(&self) -> PyGraph {
        PyGraph { inner: representative_graph(&self.inner) }
    }

    /// Searches for a rainbow set of s disjoint triangles; returns the
    /// triangle list or None.
    #[pyo3(signature = (s, budget = DEFAULT_BUDGET))]
    fn find_rainbow_tiling(&self, s: usize, budget: u64) -> PyResult<Option<Vec<[u16; 3]>>> {
        match find_rainbow_tiling(&self.inner, s, budget).map_err(err)? {
            SearchOutcome::Complete(w) => Ok(w.map(|w| w.triangles)),
            SearchOutcome::Indeterminate { nodes_used } => Err(PyRuntimeError::new_err(format!(
                "indeterminate after {nodes_used} nodes"
            ))),
        }
    }
}

fn parse_family(family: &str) -> PyResult<Family> {
    family.parse::<Family>().map_err(err)
}

/// Builds a construction; returns (graph, parts) with parts as a dict
/// label -> vertex list.
#[pyfunction]
fn construction<'py>(
    py: Python<'py>,
    family: &str,
    n: u64,
    t: u64,
) -> PyResult<(PyGraph, Bound<'py, PyDict>)> {
    let spec = ConstructionSpec::new(parse_family(family)?, n, t);
    let built = build_construction(&spec).map_err(err)?;
    let parts = PyDict::new(py);
    for (label, set) in &built.parts {
        parts.set_item(format!("{label:?}"), set.to_vec())?;
    }
    Ok((PyGraph { inner: built.graph }, parts))
}

#[pyfunction]
fn construction_edge_count(family: &str, n: u64, t: u64) -> PyResult<i64> {
    let spec = ConstructionSpec::new(parse_family(family)?, n, t);
    closed_form_edges(&spec).map_err(err)
}

#[pyfunction]
fn lower_bound_coloring(family: &str, n: u64, t: u64) -> PyResult<PyColoring> {
    let spec = ConstructionSpec::new(parse_family(family)?, n, t);
    Ok(PyColoring { inner: build_lower_bound_coloring(&spec).map_err(err)? })
}

#[pyfunction]
fn poly_f(t1: u64, t2: u64, t3: u64, t4: u64, m: u64, i: u64) -> i128 {
    formula::poly_f(&PartitionStats::new(t1, t2, t3, t4, m, i))
}

#[pyfunction]
fn poly_h(t1: u64, t2: u64, t3: u64, t4: u64, m: u64, i: u64) -> i128 {
    formula::poly_h(&PartitionStats::new(t1, t2, t3, t4, m, i))
}

#[pyfunction]
fn poly_g(t1: u64, t2: u64, t3: u64, t4: u64, m: u64, i: u64) -> i128 {
    formula::poly_g(&PartitionStats::new(t1, t2, t3, t4, m, i))
}

#[pyfunction]
fn poly_q1(t1: u64, t2: u64, t3: u64, t4: u64, m: u64, i: u64) -> i128 {
    formula::poly_q1(&PartitionStats::new(t1, t2, t3, t4, m, i))
}

/// Checks shift identity `id` (1..=8) at the given point; returns
/// (holds, lhs, rhs) with the sides as exact fraction strings.
#[pyfunction]
fn check_identity(
    id: u8,
    t1: u64,
    t2: u64,
    t3: u64,
    t4: u64,
    m: u64,
    i: u64,
    x: u64,
) -> PyResult<(bool, String, String)> {
    let id = formula::poly::IdentityId::from_number(id)
        .ok_or_else(|| PyValueError::new_err("identity id must be 1..=8"))?;
    let v = formula::check_identity(id, &PartitionStats::new(t1, t2, t3, t4, m, i), x)
        .map_err(err)?;
    Ok((v.holds, v.lhs.to_string(), v.rhs.to_string()))
}

#[pyfunction]
fn xi_piecewise(n: u64, t: u64) -> PyResult<i64> {
    let p = ProblemParams::new(n, t).map_err(err)?;
    Ok(formula::xi_piecewise(&p).map_err(err)?.value)
}

#[pyfunction]
fn xi_from_constructions(n: u64, t: u64) -> PyResult<i64> {
    let p = ProblemParams::new(n, t).map_err(err)?;
    Ok(formula::xi_from_constructions(&p).map_err(err)?.value)
}

#[pyfunction]
fn ex_abhp(n: u64, t: u64) -> PyResult<i64> {
    let p = ProblemParams::new(n, t).map_err(err)?;
    Ok(formula::ex_abhp(&p).map_err(err)?.value)
}

#[pyfunction]
#[pyo3(signature = (n, t, allow_outside = false))]
fn ar_first_interval(n: u64, t: u64, allow_outside: bool) -> PyResult<i64> {
    let p = ProblemParams::new(n, t).map_err(err)?;
    Ok(formula::ar_first_interval(&p, allow_outside).map_err(err)?.value)
}

/// Exact Turán number ex(n, sK3) for small n.
#[pyfunction]
fn ex_oracle(n: usize, s: usize) -> PyResult<usize> {
    match ex_oracle_impl(n, s, &ExOracleOptions::default()).map_err(err)? {
        ExOracleOutcome::Complete(r) => Ok(r.value),
        ExOracleOutcome::Indeterminate { .. } => {
            Err(PyRuntimeError::new_err("oracle budget exhausted"))
        }
    }
}

/// Exact anti-Ramsey number ar(n, sK3) for n <= 6; returns
/// (ar, witness_coloring).
#[pyfunction]
fn ar_oracle(n: usize, s: usize) -> PyResult<(u32, PyColoring)> {
    match ar_oracle_impl(n, s, &ArOracleOptions::default()).map_err(err)? {
        ArOracleOutcome::Complete(r) => Ok((r.ar, PyColoring { inner: r.witness })),
        ArOracleOutcome::Indeterminate { .. } => {
            Err(PyRuntimeError::new_err("oracle budget exhausted"))
        }
    }
}

#[pymodule]
fn rainbow_ch_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyColoring>()?;
    m.add_function(wrap_pyfunction!(construction, m)?)?;
    m.add_function(wrap_pyfunction!(construction_edge_count, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(poly_f, m)?)?;
    m.add_function(wrap_pyfunction!(poly_h, m)?)?;
    m.add_function(wrap_pyfunction!(poly_g, m)?)?;
    m.add_function(wrap_pyfunction!(poly_q1, m)?)?;
    m.add_function(wrap_pyfunction!(check_identity, m)?)?;
    m.add_function(wrap_pyfunction!(xi_piecewise, m)?)?;
    m.add_function(wrap_pyfunction!(xi_from_constructions, m)?)?;
    m.add_function(wrap_pyfunction!(ex_abhp, m)?)?;
    m.add_function(wrap_pyfunction!(ar_first_interval, m)?)?;
    m.add_function(wrap_pyfunction!(ex_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(ar_oracle, m)?)?;
    Ok(())
}
